import json
import os
import shutil
import subprocess
import sys

import pytest

from mipkit.catalog import data_root
from mipkit.cli import run


def cli(capsys, *args):
    code = run(list(args))
    return code, capsys.readouterr()


def test_compare_exit_codes(capsys):
    code, out = cli(capsys, "compare", "U7", "U8")
    assert code == 1 and "DISTINGUISHED(a_3)" in out.out
    code, out = cli(capsys, "compare", "U1", "U1")
    assert code == 0 and "INDISTINGUISHABLE" in out.out


def test_compare_by_file_path_uses_corpus_name(capsys):
    path = str(data_root() / "groups" / "sg32_9.perm")
    code, out = cli(capsys, "invariants", path, "--json")
    assert code == 0 and json.loads(out.out)["e_annotation"] == 5


def test_compare_reduce(capsys):
    code, out = cli(capsys, "compare", "C4xC2", "C2^3", "--reduce")
    assert code == 1 and "rank of elementary abelian factor" in out.out


def test_invariants_json_schema(capsys):
    code, out = cli(capsys, "invariants", "U3", "--json", "--n-max", "2")
    d = json.loads(out.out)
    assert code == 0 and len(d["k_seq"]) == 3 and d["omega1_in_delta2"] in ("true", "false", "inconclusive")


def test_tables(capsys):
    code, out = cli(capsys, "tables", "--json")
    d = json.loads(out.out)
    assert [r["k_1"] for r in d["order 32"]] == [4, 4, 5, 5, 4, 5]
    assert [r["a_3"] for r in d["order 64"]] == [2, 1, 2, 1, 0, 0]


def test_family_emit_roundtrip(capsys, tmp_path):
    code, out = cli(capsys, "family", "S", "2", "3", "--emit", "perm")
    f = tmp_path / "s.perm"
    f.write_text(out.out)
    code, out = cli(capsys, "jennings", str(f))
    assert code == 0 and "D_1: order 32" in out.out


def test_qs_distinguish(capsys):
    code, out = cli(capsys, "qs-distinguish", "2", "3")
    assert code == 0 and "witness a-1" in out.out
    code, out = cli(capsys, "qs-distinguish", "1", "3")
    assert code == 2 and "error" in out.err


def test_decompose_and_verify(capsys):
    code, out = cli(capsys, "decompose", "C2xD8")
    assert code == 0 and "rank T = 1" in out.out
    code, out = cli(capsys, "verify-lemmas", "D8", "--trials", "10")
    assert code == 0 and "FAILED" not in out.out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        run(["invariants", "U1", "--bogus"])
    assert e.value.code == 2
    code, out = cli(capsys, "invariants", "no-such-file.perm")
    assert code == 2


def test_data_override_and_determinism(tmp_path):
    alt = tmp_path / "data"
    shutil.copytree(data_root(), alt)
    (alt / "annotations" / "e_values.txt").write_text("@source override\nSG(32,9) 7\n")
    env = dict(os.environ, MIPKIT_DATA=str(alt))
    cmd = [sys.executable, "-m", "mipkit", "invariants", "U1", "--json"]
    a = subprocess.run(cmd, env=env, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, env=env, capture_output=True, check=True).stdout
    assert a == b
    d = json.loads(a)
    assert d["e_annotation"] == 7 and d["e_source"] == "override"
