"""Group files, the shipped corpus and the e-value annotations."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .groups import (
    Group,
    GroupError,
    ValidationFailed,
    abelian_group,
    cyclic_group,
    direct_product,
    group_from_permutations,
)

log = logging.getLogger(__name__)


class ParseError(GroupError):
    pass


def data_root() -> Path:
    """Data directory; ``MIPKIT_DATA`` overrides the packaged copy."""
    env = os.environ.get("MIPKIT_DATA")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def _resolve(path) -> Path:
    path = Path(path)
    if path.exists():
        return path
    # paths written relative to the data root's parent, e.g. data/groups/x.perm
    alt = data_root().parent / path
    if alt.exists():
        return alt
    raise FileNotFoundError(path)


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_group(text: str, name: str = "") -> Group:
    """Parse the ``perm`` / ``cayley`` text formats."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty group file")
    head = lines[0].split()
    try:
        kind, size = head[0], int(head[1])
        if len(head) != 2:
            raise ValueError
    except (IndexError, ValueError):
        raise ParseError(f"bad header line: {lines[0]!r}") from None
    try:
        rows = [[int(x) for x in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if kind == "perm":
        return group_from_permutations(size, rows, name=name)
    if kind == "cayley":
        if len(rows) != size or any(len(r) != size for r in rows):
            raise ParseError(f"cayley table must be {size} x {size}")
        table = np.array(rows, dtype=np.int64) if size else np.zeros((0, 0), dtype=np.int64)
        return Group(table, check=True, name=name)
    raise ParseError(f"unknown format {kind!r}")


def load_group(path) -> Group:
    path = _resolve(path)
    return parse_group(path.read_text(encoding="utf-8"), name=path.stem)


def format_cayley(G: Group) -> str:
    lines = [f"cayley {G.order}"]
    lines += [" ".join(map(str, row)) for row in G.mul.tolist()]
    return "\n".join(lines) + "\n"


def format_perm(G: Group) -> str:
    """Right regular representation on generators (degree |G|)."""
    lines = [f"perm {G.order}"]
    for s in G.generators():
        # x -> x*s, 1-based
        lines.append(" ".join(str(G.m(x, s) + 1) for x in range(G.order)))
    return "\n".join(lines) + "\n"


@dataclass
class Annotations:
    values: dict[str, int] = field(default_factory=dict)
    source: str = ""

    def get(self, name: str):
        return self.values.get(name)


def load_annotations(path=None, known_names=None) -> Annotations:
    """Read ``name value`` lines; an optional ``@source <text>`` line tags provenance."""
    path = _resolve(path) if path is not None else data_root() / "annotations" / "e_values.txt"
    out = Annotations(source=path.name)
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@source"):
            out.source = line[len("@source"):].strip()
            continue
        parts = line.rsplit(None, 1)
        if len(parts) != 2:
            raise ParseError(f"{path}:{lineno}: expected 'name value'")
        name, value = parts
        try:
            val = int(value)
        except ValueError:
            raise ParseError(f"{path}:{lineno}: value {value!r} is not an integer") from None
        if name in out.values:
            log.warning("duplicate annotation for %s; keeping the last value", name)
        if known_names is not None and name not in known_names:
            log.warning("annotation for unknown group %s", name)
        out.values[name] = val
    return out


@dataclass
class CorpusEntry:
    name: str
    source: str
    group: Group
    expected: dict = field(default_factory=dict)
    label: str = ""


def check_expected(G: Group, expected: dict) -> dict:
    """Compare expected properties with computed ones; returns the computed values."""
    from .pgroup import center, frattini, nilpotency_class, socle

    computed = {}
    checks = {
        "order": lambda: G.order,
        "class": lambda: nilpotency_class(G),
        "center": lambda: center(G).order,
        "frattini": lambda: frattini(G).order,
        "socle": lambda: socle(G).order,
    }
    for key, want in expected.items():
        got = checks[key]()
        computed[key] = got
        if got != want:
            raise ValidationFailed(f"{G.name}: expected {key} = {want}, computed {got}")
    return computed


@lru_cache(maxsize=None)
def _manifest() -> tuple:
    path = data_root() / "groups" / "corpus.json"
    return tuple(json.loads(path.read_text(encoding="utf-8")))


@lru_cache(maxsize=None)
def _load_entry(index: int) -> CorpusEntry:
    item = _manifest()[index]
    src = data_root() / "groups" / item["file"]
    G = load_group(src)
    G.name = item["name"]
    expected = item.get("expected", {})
    check_expected(G, expected)
    return CorpusEntry(item["name"], str(src), G, expected, item.get("label", ""))


def corpus() -> list[CorpusEntry]:
    """The shipped groups, loaded and property-checked."""
    return [_load_entry(i) for i in range(len(_manifest()))]


def corpus_entry(key: str) -> CorpusEntry:
    """Look up by name (``SG(32,9)``) or label (``U1``)."""
    for e in corpus():
        if key in (e.name, e.label):
            return e
    raise KeyError(key)


def dihedral_group(n: int) -> Group:
    """Dihedral group of order 2n as permutations of an n-gon."""
    rot = [(i + 1) % n + 1 for i in range(n)]
    ref = [(-i) % n + 1 for i in range(n)]
    return group_from_permutations(n, [rot, ref], name=f"D{2 * n}")


def quaternion_group() -> Group:
    return group_from_permutations(8, [[2, 4, 6, 7, 3, 8, 1, 5], [3, 5, 4, 8, 7, 2, 6, 1]], name="Q8")


def auxiliary_groups() -> dict[str, Group]:
    """Small groups built in code for test batteries."""
    D8 = dihedral_group(4)
    Q8 = quaternion_group()
    C2 = cyclic_group(2)
    groups = {
        "C1": cyclic_group(1),
        "C2": C2,
        "C3": cyclic_group(3),
        "C4": cyclic_group(4),
        "C2xC2": abelian_group([2, 2]),
        "C4xC2": abelian_group([4, 2]),
        "C2^3": abelian_group([2, 2, 2]),
        "D8": D8,
        "Q8": Q8,
        "C2xD8": direct_product(C2, D8),
        "C2xQ8": direct_product(C2, Q8),
        "C2xC2xQ8": direct_product(abelian_group([2, 2]), Q8),
        "C4xQ8": direct_product(cyclic_group(4), Q8),
        "D16": dihedral_group(8),
    }
    for k, G in groups.items():
        G.name = k
    return groups
