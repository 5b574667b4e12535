import json

import numpy as np
import pytest

from mipkit.catalog import load_annotations
from mipkit.groups import (
    SubgroupSet,
    abelian_group,
    abelian_type,
    quotient_group,
    random_relabel,
)
from mipkit.invariants import (
    ABELIAN_INVARIANT_NAMES,
    Fingerprint,
    abelian_invariants,
    compare,
    crosscheck_report,
    fingerprint,
    section_type,
)
from mipkit.pgroup import center, commutator_subgroup, frattini, normal_subgroups, socle
from tests.conftest import corpus_groups


def quotient_section_type(G, H, N):
    """Oracle: build G/N explicitly and read off the type of the image of H."""
    Q, proj = quotient_group(G, N)
    mask = sum(1 << q for q in {proj[h] for h in H.elements})
    return abelian_type(SubgroupSet(Q, mask))


@pytest.mark.parametrize("label", ["U1", "U4", "U8"])
def test_section_type_against_quotient_table(label):
    G = corpus_groups()[label]
    gamma = commutator_subgroup(G)
    for H in normal_subgroups(G):
        if H.members & gamma.members != gamma.members:
            continue
        assert section_type(G, H, gamma) == quotient_section_type(G, H, gamma)
    Z = center(G)
    for N in normal_subgroups(G):
        if N.members & Z.members == N.members:
            assert section_type(G, Z, N) == quotient_section_type(G, Z, N)


def test_abelian_invariants_on_abelian_group():
    G = abelian_group([4, 2, 2])
    c = abelian_invariants(G)
    t = abelian_type(G)
    assert set(ABELIAN_INVARIANT_NAMES) <= set(c)
    assert c["G/gamma"] == t and c["Z"] == t
    assert c["gamma.Z/gamma"] == t
    assert c["Z^gamma"].order == 1


@pytest.mark.parametrize("label", ["U2", "U5", "U10"])
def test_fingerprint_invariant_under_relabeling(label):
    G = corpus_groups()[label]
    H, _ = random_relabel(G, np.random.default_rng(3))
    a, b = fingerprint(G).to_dict(), fingerprint(H).to_dict()
    a.pop("name"), b.pop("name")
    assert a == b


def test_json_roundtrip():
    ann = load_annotations()
    f = fingerprint(corpus_groups()["U1"], ann)
    text = f.to_json(indent=2)
    g = Fingerprint.from_dict(json.loads(text))
    assert g == f and g.to_json(indent=2) == text
    assert f.e_annotation == 5 and "imported" in f.e_source


def test_compare_is_symmetric_and_reflexive():
    G = corpus_groups()
    f1, f2 = fingerprint(G["U7"]), fingerprint(G["U8"])
    v, w = compare(f1, f2), compare(f2, f1)
    assert v.distinguished and w.distinguished and v.field == w.field == "a_3"
    assert (v.left, v.right) == (w.right, w.left)
    assert not compare(f1, fingerprint(G["U7"])).distinguished
    assert str(compare(f1, f1)) == "INDISTINGUISHABLE"


def test_e_used_only_as_last_resort():
    f1 = fingerprint(abelian_group([4, 2]))
    f2 = fingerprint(abelian_group([4, 2]))
    f1.e_annotation, f2.e_annotation = 3, 4
    f1.e_source = f2.e_source = "test table"
    v = compare(f1, f2)
    assert v.field == "e" and "imported" in v.note


def test_orders_compared_first(aux_groups):
    v = compare(fingerprint(aux_groups["D8"]), fingerprint(aux_groups["C2xD8"]))
    assert v.field == "order"


@pytest.mark.parametrize("name", ["D8", "Q8", "C4xC2", "C2xD8"])
def test_algebra_side_crosscheck(aux_groups, name):
    G = aux_groups[name]
    for n in range(3):
        for m in range(3):
            report = crosscheck_report(G, n, m)
            assert all(report.values()), [k for k, v in report.items() if not v]


def test_soc_and_frat_fields():
    G = corpus_groups()["U12"]
    f = fingerprint(G)
    assert f.soc_order == socle(G).order == 2
    assert f.soc_cap_frat_order == (socle(G) & frattini(G)).order
