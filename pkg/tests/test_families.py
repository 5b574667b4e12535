import pytest

from mipkit.catalog import dihedral_group, quaternion_group
from mipkit.families import (
    FamilySpec,
    build_family,
    exceptional_isomorphism,
    qs_distinguisher,
    trichotomy_check,
)
from mipkit.groups import OrderCapExceeded, abelian_group, isomorphic
from mipkit.pgroup import center, dg


@pytest.mark.parametrize("kind", "DQS")
@pytest.mark.parametrize("m,n", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (1, 4)])
def test_build_and_validate(kind, m, n):
    G = build_family(FamilySpec(kind, m, n))
    assert G.order == 2 ** (m + n)
    assert center(G).order == 2**m


def test_small_members_match_permutation_groups():
    assert isomorphic(build_family(FamilySpec("D", 1, 2)), dihedral_group(4)).isomorphic
    assert isomorphic(build_family(FamilySpec("Q", 1, 2)), quaternion_group()).isomorphic
    assert isomorphic(build_family(FamilySpec("D", 1, 3)), dihedral_group(8)).isomorphic


def test_generator_counts():
    assert dg(build_family(FamilySpec("D", 2, 3))) == 3
    assert dg(build_family(FamilySpec("Q", 2, 3))) == 2
    assert dg(build_family(FamilySpec("S", 2, 3))) == 2


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_exceptional_isomorphisms(m):
    assert exceptional_isomorphism(m).is_isomorphism


def test_pairwise_non_isomorphic():
    G = {k: build_family(FamilySpec(k, 2, 3)) for k in "DQS"}
    for a, b in (("D", "Q"), ("D", "S"), ("Q", "S")):
        assert not isomorphic(G[a], G[b]).isomorphic


def test_trichotomy():
    r = trichotomy_check(dihedral_group(8))
    assert r.applicable and (r.m, r.n) == (1, 3) and r.kinds == ("D",)
    assert trichotomy_check(quaternion_group()).kinds == ("Q",)
    assert not trichotomy_check(abelian_group([4, 2])).applicable


def test_qs_distinguisher():
    rep = qs_distinguisher(2, 3)
    assert rep.ok and rep.q_result.holds and not rep.s_result.holds
    assert rep.s_result.witness_label == "a-1"
    with pytest.raises(ValueError):
        qs_distinguisher(1, 3)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        FamilySpec("X", 1, 2)
    with pytest.raises(ValueError):
        FamilySpec("D", 0, 2)
    with pytest.raises(OrderCapExceeded):
        build_family(FamilySpec("D", 6, 6), order_cap=256)
