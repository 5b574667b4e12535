import pytest

from mipkit.catalog import dihedral_group, quaternion_group
from mipkit.decomp import (
    elementary_decomposition,
    elementary_ideal,
    power_structure_commutes,
    reduce_and_compare,
)
from mipkit.groups import abelian_group, cyclic_group, direct_product, isomorphic
from tests.conftest import corpus_groups


def test_c2_x_d8_splits_off_c2():
    G = direct_product(cyclic_group(2), dihedral_group(4))
    dec = elementary_decomposition(G)
    assert dec.ok and dec.rank == 1
    assert isomorphic(dec.factor("T"), cyclic_group(2)).isomorphic
    assert isomorphic(dec.factor("U"), dihedral_group(4)).isomorphic
    assert power_structure_commutes(G, dec)


@pytest.mark.parametrize("orders,rank", [([2, 2, 2], 3), ([4, 2], 1), ([4, 4], 0), ([2], 1)])
def test_abelian_ranks(orders, rank):
    G = abelian_group(orders)
    dec = elementary_decomposition(G)
    assert dec.rank == rank
    assert elementary_ideal(G, dec).ok


def test_trivial_group():
    G = cyclic_group(1)
    dec = elementary_decomposition(G)
    assert dec.rank == 0 and elementary_ideal(G, dec).ok


@pytest.mark.parametrize("G", [
    direct_product(cyclic_group(2), dihedral_group(4)),
    direct_product(abelian_group([2, 2]), quaternion_group()),
    abelian_group([4, 2, 2]),
], ids=["C2xD8", "C2^2xQ8", "C4xC2xC2"])
def test_randomized_uniqueness(G):
    base = elementary_decomposition(G)
    for seed in range(20):
        dec = elementary_decomposition(G, seed=seed)
        assert dec.rank == base.rank
        assert isomorphic(dec.factor("U"), base.factor("U")).isomorphic


def test_elementary_ideal_checks_on_c2xd8():
    G = direct_product(cyclic_group(2), dihedral_group(4))
    res = elementary_ideal(G, elementary_decomposition(G))
    assert res.ok and len(res.checks) > 5


def test_reduction_compare():
    C2 = cyclic_group(2)
    v = reduce_and_compare(direct_product(C2, dihedral_group(4)), direct_product(C2, quaternion_group()))
    assert v.distinguished
    v = reduce_and_compare(abelian_group([4, 2]), abelian_group([2, 2, 2]))
    assert v.distinguished and v.verdict.field == "rank of elementary abelian factor"
    G = corpus_groups()["U1"]
    assert not reduce_and_compare(G, G).distinguished
