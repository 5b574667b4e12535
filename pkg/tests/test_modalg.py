from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mipkit.groups import abelian_group, cyclic_group
from mipkit.modalg import GroupAlgebra, Inconclusive, jennings_bound
from mipkit.pgroup import conjugacy_classes
from tests.conftest import corpus_groups, small_2_groups


def naive_product(G, x, y, p):
    out = np.zeros(G.order, dtype=np.int64)
    for g in range(G.order):
        for h in range(G.order):
            out[G.m(g, h)] += x[g] * y[h]
    return out % p


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_multiply_matches_convolution(data):
    G = small_2_groups()["Q8"]
    A = GroupAlgebra(G)
    vec = st.lists(st.integers(0, 1), min_size=8, max_size=8)
    x, y = np.array(data.draw(vec)), np.array(data.draw(vec))
    assert np.array_equal(A.multiply(x, y), naive_product(G, x, y, 2))
    assert np.array_equal(A.right_mult_matrix(x) @ y % 2, A.multiply(x, y))
    assert np.array_equal(A.left_mult_matrix(x) @ y % 2, A.multiply(y, x))


def test_odd_prime_multiplication():
    G = abelian_group([3, 3])
    A = GroupAlgebra(G)
    rng = np.random.default_rng(1)
    x, y = A.random_element(rng), A.random_element(rng)
    assert np.array_equal(A.multiply(x, y), naive_product(G, x, y, 3))
    assert np.array_equal(A.multiply(A.one(), x), x)


@pytest.mark.parametrize("p,k", [(2, 3), (2, 4), (3, 2)])
def test_cyclic_delta_powers(p, k):
    A = GroupAlgebra(cyclic_group(p**k))
    for n in range(p**k + 1):
        assert A.delta_power(n).dim == p**k - n
    assert A.nilpotency_index() == p**k


def test_elementary_abelian_delta_powers():
    A = GroupAlgebra(abelian_group([2, 2, 2, 2]))
    for n in range(6):
        assert A.delta_power(n).dim == sum(comb(4, i) for i in range(n, 5))


def jennings_hilbert(ranks, p):
    """Coefficients of prod_i (1 + t^i + ... + t^((p-1)i))^(d_i)."""
    poly = np.array([1], dtype=object)
    for i, d in enumerate(ranks, 1):
        factor = np.zeros((p - 1) * i + 1, dtype=object)
        factor[::i] = 1
        for _ in range(d):
            poly = np.convolve(poly, factor)
    return list(poly)


@pytest.mark.parametrize("label", ["U1", "U3", "U6", "U7", "U12"])
def test_layer_dimensions_follow_jennings_ranks(label):
    A = GroupAlgebra(corpus_groups()[label])
    expected = jennings_hilbert(A.jennings_ranks(), A.p)
    got = [A.delta_power(n).dim - A.delta_power(n + 1).dim for n in range(len(expected))]
    assert got == expected
    assert A.nilpotency_index() == jennings_bound(A.jennings_ranks(), A.p)


@pytest.mark.parametrize("label", ["U2", "U4", "U9"])
def test_center_and_commutator_dimensions(label):
    G = corpus_groups()[label]
    A = GroupAlgebra(G)
    ncls = len(conjugacy_classes(G).sizes)
    assert A.center_basis().dim == ncls
    assert A.center_basis() == A.center_by_commutation()
    assert A.commutator_subspace().dim == G.order - ncls


def test_ideals(aux_groups):
    A = GroupAlgebra(aux_groups["D8"])
    assert A.is_ideal(A.delta_power(2))
    assert not A.is_ideal(A.group_span([0, 1]))


def square_zero_vectors(G):
    """Brute force: every y in Delta with y^2 = 0, as rows."""
    n = G.order
    # all vectors of even weight, i.e. the whole augmentation ideal
    codes = np.arange(2 ** (n - 1), dtype=np.int64)
    X = ((codes[:, None] >> np.arange(n - 1)) & 1).astype(np.int8)
    X = np.hstack([X, (X.sum(axis=1) % 2)[:, None]])
    S = np.zeros_like(X)
    for g in range(n):
        for h in range(n):
            S[:, G.mul[g, h]] ^= X[:, g] & X[:, h]
    return X[~S.any(axis=1)].astype(np.int64)


def square_zero_outside_delta2(G):
    D2 = GroupAlgebra(G).delta_power(2)
    return any(not D2.contains(y) for y in square_zero_vectors(G))


@pytest.mark.parametrize("name", sorted(small_2_groups()))
def test_omega1_decision_against_brute_force(name):
    G = small_2_groups()[name]
    res = GroupAlgebra(G).omega1_in_delta2()
    assert res.holds == (not square_zero_outside_delta2(G))
    if not res.holds:
        w = res.witness
        A = GroupAlgebra(G)
        assert not A.multiply(w, w).any() and not A.delta_power(2).contains(w)


@pytest.mark.parametrize("name", sorted(small_2_groups()))
def test_lifting_per_coset_against_brute_force(name):
    G = small_2_groups()[name]
    A = GroupAlgebra(G)
    P = A._reducer(2)
    residues = {tuple(r) for r in square_zero_vectors(G) @ P % 2}
    reps = np.array([A.g_minus_1(g) for g in A.frattini_basis()])
    for c in A.residue_power_map().nonzero_isotropic:
        x = np.asarray(c) @ reps % 2
        y = A._lift_square_zero(x, [10**6])
        assert (y is not None) == (tuple(x @ P % 2) in residues)
        if y is not None:
            assert not A.multiply(y, y).any() and A.delta_power(2).contains((y - x) % 2)


def test_lifting_is_exercised_and_budget_enforced():
    A = GroupAlgebra(corpus_groups()["U11"])
    res = A.omega1_in_delta2()
    assert res.holds and "lifts" in res.method
    with pytest.raises(Inconclusive):
        GroupAlgebra(corpus_groups()["U11"]).omega1_in_delta2(search_budget=1)


def test_omega1_odd_prime():
    assert GroupAlgebra(cyclic_group(9)).omega1_in_delta2().holds
    res = GroupAlgebra(abelian_group([3, 3])).omega1_in_delta2()
    assert not res.holds
