import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mipkit.linalg import (
    Subspace,
    complement_basis,
    intersection,
    inverse,
    kernel,
    rank,
    span,
)


def matrices(p, max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def brute_span(rows, p):
    rows = np.asarray(rows, dtype=np.int64)
    return {tuple((np.asarray(c) @ rows) % p) for c in itertools.product(range(p), repeat=len(rows))}


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_rank_matches_span_size(p, data):
    rows = data.draw(matrices(p))
    assert p ** rank(rows, p) == len(brute_span(rows, p))


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_kernel_is_left_null_space(p, data):
    rows = np.asarray(data.draw(matrices(p, max_rows=7)), dtype=np.int64)
    K = kernel(rows, p)
    assert K.shape[0] == rows.shape[0] - rank(rows, p)
    if K.size:
        assert not ((K @ rows) % p).any()
        assert rank(K, p) == K.shape[0]


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_intersection_against_enumeration(p, data):
    cols = data.draw(st.integers(1, 4))
    a = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols), min_size=1, max_size=3))
    b = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols), min_size=1, max_size=3))
    meet = intersection(span(p, cols, a), span(p, cols, b))
    assert p ** meet.dim == len(brute_span(a, p) & brute_span(b, p))


def test_contains_and_reduce():
    S = span(3, 3, [[1, 2, 0], [0, 1, 1]])
    assert S.contains([1, 0, 1])  # (1,2,0) + (0,1,1)
    assert not S.contains([0, 0, 1])
    assert not S.reduce([2, 0, 2]).any()
    assert S.reduce([2, 1, 2]).any()


def test_subspace_equality_is_basis_independent():
    assert span(2, 3, [[1, 1, 0], [0, 1, 1]]) == span(2, 3, [[1, 0, 1], [1, 1, 0]])
    assert Subspace.full(2, 3) == span(2, 3, np.eye(3, dtype=int))
    assert Subspace.zero(5, 4).is_zero()


@pytest.mark.parametrize("p", [2, 3, 7])
def test_inverse(p):
    rng = np.random.default_rng(p)
    for _ in range(20):
        M = rng.integers(0, p, size=(5, 5))
        if rank(M, p) < 5:
            with pytest.raises(ValueError):
                inverse(M, p)
            continue
        assert np.array_equal((M @ inverse(M, p)) % p, np.eye(5, dtype=np.int64))


def test_complement_basis():
    S = span(2, 4, [[1, 1, 0, 0]])
    picked = complement_basis(S, np.eye(4, dtype=int))
    assert len(picked) == 3
    assert (S + span(2, 4, np.eye(4, dtype=int)[picked])).is_full()
