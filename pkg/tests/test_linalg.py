import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from bcdual import linalg

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 2), min_size=c, max_size=c), min_size=r, max_size=r)))


def span_size(rows):
    rows = np.array(rows)
    seen = {tuple((np.array(cs) @ rows) % 3) for cs in itertools.product(range(3), repeat=len(rows))}
    return len(seen)


@settings(max_examples=150)
@given(matrices)
def test_rank_matches_brute_force_span(rows):
    assert 3 ** linalg.rank(rows) == span_size(rows)


@settings(max_examples=150)
@given(matrices)
def test_kernels(rows):
    m = np.array(rows)
    ns = linalg.nullspace(m)
    assert not ((m @ ns.T) % 3).any()
    assert ns.shape[0] == m.shape[1] - linalg.rank(m)
    lk = linalg.left_kernel(m)
    assert not ((lk @ m) % 3).any()
    assert lk.shape[0] == m.shape[0] - linalg.rank(m)


@given(matrices, st.lists(st.integers(0, 2), min_size=5, max_size=5))
def test_echelon_membership(rows, coeffs):
    m = np.array(rows)
    ech = linalg.Echelon(m.shape[1], m)
    combo = (np.array(coeffs[: m.shape[0]]) @ m) % 3
    assert ech.contains(combo)
    assert not ech.reduce(m).any()


def test_same_span_and_empty():
    a = [[1, 0, 2], [0, 1, 1]]
    b = [[1, 1, 0], [2, 0, 1]]
    assert linalg.same_span(a, b, 3)
    assert not linalg.same_span(a, [[1, 0, 0]], 3)
    assert linalg.Echelon(3).dim == 0
    assert linalg.Echelon(3).contains([0, 0, 0])
