from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import sympy_rank
from scrollrank import linalg
from scrollrank.terracini import RankBackend, rank_of


def matrices(max_rows=6, max_cols=7, elements=st.integers(-5, 5)):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elements, min_size=c, max_size=c), min_size=r, max_size=r)))


def low_rank(rng, rows, cols, rank):
    A = rng.integers(-9, 10, size=(rows, rank))
    B = rng.integers(-9, 10, size=(rank, cols))
    return [[int(x) for x in row] for row in A @ B]


@given(matrices())
def test_bareiss_matches_sympy(M):
    assert linalg.bareiss_rank(M) == sympy_rank(M)


@given(matrices(elements=st.fractions(min_value=-3, max_value=3, max_denominator=5)))
def test_bareiss_rational_entries(M):
    assert linalg.bareiss_rank(M) == sympy_rank(M)


def test_backends_agree_on_random_low_rank():
    rng = np.random.default_rng(7)
    for _ in range(100):
        rows, cols = rng.integers(2, 20), rng.integers(2, 30)
        rank = int(rng.integers(0, min(rows, cols) + 1))
        M = low_rank(rng, rows, cols, max(rank, 1)) if rank else [[0] * cols for _ in range(rows)]
        exact = linalg.bareiss_pivots(M)
        assert linalg.modp_pivots(M, 2**61 - 1) == exact
        assert rank_of(M, RankBackend.float_svd()) == len(exact)


def test_small_prime_can_undercount():
    M = [[1, 0], [0, 7]]
    assert linalg.bareiss_rank(M) == 2
    assert len(linalg.modp_pivots(M, 7)) == 1


@given(matrices())
def test_prefix_ranks_from_pivots(M):
    pivots = linalg.bareiss_pivots(M)
    cols = len(M[0])
    bounds = list(range(1, cols + 1))
    expected = [sympy_rank([row[:b] for row in M]) for b in bounds]
    assert linalg.prefix_ranks(pivots, bounds) == expected


@given(matrices(max_rows=5, max_cols=5), st.data())
def test_pinv_solve_is_moore_penrose(A, data):
    b = data.draw(st.lists(st.integers(-5, 5), min_size=len(A), max_size=len(A)))
    x, rank, consistent = linalg.pinv_solve(A, b)
    assert rank == sympy_rank(A)
    import sympy

    expected = sympy.Matrix(A).pinv() * sympy.Matrix(b)
    assert [Fraction(int(e.p), int(e.q)) for e in expected] == x
    assert consistent == (linalg.matvec(A, x) == [Fraction(v) for v in b])


def test_inverse_singular():
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])
