"""Exact and modular dense linear algebra on row-major lists.

Matrices are ``list[list]`` of exact rationals (ints or Fractions).  Three
rank routes are provided:

* :func:`bareiss_pivots` - fraction-free elimination over the integers,
  exact over Q;
* :func:`modp_pivots` - reduction modulo a prime, elimination in FLINT;
* :func:`float_rank` - singular values with a relative threshold.

The exact and modular routes return *pivot columns*: the greedy set of
columns each independent of the ones before it.  The rank of any column
prefix ``M[:, :b]`` is then the number of pivots below ``b``, which lets a
single elimination answer a whole sweep of Terracini ranks.
"""
from __future__ import annotations

import bisect
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .polyspace import as_rational

Matrix = list[list]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(M)
    return rows, (len(M[0]) if rows else 0)


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*M)]


def integer_rows(M: Sequence[Sequence]) -> list[list[int]]:
    """Scale every row by the lcm of its denominators (rank and pivots unchanged)."""
    out = []
    for row in M:
        fracs = [as_rational(x) for x in row]
        den = 1
        for x in fracs:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([x.numerator * (den // x.denominator) for x in fracs])
    return out


def bareiss_pivots(M: Sequence[Sequence]) -> list[int]:
    """Pivot columns of ``M`` over Q by fraction-free (Bareiss) elimination.

    All intermediate entries are minors of ``M``, so divisions are exact and
    no Fraction arithmetic is needed.
    """
    A = integer_rows(M)
    rows, cols = shape(A)
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        top = A[r]
        p = top[c]
        for i in range(r + 1, rows):
            row = A[i]
            f = row[c]
            if f == 0:
                if p != prev:
                    # still has to be brought to the common denominator
                    A[i] = [x * p // prev for x in row]
                    A[i][c] = 0
                continue
            A[i] = [(p * x - f * y) // prev for x, y in zip(row, top)]
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def bareiss_rank(M: Sequence[Sequence]) -> int:
    return len(bareiss_pivots(M))


def modp_pivots(M: Sequence[Sequence], p: int) -> list[int]:
    """Pivot columns of ``M`` reduced modulo the prime ``p``.

    Rows are first cleared of denominators, so the result is the pivot set of
    an integer matrix mod p: never more pivots than over Q, and equal for all
    but finitely many primes.
    """
    import flint

    A = integer_rows(M)
    rows, cols = shape(A)
    if rows == 0 or cols == 0:
        return []
    R, rank = flint.nmod_mat([[x % p for x in row] for row in A], p).rref()
    pivots = []
    j = 0
    for i in range(rank):
        while int(R[i, j]) == 0:
            j += 1
        pivots.append(j)
        j += 1
    return pivots


def float_rank(M, tolerance: float) -> int:
    """Count singular values above ``tolerance * largest``."""
    A = np.asarray([[float(x) for x in row] for row in M], dtype=float)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tolerance * s[0]))


def prefix_ranks(pivots: Sequence[int], boundaries: Sequence[int]) -> list[int]:
    """Rank of each column prefix ``M[:, :b]`` given the pivot columns of M."""
    return [bisect.bisect_left(pivots, b) for b in boundaries]


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = [[as_rational(x) for x in row] for row in M]
    rows, cols = shape(A)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A]


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def pinv_solve(A: Sequence[Sequence], b: Sequence) -> tuple[list[Fraction], int, bool]:
    """Minimum-norm least-squares solution of ``A x = b`` over Q.

    Uses the full-rank factorization ``A = F G`` (F: pivot columns of A,
    G: nonzero rows of rref(A)), for which
    ``A^+ = G^T (G G^T)^-1 (F^T F)^-1 F^T``.

    Returns ``(x, rank, consistent)``; when consistent, ``x`` is the
    minimum-norm exact solution.
    """
    rows, cols = len(A), (len(A[0]) if A else 0)
    b = [as_rational(x) for x in b]
    G, pivots = rref(A)
    rank = len(pivots)
    if rank == 0:
        return [Fraction(0)] * cols, 0, all(x == 0 for x in b)
    F = [[as_rational(A[i][j]) for j in pivots] for i in range(rows)]
    Ft = transpose(F)
    y = matvec(inverse(matmul(Ft, F)), matvec(Ft, b))
    z = matvec(inverse(matmul(G, transpose(G))), y)
    x = matvec(transpose(G), z)
    consistent = matvec(A, x) == b
    return x, rank, consistent
