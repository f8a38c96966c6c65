"""The decoupled representation f(u) = W g(V^T u) and its X-rank embedding.

Output i of the model is ``sum_l W[i][l] * g_l(v_l^T u)`` with
``g_l(t) = sum_k C[k-1][l] t^k`` (no constant term).  Its homogeneous part
of degree k, as a symmetric tensor, is ``sum_l W[i][l] C[k-1][l] v_l^k``,
so the whole map is a point of S^(1..d) V (x) W of X-rank <= r.

Once the directions (v_l, w_l) are known, the coefficients of every degree
solve a linear system; :func:`recover_coefficients` solves it exactly and
reports per degree whether the answer is unique.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .catalecticant import ProfilePoint
from .polyspace import (
    MultiIndex,
    SymPoly,
    as_rational,
    format_rational,
    multi_index_set,
    multinomial,
    power_coords,
    sum_polys,
)


def _rational_matrix(rows, name: str, n_rows: int | None = None) -> tuple[tuple[Fraction, ...], ...]:
    out = tuple(tuple(as_rational(x) for x in row) for row in rows)
    if n_rows is not None and len(out) != n_rows:
        raise ValueError(f"{name} must have {n_rows} rows")
    if len({len(row) for row in out}) > 1:
        raise ValueError(f"{name} is ragged")
    return out


@dataclass(frozen=True)
class DecoupledModel:
    """V (m x r), W (n x r), C (d x r; C[k-1][l] multiplies t^k in g_l)."""

    V: tuple[tuple[Fraction, ...], ...]
    W: tuple[tuple[Fraction, ...], ...]
    C: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        V = _rational_matrix(self.V, "V")
        W = _rational_matrix(self.W, "W")
        C = _rational_matrix(self.C, "C")
        if not V or not W or not C:
            raise ValueError("V, W and C need at least one row (m, n, d >= 1)")
        if not (len(V[0]) == len(W[0]) == len(C[0])):
            raise ValueError("V, W and C must have the same number of columns r")
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "C", C)

    @property
    def m(self) -> int:
        return len(self.V)

    @property
    def n(self) -> int:
        return len(self.W)

    @property
    def d(self) -> int:
        return len(self.C)

    @property
    def r(self) -> int:
        return len(self.V[0])

    def direction(self, l: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        return tuple(row[l] for row in self.V), tuple(row[l] for row in self.W)

    def directions(self) -> list[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
        return [self.direction(l) for l in range(self.r)]

    def to_json(self) -> dict:
        def rows(M):
            return [[format_rational(x) for x in row] for row in M]

        return {"m": self.m, "n": self.n, "d": self.d, "r": self.r,
                "V": rows(self.V), "W": rows(self.W), "C": rows(self.C)}

    @classmethod
    def from_json(cls, data: Mapping) -> "DecoupledModel":
        model = cls(data["V"], data["W"], data["C"])
        for key in ("m", "n", "d", "r"):
            if key in data and int(data[key]) != getattr(model, key):
                raise ValueError(f"declared {key}={data[key]} does not match the matrices")
        return model


def evaluate(model: DecoupledModel, u: Sequence) -> list[Fraction]:
    if len(u) != model.m:
        raise ValueError(f"point has {len(u)} entries, model has {model.m} inputs")
    u = [as_rational(x) for x in u]
    g = []
    for l in range(model.r):
        t = sum((row[l] * x for row, x in zip(model.V, u)), Fraction(0))
        g.append(sum((model.C[k][l] * t ** (k + 1) for k in range(model.d)), Fraction(0)))
    return [sum((wl * gl for wl, gl in zip(row, g)), Fraction(0)) for row in model.W]


def embed(model: DecoupledModel) -> ProfilePoint:
    """Coordinates of the model in S^(1..d) V (x) W."""
    m, d = model.m, model.d
    profile = tuple(range(1, d + 1))
    powers = [[power_coords(v, k) for k in profile] for v, _ in model.directions()]
    blocks = []
    for i in range(model.n):
        row = []
        for k in range(d):
            row.append(sum_polys(
                (powers[l][k].scale(model.W[i][l] * model.C[k][l]) for l in range(model.r)),
                m, k + 1,
            ))
        blocks.append(tuple(row))
    return ProfilePoint(profile, m, model.n, tuple(blocks))


def _proportional(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i, j in combinations(range(len(a)), 2))


def synth(m: int, n: int, d: int, r: int, seed: int = 0, bound: int = 99, max_tries: int = 1000) -> DecoupledModel:
    """Random integer model with entries in [-bound, bound].

    Columns of V are nonzero and pairwise non-proportional, columns of W are
    nonzero and every g_l has exact degree d.
    """
    if min(m, n, d, r) < 1 or bound < 1:
        raise ValueError("m, n, d, r and bound must be >= 1")
    rng = np.random.default_rng(seed)

    def draw(size, ok):
        for _ in range(max_tries):
            x = [int(t) for t in rng.integers(-bound, bound + 1, size=size)]
            if ok(x):
                return x
        raise ValueError(f"could not satisfy the model constraints with bound={bound}")

    vs: list[list[int]] = []
    for _ in range(r):
        vs.append(draw(m, lambda x: any(x) and not any(_proportional(x, y) for y in vs)))
    ws = [draw(n, any) for _ in range(r)]
    cs = [draw(d, lambda x: x[-1] != 0) for _ in range(r)]
    V = [[vs[l][j] for l in range(r)] for j in range(m)]
    W = [[ws[l][i] for l in range(r)] for i in range(n)]
    C = [[cs[l][k] for l in range(r)] for k in range(d)]
    return DecoupledModel(V, W, C)


@dataclass(frozen=True)
class RecoveryReport:
    C: tuple[tuple[Fraction, ...], ...]
    unique_per_degree: tuple[bool, ...]
    consistent_per_degree: tuple[bool, ...]
    rank_per_degree: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "C": [[format_rational(x) for x in row] for row in self.C],
            "unique_per_degree": list(self.unique_per_degree),
            "consistent_per_degree": list(self.consistent_per_degree),
            "rank_per_degree": list(self.rank_per_degree),
        }


def degree_system(point: ProfilePoint, directions: Sequence, k: int) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Matrix with columns vec(v_l^{a_k} (x) w_l) and right-hand side vec(pi_k(point))."""
    a = point.profile[k]
    cols = []
    for v, w in directions:
        vk = power_coords(v, a).dense()
        cols.append([as_rational(wi) * x for wi in w for x in vk])
    rhs = [x for p in point.degree_slice(k) for x in p.dense()]
    rows = [list(r) for r in zip(*cols)] if cols else [[] for _ in rhs]
    return rows, rhs


def recover_coefficients(point: ProfilePoint, directions: Sequence[tuple[Sequence, Sequence]]) -> RecoveryReport:
    """Solve ``pi_k(point) = sum_l c_{k,l} v_l^{a_k} (x) w_l`` for every degree k.

    Each system is solved exactly; underdetermined ones return their
    minimum-norm solution, inconsistent ones the minimum-norm least-squares
    fit with ``consistent_per_degree[k] = False``.
    """
    directions = [(tuple(v), tuple(w)) for v, w in directions]
    for v, w in directions:
        if len(v) != point.m or len(w) != point.n:
            raise ValueError(f"direction sizes ({len(v)}, {len(w)}) do not match (m={point.m}, n={point.n})")
        if not any(as_rational(x) for x in v) or not any(as_rational(x) for x in w):
            raise ValueError("directions must be nonzero")
    r = len(directions)
    C, unique, consistent, ranks = [], [], [], []
    for k in range(point.d):
        A, b = degree_system(point, directions, k)
        if r == 0:
            C.append(())
            unique.append(True)
            consistent.append(all(x == 0 for x in b))
            ranks.append(0)
            continue
        x, rank, ok = linalg.pinv_solve(A, b)
        C.append(tuple(x))
        unique.append(rank == r)
        consistent.append(ok)
        ranks.append(rank)
    return RecoveryReport(tuple(C), tuple(unique), tuple(consistent), tuple(ranks))


def parse_dense(coeffs: Mapping[tuple[int, MultiIndex], object], m: int, n: int, d: int) -> ProfilePoint:
    """Point of S^(1..d) V (x) W from monomial coefficients ``{(output, alpha): coeff}``.

    Outputs are numbered 1..n.  Coefficients are divided by the multinomial
    weight of alpha to get tensor coordinates.
    """
    coords: list[list[dict]] = [[{} for _ in range(d)] for _ in range(n)]
    for (output, alpha), coeff in coeffs.items():
        alpha = tuple(int(a) for a in alpha)
        if not 1 <= output <= n:
            raise ValueError(f"output {output} outside 1..{n}")
        if len(alpha) != m or min(alpha) < 0:
            raise ValueError(f"bad exponent {alpha} for {m} variables")
        s = sum(alpha)
        if s == 0:
            raise ValueError("constant terms are not allowed (f(0) = 0)")
        if s > d:
            raise ValueError(f"monomial {alpha} has degree {s} > {d}")
        block = coords[output - 1][s - 1]
        block[alpha] = block.get(alpha, 0) + as_rational(coeff) / multinomial(alpha)
    blocks = tuple(tuple(SymPoly(m, k + 1, coords[i][k]) for k in range(d)) for i in range(n))
    return ProfilePoint(tuple(range(1, d + 1)), m, n, blocks)


def print_dense(point: ProfilePoint) -> dict[tuple[int, MultiIndex], Fraction]:
    """Inverse of :func:`parse_dense` (nonzero monomial coefficients only)."""
    out = {}
    for i, row in enumerate(point.blocks):
        for p in row:
            for alpha in multi_index_set(p.degree, p.m):
                if alpha in p.coords:
                    out[(i + 1, alpha)] = multinomial(alpha) * p.coords[alpha]
    return out


def dense_to_json(point: ProfilePoint) -> dict:
    if point.profile != tuple(range(1, point.d + 1)):
        raise ValueError("dense polynomial files hold profile (1, ..., d) points only")
    terms = [
        {"output": i, "alpha": list(alpha), "coeff": format_rational(c)}
        for (i, alpha), c in print_dense(point).items()
    ]
    return {"m": point.m, "n": point.n, "d": point.d, "terms": terms}


def dense_from_json(data: Mapping) -> ProfilePoint:
    coeffs: dict = {}
    for term in data.get("terms", []):
        key = (int(term["output"]), tuple(term["alpha"]))
        coeffs[key] = coeffs.get(key, 0) + as_rational(term["coeff"])
    return parse_dense(coeffs, int(data["m"]), int(data["n"]), int(data["d"]))


def scaled_model(model: DecoupledModel, l: int, lam, mu) -> DecoupledModel:
    """Apply the trivial indeterminacy (v_l, w_l, c_kl) -> (lam v_l, mu w_l, c_kl / (mu lam^k))."""
    lam, mu = as_rational(lam), as_rational(mu)
    V = [list(row) for row in model.V]
    W = [list(row) for row in model.W]
    C = [list(row) for row in model.C]
    for row in V:
        row[l] *= lam
    for row in W:
        row[l] *= mu
    for k, row in enumerate(C):
        row[l] /= mu * lam ** (k + 1)
    return DecoupledModel(V, W, C)
