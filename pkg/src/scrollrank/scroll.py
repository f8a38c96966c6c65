"""Parametrizations of the Veronese scroll and of its Segre product with W.

``psi(v, c)      = (c_1 v^a_1, ..., c_d v^a_d)``
``psi_m(w, v, c) = blocks w_i c_k v^a_k``  (i over outputs, k over degrees)

``jacobian_at`` gives the exact Jacobian of ``psi_m``; its column span is
the tangent space of the cone at that point, which is what the Terracini
probes stack.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .catalecticant import ProfilePoint
from .polyspace import as_rational, index_position, multi_index_set, power_coords, space_dim


def _check_profile(profile: Sequence[int]) -> tuple[int, ...]:
    profile = tuple(int(a) for a in profile)
    if not profile:
        raise ValueError("empty degree profile")
    if any(a < 0 for a in profile):
        raise ValueError("profile degrees must be >= 0")
    if any(a > b for a, b in zip(profile, profile[1:])):
        raise ValueError(f"profile {profile} is not nondecreasing")
    return profile


@dataclass(frozen=True)
class ScrollParams:
    w: tuple
    v: tuple
    c: tuple
    profile: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "profile", _check_profile(self.profile))
        for name in ("w", "v", "c"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if len(self.c) != len(self.profile):
            raise ValueError(f"c has {len(self.c)} entries for a profile of length {len(self.profile)}")
        if not self.v or not self.w:
            raise ValueError("v and w must be nonempty")

    @property
    def m(self) -> int:
        return len(self.v)

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def d(self) -> int:
        return len(self.profile)

    @property
    def n_params(self) -> int:
        return (self.n if self.n > 1 else 0) + self.m + self.d


def psi(v: Sequence, c: Sequence, profile: Sequence[int]) -> ProfilePoint:
    return psi_m((1,), v, c, profile)


def psi_m(w: Sequence, v: Sequence, c: Sequence, profile: Sequence[int]) -> ProfilePoint:
    profile = _check_profile(profile)
    if len(c) != len(profile):
        raise ValueError(f"c has {len(c)} entries for a profile of length {len(profile)}")
    if not v or not w:
        raise ValueError("v and w must be nonempty")
    powers = [power_coords(v, a) for a in profile]
    w = [as_rational(x) for x in w]
    c = [as_rational(x) for x in c]
    blocks = tuple(tuple(p.scale(wi * ck) for p, ck in zip(powers, c)) for wi in w)
    return ProfilePoint(profile, len(v), len(w), blocks)


@lru_cache(maxsize=None)
def _degree_structure(a: int, m: int):
    """For each alpha of degree a: (j, index of alpha - e_j in degree a-1) for alpha_j > 0."""
    if a == 0:
        return ((),)
    lower = index_position(a - 1, m)
    out = []
    for alpha in multi_index_set(a, m):
        out.append(tuple(
            (j, alpha[j], lower[alpha[:j] + (alpha[j] - 1,) + alpha[j + 1:]])
            for j in range(m) if alpha[j]
        ))
    return tuple(out)


def _monomials_by_degree(v: Sequence, top: int) -> list[list]:
    """``vals[s][idx]`` = v**alpha for alpha the idx-th multi-index of degree s."""
    m = len(v)
    vals = [[1]]
    for s in range(1, top + 1):
        vals.append([v[terms[0][0]] * vals[s - 1][terms[0][2]] for terms in _degree_structure(s, m)])
    return vals


def jacobian_columns(params: ScrollParams) -> list[list]:
    """Columns of the Jacobian of psi_m at ``params`` (w block omitted when n = 1).

    Entry types follow the parameters: integer parameters give an integer
    matrix, rational parameters a rational one.
    """
    w, v, c, profile = params.w, params.v, params.c, params.profile
    m, n = len(v), len(w)
    vals = _monomials_by_degree(v, max(profile))
    # per degree k: coordinates v^alpha and partials d(v^alpha)/dv_j
    mono = []
    dmono = []
    for a in profile:
        mono.append(vals[a])
        dv = [[0] * len(vals[a]) for _ in range(m)]
        if a > 0:
            low = vals[a - 1]
            for idx, terms in enumerate(_degree_structure(a, m)):
                for j, aj, pos in terms:
                    dv[j][idx] = aj * low[pos]
        dmono.append(dv)

    def stacked(per_output):
        col = []
        for i in range(n):
            for part in per_output(i):
                col.extend(part)
        return col

    zeros = [[0] * len(vk) for vk in mono]
    columns = []
    if n > 1:
        for j in range(n):
            columns.append(stacked(lambda i, j=j: (
                [ck * x for x in vk] if i == j else z for ck, vk, z in zip(c, mono, zeros)
            )))
    for j in range(m):
        columns.append(stacked(lambda i, j=j: (
            [w[i] * ck * x for x in dv[j]] for ck, dv in zip(c, dmono)
        )))
    for l in range(len(profile)):
        columns.append(stacked(lambda i, l=l: (
            [w[i] * x for x in vk] if k == l else z for k, (vk, z) in enumerate(zip(mono, zeros))
        )))
    return columns


def jacobian_at(params: ScrollParams) -> list[list]:
    """Row-major Jacobian: rows are ambient coordinates (blocks (i, k) row-major,
    polyspace order inside a block), columns are [w (n > 1 only), v, c]."""
    cols = jacobian_columns(params)
    rows = space_dim(params.profile, params.m, params.n)
    if not cols:
        return [[] for _ in range(rows)]
    return [list(r) for r in zip(*cols)]


def _nonzero_vector(rng: np.random.Generator, size: int, bound: int) -> tuple[int, ...]:
    while True:
        x = rng.integers(-bound, bound + 1, size=size)
        if np.any(x):
            return tuple(int(t) for t in x)


def sample_params(profile: Sequence[int], m: int, n: int, rng: np.random.Generator, bound: int = 99) -> ScrollParams:
    """Uniform integer parameters in [-bound, bound] with v, w, c all nonzero.

    For n = 1 the output weight is fixed to w = (1,).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    profile = _check_profile(profile)
    w = _nonzero_vector(rng, n, bound) if n > 1 else (1,)
    v = _nonzero_vector(rng, m, bound)
    c = _nonzero_vector(rng, len(profile), bound)
    return ScrollParams(w, v, c, profile)


def profile_point(params: ScrollParams) -> ProfilePoint:
    return psi_m(params.w, params.v, params.c, params.profile)
