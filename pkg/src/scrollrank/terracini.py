"""Secant-variety dimensions through Terracini's lemma.

The tangent space of sigma_r at a general sum of r scroll points is the span
of the r tangent spaces, i.e. the column space of the horizontally stacked
Jacobians of ``psi_m`` at r independent random parameter points.  The
dimension of sigma_r is therefore a matrix rank.

Random points are drawn per trial from ``default_rng([seed, trial])`` one
after the other, so the first r points of a sweep up to R are exactly the
points a probe at r would draw.  One elimination of the widest matrix gives
every prefix rank at once (see :func:`scrollrank.linalg.prefix_ranks`).
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from . import linalg
from .polyspace import space_dim
from .scroll import _check_profile, jacobian_columns, sample_params

log = logging.getLogger(__name__)

MERSENNE_61 = 2**61 - 1


class BackendKind(str, Enum):
    EXACT = "exact-rational"
    PRIME = "prime-field"
    FLOAT = "float-svd"


@dataclass(frozen=True)
class RankBackend:
    kind: BackendKind = BackendKind.PRIME
    prime: int | None = MERSENNE_61
    tolerance: float | None = None

    def __post_init__(self):
        kind = BackendKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is BackendKind.PRIME:
            if self.prime is None:
                raise ValueError("prime-field backend needs a prime")
            import flint

            if self.prime < 3 or not flint.fmpz(self.prime).is_prime():
                raise ValueError(f"{self.prime} is not an odd prime")
        elif self.prime is not None:
            raise ValueError(f"{kind.value} backend takes no prime")
        if kind is BackendKind.FLOAT:
            if self.tolerance is None or not self.tolerance > 0:
                raise ValueError("float-svd backend needs a positive tolerance")
        elif self.tolerance is not None:
            raise ValueError(f"{kind.value} backend takes no tolerance")

    @classmethod
    def exact(cls) -> "RankBackend":
        return cls(BackendKind.EXACT, None, None)

    @classmethod
    def prime_field(cls, prime: int = MERSENNE_61) -> "RankBackend":
        return cls(BackendKind.PRIME, prime, None)

    @classmethod
    def float_svd(cls, tolerance: float = 1e-9) -> "RankBackend":
        return cls(BackendKind.FLOAT, None, tolerance)

    @classmethod
    def from_name(cls, name: str, prime: int = MERSENNE_61, tolerance: float = 1e-9) -> "RankBackend":
        kind = BackendKind(name)
        if kind is BackendKind.EXACT:
            return cls.exact()
        if kind is BackendKind.PRIME:
            return cls.prime_field(prime)
        return cls.float_svd(tolerance)


DEFAULT_BACKEND = RankBackend()


def rank_of(M: Sequence[Sequence], backend: RankBackend = DEFAULT_BACKEND) -> int:
    """Rank of a rational matrix under the chosen backend.

    prime-field ranks never exceed the rational rank and agree with it for
    random integer matrices with overwhelming probability.
    """
    rows, cols = linalg.shape(M)
    if rows == 0 or cols == 0:
        return 0
    if backend.kind is BackendKind.EXACT:
        return linalg.bareiss_rank(M)
    if backend.kind is BackendKind.PRIME:
        return len(linalg.modp_pivots(M, backend.prime))
    return linalg.float_rank(M, backend.tolerance)


def _prefix_ranks(rows: list[list], boundaries: list[int], backend: RankBackend) -> list[int]:
    if backend.kind is BackendKind.FLOAT:
        A = np.asarray(rows, dtype=float)
        return [linalg.float_rank(A[:, :b], backend.tolerance) if b else 0 for b in boundaries]
    if backend.kind is BackendKind.EXACT:
        pivots = linalg.bareiss_pivots(rows)
    else:
        pivots = linalg.modp_pivots(rows, backend.prime)
    return linalg.prefix_ranks(pivots, boundaries)


def point_dim(profile: Sequence[int], m: int, n: int) -> int:
    """Closed-form dimension of the cone over the scroll (x) W: ``m + n + d - 2``."""
    return m + n + len(profile) - 2


@dataclass
class SecantProbe:
    profile: tuple[int, ...]
    m: int
    n: int
    r: int
    measured_dim: int
    expected_dim: int
    defect: int
    trials: int
    seed: int
    backend: str
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = asdict(self)
        out["profile"] = list(self.profile)
        return out


def secant_sweep(
    profile: Sequence[int],
    m: int,
    n: int,
    r_max: int,
    trials: int = 3,
    seed: int = 0,
    backend: RankBackend = DEFAULT_BACKEND,
    bound: int = 99,
) -> list[SecantProbe]:
    """Probe sigma_r for every r = 1..r_max from one stacked Jacobian per trial.

    ``measured_dim`` is the maximum rank over trials; further trials are
    skipped once every r has reached its expected dimension (a rank cannot
    exceed it).
    """
    profile = _check_profile(profile)
    if r_max < 1:
        raise ValueError("r must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    N = space_dim(profile, m, n)
    k_closed = point_dim(profile, m, n)
    best = [0] * r_max
    warnings: list[str] = []
    k = k_closed
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        columns: list[list] = []
        boundaries = []
        for _ in range(r_max):
            columns.extend(jacobian_columns(sample_params(profile, m, n, rng, bound)))
            boundaries.append(len(columns))
        rows = [list(r) for r in zip(*columns)]
        ranks = _prefix_ranks(rows, boundaries, backend)
        best = [max(a, b) for a, b in zip(best, ranks)]
        k = best[0] if best[0] != k_closed else k_closed
        if all(best[r - 1] == min(r * k, N) for r in range(1, r_max + 1)):
            break
    if k != k_closed:
        msg = (f"r=1 probe gives dim {k} for profile {profile}, m={m}, n={n}; "
               f"closed form m+n+d-2 = {k_closed}; using the probe value")
        log.warning(msg)
        warnings.append(msg)
    out = []
    for r in range(1, r_max + 1):
        expected = min(r * k, N)
        out.append(SecantProbe(
            profile=profile, m=m, n=n, r=r,
            measured_dim=best[r - 1], expected_dim=expected,
            defect=expected - best[r - 1],
            trials=trials, seed=seed, backend=backend.kind.value,
            warnings=list(warnings),
        ))
    return out


def secant_dim_probe(
    profile: Sequence[int],
    m: int,
    n: int,
    r: int,
    trials: int = 3,
    seed: int = 0,
    backend: RankBackend = DEFAULT_BACKEND,
    bound: int = 99,
) -> SecantProbe:
    return secant_sweep(profile, m, n, r, trials, seed, backend, bound)[-1]


def max_nondefective_rank(
    profile: Sequence[int],
    m: int,
    n: int,
    backend: RankBackend = DEFAULT_BACKEND,
    cap: int | None = None,
    trials: int = 3,
    seed: int = 0,
    bound: int = 99,
) -> int:
    """Largest r <= cap with sigma_1..sigma_r all non-defective (0 if sigma_1 is).

    ``cap`` defaults to m*n, beyond which the decoupling model is never
    identifiable.
    """
    cap = m * n if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be >= 1")
    best = 0
    for probe in secant_sweep(profile, m, n, cap, trials, seed, backend, bound):
        if probe.defect:
            break
        best = probe.r
    return best


def generic_rank_probe(
    profile: Sequence[int],
    m: int,
    n: int = 1,
    backend: RankBackend = DEFAULT_BACKEND,
    trials: int = 3,
    seed: int = 0,
    bound: int = 99,
) -> int:
    """Smallest r whose secant variety fills the ambient space."""
    profile = _check_profile(profile)
    N = space_dim(profile, m, n)
    r_hi = max(1, math.ceil(N / point_dim(profile, m, n)))
    while True:
        for probe in secant_sweep(profile, m, n, r_hi, trials, seed, backend, bound):
            if probe.measured_dim == N:
                return probe.r
        if r_hi >= N:
            raise RuntimeError(f"secant dimensions never reached {N} up to r = {r_hi}")
        r_hi = min(N, r_hi + max(1, r_hi // 4))


def audit_ah(
    m_max: int,
    d_max: int,
    m_min: int = 2,
    d_min: int = 3,
    printed: Sequence[tuple[int, int]] = ((3, 3), (4, 3), (4, 5), (4, 6)),
    trials: int = 3,
    seed: int = 0,
    backend: RankBackend = DEFAULT_BACKEND,
    bound: int = 99,
) -> dict:
    """Find defective Veronese secants nu_d(C^m) by probing, and compare with a
    printed exception list.  The report is plain JSON-ready data."""
    if m_min < 2 or d_min < 3 or m_max < m_min or d_max < d_min:
        raise ValueError("audit grid needs 2 <= m_min <= m_max and 3 <= d_min <= d_max")
    printed = sorted({(int(a), int(b)) for a, b in printed})
    cells = []
    defective = []
    for m in range(m_min, m_max + 1):
        for d in range(d_min, d_max + 1):
            N = math.comb(m + d - 1, d)
            r_max = math.ceil(N / m) + 1
            sweep = secant_sweep((d,), m, 1, r_max, trials, seed, backend, bound)
            bad = [p.r for p in sweep if p.defect]
            full = next((p.r for p in sweep if p.measured_dim == N), None)
            if full is None:
                full = generic_rank_probe((d,), m, 1, backend, trials, seed, bound)
            cells.append({
                "m": m,
                "d": d,
                "ambient_dim": N,
                "ceil_r1": math.ceil(N / m),
                "probe_generic_rank": full,
                "defective_ranks": bad,
                "defects": [p.defect for p in sweep if p.defect],
            })
            if bad:
                defective.append((m, d))
    in_grid = [(m, d) for m, d in printed if m_min <= m <= m_max and d_min <= d <= d_max]
    return {
        "grid": {"m": [m_min, m_max], "d": [d_min, d_max]},
        "seed": seed,
        "trials": trials,
        "backend": backend.kind.value,
        "printed_exceptions": [list(p) for p in printed],
        "probe_defective": [list(p) for p in defective],
        "defective_not_listed": [list(p) for p in defective if p not in printed],
        "listed_not_defective": [list(p) for p in in_grid if p not in defective],
        "listed_outside_grid": [list(p) for p in printed if p not in in_grid],
        "cells": cells,
    }
