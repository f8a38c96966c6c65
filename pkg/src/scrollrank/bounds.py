"""Closed-form rank, identifiability and dimension bounds.

Everything here is exact: rationals are Fractions and ceilings are taken
only where the formulas take them.  Notation: m = dim V (inputs),
n = dim W (outputs), d = top degree, profile = (a_1 <= ... <= a_d).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .polyspace import format_rational, sym_dim

PRINTED_AH_EXCEPTIONS = frozenset({(3, 3), (4, 3), (4, 5), (4, 6)})


def ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


class PolicySource(str, Enum):
    PAPER = "paper"
    PROBE_AUDITED = "probe-audited"


@dataclass(frozen=True)
class AHExceptionPolicy:
    """Which (m, d) get +1 on top of ceil(r1) in the Veronese generic rank."""

    exception_pairs: frozenset = PRINTED_AH_EXCEPTIONS
    source: PolicySource = PolicySource.PAPER

    def __post_init__(self):
        pairs = frozenset((int(m), int(d)) for m, d in self.exception_pairs)
        for m, d in pairs:
            _require(m >= 2 and d >= 3, f"exception pair {(m, d)} needs m >= 2, d >= 3")
        object.__setattr__(self, "exception_pairs", pairs)
        object.__setattr__(self, "source", PolicySource(self.source))

    @classmethod
    def paper(cls) -> "AHExceptionPolicy":
        return cls(PRINTED_AH_EXCEPTIONS, PolicySource.PAPER)

    @classmethod
    def probe_audited(cls, m_max: int = 5, d_max: int = 6, **probe_kwargs) -> "AHExceptionPolicy":
        """Exception set measured by Terracini probes on 2 <= m <= m_max, 3 <= d <= d_max."""
        from .terracini import audit_ah

        report = audit_ah(m_max, d_max, **probe_kwargs)
        return cls(frozenset(tuple(p) for p in report["probe_defective"]), PolicySource.PROBE_AUDITED)


def r1(m: int, d: int) -> Fraction:
    """binom(m+d-1, d) / m: dim S^d V over dim of the Veronese cone."""
    _require(m >= 1 and d >= 1, "r1 needs m >= 1, d >= 1")
    return Fraction(math.comb(m + d - 1, d), m)


def ah_generic_rank(m: int, d: int, policy: AHExceptionPolicy | None = None) -> int:
    _require(d >= 3, "generic rank formula needs d >= 3")
    _require(m >= 1, "m must be >= 1")
    policy = policy or AHExceptionPolicy.paper()
    return ceil(r1(m, d)) + ((m, d) in policy.exception_pairs)


def _require_rdomain(m: int, d: int, n: int = 1):
    _require(d >= 3, "d < 3")
    _require(m >= 2, "m < 2")
    _require(n >= 1, "n < 1")


def r2(m: int, d: int) -> Fraction:
    _require_rdomain(m, d)
    return r1(m, d) - ((m, d) in {(4, 4), (3, 6), (6, 3)})


def r3(m: int, d: int) -> Fraction:
    _require_rdomain(m, d)
    return r1(m, d) - Fraction(m - 2, 3) if d == 3 else r1(m, d)


def r4(m: int, n: int, d: int) -> Fraction:
    _require_rdomain(m, d, n)
    return Fraction(math.comb(m + d - 1, d), m + n - 1)


def r5(m: int, n: int, d: int) -> Fraction:
    _require_rdomain(m, d, n)
    return r2(m, d) if n == 1 else min(r4(m, n, d), r3(m, d))


def _check_profile(profile: Sequence[int]) -> tuple[int, ...]:
    profile = tuple(int(a) for a in profile)
    _require(len(profile) > 0, "empty degree profile")
    _require(all(a >= 0 for a in profile), "profile degrees must be >= 0")
    _require(all(a <= b for a, b in zip(profile, profile[1:])), f"profile {profile} is not nondecreasing")
    return profile


def identifiability_bound(profile: Sequence[int], m: int, n: int) -> int:
    """Largest r for which the scroll model is guaranteed r-identifiable:
    ``min(ceil(r5(m, n, a_d)) - 1, dim S^{a_1} V) * n``."""
    profile = _check_profile(profile)
    _require(profile[-1] >= 3, "top degree a_d must be >= 3")
    _require(profile[0] >= 1, "profile degrees must be >= 1")
    _require(m >= 2, "m must be >= 2")
    return min(ceil(r5(m, n, profile[-1])) - 1, sym_dim(profile[0], m)) * n


def dis_bound(m: int, n: int) -> int:
    """Largest r with (m-1) m (n-1) n >= 2 (r-1) r."""
    _require(m >= 1 and n >= 1, "m and n must be >= 1")
    K = (m - 1) * m * (n - 1) * n
    # r <= (1 + sqrt(1 + 2K)) / 2
    r = (1 + math.isqrt(1 + 2 * K)) // 2
    while 2 * r * (r - 1) > K:
        r -= 1
    while 2 * (r + 1) * r <= K:
        r += 1
    return r


@dataclass(frozen=True)
class DefectFormula:
    defect: int
    valid: bool


def defect_formula(profile: Sequence[int], m: int, n: int, r: int) -> DefectFormula:
    """``sum_j max(r - n dim S^{a_j} V, 0)`` and whether the hypotheses
    (m >= 2, 1 <= a_1, a_{d-1} < a_d, a_d >= 3, r <= (ceil(r5(m,n,a_d)) - 1) n) hold."""
    profile = _check_profile(profile)
    defect = sum(max(r - n * sym_dim(a, m), 0) for a in profile)
    valid = (
        m >= 2 and n >= 1 and r >= 1
        and profile[0] >= 1
        and profile[-1] >= 3
        and (len(profile) == 1 or profile[-2] < profile[-1])
    )
    if valid:
        valid = r <= (ceil(r5(m, n, profile[-1])) - 1) * n
    return DefectFormula(defect, valid)


def defect_validity_limit(profile: Sequence[int], m: int, n: int) -> int:
    """Largest r covered by :func:`defect_formula` (0 when the hypotheses fail)."""
    profile = _check_profile(profile)
    if not (m >= 2 and profile[0] >= 1 and profile[-1] >= 3
            and (len(profile) == 1 or profile[-2] < profile[-1])):
        return 0
    return max(0, (ceil(r5(m, n, profile[-1])) - 1) * n)


@dataclass(frozen=True)
class GenericRankBounds:
    lower: int
    upper: int
    exact: int | None


def rgen_d1d_bounds(m: int, d: int) -> GenericRankBounds:
    """Bounds on the generic rank of the scroll with profile (d-1, d); exact when m > (d-1)^2."""
    _require(d >= 4, "needs d >= 4")
    _require(m > 5, "needs m > 5")
    low_dim = math.comb(m + d - 2, d - 1)
    top_dim = math.comb(m + d - 1, d)
    lower = ceil(Fraction(low_dim + top_dim, m + 1))
    upper = ceil(Fraction(low_dim + (m - 1) * ceil(Fraction(top_dim, m)), m))
    return GenericRankBounds(lower, upper, lower if m > (d - 1) ** 2 else None)


@dataclass(frozen=True)
class MaxRankBounds:
    ours: int | None
    bbs: int
    naive: int


def rmax_bounds(m: int, d: int) -> MaxRankBounds:
    """Maximal-rank bounds for single-output decoupling of degree d in m variables.

    ``ours`` = 2 * r_gen(X_(d-1,d)) needs d >= 4 and m > (d-1)^2; ``bbs`` is
    binom(m+d-2, d-1); ``naive`` counts top-degree monomials.
    """
    _require(m >= 2 and d >= 1, "needs m >= 2, d >= 1")
    ours = None
    if d >= 4 and m > (d - 1) ** 2:
        ours = 2 * rgen_d1d_bounds(m, d).lower
    return MaxRankBounds(ours, math.comb(m + d - 2, d - 1), math.comb(m + d - 1, d))


@dataclass(frozen=True)
class PartialIdentifiability:
    applies: bool
    max_r: int


def partial_identifiability_range(m: int, n: int, d: int, s: int) -> PartialIdentifiability:
    """Ranks up to binom(m+s-1, s) n are identifiable except the degree < s
    coefficients, provided binom(m+s-1, s) < r5(m, n, d)."""
    _require(1 < s < d, "needs 1 < s < d")
    size = math.comb(m + s - 1, s)
    return PartialIdentifiability(size < r5(m, n, d), size * n)


@dataclass
class BoundsReport:
    m: int
    n: int
    d: int
    r1: Fraction | None = None
    ah_generic_rank: int | None = None
    r2: Fraction | None = None
    r3: Fraction | None = None
    r4: Fraction | None = None
    r5: Fraction | None = None
    ident_bound: int | None = None
    mn_cap: int = 0
    dis_bound: int = 0
    rgen_d1d: GenericRankBounds | None = None
    rmax: MaxRankBounds | None = None
    missing: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {"m": self.m, "n": self.n, "d": self.d}
        for name in ("r1", "r2", "r3", "r4", "r5"):
            value = getattr(self, name)
            out[name] = None if value is None else format_rational(value)
        out["ah_generic_rank"] = self.ah_generic_rank
        out["ident_bound"] = self.ident_bound
        out["mn_cap"] = self.mn_cap
        out["dis_bound"] = self.dis_bound
        out["rgen_d1d"] = None if self.rgen_d1d is None else vars(self.rgen_d1d).copy()
        out["rmax"] = None if self.rmax is None else vars(self.rmax).copy()
        out["missing"] = dict(self.missing)
        return out


def bounds_report(m: int, n: int, d: int, policy: AHExceptionPolicy | None = None) -> BoundsReport:
    """Every closed-form quantity for the decoupling model of degree d, m inputs, n outputs.

    Quantities whose hypotheses fail are left as None with the reason in ``missing``.
    """
    _require(m >= 1 and n >= 1 and d >= 1, "m, n, d must be >= 1")
    rep = BoundsReport(m, n, d, mn_cap=m * n, dis_bound=dis_bound(m, n))
    rep.r1 = r1(m, d)
    if d >= 3:
        rep.ah_generic_rank = ah_generic_rank(m, d, policy)
    else:
        rep.missing["ah_generic_rank"] = "d < 3"
    if d >= 3 and m >= 2:
        rep.r2, rep.r3, rep.r4, rep.r5 = r2(m, d), r3(m, d), r4(m, n, d), r5(m, n, d)
        rep.ident_bound = identifiability_bound(tuple(range(1, d + 1)), m, n)
    else:
        reason = "d < 3" if d < 3 else "m < 2"
        for name in ("r2", "r3", "r4", "r5", "ident_bound"):
            rep.missing[name] = reason
    if d >= 4 and m > 5:
        rep.rgen_d1d = rgen_d1d_bounds(m, d)
    else:
        rep.missing["rgen_d1d"] = "d < 4" if d < 4 else "m <= 5"
    if m >= 2:
        rep.rmax = rmax_bounds(m, d)
    else:
        rep.missing["rmax"] = "m < 2"
    return rep
