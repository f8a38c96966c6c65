"""Multi-indices and tensor coordinates of homogeneous polynomials.

A form ``f`` of degree ``s`` in ``m`` variables is stored by its symmetric
tensor coordinates ``f_alpha`` (one per multi-index ``alpha`` with
``|alpha| = s``), so that::

    f(u) = sum_alpha  multinomial(alpha) * f_alpha * u**alpha

With this convention the coordinates of a power ``(v^T u)^a`` are simply
``v**alpha``, and catalecticant entries are plain coordinate lookups.

Multi-indices are plain tuples of non-negative ints.  Every enumeration in
the package uses :func:`multi_index_set` order (lexicographically
decreasing), which also fixes the column layout of all matrices and the
order of coordinates in serialized files.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence

MultiIndex = tuple[int, ...]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction.

    Floats are refused: every public operation is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def format_rational(x) -> str:
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=None)
def multi_index_set(s: int, m: int) -> tuple[MultiIndex, ...]:
    """All ``alpha`` in N^m with ``|alpha| = s``, lexicographically decreasing.

    >>> multi_index_set(2, 2)
    ((2, 0), (1, 1), (0, 2))
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if s < 0:
        raise ValueError("s must be >= 0")
    if m == 1:
        return ((s,),)
    out = []
    for first in range(s, -1, -1):
        for rest in multi_index_set(s - first, m - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def index_position(s: int, m: int) -> dict[MultiIndex, int]:
    return {alpha: i for i, alpha in enumerate(multi_index_set(s, m))}


def multinomial(alpha: Sequence[int]) -> int:
    """``|alpha|! / (alpha_1! ... alpha_m!)``."""
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative exponent in {tuple(alpha)}")
    out = math.factorial(sum(alpha))
    for a in alpha:
        out //= math.factorial(a)
    return out


def sym_dim(s: int, m: int) -> int:
    """Dimension of S^s V for dim V = m."""
    return math.comb(m + s - 1, s)


def space_dim(profile: Sequence[int], m: int, n: int = 1) -> int:
    """Dimension of S^a V (x) W: ``n * sum_k binom(m + a_k - 1, a_k)``."""
    if len(profile) == 0:
        raise ValueError("empty degree profile")
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    if any(a < 0 for a in profile):
        raise ValueError("profile degrees must be >= 0")
    return n * sum(sym_dim(a, m) for a in profile)


def monomial(v: Sequence, alpha: MultiIndex):
    out = 1
    for vj, aj in zip(v, alpha):
        if aj:
            out *= vj ** aj
    return out


@dataclass(frozen=True)
class SymPoly:
    """Homogeneous polynomial of ``degree`` in ``m`` variables.

    ``coords`` is sparse: absent multi-indices are zero, and zero values are
    dropped on construction so that equality is structural.
    """

    m: int
    degree: int
    coords: Mapping[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        clean = {}
        for alpha, value in self.coords.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.m or sum(alpha) != self.degree or min(alpha) < 0:
                raise ValueError(
                    f"multi-index {alpha} is not of degree {self.degree} in {self.m} variables"
                )
            value = as_rational(value)
            if value:
                clean[alpha] = value
        object.__setattr__(self, "coords", clean)

    @classmethod
    def zero(cls, m: int, degree: int) -> "SymPoly":
        return cls(m, degree, {})

    @classmethod
    def from_dense(cls, m: int, degree: int, values: Sequence) -> "SymPoly":
        basis = multi_index_set(degree, m)
        if len(values) != len(basis):
            raise ValueError(f"expected {len(basis)} coordinates, got {len(values)}")
        return cls(m, degree, dict(zip(basis, values)))

    def __getitem__(self, alpha: MultiIndex) -> Fraction:
        return self.coords.get(tuple(alpha), Fraction(0))

    def dense(self) -> list[Fraction]:
        return [self[alpha] for alpha in multi_index_set(self.degree, self.m)]

    def is_zero(self) -> bool:
        return not self.coords

    def _check_compatible(self, other: "SymPoly"):
        if (self.m, self.degree) != (other.m, other.degree):
            raise ValueError("forms live in different spaces")

    def __add__(self, other: "SymPoly") -> "SymPoly":
        self._check_compatible(other)
        out = dict(self.coords)
        for alpha, value in other.coords.items():
            out[alpha] = out.get(alpha, 0) + value
        return SymPoly(self.m, self.degree, out)

    def __neg__(self) -> "SymPoly":
        return self.scale(-1)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + (-other)

    def scale(self, c) -> "SymPoly":
        c = as_rational(c)
        return SymPoly(self.m, self.degree, {a: c * x for a, x in self.coords.items()})

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "degree": self.degree,
            "coords": [
                {"alpha": list(alpha), "value": format_rational(self.coords[alpha])}
                for alpha in multi_index_set(self.degree, self.m)
                if alpha in self.coords
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SymPoly":
        coords = {}
        for entry in data.get("coords", []):
            alpha = tuple(entry["alpha"])
            if alpha in coords:
                raise ValueError(f"duplicate coordinate {alpha}")
            coords[alpha] = as_rational(entry["value"])
        return cls(int(data["m"]), int(data["degree"]), coords)


def power_coords(v: Sequence, a: int) -> SymPoly:
    """Coordinates of ``v^a``, i.e. of the form ``(v^T u)^a``: entry ``v**alpha``."""
    v = [as_rational(x) for x in v]
    return SymPoly(len(v), a, {alpha: monomial(v, alpha) for alpha in multi_index_set(a, len(v))})


def poly_eval(p: SymPoly, u: Sequence) -> Fraction:
    if len(u) != p.m:
        raise ValueError(f"point has {len(u)} entries, polynomial has {p.m} variables")
    u = [as_rational(x) for x in u]
    return sum(
        (multinomial(alpha) * value * monomial(u, alpha) for alpha, value in p.coords.items()),
        Fraction(0),
    )


def sum_polys(polys: Iterable[SymPoly], m: int, degree: int) -> SymPoly:
    acc: dict[MultiIndex, Fraction] = {}
    for p in polys:
        if (p.m, p.degree) != (m, degree):
            raise ValueError("forms live in different spaces")
        for alpha, value in p.coords.items():
            acc[alpha] = acc.get(alpha, 0) + value
    return SymPoly(m, degree, acc)
