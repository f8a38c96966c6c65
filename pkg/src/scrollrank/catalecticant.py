"""Catalecticants, the stacked matrix S(f) and Veronese-scroll membership.

A point ``f = (f^(1), ..., f^(d))`` of S^a V lies on the Veronese scroll
(is ``(c_1 v^a_1, ..., c_d v^a_d)`` for some v, c) iff the horizontally
stacked first catalecticants ``[C_f1 | ... | C_fd]`` have rank <= 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .linalg import bareiss_rank
from .polyspace import MultiIndex, SymPoly, multi_index_set, space_dim


@dataclass(frozen=True)
class ProfilePoint:
    """Element of S^a V (x) W: ``blocks[i][k]`` is output i's degree-a_k form."""

    profile: tuple[int, ...]
    m: int
    n: int
    blocks: tuple[tuple[SymPoly, ...], ...]

    def __post_init__(self):
        profile = tuple(int(a) for a in self.profile)
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "blocks", tuple(tuple(row) for row in self.blocks))
        if not profile:
            raise ValueError("empty degree profile")
        if any(a < 0 for a in profile):
            raise ValueError("profile degrees must be >= 0")
        if len(self.blocks) != self.n:
            raise ValueError(f"expected {self.n} outputs, got {len(self.blocks)}")
        for row in self.blocks:
            if len(row) != len(profile):
                raise ValueError("every output needs one block per profile entry")
            for a, p in zip(profile, row):
                if p.m != self.m or p.degree != a:
                    raise ValueError(
                        f"block of degree {p.degree} in {p.m} variables does not match ({a}, m={self.m})"
                    )

    @classmethod
    def zero(cls, profile: Sequence[int], m: int, n: int = 1) -> "ProfilePoint":
        return cls(tuple(profile), m, n, tuple(tuple(SymPoly.zero(m, a) for a in profile) for _ in range(n)))

    @property
    def d(self) -> int:
        return len(self.profile)

    def block(self, i: int, k: int) -> SymPoly:
        return self.blocks[i][k]

    def degree_slice(self, k: int) -> tuple[SymPoly, ...]:
        """The k-th projection: output blocks of profile entry k."""
        return tuple(row[k] for row in self.blocks)

    def flat(self) -> list[Fraction]:
        """Coordinates in ambient order: blocks (i, k) row-major, polyspace order inside."""
        out = []
        for row in self.blocks:
            for p in row:
                out.extend(p.dense())
        return out

    @property
    def dim(self) -> int:
        return space_dim(self.profile, self.m, self.n)

    def _check_compatible(self, other: "ProfilePoint"):
        if (self.profile, self.m, self.n) != (other.profile, other.m, other.n):
            raise ValueError("points live in different spaces")

    def __add__(self, other: "ProfilePoint") -> "ProfilePoint":
        self._check_compatible(other)
        blocks = tuple(tuple(p + q for p, q in zip(r1, r2)) for r1, r2 in zip(self.blocks, other.blocks))
        return ProfilePoint(self.profile, self.m, self.n, blocks)

    def scale(self, c) -> "ProfilePoint":
        return ProfilePoint(self.profile, self.m, self.n, tuple(tuple(p.scale(c) for p in row) for row in self.blocks))

    def to_json(self) -> dict:
        return {
            "profile": list(self.profile),
            "m": self.m,
            "n": self.n,
            "blocks": [[p.to_json() for p in row] for row in self.blocks],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ProfilePoint":
        blocks = tuple(tuple(SymPoly.from_json(b) for b in row) for row in data["blocks"])
        return cls(tuple(data["profile"]), int(data["m"]), int(data["n"]), blocks)


@dataclass(frozen=True)
class CatalecticantMatrix:
    """m x binom(m+s-2, s-1) matrix with ``entries[i][beta] = f_{beta + e_i}``."""

    entries: tuple[tuple[Fraction, ...], ...]
    columns: tuple[MultiIndex, ...]

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(range(len(self.entries)))

    def rank(self) -> int:
        return bareiss_rank(self.entries)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


def catalecticant(p: SymPoly) -> CatalecticantMatrix:
    if p.degree < 1:
        raise ValueError("catalecticant needs degree >= 1")
    columns = multi_index_set(p.degree - 1, p.m)
    entries = []
    for i in range(p.m):
        entries.append(tuple(p[beta[:i] + (beta[i] + 1,) + beta[i + 1:]] for beta in columns))
    return CatalecticantMatrix(tuple(entries), columns)


def _require_scroll_point(f: ProfilePoint):
    if f.n != 1:
        raise ValueError("stacked catalecticant is defined for single-output points (n = 1)")
    if any(a < 1 for a in f.profile):
        raise ValueError("every profile degree must be >= 1 for catalecticants")


def stacked_catalecticant(f: ProfilePoint) -> list[list[Fraction]]:
    """``S(f) = [C_f1 | ... | C_fd]``, m rows."""
    _require_scroll_point(f)
    rows: list[list[Fraction]] = [[] for _ in range(f.m)]
    for p in f.blocks[0]:
        for row, extra in zip(rows, catalecticant(p).entries):
            row.extend(extra)
    return rows


def scroll_membership(f: ProfilePoint) -> bool:
    """Exact test ``rank S(f) <= 1``."""
    return bareiss_rank(stacked_catalecticant(f)) <= 1


def minors_2x2(S: Sequence[Sequence]) -> list[Fraction]:
    """All 2x2 minors: row pairs (i < j) outer, column pairs (k < l) inner."""
    if len(S) < 2:
        raise ValueError("need at least two rows for 2x2 minors")
    cols = len(S[0])
    out = []
    for i, j in combinations(range(len(S)), 2):
        ri, rj = S[i], S[j]
        for k, l in combinations(range(cols), 2):
            out.append(Fraction(ri[k] * rj[l] - ri[l] * rj[k]))
    return out
