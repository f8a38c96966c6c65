from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import linear_form_power, sympy_rank
from scrollrank.linalg import bareiss_rank, transpose
from scrollrank.polyspace import poly_eval, space_dim
from scrollrank.scroll import ScrollParams, jacobian_at, profile_point, psi, psi_m, sample_params

profiles = st.lists(st.integers(1, 5), min_size=1, max_size=3, unique=True).map(lambda p: tuple(sorted(p)))


def test_psi_blocks_are_scaled_powers():
    f = psi((1, 2), (3, -1), (1, 2))
    u = (Fraction(1, 3), 5)
    assert poly_eval(f.block(0, 0), u) == 3 * linear_form_power((1, 2), u, 1)
    assert poly_eval(f.block(0, 1), u) == -linear_form_power((1, 2), u, 2)


def test_psi_m_output_weights():
    f = psi_m((2, -1), (1, 1), (1,), (2,))
    assert f.block(0, 0) == psi((1, 1), (2,), (2,)).block(0, 0)
    assert f.block(1, 0) == psi((1, 1), (-1,), (2,)).block(0, 0)


def test_profile_validation():
    for bad in ((), (3, 2), (-1,)):
        with pytest.raises(ValueError):
            psi((1, 1), (1,) * max(len(bad), 1), bad)


@given(profiles.filter(lambda p: p[-1] <= 4), st.integers(1, 4), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_jacobian_matches_finite_difference(profile, m, n, seed):
    """Each coordinate has degree <= 4 in any single parameter, so the
    five-point central difference is exact in rational arithmetic."""
    params = sample_params(profile, m, n, np.random.default_rng(seed), bound=5)
    J = jacobian_at(params)
    groups = (["w"] if n > 1 else []) + ["v", "c"]
    col = 0
    for name in groups:
        base = list(getattr(params, name))
        for j in range(len(base)):
            def at(h):
                shifted = list(base)
                shifted[j] += h
                p = ScrollParams(**{**vars(params), name: tuple(shifted)})
                return profile_point(p).flat()

            h = Fraction(1)
            deriv = [(-a + 8 * b - 8 * c + e) / (12 * h)
                     for a, b, c, e in zip(at(2 * h), at(h), at(-h), at(-2 * h))]
            assert [row[col] for row in J] == deriv
            col += 1
    assert col == len(J[0])


@pytest.mark.parametrize("d", range(1, 6))
@pytest.mark.parametrize("m", range(2, 7))
@pytest.mark.parametrize("n", range(1, 5))
def test_jacobian_rank_is_point_dimension(d, m, n):
    profile = tuple(range(1, d + 1))
    J = jacobian_at(sample_params(profile, m, n, np.random.default_rng(d * 100 + m * 10 + n)))
    assert len(J) == space_dim(profile, m, n)
    expected = m + n + d - 2 if n > 1 else m + d - 1
    assert bareiss_rank(transpose(J)) == expected


def test_jacobian_at_zero_parameters():
    params = ScrollParams((0, 0), (0, 0), (0, 0), (1, 2))
    assert bareiss_rank(jacobian_at(params)) == 0
    # v = 0 with a constant block: only the c column of that block survives
    params = ScrollParams((1, 2), (0, 0), (3, 4), (0, 2))
    J = jacobian_at(params)
    assert bareiss_rank(J) == sympy_rank(J) == 2


def test_sample_params_nonzero_and_bounded():
    rng = np.random.default_rng(0)
    for _ in range(50):
        p = sample_params((1, 3), 3, 2, rng, bound=1)
        assert any(p.v) and any(p.w) and any(p.c)
        assert max(map(abs, p.v + p.w + p.c)) <= 1
    assert sample_params((2,), 2, 1, rng).w == (1,)


@given(profiles, st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
def test_psi_m_is_linear_in_w_and_c(profile, m, n, seed):
    rng = np.random.default_rng(seed)
    p, q = sample_params(profile, m, n, rng, bound=9), sample_params(profile, m, n, rng, bound=9)
    w_sum = tuple(a + b for a, b in zip(p.w, q.w))
    c_sum = tuple(a + b for a, b in zip(p.c, q.c))
    assert psi_m(w_sum, p.v, p.c, profile) == psi_m(p.w, p.v, p.c, profile) + psi_m(q.w, p.v, p.c, profile)
    assert psi_m(p.w, p.v, c_sum, profile) == psi_m(p.w, p.v, p.c, profile) + psi_m(p.w, p.v, q.c, profile)
