from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scrollrank.polyspace import space_dim
from scrollrank.terracini import (
    RankBackend,
    audit_ah,
    generic_rank_probe,
    max_nondefective_rank,
    point_dim,
    rank_of,
    secant_dim_probe,
    secant_sweep,
)

EXACT = RankBackend.exact()
PRIME = RankBackend.prime_field()
FLOAT = RankBackend.float_svd()


def test_cubic_ternary_sweep():
    dims = [p.measured_dim for p in secant_sweep((3,), 3, 1, 4)]
    assert dims == [3, 6, 9, 10]
    assert all(p.defect == 0 for p in secant_sweep((3,), 3, 1, 4))


def test_quartic_ternary_is_defective_at_five():
    probe = secant_dim_probe((4,), 3, 1, 5)
    assert (probe.measured_dim, probe.expected_dim, probe.defect) == (14, 15, 1)


def test_mixed_profile_example():
    assert secant_dim_probe((1, 3), 5, 1, 6).measured_dim == 35


def test_point_dimension():
    assert secant_dim_probe((1, 2, 3), 2, 1, 1).measured_dim == 4
    assert point_dim((1, 2, 3), 2, 1) == 4
    assert point_dim((1, 2, 3), 3, 2) == 6
    assert secant_dim_probe((1, 2, 3), 3, 2, 1).warnings == []


def test_max_nondefective_small_case():
    assert max_nondefective_rank((1, 2, 3), 2, 1) in {1, 2}


@pytest.mark.parametrize("profile,m,n,r", [((3,), 3, 1, 4), ((4,), 3, 1, 6), ((1, 2, 3), 3, 2, 5), ((2, 3), 2, 3, 4)])
def test_backends_agree(profile, m, n, r):
    a = [p.measured_dim for p in secant_sweep(profile, m, n, r, backend=EXACT)]
    b = [p.measured_dim for p in secant_sweep(profile, m, n, r, backend=PRIME)]
    c = [p.measured_dim for p in secant_sweep(profile, m, n, r, backend=FLOAT)]
    assert a == b == c


def test_sweep_prefix_matches_single_probe():
    sweep = secant_sweep((1, 2, 3), 3, 2, 6, seed=4)
    for p in sweep:
        assert secant_dim_probe((1, 2, 3), 3, 2, p.r, seed=4).measured_dim == p.measured_dim


def test_dims_monotone_and_capped():
    N = space_dim((2, 4), 3, 2)
    dims = [p.measured_dim for p in secant_sweep((2, 4), 3, 2, 12)]
    assert dims == sorted(dims)
    assert dims[-1] <= N


def test_generic_rank_binary_cubic():
    assert generic_rank_probe((3,), 2) == 2


def test_backend_validation():
    with pytest.raises(ValueError):
        RankBackend.prime_field(15)
    with pytest.raises(ValueError):
        RankBackend.from_name("nope")
    assert rank_of([[1, 2], [2, 4]], FLOAT) == 1


def test_audit_small_grid():
    report = audit_ah(3, 4)
    assert report["probe_defective"] == [[3, 4]]
    assert [3, 3] in report["listed_not_defective"]
    cell = next(c for c in report["cells"] if (c["m"], c["d"]) == (3, 4))
    assert cell["probe_generic_rank"] == 6 and cell["ceil_r1"] == 5


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("d", [3, 4])
def test_full_profile_dominates_homogenized_veronese(m, d):
    """The Veronese of V + C sits inside the scroll with profile (0, ..., d)
    as a proper subvariety, so its secant dimensions are a lower bound only;
    both live in spaces of the same dimension."""
    full = secant_sweep(tuple(range(d + 1)), m, 1, 6)
    veronese = secant_sweep((d,), m + 1, 1, 6)
    assert space_dim(tuple(range(d + 1)), m) == space_dim((d,), m + 1)
    assert all(a.measured_dim >= b.measured_dim for a, b in zip(full, veronese))
    assert full[0].measured_dim == point_dim(tuple(range(d + 1)), m, 1) > veronese[0].measured_dim


@settings(max_examples=25)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=3).map(sorted).filter(lambda p: p[-1] >= 1),
       st.integers(2, 4), st.integers(1, 3), st.integers(0, 1000))
def test_sweep_invariants(profile, m, n, seed):
    sweep = secant_sweep(tuple(profile), m, n, 5, trials=1, seed=seed)
    k = point_dim(profile, m, n)
    assert sweep[0].measured_dim == k and not sweep[0].warnings
    for a, b in zip(sweep, sweep[1:]):
        assert 0 <= b.measured_dim - a.measured_dim <= k
