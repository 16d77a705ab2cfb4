import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bandspec import (

    EmpiricalSpectrum,
    RAYLEIGH,
    eigenvalues,
    generate_channel,
    gram,
    ldl_shifted,
    power_profile,
    power_profile_sup_diff,
    trace_moment,
    wyner,
)

from conftest import random_banded


def test_ecdf_basics():
    s = EmpiricalSpectrum(np.array([1.0, 2.0, 3.0]))
    assert s.ecdf(0.5) == 0.0
    assert s.ecdf(2.0) == pytest.approx(2 / 3)
    assert s.ecdf(3.0) == 1.0
    assert s.ecdf(10.0) == 1.0
    # right continuity at a jump point
    assert s.ecdf(2.0) == s.ecdf(2.0 + 1e-12)
    assert s.ecdf(2.0 - 1e-12) < s.ecdf(2.0)


@given(st.lists(st.floats(-50, 50), min_size=1, max_size=30))
@settings(max_examples=50, deadline=None)
def test_ecdf_is_a_cdf(values):
    s = EmpiricalSpectrum(np.array(values))
    grid = np.linspace(min(values) - 1, max(values) + 1, 101)
    f = s.ecdf(grid)
    assert f[0] == 0.0 and f[-1] == 1.0
    assert np.all(np.diff(f) >= 0)


def test_shannon_transform_limits():
    s = EmpiricalSpectrum(np.ones(7))
    assert s.shannon_transform(0.0) == 0.0
    assert s.shannon_transform(3.0) == pytest.approx(np.log(4.0), rel=1e-15)
    with pytest.raises(ValueError):
        s.shannon_transform(-1.0)


def test_shannon_transform_monotone_concave(rng):
    params = wyner(64, 1, 0.6, 0.6, RAYLEIGH)
    s = eigenvalues(gram(generate_channel(params, rng)))
    rhos = np.linspace(0.0, 20.0, 41)
    vals = np.array([s.shannon_transform(r) for r in rhos])
    assert np.all(np.diff(vals) >= 0)
    assert np.all(np.diff(vals, 2) <= 1e-12)


def test_shannon_transform_dual_route(rng):
    params = wyner(256, 1, 0.8, 0.3, RAYLEIGH)
    a = gram(generate_channel(params, rng))
    s = eigenvalues(a)
    for rho in (0.1, 1.0, 10.0, 100.0):
        via_ldl = np.log(ldl_shifted(a, rho)).mean()
        assert s.shannon_transform(rho) == pytest.approx(via_ldl, rel=1e-10)


def test_moment_basics():
    s = EmpiricalSpectrum(np.array([2.0, 2.0]))
    assert s.moment(3) == pytest.approx(8.0)
    assert s.moment(1) == pytest.approx(2.0)
    assert EmpiricalSpectrum(np.array([1.0, 3.0])).moment(1) == pytest.approx(2.0)


def test_trace_moment_identities(rng):
    a = random_banded(30, 2, rng)
    assert trace_moment(a, 1) == pytest.approx(a.diag.mean(), rel=1e-14)
    frob = np.sum(np.abs(a.to_dense()) ** 2) / a.n
    assert trace_moment(a, 2) == pytest.approx(frob, rel=1e-13)
    with pytest.raises(ValueError):
        trace_moment(a, 4)


@pytest.mark.parametrize("bandwidth", [1, 2, 3])
def test_trace_moment_cubed_dense_oracle(bandwidth, rng):
    a = random_banded(10, bandwidth, rng)
    dense = a.to_dense()
    want = np.trace(np.linalg.matrix_power(dense, 3)).real / a.n
    assert trace_moment(a, 3) == pytest.approx(want, rel=1e-10, abs=1e-10)


def test_first_moment_ensemble_mean():
    # 200-replicate ensemble mean of trace/N against the 1 + 2 alpha^2 limit
    n, n_reps, alpha = 2048, 200, 0.5
    params = wyner(n, 1, alpha, alpha, RAYLEIGH)
    total = 0.0
    for r in range(n_reps):
        rng = np.random.default_rng(r)
        total += trace_moment(gram(generate_channel(params, rng)), 1)
    want = 1.0 + 2 * alpha**2
    assert abs(total / n_reps / want - 1.0) < 0.01


def test_trace_moments_match_eigenvalue_route(rng):
    params = wyner(128, 2, 0.7, 0.5, RAYLEIGH)
    a = gram(generate_channel(params, rng))
    s = eigenvalues(a)
    for p in (1, 2, 3):
        assert trace_moment(a, p) == pytest.approx(s.moment(p), rel=1e-9)


def test_ks_distance_cases():
    s = EmpiricalSpectrum(np.array([0.3, 0.9, 1.4]))
    assert s.ks_distance(s.ecdf) == 0.0
    single = EmpiricalSpectrum(np.array([0.5]))
    uniform_cdf = lambda x: np.clip(x, 0.0, 1.0)
    assert single.ks_distance(uniform_cdf) == pytest.approx(0.5)


def test_scaled_spectrum():
    s = EmpiricalSpectrum(np.array([1.0, 4.0]))
    assert np.allclose(s.scaled(0.5).eigenvalues, [0.5, 2.0])
    with pytest.raises(ValueError):
        s.scaled(0.0)


def test_power_profile_diagonal_only():
    params = wyner(8, 1, 0.0, 0.0, RAYLEIGH)
    grid = power_profile(params)
    assert grid.shape == (8, 8)
    assert np.allclose(np.diag(grid), 1.0)
    assert np.count_nonzero(grid - np.diag(np.diag(grid))) == 0


def test_power_profile_row_mass():
    params = wyner(10, 3, 0.5, 0.4, RAYLEIGH)
    grid = power_profile(params)
    assert grid.shape == (10, 30)
    # interior rows: each of K columns per block carries gain^2 * m2
    interior = grid[1:-1].sum(axis=1)
    want = 3 * (1.0 + 0.25 + 0.16)
    assert np.allclose(interior, want, rtol=1e-13)
    # refined grid agrees with the natural one on block centers
    fine = power_profile(params, 20, 60)
    assert np.allclose(fine[::2, ::2], grid)


def test_power_profile_never_converges_uniformly():
    m2 = RAYLEIGH.amplitude_moment(2)
    for n in (16, 32, 64):
        pa = wyner(n, 1, 0.5, 0.5, RAYLEIGH)
        pb = wyner(2 * n, 1, 0.5, 0.5, RAYLEIGH)
        assert power_profile_sup_diff(pa, pb) >= 0.5 * m2


def test_power_profile_sup_diff_requires_matching_k():
    pa = wyner(8, 1, 0.5, 0.5, RAYLEIGH)
    pb = wyner(8, 2, 0.5, 0.5, RAYLEIGH)
    with pytest.raises(ValueError):
        power_profile_sup_diff(pa, pb)
