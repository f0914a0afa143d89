import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from volxcorr.corr import (
    CorrelationFunction,
    auto_correlation,
    confidence_band,
    cross_correlation,
    default_max_lag,
    significant_lag_count,
)
from volxcorr.errors import InvalidLevel, SeriesTooShort, ZeroVariance


def brute_ccf(a, b, lag):
    n = len(a)
    if lag >= 0:
        return np.corrcoef(a[lag:], b[: n - lag])[0, 1]
    return np.corrcoef(a[: n + lag], b[-lag:])[0, 1]


def test_matches_corrcoef_oracle(rng):
    a, b = rng.standard_normal((2, 300))
    b = b + 0.5 * np.roll(a, 2)
    cf = cross_correlation(a, b, max_lag=10)
    np.testing.assert_array_equal(cf.lags, np.arange(-10, 11))
    for lag, rho in zip(cf.lags, cf.rho):
        assert rho == pytest.approx(brute_ccf(a, b, lag), abs=1e-12)
    np.testing.assert_array_equal(cf.n_obs, 300 - np.abs(cf.lags))


def test_self_correlation_lag0(rng):
    a = rng.standard_normal(50)
    assert cross_correlation(a, a, 5).at(0) == pytest.approx(1.0, abs=1e-15)


def test_shift_alignment():
    b = np.random.default_rng(1).standard_normal(100)
    a = np.empty_like(b)
    a[3:] = b[:-3]  # a_{t+3} = b_t
    a[:3] = [0.3, -1.0, 2.0]
    assert cross_correlation(a, b, 5).at(3) == pytest.approx(1.0, abs=1e-12)


def test_independent_noise_mostly_inside_wide_band():
    inside = total = 0
    for seed in range(20):
        a, b = np.random.default_rng(seed).standard_normal((2, 10_000))
        cf = cross_correlation(a, b, 50)
        inside += np.count_nonzero(np.abs(cf.rho) < 3 * 1.96 / 100)
        total += cf.rho.size
    assert inside / total >= 0.99


@pytest.mark.parametrize(
    "n, expected",
    [(10_000, 0.0196), (100, 0.196), (14_980, 0.016013718294359054)],
)
def test_confidence_band(n, expected):
    assert confidence_band(n, 0.95) == pytest.approx(expected, rel=1e-4 if n != 14_980 else 1e-12)


@pytest.mark.parametrize("level", [0.0, 1.0, -0.1, 1.5])
def test_invalid_level(level):
    with pytest.raises(InvalidLevel):
        confidence_band(100, level)


def test_errors():
    with pytest.raises(ZeroVariance):
        cross_correlation(np.ones(20), np.arange(20.0), 3)
    with pytest.raises(SeriesTooShort):
        cross_correlation(np.arange(5.0), np.arange(5.0), 4)


def test_default_max_lag():
    assert default_max_lag(100) == 10
    assert default_max_lag(20_000) == 200
    assert default_max_lag(5) == 1


def test_autocorrelation_lag0_exact(rng):
    cf = auto_correlation(rng.standard_normal(200) * 7 + 3, 10)
    assert cf.rho[0] == 1.0
    np.testing.assert_array_equal(cf.lags, np.arange(11))


def _cf(rho, band):
    rho = np.asarray(rho, dtype=float)
    lags = np.arange(len(rho))
    return CorrelationFunction(lags, rho, 1000 - lags, band, 0.95)


def test_significant_count_zero():
    assert significant_lag_count(_cf([1.0, 0.01, -0.01, 0.0], 0.02)) == 0


def test_significant_count_seven():
    band = 0.05
    rho = np.zeros(20)
    rho[0] = 1.0  # lag 0 is not counted
    rho[[1, 3, 5, 7, 9, 11, 13]] = band + 1e-9
    rho[15] = band - 1e-9
    assert significant_lag_count(_cf(rho, band)) == 7


@settings(max_examples=50)
@given(arrays(float, 40, elements=st.floats(-10, 10)), arrays(float, 40, elements=st.floats(-10, 10)))
def test_symmetry_exact(a, b):
    if np.ptp(a) == 0 or np.ptp(b) == 0:
        return
    try:
        ab = cross_correlation(a, b, 5)
        ba = cross_correlation(b, a, 5)
    except ZeroVariance:
        return
    np.testing.assert_array_equal(ab.rho, ba.rho[::-1])


@settings(max_examples=50)
@given(st.integers(0, 10_000), st.floats(1e-3, 1e3), st.floats(-1e3, 1e3))
def test_affine_invariance(seed, c1, c2):
    a, b = np.random.default_rng(seed).standard_normal((2, 200))
    base = cross_correlation(a, b, 8).rho
    moved = cross_correlation(c1 * a + c2, b, 8).rho
    np.testing.assert_allclose(moved, base, atol=1e-12)


def test_iid_exceedance_fraction():
    frac = []
    for seed in range(200):
        a, b = np.random.default_rng(10_000 + seed).standard_normal((2, 10_000))
        cf = cross_correlation(a, b, 50)
        frac.append(np.mean(np.abs(cf.rho) > cf.band))
    assert abs(np.mean(frac) - 0.05) <= 0.02
