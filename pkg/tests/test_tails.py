import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy import integrate, stats

from volxcorr.errors import (
    DegenerateSeries,
    InsufficientExceedances,
    InsufficientPoints,
    NonpositiveValue,
    SparseTail,
    TailTooLarge,
    TailTooSmall,
)
from volxcorr.series import normalize_volatility
from volxcorr.tails import (
    HILL,
    PDF_FIT,
    TAU_Q,
    ReturnIntervalSet,
    TauCurve,
    alpha_from_tau,
    default_q_grid,
    hill_estimator,
    hill_tail_count,
    log_histogram,
    mean_tau_curve,
    pdf_tail_fit,
    pool_normalized,
    return_intervals,
    tau_curve,
)

from conftest import pareto_sample


def t3_tail(a):
    """P(|T| > a) for Student-t(3), by numerical integration of the density."""
    val, _ = integrate.quad(stats.t(3).pdf, a, np.inf)
    return 2 * val


def test_intervals_example():
    s = return_intervals(np.array([0, 3, 0, 0, 3, 0.0]), 2)
    np.testing.assert_array_equal(s.intervals, [3])
    assert s.n_exceedances == 2


def test_intervals_none_above():
    s = return_intervals(np.array([0, 1, 2, 1.0]), 2)
    assert s.intervals.size == 0 and s.n_exceedances == 0


def test_strict_exceedance():
    s = return_intervals(np.array([2.0, 2.0, 2.5, 2.0, 3.0]), 2.0)
    assert s.n_exceedances == 2
    np.testing.assert_array_equal(s.intervals, [2])


def test_q_must_be_positive():
    with pytest.raises(ValueError):
        return_intervals(np.ones(4), 0)


def test_geometric_oracle():
    # i.i.d. exceedances with p = 0.05 give geometric gaps of mean 1/p = 20
    x = np.abs(np.random.default_rng(0).standard_normal(10**6))
    vol = normalize_volatility(x)
    raw = stats.norm.isf(0.025)
    s = return_intervals(vol, raw / vol.sigma)
    assert s.intervals.mean() == pytest.approx(20.0, rel=0.02)


def _set(q, iv):
    iv = np.asarray(iv)
    return ReturnIntervalSet(q, iv, iv.size + 1)


def test_mean_tau_single():
    c = mean_tau_curve([_set(2.0, [2, 4, 6])], min_count=1)
    assert c.mean_tau[0] == 4 and c.counts[0] == 3


def test_mean_tau_pooled():
    c = mean_tau_curve([_set(2.0, [2]), _set(2.0, [4, 6])], min_count=1)
    assert c.mean_tau[0] == 4 and c.counts[0] == 3


def test_floor_omits_thresholds():
    sets = [_set(2.0, np.ones(60)), _set(3.0, np.ones(10))]
    c = mean_tau_curve(sets)
    np.testing.assert_array_equal(c.thresholds, [2.0])
    assert c.omitted == [3.0]
    with pytest.raises(InsufficientExceedances):
        mean_tau_curve([_set(3.0, np.ones(10))])


def test_student_t_quadrature_oracle():
    x = np.random.default_rng(1).standard_t(3, 10**6)
    vol = normalize_volatility(x)
    curve = tau_curve(vol, default_q_grid(2, 8, 1))
    assert not curve.omitted
    for q, tau in zip(curve.thresholds, curve.mean_tau):
        assert tau == pytest.approx(1 / t3_tail(q * vol.sigma), rel=0.05)


def test_eq8_identity_gaussian():
    x = np.random.default_rng(2).standard_normal(10**6)
    vol = normalize_volatility(x)
    curve = tau_curve(vol, [1.0, 2.0, 3.0, 4.0])
    for q, tau in zip(curve.thresholds, curve.mean_tau):
        p = 2 * stats.norm.sf(q * vol.sigma)
        assert 1 / tau == pytest.approx(p, rel=0.03)


def test_default_grid():
    np.testing.assert_array_equal(default_q_grid(), np.arange(2, 8.01, 0.5))
    assert default_q_grid(2, 10, 0.5)[-1] == 10.0


def test_alpha_from_exact_curve():
    q = default_q_grid()
    curve = TauCurve(q, 1.7 * q**3, np.full(q.size, 1000))
    est = alpha_from_tau(curve)
    assert est.method == TAU_Q
    assert est.alpha == pytest.approx(3.0, abs=1e-12)
    assert est.stderr == pytest.approx(0.0, abs=1e-7)
    est = alpha_from_tau(curve, fit_range=(3.0, 5.0))
    assert est.config["fit_range"] == [3.0, 5.0]


def test_alpha_from_tau_needs_four_points():
    q = np.array([2.0, 3.0, 4.0])
    with pytest.raises(InsufficientPoints):
        alpha_from_tau(TauCurve(q, q**3, np.full(3, 100)))


def test_tau_pareto_three():
    vol = normalize_volatility(pareto_sample(3.0, 10**6, seed=3))
    est = alpha_from_tau(tau_curve(vol))
    assert 2.8 <= est.alpha <= 3.2


def test_hill_two_point_tail():
    # the 10% rule needs at least 20 values for N = 2; smaller values fill the body
    c = 3.7
    body = np.linspace(0.1, 1.0, 18) * c * 0.9
    est = hill_estimator(np.concatenate([[math.e * c, c], body]), 2)
    assert est.method == HILL
    assert est.alpha == pytest.approx(1.0, rel=1e-14)
    assert est.stderr == pytest.approx(1.0, rel=1e-14)
    assert est.config["threshold"] == c


def test_hill_two_values_violates_ten_percent():
    with pytest.raises(TailTooLarge):
        hill_estimator([math.e, 1.0], 2)


def test_hill_pareto():
    x = pareto_sample(3.0, 10**5, seed=4)
    est = hill_estimator(x, 10**4)
    assert est.alpha == pytest.approx(3.0, abs=0.1)
    assert est.stderr == pytest.approx(est.alpha / math.sqrt(9999))


def test_hill_errors():
    x = np.arange(1.0, 101.0)
    with pytest.raises(TailTooLarge):
        hill_estimator(x, 11)
    hill_estimator(x, 10)
    with pytest.raises(TailTooSmall):
        hill_estimator(x, 1)
    with pytest.raises(NonpositiveValue):
        hill_estimator(np.append(x, 0.0), 5)
    with pytest.raises(DegenerateSeries):
        hill_estimator(np.ones(100), 5)


def test_hill_tail_count():
    assert hill_tail_count(10**6) == 10**5
    assert hill_tail_count(1000, 0.05) == 50
    with pytest.raises(TailTooLarge):
        hill_tail_count(1000, 0.2)


def test_pdf_exact_density():
    # quantiles of p(x) = 2 x^-3 on [1, inf): a noiseless stand-in for a histogram
    m = 2_000_000
    u = (np.arange(m) + 0.5) / m
    x = (1 - u) ** -0.5
    est = pdf_tail_fit(x, tail_range=(1.0, 100.0))
    assert est.method == PDF_FIT
    assert est.alpha == pytest.approx(2.0, abs=0.01)


def test_pdf_pareto_three():
    vol = normalize_volatility(pareto_sample(3.0, 10**6, seed=5))
    est = pdf_tail_fit(vol.values, tail_range=(2.0, None))
    assert 2.7 <= est.alpha <= 3.3


def test_pdf_sparse():
    with pytest.raises(SparseTail):
        pdf_tail_fit(np.linspace(1, 2, 30))


def test_log_histogram_density_normalization():
    x = pareto_sample(2.0, 10_000, seed=6)
    h = log_histogram(x, 1.0, bins_per_decade=10)
    assert h.edges[0] == pytest.approx(x.min())
    assert np.sum(h.density * np.diff(h.edges)) == pytest.approx(np.sum(h.counts) / x.size)


def test_pool_duplicate_hill():
    # duplicating every value keeps each log ratio but changes the (N-1) weights;
    # exact relation: alpha_pool(2N) = alpha(N) * (2N - 1) / (2N - 2)
    v = normalize_volatility(pareto_sample(3.0, 5000, seed=7)).values
    n = 500
    single = hill_estimator(v, n)
    pooled = hill_estimator(pool_normalized([v, v]), 2 * n)
    assert pooled.alpha == pytest.approx(single.alpha * (2 * n - 1) / (2 * n - 2), rel=1e-12)


def test_pool_preserves_count():
    parts = [np.ones(3), np.ones(5), np.ones(7)]
    assert pool_normalized(parts).size == 15
    assert pool_normalized([]).size == 0


def test_pooled_tau_is_concatenation():
    rng = np.random.default_rng(8)
    vols = [normalize_volatility(rng.standard_t(3, 20_000)) for _ in range(5)]
    pooled = tau_curve(vols, [2.0, 3.0])
    for q, tau, count in zip(pooled.thresholds, pooled.mean_tau, pooled.counts):
        iv = np.concatenate([return_intervals(v, q).intervals for v in vols])
        assert count == iv.size and tau == pytest.approx(iv.mean(), rel=1e-15)


@pytest.mark.parametrize("c", [2.0, 0.25, 1024.0])
def test_hill_scale_invariance_exact(c):
    # powers of two rescale without rounding, so equality is exact
    x = pareto_sample(3.0, 2000, seed=9)
    assert hill_estimator(c * x, 200).alpha == hill_estimator(x, 200).alpha


@settings(max_examples=30)
@given(st.floats(1e-3, 1e3))
def test_hill_scale_invariance(c):
    x = pareto_sample(3.0, 2000, seed=9)
    assert hill_estimator(c * x, 200).alpha == pytest.approx(hill_estimator(x, 200).alpha, rel=1e-12)


@given(arrays(float, st.integers(1, 200), elements=st.floats(0, 10)), st.floats(0.1, 9))
def test_interval_count_conservation(v, q):
    s = return_intervals(v, q)
    if s.n_exceedances >= 1:
        assert s.intervals.size == s.n_exceedances - 1
    assert np.all(s.intervals >= 1)


def test_tau_lower_bound_and_monotone():
    vols = [normalize_volatility(pareto_sample(3.0, 50_000, seed=s)) for s in range(10, 14)]
    c = tau_curve(vols)
    assert np.all(c.mean_tau >= 1)
    assert np.all(np.diff(c.mean_tau) > 0)
    assert np.all(c.counts >= 50)


@pytest.mark.parametrize("alpha", [2.5, 3.0, 4.0])
def test_estimators_agree_within_three_combined_se(alpha):
    vol = normalize_volatility(pareto_sample(alpha, 10**6, seed=20))
    v = vol.values
    ests = [
        alpha_from_tau(tau_curve(vol)),
        hill_estimator(v, hill_tail_count(v.size)),
        pdf_tail_fit(v),
    ]
    combined = math.sqrt(sum(e.stderr**2 for e in ests))
    for e in ests:
        assert abs(e.alpha - alpha) <= 3 * combined, e
