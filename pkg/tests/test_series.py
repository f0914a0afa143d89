import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from volxcorr.errors import DegenerateSeries
from volxcorr.ingest import PriceVolumeSeries
from volxcorr.series import PRICE, VOLUME, log_changes, normalize_volatility


def _series(closes, volumes=None):
    closes = np.asarray(closes, dtype=float)
    volumes = np.ones_like(closes) if volumes is None else np.asarray(volumes, dtype=float)
    days = np.arange(np.datetime64("2021-01-01"), np.datetime64("2021-01-01") + len(closes))
    return PriceVolumeSeries("X", days, closes, volumes)


def test_log_changes_e():
    r = log_changes(_series([1, math.e, math.e]), PRICE)
    np.testing.assert_allclose(r.values, [1.0, 0.0], atol=1e-15)
    assert r.kind == PRICE and r.source_id == "X"


def test_log_changes_constant():
    np.testing.assert_array_equal(log_changes(_series([5, 5, 5, 5]), PRICE).values, [0, 0, 0])


def test_log_changes_ten_percent():
    # frozen from math.log1p(0.1)
    r = log_changes(_series([100, 110]), PRICE)
    assert r.values[0] == pytest.approx(0.09531017980432493, rel=1e-15)


def test_volume_column():
    r = log_changes(_series([1, 1, 1], [10, 20, 5]), VOLUME)
    np.testing.assert_allclose(r.values, [math.log(2), math.log(0.25)])


def test_normalize_example():
    v = normalize_volatility(np.array([0.0, 2.0, 0.0, 2.0]))
    assert v.sigma == pytest.approx(1.0)
    np.testing.assert_allclose(v.values, [0, 2, 0, 2])


def test_normalize_population_sigma():
    r = np.array([0.1, -0.4, 0.2, 0.05, -0.3])
    v = normalize_volatility(r)
    assert v.sigma == pytest.approx(np.std(np.abs(r), ddof=0), rel=1e-14)


@pytest.mark.parametrize("r", [[3, 3, 3, 3], [-3, 3, -3, 3], [0, 0]])
def test_normalize_degenerate(r):
    with pytest.raises(DegenerateSeries):
        normalize_volatility(np.array(r, dtype=float))


finite = st.floats(min_value=-5, max_value=5, allow_subnormal=False)


@given(arrays(float, st.integers(2, 60), elements=finite))
def test_sign_invariance(r):
    if np.all(np.abs(r) == abs(r[0])):
        with pytest.raises(DegenerateSeries):
            normalize_volatility(r)
        return
    a = normalize_volatility(r)
    b = normalize_volatility(np.abs(r))
    np.testing.assert_array_equal(a.values, b.values)
    assert np.all(a.values >= 0) and a.sigma > 0


@given(
    arrays(float, st.integers(2, 40), elements=st.floats(0.01, 1e4)),
    st.floats(1e-3, 1e3),
)
def test_price_rescaling(closes, c):
    a = log_changes(_series(closes), PRICE).values
    b = log_changes(_series(closes * c), PRICE).values
    assert len(a) == len(closes) - 1
    np.testing.assert_allclose(a, b, atol=1e-12)
