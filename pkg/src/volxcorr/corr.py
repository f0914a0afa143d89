"""Sample auto- and cross-correlation functions with i.i.d. confidence bands."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import InvalidLevel, SeriesTooShort, ZeroVariance


@dataclass(eq=False)
class CorrelationFunction:
    """Correlation per lag.

    For a cross-correlation, ``rho`` at lag ``n`` estimates
    ``corr(a[t+n], b[t])``; lags run from ``-max_lag`` to ``max_lag``. An
    autocorrelation carries lags ``0..max_lag`` only.
    """

    lags: np.ndarray
    rho: np.ndarray
    n_obs: np.ndarray
    band: float
    level: float = 0.95

    def at(self, lag: int) -> float:
        idx = np.flatnonzero(self.lags == lag)
        if idx.size == 0:
            raise KeyError(lag)
        return float(self.rho[idx[0]])


def default_max_lag(n: int) -> int:
    return max(1, min(200, n // 10))


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    # symmetric in (a, b) bit for bit, which the lag-reversal identity relies on
    da = a - a.mean()
    db = b - b.mean()
    saa = np.sum(da * da)
    sbb = np.sum(db * db)
    if saa == 0 or sbb == 0:
        raise ZeroVariance("a lag window has zero variance")
    r = np.sum(da * db) / np.sqrt(saa * sbb)
    return float(min(1.0, max(-1.0, r)))


def _check_inputs(a, b, max_lag):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValueError("inputs must be 1-d sequences of equal length")
    if max_lag is None:
        max_lag = default_max_lag(len(a))
    max_lag = int(max_lag)
    if max_lag < 1:
        raise ValueError("max_lag must be positive")
    if len(a) < max_lag + 2:
        raise SeriesTooShort(f"length {len(a)} too short for max_lag {max_lag}")
    if np.all(a == a[0]) or np.all(b == b[0]):
        raise ZeroVariance("input series is constant")
    return a, b, max_lag


def confidence_band(n_obs: int, level: float = 0.95) -> float:
    """Half-width ``z_{(1+level)/2} / sqrt(n_obs)`` of the i.i.d. band."""
    if not 0 < level < 1:
        raise InvalidLevel(f"level must lie in (0, 1), got {level}")
    if n_obs < 2:
        raise SeriesTooShort("need at least two observations")
    return float(norm.ppf(0.5 * (1 + level)) / np.sqrt(n_obs))


def cross_correlation(a, b, max_lag: int | None = None, level: float = 0.95) -> CorrelationFunction:
    """Pearson cross-correlation of ``a`` against ``b`` at lags ``-max_lag..max_lag``.

    Means and variances are recomputed over each overlapping window, so the
    value at lag ``n`` is exactly the correlation of ``a[n:]`` with
    ``b[:N-n]`` (and of ``a[:N+n]`` with ``b[-n:]`` for negative ``n``).
    ``max_lag`` defaults to ``min(200, N // 10)``.
    """
    a, b, max_lag = _check_inputs(a, b, max_lag)
    n = len(a)
    lags = np.arange(-max_lag, max_lag + 1)
    rho = np.empty(len(lags))
    for i, lag in enumerate(lags):
        if lag >= 0:
            rho[i] = _pearson(a[lag:], b[: n - lag])
        else:
            rho[i] = _pearson(a[: n + lag], b[-lag:])
    return CorrelationFunction(
        lags=lags, rho=rho, n_obs=n - np.abs(lags), band=confidence_band(n, level), level=level
    )


def auto_correlation(a, max_lag: int | None = None, level: float = 0.95) -> CorrelationFunction:
    """Autocorrelation at lags ``0..max_lag``; lag 0 is exactly 1."""
    a, _, max_lag = _check_inputs(a, a, max_lag)
    n = len(a)
    lags = np.arange(max_lag + 1)
    rho = np.empty(len(lags))
    rho[0] = 1.0
    for lag in lags[1:]:
        rho[lag] = _pearson(a[lag:], a[: n - lag])
    return CorrelationFunction(
        lags=lags, rho=rho, n_obs=n - lags, band=confidence_band(n, level), level=level
    )


def significant_lag_count(cf: CorrelationFunction) -> int:
    """Number of positive lags whose ``|rho|`` lies strictly outside the band."""
    mask = (cf.lags > 0) & (np.abs(cf.rho) > cf.band)
    return int(np.count_nonzero(mask))
