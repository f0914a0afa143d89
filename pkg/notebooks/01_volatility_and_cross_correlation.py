"""
Volatility and price-volume cross-correlation
=============================================

Builds a synthetic daily history whose price and volume share a slowly
varying activity level, then looks at the lagged cross-correlation of the
absolute log changes against the i.i.d. confidence band.
"""

import numpy as np

from volxcorr import (
    PriceVolumeSeries,
    confidence_band,
    cross_correlation,
    log_changes,
    normalize_volatility,
    significant_lag_count,
)

rng = np.random.default_rng(2009)
n = 6000

# a persistent activity factor sets the size of both price and volume moves
activity = np.exp(np.convolve(rng.standard_normal(n), np.ones(50) / 10, mode="same"))
closes = 100 * np.exp(np.cumsum(0.01 * activity * rng.standard_normal(n)))
volumes = 1e6 * np.exp(np.cumsum(0.2 * activity * rng.standard_normal(n)))

days = np.arange(np.datetime64("1990-01-02"), np.datetime64("1990-01-02") + n)
history = PriceVolumeSeries("SYN", days, closes, volumes)

R = log_changes(history, "price")
R_tilde = log_changes(history, "volume")
print("changes:", len(R.values), "(one fewer than days)")

# volatility is |R| over the spread of |R|, not over the spread of R
V = normalize_volatility(R)
print(f"sigma of |R| = {V.sigma:.5f}, largest volatility = {V.values.max():.1f}")

# %%
# Raw changes barely correlate; absolute changes do, over many lags.
raw = cross_correlation(R.values, R_tilde.values, max_lag=100)
absolute = cross_correlation(R.abs, R_tilde.abs, max_lag=100)
print(f"band (95%) = {confidence_band(len(R.values)):.4f}")
print("significant positive lags, raw:", significant_lag_count(raw))
print("significant positive lags, abs:", significant_lag_count(absolute))

for lag in (0, 1, 5, 20, 50, 100):
    print(f"  lag {lag:3d}: rho_abs = {absolute.at(lag):+.3f}")
