"""
Three tail exponents
====================

Pareto samples with known exponent, estimated by the mean return interval,
by Hill's order statistics and by a log-binned density. Then pooling: many
short series give a better aggregate estimate than any single one.
"""

import numpy as np

from volxcorr import (
    alpha_from_tau,
    hill_estimator,
    hill_tail_count,
    normalize_volatility,
    pdf_tail_fit,
    pool_normalized,
    tau_curve,
)

rng = np.random.default_rng(1)

for alpha in (2.5, 3.0, 4.0):
    vol = normalize_volatility(rng.pareto(alpha, 10**6) + 1)
    tau = alpha_from_tau(tau_curve(vol))
    hill = hill_estimator(vol.values, hill_tail_count(len(vol.values)))
    pdf = pdf_tail_fit(vol.values)
    print(f"alpha={alpha}: tau_q {tau.alpha:.2f}, hill {hill.alpha:.2f}, pdf {pdf.alpha:.2f}")

# %%
# Mean return interval against threshold. One exceedance every tau_q steps
# means 1/tau_q estimates the exceedance probability.
vol = normalize_volatility(rng.standard_t(3, 10**6))
curve = tau_curve(vol)
print(" q    mean tau   count")
for q, t, c in zip(curve.thresholds, curve.mean_tau, curve.counts):
    print(f"{q:4.1f} {t:10.1f} {c:7d}")

# %%
# Pooling 200 short Pareto(3) series of 2000 points each. A single member
# runs out of exceedances at high q; the pool does not.
members = [normalize_volatility(rng.pareto(3.0, 2000) + 1) for _ in range(200)]
single = tau_curve(members[0])
print("single series thresholds kept:", len(single.thresholds), "omitted:", single.omitted)
pooled = alpha_from_tau(tau_curve(members))
print(f"pooled tau_q alpha = {pooled.alpha:.2f} +/- {pooled.stderr:.2f}")
big = pool_normalized(members)
print(f"pooled Hill alpha = {hill_estimator(big, hill_tail_count(big.size)).alpha:.2f}")
