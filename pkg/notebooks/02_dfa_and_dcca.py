"""
Detrended fluctuation and cross-correlation
===========================================

DFA exponents of white noise and of its running sum, then DCCA on a pair
of series that share a long-memory component versus an independent pair.
"""

import numpy as np

from volxcorr import SignCrossing, dcca, dfa, fit_exponent

rng = np.random.default_rng(7)
n = 2**14

noise = rng.standard_normal(n)
for label, x in (("white noise", noise), ("running sum", np.cumsum(noise))):
    fit = fit_exponent(dfa(x))
    print(f"{label:12s}: lambda = {fit.exponent:.3f} +/- {fit.stderr:.3f} over n in {fit.fit_range}")

# small boxes pull the white-noise value a little below 0.5; the expected
# detrended variance there is (n + 3) / 15 rather than proportional to n

# %%
# A shared fractional component couples two otherwise independent series.
k = np.arange(1, n)
kernel = np.concatenate([[1.0], k ** -0.7])  # slowly decaying weights
common = np.convolve(rng.standard_normal(2 * n), kernel[:2000], mode="same")[:n]
x = common + rng.standard_normal(n)
y = common + rng.standard_normal(n)

curve = dcca(x, y)
fit = fit_exponent(curve)
print(f"coupled pair: lambda_DCCA = {fit.exponent:.3f}, lambda_DFA(x) = {fit_exponent(dfa(x)).exponent:.3f}")

# %%
# Independent series: the detrended covariance flips sign, so no exponent.
a, b = rng.standard_normal((2, n))
curve = dcca(a, b)
print("signs of F(n):", "".join("+" if f > 0 else "-" for f in curve.fluctuation))
try:
    fit_exponent(curve)
except SignCrossing as exc:
    print("fit refused:", exc)
