"""Tail-exponent estimators for normalized volatilities.

Three routes to the exponent ``alpha`` of ``P(V > x) ~ x**-alpha``:

* :func:`alpha_from_tau` -- mean return interval between exceedances of a
  threshold ``q``. One exceedance occurs on average every ``tau_q`` steps, so
  ``1/tau_q`` estimates ``P(V > q)`` and ``tau_q`` grows like ``q**alpha``.
* :func:`hill_estimator` -- order statistics of the largest values.
* :func:`pdf_tail_fit` -- slope of a logarithmically binned density.

Return intervals from many series can be pooled (concatenated) before
averaging, which estimates the exponent of the aggregate rather than of any
single member.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSeries,
    InsufficientExceedances,
    InsufficientPoints,
    NonpositiveValue,
    SparseTail,
    TailTooLarge,
    TailTooSmall,
)
from .scaling import loglog_fit
from .series import VolatilitySeries

PDF_FIT = "pdf_fit"
HILL = "hill"
TAU_Q = "tau_q"

DEFAULT_MIN_COUNT = 50
DEFAULT_TAIL_FRAC = 0.10


@dataclass
class TailEstimate:
    alpha: float
    stderr: float
    method: str
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "stderr": self.stderr, "method": self.method, "config": self.config}


@dataclass(eq=False)
class ReturnIntervalSet:
    threshold_q: float
    intervals: np.ndarray
    n_exceedances: int
    source_id: str = ""


@dataclass(eq=False)
class TauCurve:
    thresholds: np.ndarray
    mean_tau: np.ndarray
    counts: np.ndarray
    min_count: int = DEFAULT_MIN_COUNT
    omitted: list = field(default_factory=list)  # thresholds below the count floor


def _values_of(vol) -> np.ndarray:
    if isinstance(vol, VolatilitySeries):
        return vol.values
    return np.asarray(vol, dtype=float)


def default_q_grid(q_min: float = 2.0, q_max: float = 8.0, q_step: float = 0.5) -> np.ndarray:
    if q_step <= 0 or q_max < q_min:
        raise ValueError("need q_step > 0 and q_max >= q_min")
    k = int(math.floor((q_max - q_min) / q_step + 1e-9))
    # rounding keeps grid values identical however they were produced
    return np.round(q_min + q_step * np.arange(k + 1), 10)


def return_intervals(vol, q: float) -> ReturnIntervalSet:
    """Index gaps between consecutive strict exceedances ``V > q``.

    The censored stretches before the first and after the last exceedance are
    not intervals and are discarded.
    """
    if not q > 0:
        raise ValueError("threshold q must be positive")
    v = _values_of(vol)
    pos = np.flatnonzero(v > q)
    return ReturnIntervalSet(
        threshold_q=float(q),
        intervals=np.diff(pos),
        n_exceedances=int(pos.size),
        source_id=getattr(vol, "source_id", ""),
    )


def mean_tau_curve(sets, min_count: int = DEFAULT_MIN_COUNT) -> TauCurve:
    """Pool interval sets by threshold and average each pool.

    Thresholds whose pooled count falls below ``min_count`` are left out of
    the curve and listed in ``TauCurve.omitted``.

    Raises
    ------
    InsufficientExceedances
        If no threshold reaches the floor.
    """
    pools = defaultdict(list)
    for s in sets:
        pools[s.threshold_q].append(np.asarray(s.intervals))
    qs, means, counts, omitted = [], [], [], []
    for q in sorted(pools):
        pooled = np.concatenate(pools[q]) if pools[q] else np.empty(0, dtype=int)
        if pooled.size < max(min_count, 1):
            omitted.append(q)
            continue
        qs.append(q)
        means.append(pooled.mean())
        counts.append(pooled.size)
    if not qs:
        raise InsufficientExceedances(f"no threshold has {min_count} pooled intervals")
    return TauCurve(
        thresholds=np.array(qs),
        mean_tau=np.array(means),
        counts=np.array(counts, dtype=int),
        min_count=min_count,
        omitted=omitted,
    )


def tau_curve(vols, q_grid=None, min_count: int = DEFAULT_MIN_COUNT) -> TauCurve:
    """Mean return interval versus threshold, pooled over one or more series."""
    if isinstance(vols, (VolatilitySeries, np.ndarray)):
        vols = [vols]
    q_grid = default_q_grid() if q_grid is None else q_grid
    return mean_tau_curve((return_intervals(v, q) for q in q_grid for v in vols), min_count)


def alpha_from_tau(curve: TauCurve, fit_range=None) -> TailEstimate:
    """Exponent from the OLS slope of ``ln tau_q`` on ``ln q``."""
    q = curve.thresholds
    lo, hi = (q[0], q[-1]) if fit_range is None else fit_range
    mask = (q >= lo - 1e-12) & (q <= hi + 1e-12)
    if np.count_nonzero(mask) < 4:
        raise InsufficientPoints(f"{np.count_nonzero(mask)} usable thresholds in [{lo}, {hi}]; need 4")
    res = loglog_fit(q[mask], curve.mean_tau[mask])
    return TailEstimate(
        alpha=float(res.slope),
        stderr=float(res.stderr),
        method=TAU_Q,
        config={
            "fit_range": [float(q[mask][0]), float(q[mask][-1])],
            "thresholds": [float(x) for x in q[mask]],
            "min_count": int(curve.min_count),
            "omitted": [float(x) for x in curve.omitted],
        },
    )


def hill_tail_count(n_obs: int, tail_frac: float = DEFAULT_TAIL_FRAC) -> int:
    """Largest ``N`` allowed by ``tail_frac`` (at most ten percent of the sample)."""
    if not 0 < tail_frac <= DEFAULT_TAIL_FRAC:
        raise TailTooLarge(f"tail fraction {tail_frac} outside (0, 0.1]")
    return int(math.floor(tail_frac * n_obs + 1e-9))


def hill_estimator(values, tail_count: int) -> TailEstimate:
    """Hill estimate from the ``tail_count`` largest values.

    With ``x_1 > ... > x_N`` the largest values, ``alpha = (N - 1) /
    sum_{i<N} ln(x_i / x_N)`` and the reported error is the asymptotic
    ``alpha / sqrt(N - 1)``.

    Raises
    ------
    TailTooLarge
        If ``N`` exceeds ten percent of the sample (rounded up).
    TailTooSmall
        If ``N < 2``.
    NonpositiveValue
        If any value is not strictly positive.
    """
    x = np.asarray(values, dtype=float)
    n = int(tail_count)
    if np.any(~(x > 0)):
        raise NonpositiveValue("Hill estimator needs strictly positive values")
    if n < 2:
        raise TailTooSmall(f"tail count {n} < 2")
    if n > -(-x.size // 10):
        raise TailTooLarge(f"tail count {n} exceeds 10% of {x.size} values")
    top = np.sort(x)[::-1][:n]
    s = np.sum(np.log(top[:-1] / top[-1]))
    if not s > 0:
        raise DegenerateSeries("largest values are all equal")
    alpha = (n - 1) / s
    return TailEstimate(
        alpha=float(alpha),
        stderr=float(alpha / math.sqrt(n - 1)),
        method=HILL,
        config={"tail_count": n, "sample_size": int(x.size), "threshold": float(top[-1])},
    )


@dataclass(eq=False)
class LogHistogram:
    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray  # count / bin width / total count
    total: int

    @property
    def centers(self) -> np.ndarray:
        return np.sqrt(self.edges[:-1] * self.edges[1:])


def log_histogram(values, lo: float, hi: float | None = None, bins_per_decade: int = 20) -> LogHistogram:
    """Histogram on log-spaced edges ``lo * 10**(k / bins_per_decade)``.

    The lower edge is raised to the sample minimum when it sits below it so
    that no bin straddles the edge of the support. Density is normalized by
    the full sample size, not the tail count.
    """
    x = np.asarray(values, dtype=float)
    if np.any(~(x > 0)):
        raise NonpositiveValue("log binning needs strictly positive values")
    lo = max(float(lo), float(x.min()))
    hi = float(x.max()) if hi is None else float(hi)
    if not hi > lo:
        raise SparseTail(f"empty tail range [{lo}, {hi}]")
    nbins = max(1, int(math.ceil(bins_per_decade * math.log10(hi / lo) - 1e-12)))
    edges = lo * 10.0 ** (np.arange(nbins + 1) / bins_per_decade)
    counts, _ = np.histogram(x, bins=edges)
    density = counts / np.diff(edges) / x.size
    return LogHistogram(edges=edges, counts=counts, density=density, total=int(x.size))


def pdf_tail_fit(
    values,
    bins_per_decade: int = 20,
    tail_range=(2.0, None),
    min_count: int = 10,
) -> TailEstimate:
    """Exponent from the log-log slope of the binned density, ``alpha = -(1 + slope)``.

    Only bins holding at least ``min_count`` values enter the fit; sparse
    bins in the far tail are dominated by counting noise and biased upward
    once empty neighbours are dropped.

    Raises
    ------
    SparseTail
        Fewer than five bins qualify.
    """
    lo, hi = tail_range
    hist = log_histogram(values, lo, hi, bins_per_decade)
    use = hist.counts >= max(min_count, 1)
    if np.count_nonzero(use) < 5:
        raise SparseTail(f"{np.count_nonzero(use)} bins with >= {min_count} values; need 5")
    res = loglog_fit(hist.centers[use], hist.density[use])
    return TailEstimate(
        alpha=float(-(1.0 + res.slope)),
        stderr=float(res.stderr),
        method=PDF_FIT,
        config={
            "bins_per_decade": int(bins_per_decade),
            "tail_range": [float(hist.edges[0]), float(hist.edges[-1])],
            "min_count": int(min_count),
            "bins_used": int(np.count_nonzero(use)),
        },
    )


def pool_normalized(vols) -> np.ndarray:
    """Concatenate individually normalized volatilities into one sample."""
    parts = [_values_of(v) for v in vols]
    if not parts:
        return np.empty(0)
    return np.concatenate(parts)
