"""Detrended fluctuation (DFA) and detrended cross-correlation (DCCA) analysis.

Both series are integrated into profiles and cut into the ``N - n``
overlapping boxes of ``n + 1`` points that start at every index. In each box a
straight line is least-squares fitted to each profile separately, and the box
covariance is::

    f2(n, i) = 1/(n - 1) * sum_k r_k * r'_k

with ``r``, ``r'`` the residuals of the two profiles. ``F2(n)`` is the *mean* of
``f2`` over boxes (a plain sum only differs by the factor ``N - n``, which
leaves exponents untouched but makes curves from different ``N`` comparable).
Calling with ``y = x`` gives the DFA detrended variance through the very same
code path.

Box sums are obtained from prefix sums in O(N) per window size. The residual
cross-product of a box with local time ``t = 0..n`` is::

    S_YY' - S_Y S_Y' / m - C_Y C_Y' / S_tt

where ``C_Y = sum (t - tbar) Y_t``. Prefix sums are accumulated in extended
precision on mean-removed input to keep cancellation error well below the
statistical noise even for doubly integrated signals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import SimpleNamespace

import numpy as np
from scipy.stats import linregress

from .errors import InsufficientPoints, SignCrossing, WindowTooLarge, WindowTooSmall

DFA = "dfa"
DCCA = "dcca"
MIN_WINDOW = 4
MIN_FIT_POINTS = 4
# boxes of fewer than ~10 points carry the largest finite-size bias, and
# detrended covariances there sit near zero when coupling acts on slow scales
DEFAULT_FIT_MIN = 10


@dataclass(eq=False)
class ScalingCurve:
    window_sizes: np.ndarray
    fluctuation: np.ndarray  # sign(F2) * sqrt(|F2|)
    kind: str
    n_points_used: np.ndarray  # boxes per window size
    f2: np.ndarray = field(default=None)
    normalization: str = "mean over N-n overlapping boxes, box sum divided by n-1"


@dataclass
class ExponentFit:
    exponent: float
    stderr: float
    fit_range: tuple[int, int]
    r_squared: float
    intercept: float = 0.0
    n_points: int = 0

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "stderr": self.stderr,
            "fit_range": list(self.fit_range),
            "r_squared": self.r_squared,
            "intercept": self.intercept,
            "n_points": self.n_points,
        }


def integrate_profile(x) -> np.ndarray:
    """Running sum ``Y_k = x_1 + ... + x_k``."""
    x = np.asarray(x, dtype=float)
    if x.size < 1:
        raise ValueError("empty input")
    return np.cumsum(x)


class _PrefixSums:
    """Prefix sums of one or two profiles, reusable across window sizes."""

    def __init__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.ndim != 1 or x.shape != y.shape:
            raise ValueError("x and y must be 1-d sequences of equal length")
        self.n = len(x)
        self.same = y is x or np.array_equal(x, y)
        ld = np.longdouble
        k = np.arange(self.n, dtype=ld)

        def prefix(v):
            out = np.zeros(len(v) + 1, dtype=ld)
            np.cumsum(v, out=out[1:])
            return out

        # a constant offset in the input adds a straight line to the profile,
        # which the per-box linear fit removes exactly
        px = integrate_profile(x - x.mean()).astype(ld)
        self.sx = prefix(px)
        self.skx = prefix(k * px)
        if self.same:
            self.sy, self.sky = self.sx, self.skx
            self.sxy = prefix(px * px)
        else:
            py = integrate_profile(y - y.mean()).astype(ld)
            self.sy = prefix(py)
            self.sky = prefix(k * py)
            self.sxy = prefix(px * py)

    def check_window(self, n: int):
        if n < MIN_WINDOW:
            raise WindowTooSmall(f"window {n} below minimum {MIN_WINDOW}")
        if 4 * n > self.n:
            raise WindowTooLarge(f"window {n} exceeds N/4 for N={self.n}")

    def box_covariances(self, n: int) -> np.ndarray:
        """``f2(n, i)`` for every box start ``i = 0..N-n-1``."""
        self.check_window(n)
        m = n + 1
        i = np.arange(self.n - n)
        j = i + m
        sx = self.sx[j] - self.sx[i]
        sy = self.sy[j] - self.sy[i]
        sxy = self.sxy[j] - self.sxy[i]
        # first moments in local time t = k - i, then centered on tbar
        tbar = np.longdouble(n) / 2
        stt = np.longdouble(m) * (m * m - 1) / 12
        cx = (self.skx[j] - self.skx[i]) - i * sx - tbar * sx
        cy = (self.sky[j] - self.sky[i]) - i * sy - tbar * sy
        resid = sxy - sx * sy / m - cx * cy / stt
        if self.same:
            resid = np.maximum(resid, 0)
        return (resid / (n - 1)).astype(float)

    def f2(self, n: int) -> float:
        return float(np.mean(self.box_covariances(n)))


def detrended_covariance(x, y, n: int) -> float:
    """Mean over the ``N - n`` overlapping boxes of the detrended covariance.

    Raises
    ------
    WindowTooSmall, WindowTooLarge
        Unless ``4 <= n <= N/4``.
    """
    return _PrefixSums(x, y).f2(int(n))


def detrended_variance(x, n: int) -> float:
    return detrended_covariance(x, x, n)


def default_window_grid(n_obs: int, count: int = 20, n_min: int = 8) -> np.ndarray:
    """About ``count`` log-spaced integer windows in ``[n_min, n_obs // 4]``."""
    n_max = n_obs // 4
    if n_max < MIN_WINDOW:
        raise WindowTooLarge(f"series of length {n_obs} admits no window >= {MIN_WINDOW}")
    n_min = max(MIN_WINDOW, min(n_min, n_max))
    grid = np.unique(np.round(np.geomspace(n_min, n_max, count)).astype(int))
    return grid[(grid >= n_min) & (grid <= n_max)]


def scaling_curve(x, y=None, window_grid=None) -> ScalingCurve:
    """F(n) over a grid of window sizes.

    With ``y`` omitted this is DFA of ``x``; otherwise DCCA of ``(x, y)`` with
    signed values ``sign(F2) * sqrt(|F2|)``.
    """
    kind = DFA if y is None else DCCA
    sums = _PrefixSums(x, x if y is None else y)
    grid = default_window_grid(sums.n) if window_grid is None else np.asarray(window_grid, dtype=int)
    if grid.ndim != 1 or grid.size == 0:
        raise InsufficientPoints("empty window grid")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("window grid must be strictly increasing")
    f2 = np.array([sums.f2(int(n)) for n in grid])
    return ScalingCurve(
        window_sizes=grid,
        fluctuation=np.sign(f2) * np.sqrt(np.abs(f2)),
        kind=kind,
        n_points_used=sums.n - grid,
        f2=f2,
    )


def dfa(x, window_grid=None) -> ScalingCurve:
    return scaling_curve(x, None, window_grid)


def dcca(x, y, window_grid=None) -> ScalingCurve:
    return scaling_curve(x, y, window_grid)


def loglog_fit(x, y):
    """OLS of ``log y`` on ``log x``; returns scipy's ``LinregressResult``."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    if np.ptp(ly) == 0:
        # linregress divides by the spread of y for r; flat curves are exact
        return SimpleNamespace(slope=0.0, intercept=float(ly[0]), stderr=0.0, rvalue=1.0)
    return linregress(lx, ly)


def fit_exponent(curve: ScalingCurve, fit_range=None) -> ExponentFit:
    """Slope of ``log |F|`` against ``log n`` inside ``fit_range`` (inclusive).

    Without a range, windows from 10 up to the largest are used (the whole
    grid if that leaves fewer than four points). A DCCA curve must keep one
    sign over the range; negative-throughout curves are fitted on ``|F|``.

    Raises
    ------
    SignCrossing
        The curve changes sign (or touches zero) inside the range.
    InsufficientPoints
        Fewer than four windows fall in the range.
    """
    n = np.asarray(curve.window_sizes)
    f = np.asarray(curve.fluctuation, dtype=float)
    if fit_range is None:
        lo = DEFAULT_FIT_MIN if np.count_nonzero(n >= DEFAULT_FIT_MIN) >= MIN_FIT_POINTS else n[0]
        lo, hi = lo, n[-1]
    else:
        lo, hi = fit_range
    mask = (n >= lo) & (n <= hi)
    if np.count_nonzero(mask) < MIN_FIT_POINTS:
        raise InsufficientPoints(
            f"{np.count_nonzero(mask)} windows in [{lo}, {hi}]; need {MIN_FIT_POINTS}"
        )
    n, f = n[mask], f[mask]
    signs = np.sign(f)
    if np.any(signs == 0) or np.any(signs != signs[0]):
        raise SignCrossing(
            f"fluctuation changes sign within [{n[0]}, {n[-1]}]; no power law can be claimed"
        )
    res = loglog_fit(n, np.abs(f))
    return ExponentFit(
        exponent=float(res.slope),
        stderr=float(res.stderr),
        fit_range=(int(n[0]), int(n[-1])),
        r_squared=float(res.rvalue**2),
        intercept=float(res.intercept),
        n_points=int(len(n)),
    )
