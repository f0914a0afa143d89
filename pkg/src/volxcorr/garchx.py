"""Coupled GARCH(1,1) process for price and volume changes.

Each conditional variance feeds on its own past shock and variance, and on the
other stream's past squared shock::

    eps_t       = sigma_t * eta_t
    sigma2_t    = omega + alpha * eps_{t-1}**2 + beta * sigma2_{t-1}
                  + gamma_tilde * eps_tilde_{t-1}**2
    eps_tilde_t = sigma_tilde_t * eta_tilde_t
    sigma2_tilde_t = omega_tilde + alpha_tilde * eps_tilde_{t-1}**2
                  + beta_tilde * sigma2_tilde_{t-1} + gamma * eps_{t-1}**2

with ``eta``, ``eta_tilde`` independent standard normal. ``gamma = gamma_tilde
= 0`` gives two independent GARCH(1,1) streams.

Taking expectations under stationarity gives the linear system::

    (1 - alpha - beta) s - gamma_tilde s~        = omega
    -gamma s          + (1 - alpha~ - beta~) s~  = omega~

for the unconditional variances ``s``, ``s~``. Writing it as ``(I - M) s =
omega`` with ``M = [[alpha + beta, gamma_tilde], [gamma, alpha~ + beta~]]``, a
finite positive solution exists exactly when the spectral radius of ``M`` is
below one; for symmetric coefficients that radius is ``alpha + beta +
gamma_tilde``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

import numpy as np
from numba import njit

from .errors import InvalidParams, NoPositiveSolution, NonstationaryWarning

DEFAULT_BURN_IN = 1000


@dataclass(frozen=True)
class GarchXParams:
    omega: float
    alpha: float
    beta: float
    gamma_tilde: float
    omega_tilde: float
    alpha_tilde: float
    beta_tilde: float
    gamma: float

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise InvalidParams(f"{f.name} must be a finite nonnegative number, got {v!r}")
            object.__setattr__(self, f.name, float(v))

    @classmethod
    def symmetric(cls, omega: float, alpha: float, beta: float, gamma: float) -> "GarchXParams":
        """Same coefficients in both equations."""
        return cls(omega, alpha, beta, gamma, omega, alpha, beta, gamma)

    @classmethod
    def from_sequence(cls, values) -> "GarchXParams":
        """Build from eight numbers ordered as the fields are declared."""
        values = list(values)
        if len(values) != 8:
            raise InvalidParams(f"expected 8 coefficients, got {len(values)}")
        return cls(*values)

    @classmethod
    def parse(cls, text: str) -> "GarchXParams":
        """Parse ``"omega,alpha,beta,gamma_tilde,omega_tilde,alpha_tilde,beta_tilde,gamma"``."""
        try:
            values = [float(v) for v in text.split(",")]
        except ValueError:
            raise InvalidParams(f"cannot parse coefficients from {text!r}") from None
        return cls.from_sequence(values)

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def to_dict(self) -> dict:
        return asdict(self)

    @property
    def decoupled(self) -> bool:
        return self.gamma == 0 and self.gamma_tilde == 0


@dataclass
class StationarityReport:
    stationary: bool
    margin: float  # 1 - persistence
    persistence: float  # spectral radius of the variance recursion

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(eq=False)
class SimulatedPair:
    eps: np.ndarray
    eps_tilde: np.ndarray
    sigma2: np.ndarray
    sigma2_tilde: np.ndarray
    seed: int
    burn_in: int
    params: GarchXParams

    def __len__(self):
        return len(self.eps)


@dataclass
class MomentReport:
    sample_var: float
    sample_var_tilde: float
    sigma0_sq: float
    sigma0_tilde_sq: float
    rel_dev: float
    rel_dev_tilde: float

    def to_dict(self) -> dict:
        return asdict(self)


def _exact(x: float) -> Fraction:
    # coefficients are taken at their shortest decimal spelling, so 0.14 means 7/50
    return Fraction(repr(float(x)))


def _system(params: GarchXParams):
    p = {f.name: _exact(getattr(params, f.name)) for f in fields(params)}
    a = p["alpha"] + p["beta"]
    at = p["alpha_tilde"] + p["beta_tilde"]
    return p, a, at


def _sqrt_exact(x: Fraction):
    """Exact square root of a rational, or None when it is irrational."""
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def check_stationarity(params: GarchXParams) -> StationarityReport:
    """Whether the coupled recursion has finite unconditional variances.

    ``persistence`` is the spectral radius of the variance recursion matrix;
    with symmetric coefficients it equals ``alpha + beta + gamma_tilde``.
    """
    p, a, at = _system(params)
    coupling = p["gamma"] * p["gamma_tilde"]
    # 2x2 M-matrix test: I - M has a nonnegative inverse iff both hold
    stationary = (1 - a) > 0 and (1 - a) * (1 - at) - coupling > 0
    disc = ((a - at) / 2) ** 2 + coupling
    root = _sqrt_exact(disc)
    if root is not None:
        persistence = (a + at) / 2 + root
        margin = float(1 - persistence)
        persistence = float(persistence)
    else:
        persistence = float((a + at) / 2) + math.sqrt(disc)
        margin = 1.0 - persistence
    return StationarityReport(stationary=bool(stationary), margin=margin, persistence=persistence)


def stationary_variance(params: GarchXParams) -> tuple[float, float]:
    """Unconditional variances ``(sigma0^2, sigma0_tilde^2)`` solved exactly.

    Raises
    ------
    NoPositiveSolution
        If the moment equations have no finite, strictly positive solution
        (nonstationary or degenerate coefficients).
    """
    p, a, at = _system(params)
    det = (1 - a) * (1 - at) - p["gamma"] * p["gamma_tilde"]
    if det == 0:
        raise NoPositiveSolution("moment equations are singular")
    s = (p["omega"] * (1 - at) + p["gamma_tilde"] * p["omega_tilde"]) / det
    st = (p["omega_tilde"] * (1 - a) + p["gamma"] * p["omega"]) / det
    if not (s > 0 and st > 0) or not check_stationarity(params).stationary:
        raise NoPositiveSolution(
            f"no positive stationary variances (solution {float(s):.6g}, {float(st):.6g})"
        )
    return float(s), float(st)


def _initial_variances(params: GarchXParams) -> tuple[float, float]:
    try:
        return stationary_variance(params)
    except NoPositiveSolution:
        return (
            params.omega / (1 - min(params.alpha + params.beta, 0.99)),
            params.omega_tilde / (1 - min(params.alpha_tilde + params.beta_tilde, 0.99)),
        )


@njit(cache=True)
def _recurse(eta, eta_tilde, coef, s0, st0):
    w, a, b, gt, wt, at, bt, g = coef
    n = eta.shape[0]
    eps = np.empty(n)
    eps_t = np.empty(n)
    s = np.empty(n)
    st = np.empty(n)
    s[0] = s0
    st[0] = st0
    eps[0] = np.sqrt(s0) * eta[0]
    eps_t[0] = np.sqrt(st0) * eta_tilde[0]
    for t in range(1, n):
        e2 = eps[t - 1] * eps[t - 1]
        et2 = eps_t[t - 1] * eps_t[t - 1]
        s[t] = w + a * e2 + b * s[t - 1] + gt * et2
        st[t] = wt + at * et2 + bt * st[t - 1] + g * e2
        eps[t] = np.sqrt(s[t]) * eta[t]
        eps_t[t] = np.sqrt(st[t]) * eta_tilde[t]
    return eps, eps_t, s, st


def simulate(params: GarchXParams, length: int, seed: int = 0, burn_in: int = DEFAULT_BURN_IN) -> SimulatedPair:
    """Simulate ``length`` steps after discarding ``burn_in`` warm-up steps.

    Innovations come from ``numpy.random.default_rng(seed)``: one
    ``(2, burn_in + length)`` standard-normal draw, first row for the price
    stream. Recursions start at the stationary variances when they exist.
    Nonstationary coefficients simulate with a :class:`NonstationaryWarning`.
    """
    if not isinstance(params, GarchXParams):
        raise InvalidParams("params must be a GarchXParams")
    length, burn_in = int(length), int(burn_in)
    if length < 1 or burn_in < 0:
        raise InvalidParams("need length >= 1 and burn_in >= 0")
    if not (params.omega > 0 and params.omega_tilde > 0):
        raise InvalidParams("omega and omega_tilde must be strictly positive")
    if not check_stationarity(params).stationary:
        warnings.warn(
            f"coefficients {params.as_tuple()} have no finite stationary variance",
            NonstationaryWarning,
            stacklevel=2,
        )
    s0, st0 = _initial_variances(params)
    rng = np.random.default_rng(seed)
    eta = rng.standard_normal((2, burn_in + length))
    eps, eps_t, s, st = _recurse(eta[0], eta[1], np.array(params.as_tuple()), s0, st0)
    keep = slice(burn_in, None)
    return SimulatedPair(
        eps=eps[keep],
        eps_tilde=eps_t[keep],
        sigma2=s[keep],
        sigma2_tilde=st[keep],
        seed=seed,
        burn_in=burn_in,
        params=params,
    )


def empirical_moment_check(sim: SimulatedPair) -> MomentReport:
    """Compare sample variances of a path with the stationary variances."""
    s0, st0 = stationary_variance(sim.params)
    v, vt = float(np.var(sim.eps)), float(np.var(sim.eps_tilde))
    return MomentReport(
        sample_var=v,
        sample_var_tilde=vt,
        sigma0_sq=s0,
        sigma0_tilde_sq=st0,
        rel_dev=abs(v - s0) / s0,
        rel_dev_tilde=abs(vt - st0) / st0,
    )
