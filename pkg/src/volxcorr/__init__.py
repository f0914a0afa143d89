"""Cross-correlation and tail statistics of price and trading-volume changes."""
from .corr import (
    CorrelationFunction,
    auto_correlation,
    confidence_band,
    cross_correlation,
    significant_lag_count,
)
from .errors import (
    InputError,
    NonstationaryWarning,
    PreconditionError,
    SignCrossing,
    VolxError,
)
from .garchx import (
    GarchXParams,
    SimulatedPair,
    check_stationarity,
    empirical_moment_check,
    simulate,
    stationary_variance,
)
from .ingest import CsvSchema, IngestReport, PriceVolumeSeries, parse_csv, read_csv, to_csv
from .scaling import (
    ExponentFit,
    ScalingCurve,
    dcca,
    detrended_covariance,
    detrended_variance,
    dfa,
    fit_exponent,
    integrate_profile,
    scaling_curve,
)
from .series import ChangeSeries, VolatilitySeries, log_changes, normalize_volatility
from .tails import (
    ReturnIntervalSet,
    TailEstimate,
    TauCurve,
    alpha_from_tau,
    hill_estimator,
    hill_tail_count,
    mean_tau_curve,
    pdf_tail_fit,
    pool_normalized,
    return_intervals,
    tau_curve,
)

__version__ = "0.1.0"
