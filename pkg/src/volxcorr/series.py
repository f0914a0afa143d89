"""Logarithmic changes and normalized volatilities."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSeries, SeriesTooShort
from .ingest import PriceVolumeSeries

PRICE = "price"
VOLUME = "volume"


@dataclass(eq=False)
class ChangeSeries:
    """Logarithmic changes ``ln(x[t+1] / x[t])`` of one column."""

    values: np.ndarray
    kind: str = PRICE
    source_id: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)

    def __len__(self):
        return len(self.values)

    @property
    def abs(self) -> np.ndarray:
        return np.abs(self.values)


@dataclass(eq=False)
class VolatilitySeries:
    """Absolute changes divided by the standard deviation of absolute changes."""

    values: np.ndarray
    sigma: float
    source_id: str = ""

    def __len__(self):
        return len(self.values)


def log_changes(series: PriceVolumeSeries, column: str = PRICE) -> ChangeSeries:
    """Logarithmic one-step changes of the close (``price``) or ``volume`` column."""
    if column == PRICE:
        x = series.closes
    elif column == VOLUME:
        x = series.volumes
    else:
        raise ValueError(f"column must be {PRICE!r} or {VOLUME!r}, got {column!r}")
    if len(x) < 2:
        raise SeriesTooShort("need at least two observations")
    # ln(a/b) rather than diff(ln x) keeps rescaling of x exact
    values = np.log(x[1:] / x[:-1])
    return ChangeSeries(values=values, kind=column, source_id=series.instrument_id)


def abs_sigma(values) -> float:
    """Population standard deviation of ``|values|``: sqrt(<|r|^2> - <|r|>^2)."""
    a = np.abs(np.asarray(values, dtype=float))
    if a.size == 0:
        raise DegenerateSeries("empty series")
    if np.all(a == a[0]):
        return 0.0
    # same quantity as the moment formula, but two-pass on rescaled data so
    # tiny or huge magnitudes neither cancel nor underflow
    m = a.max()
    return float(m * np.std(a / m))


def normalize_volatility(changes) -> VolatilitySeries:
    """Volatility ``V_t = |r_t| / sigma`` with sigma from :func:`abs_sigma`.

    Accepts a :class:`ChangeSeries` or any real sequence. Only ``|r|`` enters,
    so flipping signs of the input never changes the result.

    Raises
    ------
    DegenerateSeries
        If all absolute changes are equal (sigma = 0).
    """
    if isinstance(changes, ChangeSeries):
        values, source = changes.values, changes.source_id
    else:
        values, source = np.asarray(changes, dtype=float), ""
    sigma = abs_sigma(values)
    if not sigma > 0:
        raise DegenerateSeries(f"absolute changes of {source or 'input'} have zero spread")
    return VolatilitySeries(values=np.abs(values) / sigma, sigma=sigma, source_id=source)
