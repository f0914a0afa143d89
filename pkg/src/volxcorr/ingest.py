"""Reading daily price/volume histories from local CSV exports.

The expected layout is the one produced by common finance portals::

    Date,Open,High,Low,Close,Adj Close,Volume
    1950-01-03,16.66,16.66,16.66,16.66,16.66,1260000

Rows that cannot support a logarithmic change (missing or nonpositive close or
volume, unparseable dates) are dropped and tallied in an :class:`IngestReport`.
Duplicate dates are rejected outright.
"""
from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import numpy as np

from .errors import DuplicateDate, EmptySeries, InputError, MalformedHeader


@dataclass(frozen=True)
class CsvSchema:
    """Column names for the date, close and volume fields.

    ``close`` may be a tuple of candidates; the first one present in the
    header wins (``Adj Close`` is preferred over ``Close`` by default).
    """

    date: str = "Date"
    close: str | tuple[str, ...] = ("Adj Close", "Close")
    volume: str = "Volume"

    def close_candidates(self) -> tuple[str, ...]:
        if isinstance(self.close, str):
            return (self.close,)
        return tuple(self.close)


@dataclass(eq=False)
class PriceVolumeSeries:
    """Aligned daily closes and volumes for one instrument."""

    instrument_id: str
    timestamps: np.ndarray  # datetime64[D], strictly increasing
    closes: np.ndarray
    volumes: np.ndarray

    def __post_init__(self):
        self.timestamps = np.asarray(self.timestamps, dtype="datetime64[D]")
        self.closes = np.asarray(self.closes, dtype=float)
        self.volumes = np.asarray(self.volumes, dtype=float)
        n = len(self.timestamps)
        if len(self.closes) != n or len(self.volumes) != n:
            raise InputError("timestamps, closes and volumes differ in length")
        if n < 2:
            raise EmptySeries(f"series {self.instrument_id!r} has {n} rows; need at least 2")
        if np.any(np.diff(self.timestamps).astype(int) <= 0):
            raise InputError("timestamps must be strictly increasing")
        if not (np.all(self.closes > 0) and np.all(self.volumes > 0)):
            raise InputError("closes and volumes must be positive")

    def __len__(self):
        return len(self.timestamps)

    def __eq__(self, other):
        if not isinstance(other, PriceVolumeSeries):
            return NotImplemented
        return (
            self.instrument_id == other.instrument_id
            and np.array_equal(self.timestamps, other.timestamps)
            and np.array_equal(self.closes, other.closes)
            and np.array_equal(self.volumes, other.volumes)
        )


@dataclass
class IngestReport:
    rows_read: int = 0
    rows_dropped: int = 0
    drop_reasons: dict[str, int] = field(default_factory=dict)

    @property
    def rows_kept(self) -> int:
        return self.rows_read - self.rows_dropped

    def to_dict(self) -> dict:
        return {
            "rows_read": self.rows_read,
            "rows_dropped": self.rows_dropped,
            "drop_reasons": dict(sorted(self.drop_reasons.items())),
        }


def _data_lines(text: str) -> list[str]:
    # '#' lines carry metadata in files written by this package
    return [ln for ln in text.splitlines() if not ln.startswith("#")]


def _parse_positive(cell: str):
    """Return (value, reason) where reason is None for a usable value."""
    try:
        value = float(cell)
    except ValueError:
        return None, "missing"
    if not math.isfinite(value):
        return None, "missing"
    if value <= 0:
        return None, "nonpositive"
    return value, None


def _parse_date(cell: str):
    cell = cell.strip()
    if len(cell) != 10:
        return None
    try:
        return date.fromisoformat(cell)
    except ValueError:
        return None


def parse_csv(text: str, schema: CsvSchema | None = None, instrument_id: str = ""):
    """Parse CSV text into a cleaned :class:`PriceVolumeSeries`.

    Parameters
    ----------
    text : str
        Full file contents, header row first.
    schema : CsvSchema, optional
        Column names to use; defaults to ``Date`` / ``Adj Close`` or ``Close`` /
        ``Volume``.
    instrument_id : str
        Identifier attached to the resulting series.

    Returns
    -------
    series : PriceVolumeSeries
    report : IngestReport

    Raises
    ------
    MalformedHeader
        A named column is absent from the header.
    EmptySeries
        Fewer than two rows survive cleaning.
    DuplicateDate
        Two valid rows carry the same date.
    """
    schema = schema or CsvSchema()
    lines = _data_lines(text)
    if not lines:
        raise MalformedHeader("no header row")
    rows = list(csv.reader(lines))
    header = [h.strip() for h in rows[0]]

    def index_of(names):
        for name in names:
            if name in header:
                return header.index(name)
        raise MalformedHeader(f"none of the columns {list(names)} found in header {header}")

    i_date = index_of((schema.date,))
    i_close = index_of(schema.close_candidates())
    i_vol = index_of((schema.volume,))
    width = max(i_date, i_close, i_vol) + 1

    reasons = Counter()
    kept = []
    body = rows[1:]
    for row in body:
        if not row or all(not c.strip() for c in row):
            reasons["empty_row"] += 1
            continue
        if len(row) < width:
            reasons["missing_field"] += 1
            continue
        day = _parse_date(row[i_date])
        if day is None:
            reasons["bad_date"] += 1
            continue
        close, why = _parse_positive(row[i_close])
        if why:
            reasons[f"{why}_close"] += 1
            continue
        volume, why = _parse_positive(row[i_vol])
        if why:
            reasons[f"{why}_volume"] += 1
            continue
        kept.append((day, close, volume))

    report = IngestReport(
        rows_read=len(body), rows_dropped=sum(reasons.values()), drop_reasons=dict(reasons)
    )
    if len(kept) < 2:
        raise EmptySeries(f"{len(kept)} valid rows in {instrument_id or 'input'}; need at least 2")

    kept.sort(key=lambda r: r[0])
    for a, b in zip(kept, kept[1:]):
        if a[0] == b[0]:
            raise DuplicateDate(f"date {a[0].isoformat()} appears more than once")

    series = PriceVolumeSeries(
        instrument_id=instrument_id,
        timestamps=np.array([r[0] for r in kept], dtype="datetime64[D]"),
        closes=np.array([r[1] for r in kept]),
        volumes=np.array([r[2] for r in kept]),
    )
    return series, report


def read_csv(path, schema: CsvSchema | None = None, instrument_id: str | None = None):
    """Read a file with :func:`parse_csv`; the id defaults to the file stem."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_csv(text, schema, instrument_id if instrument_id is not None else path.stem)


def to_csv(series: PriceVolumeSeries) -> str:
    """Serialize a series as ``Date,Close,Volume`` with round-trip float formatting."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["Date", "Close", "Volume"])
    for t, c, v in zip(series.timestamps, series.closes, series.volumes):
        writer.writerow([str(t), repr(float(c)), repr(float(v))])
    return buf.getvalue()


def header_of(text: str) -> list[str]:
    lines = _data_lines(text)
    if not lines:
        return []
    return [h.strip() for h in next(csv.reader(lines[:1]))]


def parse_columns(text: str, columns) -> dict[str, np.ndarray]:
    """Read named numeric columns from a plain table (e.g. simulator output).

    Every cell must parse as a finite float; there is no silent row dropping
    here because such tables are machine-written.
    """
    lines = _data_lines(text)
    if not lines:
        raise MalformedHeader("no header row")
    rows = list(csv.reader(lines))
    header = [h.strip() for h in rows[0]]
    missing = [c for c in columns if c not in header]
    if missing:
        raise MalformedHeader(f"columns {missing} not in header {header}")
    idx = [header.index(c) for c in columns]
    out = {c: [] for c in columns}
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        for c, i in zip(columns, idx):
            try:
                value = float(row[i])
            except (ValueError, IndexError):
                raise InputError(f"line {lineno}: column {c!r} is not numeric") from None
            if not math.isfinite(value):
                raise InputError(f"line {lineno}: column {c!r} is not finite")
            out[c].append(value)
    n = len(out[columns[0]]) if columns else 0
    if n < 2:
        raise EmptySeries(f"{n} data rows; need at least 2")
    return {c: np.array(v) for c, v in out.items()}
