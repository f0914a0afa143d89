"""Machine-readable tables with a metadata block, written atomically.

JSON layout::

    {"operation": ..., "config": {...}, "result": {...},
     "table": {"columns": [...], "rows": [[...], ...]}}

CSV carries the same metadata as ``# key: <json>`` comment lines above the
header; :mod:`volxcorr.ingest` skips those lines when reading a file back.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

JSON = "json"
CSV = "csv"


def _plain(value):
    """Convert numpy scalars/arrays into JSON-native values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


@dataclass
class Table:
    operation: str
    columns: list
    rows: list
    config: dict = field(default_factory=dict)
    result: dict = field(default_factory=dict)

    @classmethod
    def from_columns(cls, operation, data: dict, config=None, result=None) -> "Table":
        names = list(data)
        cols = [list(_plain(np.asarray(data[n]))) for n in names]
        rows = [list(r) for r in zip(*cols)] if cols else []
        return cls(operation, names, rows, config or {}, result or {})

    def to_json(self) -> str:
        doc = {
            "operation": self.operation,
            "config": _plain(self.config),
            "result": _plain(self.result),
            "table": {"columns": self.columns, "rows": _plain(self.rows)},
        }
        return json.dumps(doc, indent=1, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key in ("operation", "config", "result"):
            value = _plain(getattr(self, key))
            buf.write(f"# {key}: {json.dumps(value, allow_nan=False)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == JSON:
            return self.to_json()
        if fmt == CSV:
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_atomic(path, text: str) -> None:
    """Write ``text`` to a temporary sibling and rename it over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
