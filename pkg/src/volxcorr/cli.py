"""Command-line front end.

Every command reads local CSV files, runs one analysis and writes a single
JSON or CSV document (``report`` writes a directory of them plus a manifest).
Outputs embed the fully resolved configuration, contain no timestamps, and are
written by temp-file rename, so identical inputs and flags give byte-identical
files.

Exit status: 0 success, 2 input error, 3 method precondition failure,
4 internal error. Failures print one line ``error: <Category>: <message>`` on
stderr.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from . import corr, garchx, scaling, tails
from .errors import InputError, NonstationaryWarning, PreconditionError, VolxError
from .ingest import CsvSchema, header_of, parse_columns, parse_csv
from .output import CSV, JSON, Table, write_atomic
from .series import PRICE, VOLUME, log_changes, normalize_volatility

COMMANDS = ("returns", "ccf", "dfa", "dcca", "hill", "tauq", "pdf", "simulate", "report")
REFERENCE_PARAMS = "0.01,0.14,0.65,0.2,0.01,0.14,0.65,0.2"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4

# simulator output columns, read back as the price/volume change pair
EPS, EPS_TILDE = "eps", "eps_tilde"


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    input_b: str | None = None
    column: str = PRICE
    column_b: str | None = None
    values: str = "abs"
    out: str | None = None
    format: str = JSON
    max_lag: int | None = None
    level: float = 0.95
    windows: list | None = None
    fit_range: list | None = None
    q_min: float = 2.0
    q_max: float = 8.0
    q_step: float = 0.5
    min_count: int = tails.DEFAULT_MIN_COUNT
    tail_frac: float = tails.DEFAULT_TAIL_FRAC
    tail_min: float = 2.0
    tail_max: float | None = None
    bins_per_decade: int = 20
    bin_min_count: int = 10
    seed: int = 0
    length: int = 20000
    burn_in: int = garchx.DEFAULT_BURN_IN
    params: str = REFERENCE_PARAMS
    date_column: str = "Date"
    close_column: list = field(default_factory=lambda: ["Adj Close", "Close"])
    volume_column: str = "Volume"
    jobs: int = 1

    # where and how fast to run; never part of the echoed configuration
    EXECUTION_ONLY = ("out", "jobs")

    def to_dict(self, echo: bool = False) -> dict:
        d = asdict(self)
        if echo:
            for key in self.EXECUTION_ONLY:
                d.pop(key)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise InputError(f"unknown config keys {sorted(unknown)}")
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls.from_dict(json.loads(text))

    @property
    def schema(self) -> CsvSchema:
        return CsvSchema(self.date_column, tuple(self.close_column), self.volume_column)

    def q_grid(self) -> np.ndarray:
        try:
            return tails.default_q_grid(self.q_min, self.q_max, self.q_step)
        except ValueError as exc:
            raise InputError(str(exc)) from None


# ----------------------------------------------------------------------------
# input handling


def expand_inputs(paths) -> list[Path]:
    """Files as given, directories expanded to their ``*.csv`` files (sorted)."""
    out = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            out.extend(sorted(p.glob("*.csv")))
        elif p.is_file():
            out.append(p)
        else:
            raise InputError(f"input {str(p)!r} does not exist")
    if not out:
        raise InputError("no input files")
    return out


@dataclass
class LoadedInput:
    source_id: str
    changes: dict  # 'price' / 'volume' -> log changes
    dates: np.ndarray | None = None
    ingest: dict | None = None
    text: str = ""


def load_input(path, cfg: RunConfig) -> LoadedInput:
    """Read a price/volume history or a simulator output file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    header = header_of(text)
    if EPS in header and EPS_TILDE in header:
        cols = parse_columns(text, [EPS, EPS_TILDE])
        return LoadedInput(path.stem, {PRICE: cols[EPS], VOLUME: cols[EPS_TILDE]}, text=text)
    if cfg.date_column in header:
        series, report = parse_csv(text, cfg.schema, path.stem)
        return LoadedInput(
            path.stem,
            {PRICE: log_changes(series, PRICE).values, VOLUME: log_changes(series, VOLUME).values},
            dates=series.timestamps[1:],
            ingest=report.to_dict(),
            text=text,
        )
    return LoadedInput(path.stem, {}, text=text)


def column_values(loaded: LoadedInput, column: str) -> np.ndarray:
    if column in loaded.changes:
        return loaded.changes[column]
    return parse_columns(loaded.text, [column])[column]


def _transform(x: np.ndarray, values: str) -> np.ndarray:
    if values == "abs":
        return np.abs(x)
    if values == "raw":
        return x
    raise InputError(f"--values must be 'abs' or 'raw', got {values!r}")


def _map(fn, items, jobs: int):
    # per-file fan-out; map() keeps input order so results never depend on scheduling
    if jobs <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _error_dict(exc: Exception) -> dict:
    return {"category": type(exc).__name__, "message": str(exc)}


def _log_or_none(v):
    v = np.asarray(v, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log(np.abs(v))
    return [float(x) if np.isfinite(x) else None for x in out]


# ----------------------------------------------------------------------------
# analyses shared by single commands and the report


def ccf_table(a, b, cfg: RunConfig, operation="ccf"):
    cf = corr.cross_correlation(a, b, cfg.max_lag, cfg.level)
    result = {
        "n_obs": len(a),
        "band": cf.band,
        "level": cf.level,
        "rho_lag0": cf.at(0),
        "significant_lags": corr.significant_lag_count(cf),
        "significant_negative_lags": int(np.count_nonzero((cf.lags < 0) & (np.abs(cf.rho) > cf.band))),
    }
    return Table.from_columns(
        operation, {"lag": cf.lags, "rho": cf.rho, "n_obs": cf.n_obs}, cfg.to_dict(echo=True), result
    )


def acf_table(a, cfg: RunConfig, operation="acf"):
    cf = corr.auto_correlation(a, cfg.max_lag, cfg.level)
    result = {"n_obs": len(a), "band": cf.band, "level": cf.level,
              "significant_lags": corr.significant_lag_count(cf)}
    return Table.from_columns(
        operation, {"lag": cf.lags, "rho": cf.rho, "n_obs": cf.n_obs}, cfg.to_dict(echo=True), result
    )


def scaling_table(x, y, cfg: RunConfig, operation):
    curve = scaling.scaling_curve(x, y, cfg.windows)
    result = {"kind": curve.kind, "normalization": curve.normalization}
    error = None
    try:
        result["fit"] = scaling.fit_exponent(curve, cfg.fit_range).to_dict()
    except PreconditionError as exc:
        result["fit"] = None
        result["fit_error"] = _error_dict(exc)
        error = exc
    data = {
        "n": curve.window_sizes,
        "F": curve.fluctuation,
        "F2": curve.f2,
        "boxes": curve.n_points_used,
        "log_n": np.log(curve.window_sizes),
        "log_abs_F": _log_or_none(curve.fluctuation),
    }
    return Table.from_columns(operation, data, cfg.to_dict(echo=True), result), error


def hill_table(pooled, cfg: RunConfig, operation="hill"):
    n_tail = tails.hill_tail_count(len(pooled), cfg.tail_frac)
    est = tails.hill_estimator(pooled, n_tail)
    # Hill plot: estimate against tail size from one sort and cumulative logs
    top = np.sort(np.asarray(pooled, dtype=float))[::-1][:n_tail]
    logs = np.log(top)
    csum = np.cumsum(logs)
    ks = np.unique(np.round(np.geomspace(2, n_tail, min(30, n_tail - 1))).astype(int)) if n_tail > 2 else np.array([2])
    with np.errstate(divide="ignore"):
        # tied top values give an infinite estimate, written out as null
        alpha = (ks - 1) / (csum[ks - 2] - (ks - 1) * logs[ks - 1])
    result = {"estimate": est.to_dict(), "sample_size": len(pooled)}
    data = {"tail_count": ks, "alpha": alpha, "stderr": alpha / np.sqrt(ks - 1)}
    return Table.from_columns(operation, data, cfg.to_dict(echo=True), result)


def tauq_table(vols, cfg: RunConfig, operation="tauq"):
    curve = tails.tau_curve(vols, cfg.q_grid(), cfg.min_count)
    result = {"omitted_thresholds": curve.omitted, "series": len(vols)}
    error = None
    try:
        result["estimate"] = tails.alpha_from_tau(curve, cfg.fit_range).to_dict()
    except PreconditionError as exc:
        result["estimate"] = None
        result["estimate_error"] = _error_dict(exc)
        error = exc
    data = {
        "q": curve.thresholds,
        "mean_tau": curve.mean_tau,
        "count": curve.counts,
        "log_q": np.log(curve.thresholds),
        "log_mean_tau": np.log(curve.mean_tau),
    }
    return Table.from_columns(operation, data, cfg.to_dict(echo=True), result), error


def pdf_table(pooled, cfg: RunConfig, operation="pdf"):
    hist = tails.log_histogram(pooled, cfg.tail_min, cfg.tail_max, cfg.bins_per_decade)
    result = {"sample_size": hist.total}
    error = None
    try:
        result["estimate"] = tails.pdf_tail_fit(
            pooled, cfg.bins_per_decade, (cfg.tail_min, cfg.tail_max), cfg.bin_min_count
        ).to_dict()
    except PreconditionError as exc:
        result["estimate"] = None
        result["estimate_error"] = _error_dict(exc)
        error = exc
    data = {
        "bin_lo": hist.edges[:-1],
        "bin_hi": hist.edges[1:],
        "center": hist.centers,
        "count": hist.counts,
        "density": hist.density,
        "used": (hist.counts >= max(cfg.bin_min_count, 1)).astype(int),
        "log_center": np.log(hist.centers),
        "log_density": _log_or_none(hist.density),
    }
    return Table.from_columns(operation, data, cfg.to_dict(echo=True), result), error


# ----------------------------------------------------------------------------
# commands; each returns ({relative name: Table}, deferred precondition error)


def _first_input(cfg):
    if not cfg.inputs:
        raise InputError(f"{cfg.command} needs --input")
    return load_input(expand_inputs(cfg.inputs[:1])[0], cfg)


def _pair(cfg):
    a_in = _first_input(cfg)
    b_in = a_in if cfg.input_b is None else load_input(cfg.input_b, cfg)
    column_b = cfg.column_b or (VOLUME if cfg.input_b is None else cfg.column)
    a = _transform(column_values(a_in, cfg.column), cfg.values)
    b = _transform(column_values(b_in, column_b), cfg.values)
    if len(a) != len(b):
        raise InputError(f"series lengths differ ({len(a)} vs {len(b)})")
    return a, b, replace(cfg, column_b=column_b)


def cmd_returns(cfg):
    loaded = _first_input(cfg)
    if not loaded.changes:
        raise InputError("returns needs a price/volume history or simulator output")
    r, rt = loaded.changes[PRICE], loaded.changes[VOLUME]
    v, vt = normalize_volatility(r), normalize_volatility(rt)
    data = {}
    if loaded.dates is not None:
        data["date"] = [str(d) for d in loaded.dates]
    else:
        data["t"] = np.arange(len(r))
    data.update({"R": r, "R_tilde": rt, "V_R": v.values, "V_R_tilde": vt.values})
    result = {"sigma_R": v.sigma, "sigma_R_tilde": vt.sigma, "n_changes": len(r), "ingest": loaded.ingest}
    return {"": Table.from_columns("returns", data, cfg.to_dict(echo=True), result)}, None


def cmd_ccf(cfg):
    a, b, cfg = _pair(cfg)
    cfg = replace(cfg, max_lag=cfg.max_lag or corr.default_max_lag(len(a)))
    return {"": ccf_table(a, b, cfg)}, None


def cmd_dfa(cfg):
    x = _transform(column_values(_first_input(cfg), cfg.column), cfg.values)
    cfg = replace(cfg, windows=_grid(cfg, len(x)))
    table, err = scaling_table(x, None, cfg, "dfa")
    return {"": table}, err


def cmd_dcca(cfg):
    x, y, cfg = _pair(cfg)
    cfg = replace(cfg, windows=_grid(cfg, len(x)))
    table, err = scaling_table(x, y, cfg, "dcca")
    return {"": table}, err


def _grid(cfg, n):
    if cfg.windows is None:
        return [int(w) for w in scaling.default_window_grid(n)]
    return [int(w) for w in cfg.windows]


def _volatilities(cfg, column=None):
    paths = expand_inputs(cfg.inputs)
    column = column or cfg.column

    def one(path):
        return normalize_volatility(column_values(load_input(path, cfg), column))

    return _map(one, paths, cfg.jobs)


def cmd_hill(cfg):
    return {"": hill_table(tails.pool_normalized(_volatilities(cfg)), cfg)}, None


def cmd_tauq(cfg):
    table, err = tauq_table(_volatilities(cfg), cfg)
    return {"": table}, err


def cmd_pdf(cfg):
    table, err = pdf_table(tails.pool_normalized(_volatilities(cfg)), cfg)
    return {"": table}, err


def cmd_simulate(cfg):
    params = garchx.GarchXParams.parse(cfg.params)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonstationaryWarning)
        sim = garchx.simulate(params, cfg.length, cfg.seed, cfg.burn_in)
    for w in caught:
        print(f"warning: {w.category.__name__}: {w.message}", file=sys.stderr)
    try:
        s0 = list(garchx.stationary_variance(params))
    except PreconditionError:
        s0 = None
    result = {
        "params": params.to_dict(),
        "stationarity": garchx.check_stationarity(params).to_dict(),
        "stationary_variance": s0,
    }
    table = Table.from_columns("simulate", {EPS: sim.eps, EPS_TILDE: sim.eps_tilde}, cfg.to_dict(echo=True), result)
    return {"": table}, None


def _guarded(fn):
    """Run one report section; method failures become a recorded error table."""
    try:
        out = fn()
    except PreconditionError as exc:
        return None, _error_dict(exc)
    table, err = out if isinstance(out, tuple) else (out, None)
    return table, (_error_dict(err) if err is not None else None)


def cmd_report(cfg):
    paths = expand_inputs(cfg.inputs)
    loaded = _map(lambda p: load_input(p, cfg), paths, cfg.jobs)
    for item in loaded:
        if not item.changes:
            raise InputError(f"{item.source_id}: not a price/volume history or simulator output")
    ids = [item.source_id for item in loaded]
    if len(set(ids)) != len(ids):
        raise InputError("input file stems must be unique")

    sections = {}
    summary = {}
    for item in loaded:
        r, rt = item.changes[PRICE], item.changes[VOLUME]
        n = len(r)
        base = replace(cfg, max_lag=cfg.max_lag or corr.default_max_lag(n), windows=_safe_grid(cfg, n))
        jobs = {
            "ccf_raw": lambda: ccf_table(r, rt, replace(base, values="raw")),
            "ccf_abs": lambda: ccf_table(np.abs(r), np.abs(rt), base),
            "acf_price_abs": lambda: acf_table(np.abs(r), base),
            "dfa_price_abs": lambda: scaling_table(np.abs(r), None, base, "dfa"),
            "dfa_volume_abs": lambda: scaling_table(np.abs(rt), None, base, "dfa"),
            "dcca_abs": lambda: scaling_table(np.abs(r), np.abs(rt), base, "dcca"),
        }
        for col, x in ((PRICE, r), (VOLUME, rt)):
            c = replace(base, column=col)
            jobs[f"pdf_{col}"] = lambda x=x, c=c: pdf_table(normalize_volatility(x).values, c)
            jobs[f"hill_{col}"] = lambda x=x, c=c: hill_table(normalize_volatility(x).values, c)
            jobs[f"tauq_{col}"] = lambda x=x, c=c: tauq_table([normalize_volatility(x)], c)
        for name, fn in jobs.items():
            sections[f"{item.source_id}/{name}"] = _guarded(fn)
        summary[item.source_id] = {"n_changes": n, "ingest": item.ingest}

    if len(loaded) > 1:
        for col in (PRICE, VOLUME):
            c = replace(cfg, column=col)
            vols = [normalize_volatility(item.changes[col]) for item in loaded]
            pooled = tails.pool_normalized(vols)
            sections[f"pooled/pdf_{col}"] = _guarded(lambda: pdf_table(pooled, c))
            sections[f"pooled/hill_{col}"] = _guarded(lambda: hill_table(pooled, c))
            sections[f"pooled/tauq_{col}"] = _guarded(lambda: tauq_table(vols, c))

    tables = {}
    for name, (table, err) in sections.items():
        if table is None:
            table = Table(name.split("/")[-1], [], [], cfg.to_dict(echo=True), {"error": err})
        elif err is not None:
            table.result.setdefault("error", err)
        tables[name] = table
    return tables, {"inputs": [str(p) for p in paths], "series": summary}


def _safe_grid(cfg, n):
    try:
        return _grid(cfg, n)
    except PreconditionError:
        return cfg.windows


HANDLERS = {
    "returns": cmd_returns,
    "ccf": cmd_ccf,
    "dfa": cmd_dfa,
    "dcca": cmd_dcca,
    "hill": cmd_hill,
    "tauq": cmd_tauq,
    "pdf": cmd_pdf,
    "simulate": cmd_simulate,
    "report": cmd_report,
}


def _manifest(cfg, rendered: dict, extra: dict) -> str:
    files = [
        {"path": name, "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest()}
        for name, text in sorted(rendered.items())
    ]
    doc = {"operation": "report", "config": cfg.to_dict(echo=True), "files": files, **extra}
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def run(cfg: RunConfig) -> int:
    """Execute one configured command, write its artifacts, return the exit status.

    Everything is computed before anything is written, so a failing run leaves
    no partial outputs behind.
    """
    if cfg.command not in HANDLERS:
        raise InputError(f"unknown command {cfg.command!r}")
    if cfg.format not in (JSON, CSV):
        raise InputError(f"unknown format {cfg.format!r}")
    if cfg.command == "report":
        if not cfg.out:
            raise InputError("report needs --out DIRECTORY")
        tables, extra = cmd_report(cfg)
        rendered = {f"{name}.{cfg.format}": t.render(cfg.format) for name, t in tables.items()}
        rendered["manifest.json"] = _manifest(cfg, rendered, extra)
        root = Path(cfg.out)
        for name, text in sorted(rendered.items()):
            write_atomic(root / name, text)
        return EXIT_OK

    tables, deferred = HANDLERS[cfg.command](cfg)
    text = tables[""].render(cfg.format)
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)
    if deferred is not None:
        raise deferred
    return EXIT_OK


# ----------------------------------------------------------------------------
# argument parsing


def _floats(text: str) -> list:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _windows(text: str):
    if text == "auto":
        return None
    try:
        grid = [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or comma-separated integers, got {text!r}") from None
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise argparse.ArgumentTypeError("window sizes must be strictly increasing")
    return grid


def _fit_range(text: str):
    values = _floats(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError("--fit-range takes LO,HI")
    return values


def build_parser() -> argparse.ArgumentParser:
    d = RunConfig("")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", dest="inputs", default=[], metavar="PATH",
                        help="input CSV (repeatable; directories expand to their *.csv files)")
    common.add_argument("--out", help="output file (directory for report); stdout if omitted")
    common.add_argument("--format", choices=(JSON, CSV), default=d.format)
    common.add_argument("--column", default=d.column,
                        help="'price', 'volume' or a numeric column name")
    common.add_argument("--jobs", type=int, default=d.jobs, help="worker threads for per-file work")
    common.add_argument("--date-column", default=d.date_column)
    common.add_argument("--close-column", type=lambda s: s.split(","), default=d.close_column,
                        help="close column, or comma-separated candidates in order of preference")
    common.add_argument("--volume-column", default=d.volume_column)

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--input-b", help="second series file (defaults to --input)")
    pair.add_argument("--column-b", help="second column (defaults to 'volume' on the same file)")
    pair.add_argument("--values", choices=("abs", "raw"), default=d.values)

    lagged = argparse.ArgumentParser(add_help=False)
    lagged.add_argument("--max-lag", type=int, default=d.max_lag)
    lagged.add_argument("--level", type=float, default=d.level)

    scal = argparse.ArgumentParser(add_help=False)
    scal.add_argument("--windows", type=_windows, default=d.windows, help="'auto' or n1,n2,...")
    scal.add_argument("--fit-range", type=_fit_range, default=d.fit_range, metavar="LO,HI")

    tau = argparse.ArgumentParser(add_help=False)
    tau.add_argument("--q-min", type=float, default=d.q_min)
    tau.add_argument("--q-max", type=float, default=d.q_max)
    tau.add_argument("--q-step", type=float, default=d.q_step)
    tau.add_argument("--min-count", type=int, default=d.min_count)

    hill = argparse.ArgumentParser(add_help=False)
    hill.add_argument("--tail-frac", type=float, default=d.tail_frac)

    pdf = argparse.ArgumentParser(add_help=False)
    pdf.add_argument("--tail-min", type=float, default=d.tail_min)
    pdf.add_argument("--tail-max", type=float, default=d.tail_max)
    pdf.add_argument("--bins-per-decade", type=int, default=d.bins_per_decade)
    pdf.add_argument("--bin-min-count", type=int, default=d.bin_min_count)

    sim = argparse.ArgumentParser(add_help=False)
    sim.add_argument("--params", default=d.params,
                     help="omega,alpha,beta,gamma_tilde,omega_tilde,alpha_tilde,beta_tilde,gamma")
    sim.add_argument("--length", type=int, default=d.length)
    sim.add_argument("--burn-in", type=int, default=d.burn_in)
    sim.add_argument("--seed", type=int, default=d.seed)

    parser = argparse.ArgumentParser(prog="volxcorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("returns", parents=[common], help="log changes and normalized volatilities")
    sub.add_parser("ccf", parents=[common, pair, lagged], help="cross-correlation with i.i.d. band")
    dfa_p = sub.add_parser("dfa", parents=[common, scal], help="detrended fluctuation analysis")
    dfa_p.add_argument("--values", choices=("abs", "raw"), default=d.values)
    sub.add_parser("dcca", parents=[common, pair, scal], help="detrended cross-correlation analysis")
    sub.add_parser("hill", parents=[common, hill], help="Hill tail exponent (pooled over inputs)")
    tau_p = sub.add_parser("tauq", parents=[common, tau], help="mean return interval vs threshold")
    tau_p.add_argument("--fit-range", type=_fit_range, default=d.fit_range, metavar="QLO,QHI")
    sub.add_parser("pdf", parents=[common, pdf], help="log-binned density tail fit")
    sub.add_parser("simulate", parents=[common, sim], help="simulate the coupled GARCH pair")
    sub.add_parser("report", parents=[common, lagged, scal, tau, hill, pdf],
                   help="full analysis bundle into a directory")
    return parser


def config_from_args(argv=None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    known = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in ns.items() if k in known})


def _fail(exc: BaseException, code: int) -> int:
    message = " ".join(str(exc).split())
    print(f"error: {type(exc).__name__}: {message}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    cfg = config_from_args(argv)
    try:
        return run(cfg)
    except InputError as exc:
        return _fail(exc, EXIT_INPUT)
    except PreconditionError as exc:
        return _fail(exc, EXIT_PRECONDITION)
    except (OSError, UnicodeDecodeError) as exc:
        return _fail(exc, EXIT_INPUT)
    except VolxError as exc:
        return _fail(exc, EXIT_INTERNAL)
    except Exception as exc:  # noqa: BLE001 - last-resort category for the shell
        return _fail(exc, EXIT_INTERNAL)


if __name__ == "__main__":
    sys.exit(main())
