import numpy as np
import pytest


def pareto_sample(alpha, size, seed):
    """Classical Pareto with unit scale: P(X > x) = x**-alpha for x >= 1."""
    rng = np.random.default_rng(seed)
    return rng.pareto(alpha, size) + 1.0


def price_volume_csv(closes, volumes, start="2000-01-03", extra_header=""):
    days = np.arange(np.datetime64(start), np.datetime64(start) + len(closes))
    lines = ["Date,Close,Volume" + extra_header]
    for d, c, v in zip(days, closes, volumes):
        lines.append(f"{d},{float(c)!r},{float(v)!r}")
    return "\n".join(lines) + "\n"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_VERDICTS = []


@pytest.fixture
def verdict():
    """Record one acceptance line; returns ``ok`` so callers can assert on it."""

    def record(criterion, ok, detail):
        status = "PASS" if ok else "FAIL"
        _VERDICTS.append(f"criterion {criterion}: {status}  {detail}")
        return ok

    return record


def skip_verdict(criterion, reason):
    _VERDICTS.append(f"criterion {criterion}: SKIP  {reason}")
    pytest.skip(reason)


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
