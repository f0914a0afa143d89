"""
Command-line pipeline
=====================

Simulate a pair, then run the full report on it. Everything lands in a
temporary directory; the manifest lists every table with its hash.
"""

import json
import tempfile
from pathlib import Path

from volxcorr.cli import main

work = Path(tempfile.mkdtemp(prefix="volxcorr-"))
inputs = work / "inputs"

main(["simulate", "--seed", "3", "--length", "8000", "--format", "csv",
      "--out", str(inputs / "coupled.csv")])
main(["simulate", "--seed", "3", "--length", "8000", "--format", "csv",
      "--params", "0.01,0.14,0.65,0,0.01,0.14,0.65,0", "--out", str(inputs / "decoupled.csv")])

status = main(["report", "--input", str(inputs), "--out", str(work / "report")])
print("report exit status:", status)

manifest = json.loads((work / "report" / "manifest.json").read_text())
print(len(manifest["files"]), "tables, e.g.", manifest["files"][0]["path"])

for name in ("coupled", "decoupled"):
    doc = json.loads((work / "report" / name / "dcca_abs.json").read_text())
    fit = doc["result"]["fit"]
    if fit:
        print(f"{name}: lambda_DCCA = {fit['exponent']:.3f}")
    else:
        print(f"{name}: {doc['result']['error']['category']}")
print("outputs in", work)
