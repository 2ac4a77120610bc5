"""File formats: curves, energy logs, reports, run manifests.

Curves travel as a JSON array of [y1, y2] pairs (one row per sample, the
closing edge implicit) or as two-column CSV with header ``y1,y2``.  All
numbers are written as decimals with 17 significant digits, which
round-trips IEEE doubles exactly, so parse -> serialize is byte-stable for
files this module wrote.
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .curves import DiscreteCurve
from .energy import EnergyReport

__all__ = [
    "fmt",
    "curve_to_json",
    "curve_from_json",
    "write_curve_json",
    "read_curve_json",
    "write_curve_csv",
    "read_curve_csv",
    "read_curve",
    "report_to_json",
    "ENERGY_LOG_HEADER",
    "energy_log_row",
    "write_energy_log",
    "read_energy_log",
    "write_manifest",
    "read_manifest",
]

ENERGY_LOG_HEADER = ["t", "elastic", "penalized", "length", "tac", "grad_l2"]


def fmt(x: float) -> str:
    """Decimal with 17 significant digits (exact double round-trip)."""
    return format(float(x), ".17g")


def curve_to_json(curve: DiscreteCurve) -> str:
    rows = ",\n".join(f"  [{fmt(p[0])}, {fmt(p[1])}]" for p in curve.points)
    return "[\n" + rows + "\n]\n"


def curve_from_json(text: str) -> DiscreteCurve:
    data = json.loads(text)
    return DiscreteCurve(np.asarray(data, dtype=float))


def write_curve_json(path: Path | str, curve: DiscreteCurve):
    Path(path).write_text(curve_to_json(curve))


def read_curve_json(path: Path | str) -> DiscreteCurve:
    return curve_from_json(Path(path).read_text())


def write_curve_csv(path: Path | str, curve: DiscreteCurve):
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["y1", "y2"])
    for p in curve.points:
        writer.writerow([fmt(p[0]), fmt(p[1])])
    Path(path).write_text(buf.getvalue())


def read_curve_csv(path: Path | str) -> DiscreteCurve:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if [c.strip() for c in header] != ["y1", "y2"]:
            raise ValueError(f"expected header 'y1,y2', got {header}")
        pts = [[float(a), float(b)] for a, b in reader]
    return DiscreteCurve(np.asarray(pts))


def read_curve(path: Path | str) -> DiscreteCurve:
    """Read a curve file by extension (.json or .csv)."""
    path = Path(path)
    if path.suffix == ".json":
        return read_curve_json(path)
    if path.suffix == ".csv":
        return read_curve_csv(path)
    raise ValueError(f"unknown curve format {path.suffix!r} (want .json or .csv)")


def report_to_json(report: EnergyReport) -> str:
    data = {key: fmt(value) for key, value in report.to_dict().items()}
    return json.dumps(data, indent=2) + "\n"


def energy_log_row(t: float, report: EnergyReport) -> str:
    values = [t, report.elastic, report.penalized, report.length,
              report.total_abs_curv, report.grad_l2]
    return ",".join(fmt(v) for v in values)


def write_energy_log(path: Path | str, rows: list[str]):
    Path(path).write_text(",".join(ENERGY_LOG_HEADER) + "\n" + "\n".join(rows) + "\n")


def read_energy_log(path: Path | str) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader if row]
    arr = np.asarray(rows)
    return {name: arr[:, i] for i, name in enumerate(header)}


def write_manifest(path: Path | str, manifest: dict):
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def read_manifest(path: Path | str) -> dict:
    return json.loads(Path(path).read_text())
