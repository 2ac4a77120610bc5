"""Command-line entry point.

Subcommands
-----------
flow    integrate the penalized elastic flow and write a trajectory directory
        (curve snapshots, energy_log.csv, run_manifest.json)
verify  run the evolution-identity residual suite, write a JSON report,
        exit 1 if any residual misses its threshold
report  turn a trajectory directory into plot-ready CSV files plus the
        normalized final curve

Configuration comes from a TOML or JSON file (--config) overridden by
flags; a run manifest is itself a valid config, so re-feeding one
reproduces the run bit for bit.  Exit codes: 0 ok, 1 verification failure,
2 malformed configuration, 3 runtime flow failure (last good snapshot is
still written).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python 3.10
    import tomli as tomllib

from . import __version__
from .curves import DiscreteCurve, circle_curve, fourier_curve, perturbed_circle_curve
from .energy import fenchel_length_lower_bound
from .flow import FlowConfig, FlowError, normalize_subconvergence, run
from .checks import DEFAULT_THRESHOLD, run_verification
from .io import (
    energy_log_row,
    fmt,
    read_curve,
    read_energy_log,
    write_curve_csv,
    write_curve_json,
    write_energy_log,
    write_manifest,
)

__all__ = ["main", "make_curve", "ConfigError"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_CONFIG = 2
EXIT_FLOW_FAILED = 3

CURVE_KINDS = ("circle", "perturbed_circle", "fourier")


class ConfigError(ValueError):
    """Anything wrong with the requested configuration."""


def make_curve(kind: str, params: dict) -> DiscreteCurve:
    """Build an initial curve from a descriptor (kind + parameters)."""
    params = dict(params)
    n = int(params.pop("n", 256))
    try:
        if kind == "circle":
            return circle_curve(
                center_y=float(params.pop("center_y")),
                radius=float(params.pop("radius")),
                n=n,
                center_x=float(params.pop("center_x", 0.0)),
            )
        if kind == "perturbed_circle":
            return perturbed_circle_curve(
                center_y=float(params.pop("center_y")),
                radius=float(params.pop("radius")),
                mode=int(params.pop("mode", 3)),
                amplitude=float(params.pop("amplitude", 0.05)),
                n=n,
                center_x=float(params.pop("center_x", 0.0)),
            )
        if kind == "fourier":
            return fourier_curve(params.pop("coefficients"), n=n)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"cannot build {kind!r} curve: {exc}") from exc
    raise ConfigError(f"unknown curve kind {kind!r}; choose from {CURVE_KINDS}")


def _load_config_file(path: Path) -> dict:
    try:
        if path.suffix == ".toml":
            with open(path, "rb") as fh:
                return tomllib.load(fh)
        data = json.loads(path.read_text())
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} is not a table/object")
    # a run manifest doubles as a config
    if "config" in data and isinstance(data["config"], dict):
        merged = dict(data["config"])
        if "initial_curve" in data:
            merged.setdefault("curve", data["initial_curve"])
        return merged
    return data


_FLOW_KEYS = {
    "lambda": ("lam", float),
    "n": ("n_samples", int),
    "n_samples": ("n_samples", int),
    "dt": ("dt_init", float),
    "dt_init": ("dt_init", float),
    "dt_max": ("dt_max", float),
    "t_end": ("t_end", float),
    "grad_tol": ("grad_tol", float),
    "redistribute_every": ("redistribute_every", int),
    "energy_backtrack": ("energy_backtrack", bool),
    "max_dt_growth": ("max_dt_growth", float),
    "snapshot_every": ("snapshot_every", int),
}


def _build_flow_config(settings: dict) -> FlowConfig:
    kwargs = {}
    for key, value in settings.items():
        if key in ("curve", "seed", "out", "initial"):
            continue
        if key not in _FLOW_KEYS:
            raise ConfigError(f"unknown configuration key {key!r}")
        name, cast = _FLOW_KEYS[key]
        if value is not None:
            kwargs[name] = cast(value)
    try:
        return FlowConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _collect_settings(args) -> dict:
    settings: dict = {}
    if getattr(args, "config", None):
        settings.update(_load_config_file(Path(args.config)))
    overrides = {
        "lambda": args.lam,
        "n": args.n,
        "dt": args.dt,
        "dt_max": args.dt_max,
        "t_end": args.t_end,
        "grad_tol": args.grad_tol,
        "redistribute_every": args.redistribute_every,
        "max_dt_growth": args.max_dt_growth,
        "snapshot_every": args.snapshot_every,
        "seed": args.seed,
    }
    settings.update({k: v for k, v in overrides.items() if v is not None})
    if args.initial:
        settings["initial"] = args.initial
    elif args.curve:
        try:
            params = json.loads(args.curve_args) if args.curve_args else {}
        except ValueError as exc:
            raise ConfigError(f"--curve-args is not valid JSON: {exc}") from exc
        settings["curve"] = {"kind": args.curve, **params}
    return settings


def _resolve_initial(settings: dict) -> tuple[DiscreteCurve, dict]:
    n = int(settings.get("n", settings.get("n_samples", 256)))
    if "initial" in settings:
        path = Path(settings["initial"])
        try:
            curve = read_curve(path)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read initial curve {path}: {exc}") from exc
        return curve, {"kind": "file", "path": str(path)}
    descriptor = settings.get("curve")
    if descriptor is None:
        descriptor = {"kind": "circle", "center_y": float(np.sqrt(2.0)), "radius": 1.0}
    descriptor = dict(descriptor)
    descriptor.setdefault("n", n)
    kind = descriptor.pop("kind", None)
    if kind is None:
        raise ConfigError("curve descriptor is missing its 'kind'")
    try:
        curve = make_curve(kind, descriptor)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return curve, {"kind": kind, **descriptor}


def cmd_flow(args) -> int:
    try:
        settings = _collect_settings(args)
        settings.setdefault("n", settings.get("n_samples", 256))
        curve, descriptor = _resolve_initial(settings)
        if curve.n_samples != int(settings["n"]):
            settings["n"] = curve.n_samples
        config = _build_flow_config(settings)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    started = time.time()
    termination = "t_end"
    rows: list[str] = []
    try:
        snapshots = run(config, curve, on_step=lambda s: rows.append(energy_log_row(s.t, s.report)))
        if snapshots[-1].report.grad_l2 < config.grad_tol:
            termination = "grad_tol"
    except FlowError as exc:
        termination = "error"
        snapshots = [exc.state] if exc.state is not None else []
        print(f"error: {exc}", file=sys.stderr)

    for snap in snapshots:
        write_curve_json(out / f"curve_t{snap.t:021.12f}.json", snap.curve)
    if rows:
        write_energy_log(out / "energy_log.csv", rows)
    manifest = {
        "config": {**{k: v for k, v in config.to_dict().items()}},
        "initial_curve": descriptor,
        "tool_version": __version__,
        "wall_clock_s": time.time() - started,
        "termination": termination,
    }
    if "seed" in settings and settings["seed"] is not None:
        manifest["config"]["seed"] = int(settings["seed"])
    write_manifest(out / "run_manifest.json", manifest)
    if termination == "error":
        return EXIT_FLOW_FAILED
    print(f"{termination}: {len(rows) - 1} accepted steps, "
          f"{len(snapshots)} snapshots -> {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    records = run_verification(n=args.n or 256, h=args.h, threshold=args.threshold)
    payload = [record.to_dict() for record in records]
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")
    failed = [r for r in records if not r.passed]
    for record in failed:
        print(
            f"FAIL {record.check} on {record.family}: residual {record.residual:.3e} "
            f"> {record.threshold:.1e}",
            file=sys.stderr,
        )
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_report(args) -> int:
    src = Path(args.trajectory)
    log_path = src / "energy_log.csv"
    if not log_path.exists():
        print(f"error: {log_path} not found", file=sys.stderr)
        return EXIT_BAD_CONFIG
    log = read_energy_log(log_path)
    out = Path(args.out) if args.out else src / "report"
    out.mkdir(parents=True, exist_ok=True)

    def write_pairs(name, xs, ys, header):
        lines = [header] + [f"{fmt(x)},{fmt(y)}" for x, y in zip(xs, ys)]
        (out / name).write_text("\n".join(lines) + "\n")

    write_pairs("penalized_vs_t.csv", log["t"], log["penalized"], "t,penalized")
    write_pairs("grad_l2_vs_t.csv", log["t"], log["grad_l2"], "t,grad_l2")

    curves = sorted(src.glob("curve_t*.json"))
    if curves:
        final = read_curve(curves[-1])
        length_bound = float(np.max(log["length"]))
        normalized, shift, scale = normalize_subconvergence(final, length_bound)
        write_curve_json(out / "final_curve_normalized.json", normalized)
        write_curve_csv(out / "final_curve_normalized.csv", normalized)
        meta = {
            "shift": fmt(shift),
            "scale": fmt(scale),
            "length_bound": fmt(length_bound),
            "fenchel_length_lower_bound": fmt(
                fenchel_length_lower_bound(float(log["elastic"][0]))
            ),
        }
        (out / "normalization.json").write_text(json.dumps(meta, indent=2) + "\n")
    print(f"report -> {out}")
    return EXIT_OK


def _run_sweep_entry(entry: str) -> int:
    parser = _build_parser()
    cfg = Path(entry)
    args = parser.parse_args(["flow", "--config", str(cfg), "--out", str(cfg.with_suffix(""))])
    return cmd_flow(args)


def cmd_sweep(args) -> int:
    with ProcessPoolExecutor(max_workers=args.workers) as pool:
        codes = list(pool.map(_run_sweep_entry, args.configs))
    bad = [c for c in codes if c != EXIT_OK]
    return bad[0] if bad else EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helastica",
        description="Penalized elastic flow of closed curves in the hyperbolic half-plane",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_flow = sub.add_parser("flow", help="integrate the flow")
    p_flow.add_argument("--config", help="TOML or JSON config (a run manifest also works)")
    p_flow.add_argument("--lambda", dest="lam", type=float, default=None)
    p_flow.add_argument("--n", type=int, default=None, help="samples along the curve")
    p_flow.add_argument("--dt", type=float, default=None, help="initial step size")
    p_flow.add_argument("--dt-max", dest="dt_max", type=float, default=None)
    p_flow.add_argument("--t-end", dest="t_end", type=float, default=None)
    p_flow.add_argument("--grad-tol", dest="grad_tol", type=float, default=None)
    p_flow.add_argument("--redistribute-every", type=int, default=None)
    p_flow.add_argument("--max-dt-growth", type=float, default=None)
    p_flow.add_argument("--snapshot-every", type=int, default=None)
    p_flow.add_argument("--seed", type=int, default=None)
    p_flow.add_argument("--curve", choices=CURVE_KINDS, default=None)
    p_flow.add_argument("--curve-args", default=None, help="JSON object of curve parameters")
    p_flow.add_argument("--initial", default=None, help="curve file (.json or .csv)")
    p_flow.add_argument("--out", required=True, help="trajectory output directory")
    p_flow.set_defaults(func=cmd_flow)

    p_verify = sub.add_parser("verify", help="run the identity residual suite")
    p_verify.add_argument("--n", type=int, default=256)
    p_verify.add_argument("--h", type=float, default=1e-5)
    p_verify.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p_verify.add_argument("--out", default=None, help="write the JSON report here")
    p_verify.set_defaults(func=cmd_verify)

    p_report = sub.add_parser("report", help="plot-ready CSV from a trajectory")
    p_report.add_argument("trajectory", help="directory written by 'flow'")
    p_report.add_argument("--out", default=None)
    p_report.set_defaults(func=cmd_report)

    p_sweep = sub.add_parser("sweep", help="run several flow configs in parallel")
    p_sweep.add_argument("configs", nargs="+")
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
