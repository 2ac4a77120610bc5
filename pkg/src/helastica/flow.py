"""Time integration of the elastic gradient flow df/dt = -grad E_lam(f).

The stepper is linearly implicit: the stiff fourth-order head of the
gradient is frozen as a(x) d^4/dx^4 with a = y2^4 / |df/dx|_e^4 and moved
to the left-hand side (one cyclic pentadiagonal solve per chart component
per step); everything else is explicit.  Steps that raise the penalized
energy are rejected and retried with half the step size, so the discrete
energy log is nonincreasing by construction.

Sample points drift along the curve as it moves; every
``redistribute_every`` accepted steps the state is resampled to constant
hyperbolic speed through its trigonometric interpolant (exact for the
band-limited fields the energy backend sees, so the resampling does not
kick the gradient norm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_simpson

from .curves import CurveGeometry, DiscreteCurve, build_geometry, dilate, translate_h
from .energy import EnergyReport, elastic_energy, gradient, gradient_l2_norm, total_length
from .cyclic import solve_cyclic_banded

__all__ = [
    "FlowConfig",
    "FlowState",
    "FlowError",
    "StiffnessError",
    "step",
    "run",
    "normalize_subconvergence",
    "detect_critical",
]

#: accepted steps may raise the penalized energy by at most this (relative)
ACCEPT_SLACK = 1e-12


class FlowError(RuntimeError):
    """Flow failure carrying the last good state."""

    def __init__(self, message: str, state: "FlowState | None" = None):
        super().__init__(message)
        self.state = state


class StiffnessError(FlowError):
    """Step size collapsed below the hard floor while backtracking."""


@dataclass(frozen=True)
class FlowConfig:
    """Parameters of one flow run.

    ``dt_init`` defaults to 1e-4 (mean sample spacing)^2 when left at None.
    ``grad_tol`` stops the run once the gradient norm falls below it;
    ``t_end`` stops it regardless.  ``energy_backtrack`` toggles the
    reject-and-halve control; ``max_dt_growth`` caps the step-size growth
    per accepted step.  ``dt_max`` is an absolute step-size ceiling: the
    frozen-coefficient splitting error grows like dt^2 while the implicit
    damping saturates per-step progress once dt * a k^4 >> 1, so steps far
    beyond ~0.05 inject gradient noise without advancing the shape.
    """

    lam: float = 0.1
    n_samples: int = 256
    dt_init: float | None = None
    dt_max: float = 0.05
    t_end: float = 100.0
    grad_tol: float = 1e-5
    redistribute_every: int = 10
    energy_backtrack: bool = True
    max_dt_growth: float = 1.2
    snapshot_every: int = 50

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam}")
        if not self.grad_tol > 0:
            raise ValueError(f"grad_tol must be positive, got {self.grad_tol}")
        if self.dt_init is not None:
            if not self.dt_init > 0:
                raise ValueError(f"dt_init must be positive, got {self.dt_init}")
            if self.dt_init > self.t_end:
                raise ValueError("dt_init exceeds t_end")
        if not self.dt_max > 0:
            raise ValueError(f"dt_max must be positive, got {self.dt_max}")
        if self.max_dt_growth < 1.0:
            raise ValueError("max_dt_growth must be at least 1")

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "n_samples": self.n_samples,
            "dt_init": self.dt_init,
            "dt_max": self.dt_max,
            "t_end": self.t_end,
            "grad_tol": self.grad_tol,
            "redistribute_every": self.redistribute_every,
            "energy_backtrack": self.energy_backtrack,
            "max_dt_growth": self.max_dt_growth,
            "snapshot_every": self.snapshot_every,
        }


@dataclass(frozen=True)
class FlowState:
    """Flow state after some number of accepted steps."""

    t: float
    curve: DiscreteCurve
    report: EnergyReport
    dt: float
    steps_accepted: int = 0
    steps_rejected: int = 0
    #: penalized energy before/after the latest accepted step (equal
    #: parametrization on both sides; redistribution happens in between logs)
    last_step_energies: tuple[float, float] = field(default=(math.nan, math.nan))


def _spectral_report(geom: CurveGeometry, grad: np.ndarray, lam: float) -> EnergyReport:
    elastic = elastic_energy(geom)
    length = total_length(geom)
    central = build_geometry(geom.curve, scheme="central", depth=0)
    return EnergyReport(
        elastic=elastic,
        penalized=elastic + lam * length,
        length=length,
        total_abs_curv=central.integrate(central.kappa_norm),
        grad_l2=gradient_l2_norm(geom, grad),
        lam=lam,
    )


def _fourth_difference(pts: np.ndarray, n: int) -> np.ndarray:
    return (
        np.roll(pts, 2, axis=0)
        - 4.0 * np.roll(pts, 1, axis=0)
        + 6.0 * pts
        - 4.0 * np.roll(pts, -1, axis=0)
        + np.roll(pts, -2, axis=0)
    ) * float(n) ** 4


def _implicit_solve(pts: np.ndarray, stiff_coef: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve (I + diag(stiff_coef) D4) x = rhs with the periodic 5-point D4."""
    n = len(stiff_coef)
    c = stiff_coef * float(n) ** 4
    diagonals = np.vstack([c, -4.0 * c, 1.0 + 6.0 * c, -4.0 * c, c])
    return solve_cyclic_banded((2, 2), diagonals, rhs)


def _propose(pts: np.ndarray, geom: CurveGeometry, grad: np.ndarray, dt: float) -> np.ndarray:
    n = geom.n
    speed_e = geom.ds * geom.points[:, 1]   # |df/dx|_e of the model curve
    a = geom.points[:, 1] ** 4 / speed_e**4
    d4 = _fourth_difference(pts, n)
    rhs = pts + dt * (-grad + a[:, None] * d4)
    return _implicit_solve(pts, dt * a, rhs)


def _trig_resample_constant_speed(pts: np.ndarray, refine: int = 8) -> np.ndarray:
    """Resample through the trigonometric interpolant at constant speed.

    Exact evaluation of the interpolant keeps the state band-limited, so
    the resampling moves the energy and gradient only at roundoff level.
    """
    n = len(pts)
    coef = np.fft.rfft(pts, axis=0)
    fine_n = refine * n
    fine = np.fft.irfft(coef, n=fine_n, axis=0) * refine
    dcoef = coef * (2j * np.pi * np.arange(coef.shape[0]))[:, None]
    dcoef[-1] = 0.0
    dfine = np.fft.irfft(dcoef, n=fine_n, axis=0) * refine
    xf = np.arange(fine_n + 1) / fine_n
    speed = np.append(np.hypot(dfine[:, 0], dfine[:, 1]) / fine[:, 1],
                      np.hypot(dfine[0, 0], dfine[0, 1]) / fine[0, 1])
    s = cumulative_simpson(speed, x=xf, initial=0.0)
    targets = np.arange(n) / n * s[-1]
    xt = np.interp(targets, s, xf)
    k = np.arange(coef.shape[0])
    weights = np.full(coef.shape[0], 2.0)
    weights[0] = 1.0
    weights[-1] = 1.0
    phases = np.exp(2j * np.pi * np.outer(xt, k))
    return (phases @ (coef * weights[:, None])).real / n


def _advance(
    state: FlowState, geom: CurveGeometry, grad: np.ndarray, config: FlowConfig
) -> tuple[FlowState, CurveGeometry, np.ndarray]:
    """One accepted step given the state's prebuilt geometry and gradient."""
    pts = state.curve.points
    e_old = state.report.penalized
    dt = min(state.dt, config.dt_max)
    if config.t_end > state.t:
        dt = min(dt, config.t_end - state.t)
    rejected = 0
    while True:
        new_pts = _propose(pts, geom, grad, dt)
        try:
            new_curve = DiscreteCurve(new_pts)
            new_geom = build_geometry(new_curve, scheme="spectral", depth=2)
        except ValueError as exc:
            if not config.energy_backtrack:
                raise FlowError(f"flow left the admissible set: {exc}", state) from exc
            dt *= 0.5
            rejected += 1
            if dt < 1e-14:
                raise StiffnessError("step size underflow while backtracking", state) from exc
            continue
        e_new = elastic_energy(new_geom) + config.lam * total_length(new_geom)
        if config.energy_backtrack and not (
            np.isfinite(e_new) and e_new <= e_old + ACCEPT_SLACK * (1.0 + abs(e_old))
        ):
            dt *= 0.5
            rejected += 1
            if dt < 1e-14:
                raise StiffnessError("step size underflow while backtracking", state)
            continue
        break

    t_new = state.t + dt
    accepted = state.steps_accepted + 1
    if config.redistribute_every and accepted % config.redistribute_every == 0:
        new_curve = DiscreteCurve(_trig_resample_constant_speed(new_curve.points))
        new_geom = build_geometry(new_curve, scheme="spectral", depth=2)
    new_grad = gradient(new_geom, config.lam)
    report = _spectral_report(new_geom, new_grad, config.lam)
    new_state = FlowState(
        t=t_new,
        curve=new_curve,
        report=report,
        dt=dt * config.max_dt_growth,
        steps_accepted=accepted,
        steps_rejected=state.steps_rejected + rejected,
        last_step_energies=(e_old, e_new),
    )
    return new_state, new_geom, new_grad


def step(state: FlowState, config: FlowConfig) -> FlowState:
    """Advance one accepted step (possibly after internal rejections)."""
    geom = build_geometry(state.curve, scheme="spectral", depth=2)
    grad = gradient(geom, config.lam)
    new_state, _, _ = _advance(state, geom, grad, config)
    return new_state


def initial_state(config: FlowConfig, curve: DiscreteCurve) -> FlowState:
    geom = build_geometry(curve, scheme="spectral", depth=2)
    grad = gradient(geom, config.lam)
    report = _spectral_report(geom, grad, config.lam)
    dt = config.dt_init
    if dt is None:
        dt = 1e-4 * (report.length / curve.n_samples) ** 2
    return FlowState(t=0.0, curve=curve, report=report, dt=dt)


def run(
    config: FlowConfig,
    initial: DiscreteCurve,
    max_steps: int = 500_000,
    on_step=None,
) -> list[FlowState]:
    """Integrate until t_end or until the gradient norm drops below grad_tol.

    Returns snapshots: the initial state, every ``snapshot_every``-th
    accepted state, and the final state.  ``on_step`` (if given) is called
    with every accepted state, including the initial one; the energy log is
    assembled from these calls.  Raises FlowError subclasses with the last
    good state attached.
    """
    state = initial_state(config, initial)
    geom = build_geometry(initial, scheme="spectral", depth=2)
    grad = gradient(geom, config.lam)
    snapshots = [state]
    if on_step is not None:
        on_step(state)
    # stop once t_end is reached up to rounding, so the final clipped step
    # cannot stall the loop at an unrepresentable remainder
    t_slack = 1e-12 * max(1.0, abs(config.t_end))
    while config.t_end - state.t > t_slack and state.report.grad_l2 >= config.grad_tol:
        if state.steps_accepted >= max_steps:
            raise FlowError(f"exceeded {max_steps} accepted steps", state)
        state, geom, grad = _advance(state, geom, grad, config)
        if on_step is not None:
            on_step(state)
        if config.snapshot_every and state.steps_accepted % config.snapshot_every == 0:
            snapshots.append(state)
    if snapshots[-1] is not state:
        snapshots.append(state)
    return snapshots


def detect_critical(report: EnergyReport, tol: float) -> bool:
    """True when the reported gradient norm is below tol."""
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    return report.grad_l2 < tol


def normalize_subconvergence(curve: DiscreteCurve, length_bound: float) -> tuple[DiscreteCurve, float, float]:
    """Translate and dilate so a marked sample lands on (0, 2 * length_bound).

    The marked sample is the one whose horizontal coordinate is nearest the
    median of all horizontal coordinates; the curve is translated so it hits
    the vertical axis and dilated so it sits at height 2 * length_bound.
    Both moves are isometries, so every hyperbolic quantity is preserved.
    Returns (normalized curve, shift, scale).
    """
    if not length_bound > 0:
        raise ValueError(f"length bound must be positive, got {length_bound}")
    y1 = curve.points[:, 0]
    marked = int(np.argmin(np.abs(y1 - np.median(y1))))
    shift = float(y1[marked])
    scale = 2.0 * length_bound / float(curve.points[marked, 1])
    normalized = dilate(translate_h(curve, shift), scale)
    return normalized, shift, scale
