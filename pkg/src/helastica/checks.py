"""Numerical residual checks for the analytic identities the flow relies on.

Each check evaluates both sides of one identity on a closed-form family
(time derivatives by central differences with step h, spatial quantities
with the 2nd-order geometry backend) and returns the worst pointwise
residual.  Residuals shrink like O(h^2) + O(1/N^2); none of these routines
import the flow module, so they remain independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import (
    DiscreteCurve,
    build_geometry,
    covariant_derivative_along,
    normal_derivative,
    project_normal,
)
from .energy import gradient, penalized_energy
from .families import SyntheticFamily, default_families, velocity_split
from .halfplane import metric_dot, metric_norm

__all__ = [
    "check_line_element_evolution",
    "check_kappa_evolution",
    "check_integration_identity",
    "check_first_variation",
    "check_perp_vs_full_derivative",
    "velocity_variation_norm",
    "CheckRecord",
    "run_verification",
    "DEFAULT_THRESHOLD",
]

DEFAULT_THRESHOLD = 1e-5

_H_RANGE = (1e-7, 1e-3)


def _check_h(h: float):
    if not (_H_RANGE[0] <= h <= _H_RANGE[1]):
        raise ValueError(f"time step h must lie in {_H_RANGE}, got {h}")


def _time_covariant(points: np.ndarray, field_dot: np.ndarray, field: np.ndarray,
                    velocity: np.ndarray) -> np.ndarray:
    """Chart covariant t-derivative: plain d/dt plus the Christoffel terms."""
    f2 = points[:, 1]
    return np.column_stack([
        field_dot[:, 0] - (field[:, 0] * velocity[:, 1] + field[:, 1] * velocity[:, 0]) / f2,
        field_dot[:, 1] + (field[:, 0] * velocity[:, 0] - field[:, 1] * velocity[:, 1]) / f2,
    ])


def check_line_element_evolution(family: SyntheticFamily, n: int, t: float, h: float) -> float:
    """Residual of d/dt |df/dx|_g = (d_s phi - <V, kappa>_g) |df/dx|_g."""
    _check_h(h)
    geom = family.geometry(n, t, depth=1)
    plus = family.geometry(n, t + h, depth=0)
    minus = family.geometry(n, t - h, depth=0)
    lhs = (plus.ds - minus.ds) / (2.0 * h)
    phi, vperp = velocity_split(geom, family.velocity(n, t))
    ds_phi = geom.diff_x(phi) / geom.ds
    rhs = (ds_phi - metric_dot(geom.points, vperp, geom.kappa)) * geom.ds
    return float(np.max(np.abs(lhs - rhs)))


def check_kappa_evolution(family: SyntheticFamily, n: int, t: float, h: float,
                          s0: float = -1.0) -> float:
    """Residual of the normal curvature evolution

        D_t^perp kappa = (D_s^perp)^2 V + phi D_s kappa + <V,kappa>_g kappa + s0 V.

    Only s0 = -1 makes sense for half-plane families.
    """
    _check_h(h)
    if s0 != -1.0:
        raise ValueError("half-plane families have ambient curvature -1")
    geom = family.geometry(n, t, depth=2)
    plus = family.geometry(n, t + h, depth=0)
    minus = family.geometry(n, t - h, depth=0)
    kappa_dot = (plus.kappa - minus.kappa) / (2.0 * h)
    vel = family.velocity(n, t)
    lhs = project_normal(geom, _time_covariant(geom.points, kappa_dot, geom.kappa, vel))
    phi, vperp = velocity_split(geom, vel)
    # The transport term phi D_s kappa is compared through its normal part
    # (the identity lives in the normal bundle; both sides are projected).
    rhs = project_normal(
        geom,
        normal_derivative(geom, normal_derivative(geom, vperp))
        + phi[:, None] * covariant_derivative_along(geom, geom.kappa)
        + metric_dot(geom.points, vperp, geom.kappa)[:, None] * geom.kappa
        + s0 * vperp,
    )
    return float(np.max(metric_norm(geom.points, lhs - rhs)))


def check_integration_identity(family: SyntheticFamily, n: int, t: float, h: float) -> float:
    """Residual of the L2 bookkeeping identity with N = kappa:

        d/dt 1/2 int |N|^2 ds + int |(D_s^perp)^2 N|^2 ds
            = int <Y, N> ds - 1/2 int <V, kappa> |N|^2 ds,

    where Y = D_t^perp N + (D_s^perp)^4 N.  Requires a purely normal family.
    """
    _check_h(h)
    if not family.normal_only:
        raise ValueError(f"{family.name} has tangential motion; the identity assumes none")
    geom = family.geometry(n, t, depth=4)
    plus = family.geometry(n, t + h, depth=2)
    minus = family.geometry(n, t - h, depth=2)
    vel = family.velocity(n, t)
    _, vperp = velocity_split(geom, vel)

    def half_mass(g):
        return 0.5 * g.integrate(g.kappa_norm**2)

    stack = geom.normal_derivatives(4)
    lhs = (half_mass(plus) - half_mass(minus)) / (2.0 * h) + geom.integrate(
        metric_dot(geom.points, stack[2], stack[2])
    )

    kappa_dot = (plus.kappa - minus.kappa) / (2.0 * h)
    nt_perp = project_normal(geom, _time_covariant(geom.points, kappa_dot, geom.kappa, vel))
    y = nt_perp + stack[4]
    rhs = geom.integrate(metric_dot(geom.points, y, geom.kappa)) - 0.5 * geom.integrate(
        metric_dot(geom.points, vperp, geom.kappa) * geom.kappa_norm**2
    )
    return float(abs(lhs - rhs))


def check_first_variation(curve: DiscreteCurve, lam: float, trials: int = 5,
                          seed: int = 0) -> float:
    """Worst relative mismatch of <grad, V> against central differences of E.

    Random normal fields V are low-mode trigonometric profiles times the
    unit normal.  Both the energy and the gradient use the spectral backend
    (the backend the flow descends), so this is the discrete analogue of the
    first-variation computation.  The difference stencil is the five-point
    central one, which suppresses the eps^2 truncation term that otherwise
    dominates for stiff directions.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = np.random.default_rng(seed)
    geom = build_geometry(curve, scheme="spectral", depth=2)
    grad = gradient(geom, lam)
    x = np.arange(curve.n_samples) / curve.n_samples
    nvec = np.column_stack([-geom.tangent[:, 1], geom.tangent[:, 0]])
    eps = 1e-5 * (1.0 + float(np.max(np.abs(curve.points))))

    def energy_at(offset):
        moved = build_geometry(DiscreteCurve(curve.points + offset), scheme="spectral", depth=0)
        return penalized_energy(moved, lam)

    worst = 0.0
    for _ in range(trials):
        profile = np.zeros(curve.n_samples)
        for k in range(1, 4):
            profile += rng.normal() * np.cos(2 * np.pi * k * x) + rng.normal() * np.sin(
                2 * np.pi * k * x
            )
        vfield = profile[:, None] * nvec
        fd = (
            8.0 * (energy_at(eps * vfield) - energy_at(-eps * vfield))
            - (energy_at(2 * eps * vfield) - energy_at(-2 * eps * vfield))
        ) / (12.0 * eps)
        pairing = geom.integrate(metric_dot(geom.points, grad, vfield))
        denom = max(abs(fd), abs(pairing), 1e-300)
        worst = max(worst, abs(fd - pairing) / denom)
    return worst


def check_perp_vs_full_derivative(curve: DiscreteCurve) -> tuple[float, float]:
    """Residuals of the tangential bookkeeping of curvature derivatives.

    First order:   D_s kappa = D_s^perp kappa - |kappa|^2 df/ds.
    Second order:  D_s^2 kappa = (D_s^perp)^2 kappa
                   - 3 <D_s^perp kappa, kappa>_g df/ds - |kappa|^2 kappa.

    Returns the two max-norm residuals.
    """
    geom = build_geometry(curve, depth=2)
    stack = geom.normal_derivatives(2)
    full1 = covariant_derivative_along(geom, geom.kappa)
    rhs1 = stack[1] - (geom.kappa_norm**2)[:, None] * geom.tangent
    res1 = float(np.max(metric_norm(geom.points, full1 - rhs1)))

    full2 = covariant_derivative_along(geom, full1)
    coupling = metric_dot(geom.points, stack[1], geom.kappa)
    rhs2 = (
        stack[2]
        - 3.0 * coupling[:, None] * geom.tangent
        - (geom.kappa_norm**2)[:, None] * geom.kappa
    )
    res2 = float(np.max(metric_norm(geom.points, full2 - rhs2)))
    return res1, res2


def velocity_variation_norm(family: SyntheticFamily, n: int, t: float, h: float,
                            lam: float) -> float:
    """L2 norm of the covariant time derivative of the descent velocity.

    Logged for boundedness along flows; no closed-form residual is attempted
    for it here.
    """
    _check_h(h)

    def neg_grad(tt):
        geom = build_geometry(family.curve(n, tt), scheme="spectral", depth=2)
        return geom, -gradient(geom, lam)

    geom, v_now = neg_grad(t)
    _, v_plus = neg_grad(t + h)
    _, v_minus = neg_grad(t - h)
    v_dot = (v_plus - v_minus) / (2.0 * h)
    nt = project_normal(geom, _time_covariant(geom.points, v_dot, v_now, family.velocity(n, t)))
    return math.sqrt(geom.integrate(metric_dot(geom.points, nt, nt)))


# ---------------------------------------------------------------------------
# default verification suite

@dataclass(frozen=True)
class CheckRecord:
    check: str
    family: str
    n_samples: int
    h: float
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.threshold

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "family": self.family,
            "n_samples": self.n_samples,
            "h": self.h,
            "residual": self.residual,
            "threshold": self.threshold,
            "passed": self.passed,
        }


def run_verification(n: int = 256, h: float = 1e-5, t: float = 0.0,
                     threshold: float = DEFAULT_THRESHOLD) -> list[CheckRecord]:
    """Run the evolution-identity checks on the default families."""
    records = []
    for family in default_families():
        records.append(CheckRecord(
            "line_element_evolution", family.name, n, h,
            check_line_element_evolution(family, n, t, h), threshold,
        ))
        records.append(CheckRecord(
            "kappa_evolution", family.name, n, h,
            check_kappa_evolution(family, n, t, h), threshold,
        ))
        if family.normal_only:
            records.append(CheckRecord(
                "integration_identity", family.name, n, h,
                check_integration_identity(family, n, t, h), threshold,
            ))
    return records
