"""Exact geometry of the hyperbolic half-plane.

The model is the upper half-plane {(y1, y2) : y2 > 0} with the conformal
metric g = (dy1^2 + dy2^2) / y2^2, which has constant sectional curvature -1.
Everything here is closed-form: metric, Christoffel symbols, covariant
differentiation along a parametrized curve, geodesic distance, and the two
isometry families used throughout the package (horizontal translations and
dilations about the origin).

All chart computations identify the tangent space at a point with R^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HPoint",
    "TangentVec",
    "inner",
    "norm",
    "christoffel",
    "covariant_derivative",
    "geodesic_distance",
    "metric_dot",
    "metric_norm",
]

#: Floor for the height coordinate; below this the metric factor 1/y2^2 is
#: treated as numerically meaningless and construction fails.
Y2_FLOOR = 1e-12


@dataclass(frozen=True)
class HPoint:
    """A point of the upper half-plane, y2 strictly positive."""

    y1: float
    y2: float

    def __post_init__(self):
        if not (self.y2 > Y2_FLOOR):
            raise ValueError(
                f"half-plane point needs y2 > {Y2_FLOOR:g}, got y2={self.y2!r}"
            )


@dataclass(frozen=True)
class TangentVec:
    """A tangent vector (v1, v2) attached to a base point of the half-plane."""

    base: HPoint
    v1: float
    v2: float


def _check_same_base(u: TangentVec, v: TangentVec):
    if u.base != v.base:
        raise ValueError(f"tangent vectors have different base points: {u.base} vs {v.base}")


def inner(p: HPoint, u: TangentVec, v: TangentVec) -> float:
    """Riemannian inner product <u, v>_g at p, i.e. (u . v) / p.y2**2.

    Both vectors must be based at ``p``.
    """
    _check_same_base(u, v)
    if u.base != p:
        raise ValueError(f"vectors are based at {u.base}, not at {p}")
    return (u.v1 * v.v1 + u.v2 * v.v2) / p.y2**2


def norm(v: TangentVec) -> float:
    """Riemannian length of a tangent vector."""
    return math.hypot(v.v1, v.v2) / v.base.y2


def christoffel(p: HPoint) -> np.ndarray:
    """Christoffel symbols at p as a (2, 2, 2) array, indexed [k, i, j].

    The nonzero symbols are
        gamma[0, 0, 1] = gamma[0, 1, 0] = -1/y2
        gamma[1, 0, 0] =  1/y2
        gamma[1, 1, 1] = -1/y2
    (0-based chart indices; symmetric in the lower pair).
    """
    g = np.zeros((2, 2, 2))
    inv = 1.0 / p.y2
    g[0, 0, 1] = g[0, 1, 0] = -inv
    g[1, 0, 0] = inv
    g[1, 1, 1] = -inv
    return g


def covariant_derivative(
    curve_point: HPoint,
    curve_velocity: TangentVec,
    X: TangentVec,
    dX: tuple[float, float],
) -> TangentVec:
    """Covariant derivative of a field X along a curve through curve_point.

    ``curve_velocity`` is the parameter velocity of the curve at the point,
    ``dX`` the plain parameter derivative of the components of X.  Returns

        ( dX1 - (X1 v2 + X2 v1)/y2 ,  dX2 + (X1 v1 - X2 v2)/y2 )

    as a tangent vector at the same point.
    """
    if X.base != curve_point:
        raise ValueError(f"field is based at {X.base}, not at {curve_point}")
    y2 = curve_point.y2
    v1, v2 = curve_velocity.v1, curve_velocity.v2
    c1 = dX[0] - (X.v1 * v2 + X.v2 * v1) / y2
    c2 = dX[1] + (X.v1 * v1 - X.v2 * v2) / y2
    return TangentVec(curve_point, c1, c2)


def geodesic_distance(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance arccosh(1 + ((dx)^2 + (dy)^2) / (2 y2 y2'))."""
    d2 = (q.y1 - p.y1) ** 2 + (q.y2 - p.y2) ** 2
    return math.acosh(1.0 + d2 / (2.0 * p.y2 * q.y2))


# ---------------------------------------------------------------------------
# Vectorized chart helpers shared by the curve machinery.  ``points`` is an
# (n, 2) array of half-plane samples, vector fields are (n, 2) arrays of
# chart components attached to those samples.

def metric_dot(points: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Pointwise <u, v>_g along an array of half-plane points."""
    return (u[:, 0] * v[:, 0] + u[:, 1] * v[:, 1]) / points[:, 1] ** 2


def metric_norm(points: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Pointwise |u|_g along an array of half-plane points."""
    return np.hypot(u[:, 0], u[:, 1]) / points[:, 1]
