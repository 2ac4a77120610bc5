"""Closed-form time-dependent curve families used as verification fixtures.

Each family provides the curve f(x, t) and its exact time derivative, so
the normal/tangential split of the velocity carries no extra approximation
error.  The residual checks in the checks module then only see the time
finite difference (O(h^2)) and the spatial discretization (O(1/N^2)).

Residuals of the evolution identities are linear in the velocity field, so
every family takes a ``speed`` that multiplies its time derivative.  The
default speeds are chosen so the residuals of the default verification grid
(N = 256, h = 1e-5) sit safely below 1e-5.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .curves import CurveGeometry, DiscreteCurve, build_geometry
from .halfplane import metric_dot

__all__ = [
    "SyntheticFamily",
    "breathing_circle",
    "translating_circle",
    "fourier_wobble",
    "default_families",
    "velocity_split",
]


@dataclass(frozen=True)
class SyntheticFamily:
    """A named closed-form family x, t -> half-plane point.

    ``position`` and ``velocity`` map (n, t) to (n, 2) arrays; ``normal_only``
    marks families whose velocity is pointwise normal to the curve (needed
    by the integration-identity check).
    """

    name: str
    position: Callable[[int, float], np.ndarray]
    velocity: Callable[[int, float], np.ndarray]
    normal_only: bool = False

    def curve(self, n: int, t: float) -> DiscreteCurve:
        return DiscreteCurve(self.position(n, t))

    def geometry(self, n: int, t: float, depth: int = 4) -> CurveGeometry:
        return build_geometry(self.curve(n, t), depth=depth)


def breathing_circle(speed: float = 0.005, center_y: float = 2.0, radius: float = 1.0) -> SyntheticFamily:
    """Circle whose radius grows linearly in time; the velocity is normal."""

    def position(n, t):
        th = 2 * np.pi * np.arange(n) / n
        r = radius + speed * t
        return np.column_stack([r * np.sin(th), center_y + r * np.cos(th)])

    def velocity(n, t):
        th = 2 * np.pi * np.arange(n) / n
        return np.column_stack([speed * np.sin(th), speed * np.cos(th)])

    return SyntheticFamily(f"breathing_circle(speed={speed:g})", position, velocity, normal_only=True)


def translating_circle(speed: float = 0.002, center_y: float = 2.0, radius: float = 1.0) -> SyntheticFamily:
    """Circle sliding horizontally: a curve of isometric copies."""

    def position(n, t):
        th = 2 * np.pi * np.arange(n) / n
        return np.column_stack([speed * t + radius * np.sin(th), center_y + radius * np.cos(th)])

    def velocity(n, t):
        return np.column_stack([np.full(n, speed), np.zeros(n)])

    return SyntheticFamily(f"translating_circle(speed={speed:g})", position, velocity)


def fourier_wobble(speed: float = 0.01, mode: int = 3, center_y: float = 2.0, radius: float = 1.0) -> SyntheticFamily:
    """Circle with an oscillating radial mode; mixes normal and tangential motion."""

    def position(n, t):
        th = 2 * np.pi * np.arange(n) / n
        r = radius * (1.0 + speed * np.sin(t) * np.cos(mode * th))
        return np.column_stack([r * np.sin(th), center_y + r * np.cos(th)])

    def velocity(n, t):
        th = 2 * np.pi * np.arange(n) / n
        dr = radius * speed * np.cos(t) * np.cos(mode * th)
        return np.column_stack([dr * np.sin(th), dr * np.cos(th)])

    return SyntheticFamily(f"fourier_wobble(speed={speed:g}, mode={mode})", position, velocity)


def default_families() -> list[SyntheticFamily]:
    """Families behind the default verification run (gentle speeds)."""
    return [breathing_circle(), translating_circle()]


def velocity_split(geom: CurveGeometry, velocity: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split a velocity field into (tangential speed phi, normal part V)."""
    phi = metric_dot(geom.points, velocity, geom.tangent)
    return phi, velocity - phi[:, None] * geom.tangent
