"""Elastic energy, its L2 gradient, and the first-variation identity.

The bending energy is half the integral of |kappa|^2 over hyperbolic
arclength.  Circles with |kappa|^2 = 2 (1 + lambda) are critical points of
the length-penalized energy; on them the gradient vanishes, and on any
curve the gradient pairs with normal perturbations exactly like a finite
difference of the energy.
"""

import math

import numpy as np

from helastica import (
    DiscreteCurve,
    build_geometry,
    check_first_variation,
    circle_curve,
    elastic_energy,
    fenchel_length_lower_bound,
    gradient,
    gradient_l2_norm,
    perturbed_circle_curve,
)

# Critical circles: for each lambda, the radius-1 Euclidean circle centered
# at height sqrt(2 (1 + lambda)) is a stationary point.
print("gradient norm on critical circles (N = 256):")
for lam in (0.0, 0.5, 1.0):
    curve = circle_curve(math.sqrt(2 * (1 + lam)), 1.0, 256)
    geom = build_geometry(curve, scheme="spectral")
    print(f"  lambda = {lam}: grad_l2 = {gradient_l2_norm(geom, gradient(geom, lam)):.2e}")

# Away from criticality the gradient is sizable and normal to the curve.
bent = perturbed_circle_curve(2.0, 1.0, mode=3, amplitude=0.05, n=256)
geom = build_geometry(bent, scheme="spectral")
grad = gradient(geom, 1.0)
print(f"\nperturbed circle: grad_l2 = {gradient_l2_norm(geom, grad):.3f}")

# First variation: <grad, V> equals the finite difference of the energy
# along any normal field V.
worst = check_first_variation(bent, lam=1.0, trials=5, seed=0)
print(f"worst relative first-variation mismatch over 5 random fields: {worst:.2e}")

# The scaling y -> r y is an isometry, so every energy is scale invariant.
e0 = elastic_energy(geom)
scaled = DiscreteCurve(7.0 * bent.points)
e1 = elastic_energy(build_geometry(scaled, scheme="spectral", depth=0))
print(f"\nenergy before/after dilation by 7: {e0:.12f} / {e1:.12f}")

# An energy bound caps how short the curve can be (Cauchy-Schwarz + the
# 2 pi lower bound on total curvature).
print(f"length floor for curves with energy <= {e0:.3f}: "
      f"{fenchel_length_lower_bound(e0):.4f}")
