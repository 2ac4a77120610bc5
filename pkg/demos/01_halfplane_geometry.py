"""A tour of the half-plane geometry primitives.

The upper half-plane with the metric (dx^2 + dy^2)/y^2 is hyperbolic space
in its most computation-friendly chart: distances, Christoffel symbols and
covariant derivatives are all closed-form.  This script exercises each
primitive and checks a couple of textbook facts along the way.
"""

import math

import numpy as np

from helastica import (
    HPoint,
    TangentVec,
    christoffel,
    covariant_derivative,
    geodesic_distance,
    inner,
)

# The metric at height y scales the Euclidean inner product by 1/y^2:
p = HPoint(0.0, 2.0)
u = TangentVec(p, 1.0, 0.0)
print("|(1,0)|_g^2 at height 2:", inner(p, u, u), "(= 1/4)")

# Christoffel symbols vanish except for the 1/y-weighted entries:
print("\nChristoffel symbols at (0, 1):")
print(christoffel(HPoint(0.0, 1.0)))

# Vertical lines are geodesics: transporting the velocity of t -> (0, e^t)
# along itself gives zero acceleration.
t = 0.7
q = HPoint(0.0, math.exp(t))
vel = TangentVec(q, 0.0, math.exp(t))
acc = covariant_derivative(q, vel, vel, (0.0, math.exp(t)))
print("\ngeodesic acceleration along a vertical line:", (acc.v1, acc.v2))

# Distances: along a vertical line the distance is |log(y'/y)| ...
a, b = HPoint(0.0, 1.0), HPoint(0.0, math.e)
print("\ndist((0,1), (0,e)) =", geodesic_distance(a, b), "(= 1)")

# ... and the general closed form is arccosh(1 + |p-q|^2 / (2 y y')).
c = HPoint(1.0, 1.0)
print("dist((0,1), (1,1)) =", geodesic_distance(a, c), "= arccosh(3/2) =", math.acosh(1.5))

# Hyperbolic circles are Euclidean circles with a shifted center: the points
# at hyperbolic distance rho from (x0, y0) form the Euclidean circle centered
# (x0, y0 cosh rho) with radius y0 sinh rho.
x0, y0, rho = 0.5, 1.0, 1.2
center = np.array([x0, y0 * math.cosh(rho)])
radius = y0 * math.sinh(rho)
theta = 2 * np.pi * np.arange(360) / 360
boundary = center + radius * np.column_stack([np.sin(theta), np.cos(theta)])
distances = [geodesic_distance(HPoint(x0, y0), HPoint(*q)) for q in boundary]
print(f"\nEuclidean circle about (x0, y0 cosh rho) with radius y0 sinh rho = {radius:.6f}:")
print(f"  hyperbolic distances to (x0, y0): {min(distances):.12f} .. {max(distances):.12f}")
print(f"  expected constant rho = {rho}")
