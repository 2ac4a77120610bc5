import math

import numpy as np
import pytest

from oracles import fit_order, hyperbolic_circle_facts, wobbly_points

from helastica.curves import (
    DiscreteCurve,
    ImmersionError,
    build_geometry,
    circle_curve,
    dilate,
    fourier_curve,
    normal_derivative,
    perturbed_circle_curve,
    reparametrize_constant_speed,
    spline_length,
    spline_segment_speeds,
    total_abs_curvature,
    total_length,
    translate_h,
)
from helastica.halfplane import metric_dot, metric_norm


def test_discrete_curve_validation():
    with pytest.raises(ValueError):
        DiscreteCurve(np.zeros((8, 2)) + [0.0, 1.0])     # too few samples
    with pytest.raises(ValueError):
        DiscreteCurve(np.zeros((17, 2)) + [0.0, 1.0])    # odd sample count
    bad = np.column_stack([np.linspace(0, 1, 32), np.full(32, -1.0)])
    with pytest.raises(ValueError):
        DiscreteCurve(bad)


def test_build_geometry_rejects_degenerate_parametrization():
    pts = circle_curve(2.0, 1.0, 64).points.copy()
    pts[5] = pts[4]
    pts[6] = pts[4]
    with pytest.raises(ImmersionError):
        build_geometry(DiscreteCurve(pts))


def test_geodesic_arc_has_vanishing_curvature():
    # Open upper arc of a circle centered on the boundary axis (a geodesic).
    # The wrap-around stencils at the seam are meaningless, so only interior
    # samples are checked; this sampling never feeds the flow.
    n = 256
    th = np.linspace(0.3 * np.pi, 0.7 * np.pi, n, endpoint=False)
    arc = DiscreteCurve(np.column_stack([3.0 * np.cos(th), 3.0 * np.sin(th)]))
    geom = build_geometry(arc, depth=0)
    interior = geom.kappa_norm[2:-2]
    assert np.max(interior) < 1e-3


def test_circle_curvature_matches_closed_form():
    facts = hyperbolic_circle_facts(2.0, 1.0)
    geom = build_geometry(circle_curve(2.0, 1.0, 256), depth=0)
    assert facts["kappa"] == 2.0
    assert np.max(np.abs(geom.kappa_norm - 2.0)) < 1e-3


def test_circle_length_matches_quadrature():
    facts = hyperbolic_circle_facts(math.sqrt(2.0), 1.0)
    geom = build_geometry(circle_curve(math.sqrt(2.0), 1.0, 256), depth=0)
    assert facts["length"] == pytest.approx(2 * math.pi, rel=1e-15)
    assert total_length(geom) == pytest.approx(2 * math.pi, abs=1e-3)


def test_curvature_convergence_is_second_order():
    ns = [64, 128, 256, 512]
    errors = [
        np.max(np.abs(build_geometry(circle_curve(2.0, 1.0, n), depth=0).kappa_norm - 2.0))
        for n in ns
    ]
    order = fit_order(ns, errors)
    assert 1.8 <= order <= 2.2


def test_normality_of_curvature_decays_second_order():
    rng = np.random.default_rng(2)
    pts_hi = wobbly_points(1024, rng)
    leaks = []
    for n in (128, 256, 512):
        geom = build_geometry(DiscreteCurve(pts_hi[:: 1024 // n]), depth=0)
        leaks.append(np.max(np.abs(metric_dot(geom.points, geom.kappa, geom.tangent))))
    assert leaks[-1] < 2e-3
    assert 1.8 <= fit_order([128, 256, 512], leaks) <= 2.2


def test_normal_derivative_vanishes_on_constant_curvature_circle():
    residuals = []
    for n in (128, 256, 512):
        geom = build_geometry(circle_curve(2.0, 1.0, n), depth=1)
        residuals.append(np.max(metric_norm(geom.points, geom.normal_stack[1])))
    assert residuals[1] < 5e-3
    assert 1.8 <= fit_order([128, 256, 512], residuals) <= 2.2


def test_normal_derivative_output_is_tangent_free():
    rng = np.random.default_rng(5)
    geom = build_geometry(DiscreteCurve(wobbly_points(128, rng)))
    field = np.column_stack([np.cos(np.linspace(0, 4 * np.pi, 128)), np.ones(128)])
    out = normal_derivative(geom, field)
    assert np.max(np.abs(metric_dot(geom.points, out, geom.tangent))) < 1e-12


def test_normal_derivative_is_linear():
    rng = np.random.default_rng(6)
    geom = build_geometry(DiscreteCurve(wobbly_points(128, rng)))
    x = rng.normal(size=(128, 2))
    y = rng.normal(size=(128, 2))
    a, b = 1.7, -0.4
    combined = normal_derivative(geom, a * x + b * y)
    split = a * normal_derivative(geom, x) + b * normal_derivative(geom, y)
    np.testing.assert_allclose(combined, split, atol=1e-11)


def test_normal_derivative_rejects_wrong_grid():
    geom = build_geometry(circle_curve(2.0, 1.0, 64))
    with pytest.raises(ValueError):
        normal_derivative(geom, np.zeros((32, 2)))


def test_projection_is_idempotent():
    from helastica.curves import project_normal

    rng = np.random.default_rng(8)
    geom = build_geometry(DiscreteCurve(wobbly_points(128, rng)))
    field = rng.normal(size=(128, 2))
    once = project_normal(geom, field)
    twice = project_normal(geom, once)
    np.testing.assert_allclose(twice, once, rtol=0, atol=1e-13)


# ---------------------------------------------------------------------------
# reparametrization


def test_reparametrize_constant_speed_is_stable_on_uniform_input():
    # Re-running on already-uniform samples only moves points by the cubic
    # interpolation error, which shrinks like 1/N^4.
    uniform = reparametrize_constant_speed(circle_curve(2.0, 1.0, 512))
    again = reparametrize_constant_speed(uniform)
    assert np.max(np.abs(again.points - uniform.points)) < 1e-9
    coarse = reparametrize_constant_speed(circle_curve(2.0, 1.0, 256))
    coarse_again = reparametrize_constant_speed(coarse)
    assert np.max(np.abs(coarse_again.points - coarse.points)) < 5e-9


def test_reparametrize_fixes_clustered_sampling():
    n = 256
    th = 2 * np.pi * np.arange(n) / n
    warped = th + 0.2 * np.sin(th)
    clustered = DiscreteCurve(np.column_stack([np.sin(warped), 2.0 + np.cos(warped)]))
    fixed = reparametrize_constant_speed(clustered)
    speeds = spline_segment_speeds(fixed)
    assert (speeds.max() - speeds.min()) / speeds.mean() < 1e-6


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_reparametrize_preserves_length(seed):
    rng = np.random.default_rng(seed)
    curve = DiscreteCurve(wobbly_points(256, rng))
    before = spline_length(curve)
    after = spline_length(reparametrize_constant_speed(curve))
    assert after == pytest.approx(before, rel=1e-8)


# ---------------------------------------------------------------------------
# integrated quantities and isometries


def test_total_abs_curvature_of_circle():
    facts = hyperbolic_circle_facts(2.0, 1.0)
    geom = build_geometry(circle_curve(2.0, 1.0, 256), depth=0)
    assert facts["total_abs_curvature"] == pytest.approx(4 * math.pi / math.sqrt(3.0), rel=1e-15)
    assert total_abs_curvature(geom) == pytest.approx(facts["total_abs_curvature"], abs=5e-3)


@pytest.mark.parametrize("seed", [3, 4, 5])
def test_fenchel_lower_bound_on_random_curves(seed):
    rng = np.random.default_rng(seed)
    geom = build_geometry(DiscreteCurve(wobbly_points(256, rng, amp=0.15)), depth=0)
    assert total_abs_curvature(geom) >= 2 * math.pi * (1 - 1e-2)


def test_dilation_preserves_line_element_and_curvature_norm():
    rng = np.random.default_rng(9)
    curve = DiscreteCurve(wobbly_points(256, rng))
    geom = build_geometry(curve)
    for r in (0.1, 3.0, 10.0):
        scaled = build_geometry(dilate(curve, r))
        np.testing.assert_allclose(scaled.ds, geom.ds, rtol=1e-12)
        np.testing.assert_allclose(scaled.kappa_norm, geom.kappa_norm, rtol=1e-11)
        # curvature vector components scale linearly with r
        scale = r * np.max(np.abs(geom.kappa))
        np.testing.assert_allclose(scaled.kappa, r * geom.kappa, rtol=1e-10, atol=1e-12 * scale)
    assert total_length(build_geometry(dilate(curve, 3.0))) == pytest.approx(
        total_length(geom), rel=1e-12
    )
    assert total_abs_curvature(build_geometry(dilate(curve, 3.0))) == pytest.approx(
        total_abs_curvature(geom), rel=1e-12
    )


def test_dilate_validates_and_translate_round_trips():
    curve = circle_curve(2.0, 1.0, 64)
    with pytest.raises(ValueError):
        dilate(curve, 0.0)
    with pytest.raises(ValueError):
        dilate(curve, -1.0)
    assert np.array_equal(dilate(curve, 1.0).points, curve.points)
    round_trip = translate_h(translate_h(curve, 2.0), -2.0)
    np.testing.assert_allclose(round_trip.points, curve.points, atol=1e-15)


# ---------------------------------------------------------------------------
# factories


def test_circle_factory_validates_geometry():
    with pytest.raises(ValueError):
        circle_curve(1.0, 1.0)
    with pytest.raises(ValueError):
        circle_curve(0.5, 1.0)


def test_perturbed_circle_with_zero_amplitude_is_circle():
    base = circle_curve(2.0, 1.0, 128)
    flat = perturbed_circle_curve(2.0, 1.0, mode=4, amplitude=0.0, n=128)
    assert np.array_equal(base.points, flat.points)


def test_fourier_factory_rejects_empty_and_escaping_curves():
    with pytest.raises(ValueError):
        fourier_curve([])
    with pytest.raises(ValueError):
        fourier_curve([(0.0, 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 1.0)])  # y2 dips below 0


def test_fourier_factory_reproduces_circle():
    made = fourier_curve([(0.0, 0.0, 2.0, 0.0), (0.0, 1.0, 1.0, 0.0)], n=64)
    ref = circle_curve(2.0, 1.0, 64)
    np.testing.assert_allclose(made.points, ref.points, atol=1e-15)
