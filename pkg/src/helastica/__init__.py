"""Penalized elastic flow of closed curves in the hyperbolic half-plane.

A numpy/scipy library for the L2 gradient flow of the length-penalized
bending energy of closed curves in the upper half-plane, together with the
closed-form half-plane geometry, energy/gradient diagnostics, the Willmore
energy of the associated surface of revolution, and numerical checks of the
evolution identities the flow is built on.
"""

__version__ = "0.1.0"

from .halfplane import (
    HPoint,
    TangentVec,
    christoffel,
    covariant_derivative,
    geodesic_distance,
    inner,
    norm,
)
from .curves import (
    CurveGeometry,
    DiscreteCurve,
    ImmersionError,
    build_geometry,
    circle_curve,
    covariant_derivative_along,
    dilate,
    fourier_curve,
    normal_derivative,
    perturbed_circle_curve,
    reparametrize_constant_speed,
    total_abs_curvature,
    total_length,
    translate_h,
)
from .energy import (
    EnergyReport,
    elastic_energy,
    energy_report,
    fenchel_length_lower_bound,
    gradient,
    gradient_l2_norm,
    lp_norm_kappa,
    penalized_energy,
    sobolev_norm_kappa,
    willmore_elastic_ratios,
    willmore_of_revolution,
)
from .flow import (
    FlowConfig,
    FlowError,
    FlowState,
    StiffnessError,
    detect_critical,
    normalize_subconvergence,
    run,
    step,
)
from .families import breathing_circle, fourier_wobble, translating_circle
from .checks import (
    check_first_variation,
    check_integration_identity,
    check_kappa_evolution,
    check_line_element_evolution,
    check_perp_vs_full_derivative,
    run_verification,
)

__all__ = [name for name in dir() if not name.startswith("_")]
