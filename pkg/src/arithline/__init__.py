"""Positivity profiles for a two-parameter family of arithmetic divisors on
the projective line over the integers.

Everything is keyed on a pair of positive weights (a, b): the geography
class, the nonnegativity window of the characteristic function, sup/L2 data
of integer sections, the volume by closed form, quadrature, or lattice-count
sandwich, and the explicit Zariski decomposition with its piecewise-radial
positive part.
"""

from .charfun import (
    INFINITY,
    BOUNDARY_TOL,
    GeographyClass,
    Params,
    ThetaInterval,
    ThetaKind,
    classify,
    green_g,
    green_g_radial,
    green_g_smooth,
    phi,
    phi_grid,
    phi_max,
    scaling_combine,
    theta_interval,
)
from .errors import (
    ArithLineError,
    BracketError,
    CapError,
    ConvergenceError,
    DomainError,
    EmptyError,
    NoDecompositionError,
)
from .numerics import (
    BigBinomial,
    DEFAULT_TOL,
    Tolerance,
    big_binomial,
    binomial_integral_bounds,
    find_root_monotone,
    integrate_adaptive,
    log_ball_volume,
    log_binomial,
    maximize_2d,
)
from .sections import (
    EllipsoidSpec,
    H0Enumeration,
    IntegerSection,
    MonomialBasisElement,
    ellipsoid_lattice_count,
    ellipsoid_spec,
    h0_count_l2,
    h0_enumerate,
    h0_monomial_span,
    h0_nonzero,
    inner_product,
    inner_product_quadrature,
    lattice_count_bounds,
    monomial_l2_norm_sq,
    monomial_sup_norm_sq,
    radial_integral,
    radial_integral_quadrature,
    scaled_theta_integers,
    section_l2_norm_sq,
    section_product,
    section_sup_norm_sq,
)
from .volume import (
    VolumeReport,
    construct_gap_params,
    phi_antiderivative,
    selfint_degree,
    volume_closed,
    volume_lattice_estimate,
    volume_quadrature,
    volume_report,
)
from .zariski import (
    ArithRDivisor,
    GreenProfile,
    LimitReport,
    NefWitnessReport,
    PieceKind,
    ProfilePiece,
    ZariskiDecomposition,
    breakpoint_radii,
    eval_positive_green,
    eval_r1,
    eval_r2,
    limit_positive_parts,
    nef_witness,
    negative_green,
    positive_part,
    zariski_decomposition,
    zariski_exists,
)

__version__ = "0.1.0"
