"""Dynamics of the Moebius group on bounded harmonic functions of the disc.

Boundary data is piecewise constant on the circle, extensions are exact
closed forms, and the headline constructions (dense orbits, periodic
approximants, the arc-space bundle, the genus-2 example) all ship with
certified error bars.
"""

from .arcspace import (
    Arc,
    SpherePoint,
    act_arc,
    act_sphere,
    big_F,
    check_equivariance,
    isotropy_residual,
    quotient_to_sphere,
    theta_transform,
)
from .boundary import (
    BoundaryFunction,
    InvalidPartitionError,
    LazyBoundaryFunction,
    angle_to_line,
    arc_length_of_region,
    cayley,
    cayley_inv,
    compose_with_moebius,
    from_line_segments,
    indicator,
    l1_distance,
    l1_norm,
    line_to_angle,
    merge_partition,
    wrap_angle,
)
from .chaos import (
    CertificateRow,
    Conjugacy,
    DenseOrbitSchedule,
    NotConjugateError,
    NotHyperbolicError,
    NotParabolicError,
    PeriodicApproximant,
    ResolutionError,
    TargetFamily,
    build_dense_seed,
    build_parabolic_dense_seed,
    build_parabolic_periodic,
    build_periodic_approximant,
    conjugating_map,
    dense_orbit_report,
    make_parabolic_schedule,
    make_schedule,
    periodic_report,
    sensitivity_probe,
    translate_boundary,
)
from .foliation import (
    FuchsianGroup,
    InvalidPointError,
    OrbitSample,
    ProjectivePoint,
    SingularPointError,
    coverage_statistic,
    coverage_sweep,
    genus2_group,
    leafwise_F0,
    orbit_sample,
    projective_act,
    projective_f,
    random_projective_point,
    relation_residual,
    short_word_scan,
    tautological_eval,
)
from .moebius import (
    ElementClass,
    HalfPlaneMatrix,
    InvalidMatrixError,
    MoebiusElement,
    act_disc,
    act_line,
    boundary_fixed_points,
    classify,
    compose,
    fixed_points_line,
    from_half_plane,
    hyperbolic_multiplier,
    identity,
    inverse,
    multiplier,
    parabolic_shift,
    power,
    rotation,
    to_half_plane,
)
from .poisson import (
    NORM_OF_ONE,
    CompactExhaustion,
    HarmonicFunction,
    NearBoundaryError,
    NonDivergentError,
    StencilError,
    extend,
    extend_many,
    harmonic_conjugate,
    harmonic_conjugate_many,
    harmonicity_residual,
    limit_diagnostic,
    metric_distance,
    metric_norm,
)

__version__ = "0.1.0"
