"""Kernel Sobolev discrepancy with finite random feature maps."""

from ._core import (  # noqa: F401
    BoundsCheck,
    DegenerateDirection,
    DegenerateWitness,
    DomainError,
    FeatureMap,
    GridDensity,
    InvalidParameter,
    ParseError,
    ShapeError,
    SingularGramian,
    SobolevError,
    Spectrum,
    TransportDecomposition,
    UnsupportedDimension,
    WitnessSolution,
    advection_potential_1d,
    check_bounds,
    derivative_gramian,
    discrepancy_value,
    evaluate_witness,
    filtered_velocity,
    make_feature_map,
    mean_difference,
    mean_embedding,
    objective,
    pde_residual,
    principal_direction,
    quadrature_embedding,
    sobolev_1d,
    solve_witness,
    spectral_decomposition,
    transport_coefficients,
    velocity_field,
    wasserstein2_1d,
    witness_function,
)

__version__ = "0.1.0"
