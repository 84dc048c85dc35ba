"""Conformable time-fractional parabolic systems: closed-form kernels, Lie
group flows, equivalence transformations and conservation-law verification."""

from .cauchy import (
    QuadratureConfig,
    initial_data,
    integrate_semiinfinite,
    laplace_transform,
    solve_cauchy,
    tabulated_initial_data,
    verify_laplace_identity,
)
from .conformable import (
    EvalPoint,
    SolutionPair,
    conformable_derivative,
    constant_pair,
    residual,
    scaled_residual,
)
from .conservation import ConservedVector, Term, conserved_vector, divergence, divergence_scaled
from .errors import (
    ChartExitError,
    ConfigError,
    ParameterError,
    QuadratureError,
    SingularityError,
)
from .fundsol import KernelMatrix, kernel_eq3, kernel_example31, pushforward_kernel
from .specfun import bessel_i, bessel_i_scaled, gamma
from .symmetry import (
    VectorField,
    flow_by_integration,
    flow_scaling,
    flow_v1,
    flow_v2,
    flow_v3_eq3,
    flow_v3_example31,
    flow_v5,
    invariant_family_eq3,
    invariant_family_example31,
    invariant_solution_eq3,
    invariant_solution_example31,
    lie_basis_eq3,
    lie_basis_example31,
    steady_seed_eq3,
    steady_seed_example31,
)
from .systems import (
    SystemSpec,
    TransformationData,
    constraint_residual,
    example33_transformation,
    identity_transformation,
    make_eq2,
    make_eq3,
    make_example31,
    make_generalequation2,
    make_power_reduced,
    make_transformed_example33,
    power_transformation,
    transform_coefficients,
)

__version__ = "0.1.0"
