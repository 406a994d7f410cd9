"""Exact assignment spaces and assignment cohomology for torus actions.

The package works over the rationals throughout: stratification posets
with integral stabilizer subalgebras, contravariant coefficient systems,
the (co)chain complexes on weakly or strictly increasing stratum tuples,
and polynomial moment data on linear representations.
"""

from .assignops import (
    AssignmentVector,
    MinimalAssignment,
    assignment_basis,
    extend_minimal,
    is_assignment,
    restrict_to_minimal,
)
from .builders import (
    PolytopeData,
    SpaceDescription,
    WeightMatrix,
    build_from_description,
    build_linear_rep,
    build_polytope,
    build_product,
    build_sphere_product,
    preset_polytope,
)
from .cochain import (
    ChainBasis,
    Cochain,
    CohomologyResult,
    assignment_space_dim,
    block_scaling_matrix,
    chain_basis,
    chain_space_dim,
    cohomology,
    differential_matrix,
    euler_characteristic,
    homotopy_L,
    homotopy_Q,
    les_coefficients_check,
    les_pair_check,
    pullback,
    pullback_matrix,
    relative_cohomology,
)
from .coeffsys import (
    CoefficientSystem,
    SystemMorphism,
    check_functor,
    moment_system,
    pair_ses,
    quotient_system,
    restriction_system,
    ses_check,
)
from .momentpoly import (
    FormCoefficients,
    MomentPolynomial,
    ScalarPoly,
    check_moment_condition,
    decompose,
    parse_poly,
    recombine,
    verify_decomposition,
)
from .errors import (
    ArityError,
    ConditionFailedError,
    CycleError,
    DescriptionError,
    IncompatibleMinimalValuesError,
    InvalidMorphismError,
    MalformedPolytopeError,
    MissingMinimalValueError,
    NonzeroConstantTermError,
    NotExactError,
    NotOpenError,
    NotUnionOfStrataError,
    NoUniqueMinimumError,
    ParseError,
    StabilizerMonotonicityError,
    UnknownIdError,
)
from .ratlin import RatMatrix, kernel_basis, rank, rref, solve
from .stratposet import (
    PosetMap,
    StratSpace,
    Subalgebra,
    chains,
    minimal_strata,
    poset_morphism_check,
)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "ArityError",
    "AssignmentVector",
    "ChainBasis",
    "Cochain",
    "CoefficientSystem",
    "CohomologyResult",
    "ConditionFailedError",
    "CycleError",
    "DescriptionError",
    "FormCoefficients",
    "IncompatibleMinimalValuesError",
    "InvalidMorphismError",
    "MalformedPolytopeError",
    "MinimalAssignment",
    "MissingMinimalValueError",
    "MomentPolynomial",
    "NoUniqueMinimumError",
    "NonzeroConstantTermError",
    "NotExactError",
    "NotOpenError",
    "NotUnionOfStrataError",
    "ParseError",
    "PolytopeData",
    "PosetMap",
    "RatMatrix",
    "ScalarPoly",
    "SpaceDescription",
    "StabilizerMonotonicityError",
    "StratSpace",
    "Subalgebra",
    "SystemMorphism",
    "UnknownIdError",
    "WeightMatrix",
    "assignment_basis",
    "assignment_space_dim",
    "block_scaling_matrix",
    "build_from_description",
    "build_linear_rep",
    "build_polytope",
    "build_product",
    "build_sphere_product",
    "chain_basis",
    "chain_space_dim",
    "chains",
    "check_functor",
    "check_moment_condition",
    "cohomology",
    "decompose",
    "differential_matrix",
    "errors",
    "euler_characteristic",
    "extend_minimal",
    "homotopy_L",
    "homotopy_Q",
    "is_assignment",
    "kernel_basis",
    "les_coefficients_check",
    "les_pair_check",
    "minimal_strata",
    "moment_system",
    "pair_ses",
    "parse_poly",
    "poset_morphism_check",
    "preset_polytope",
    "pullback",
    "pullback_matrix",
    "quotient_system",
    "rank",
    "recombine",
    "relative_cohomology",
    "restrict_to_minimal",
    "restriction_system",
    "rref",
    "ses_check",
    "solve",
    "verify_decomposition",
]
