"""Synthesis of linear loops from pure difference binomial invariants."""

from .errors import (
    DimensionMismatch,
    LoomgenError,
    NotPureDifference,
    ParseError,
    PreconditionViolated,
    SelfCheckFailed,
    SingularMatrix,
    UnknownVariable,
    UnsupportedFormat,
    ZeroVector,
)
from .lattice import Lattice, SaturationCertificate, contains, is_saturated, lattice_from_vectors, saturate
from .poly import (
    Polynomial,
    PureDifferenceBinomial,
    canonical_binomial,
    classify_pure_difference,
    exponent_vector,
    is_primitive,
    parse_system,
)
from .synthesis import (
    Exactness,
    ExactnessLevel,
    LinearLoop,
    SynthesisReport,
    classify_exactness,
    conjugate,
    is_nontrivial,
    synthesize,
    synthesize_diagonal,
    synthesize_polynomials,
    transform_polynomials,
)
from .verify import iterate, verify_bounded, verify_symbolic_diagonal

__version__ = "0.1.0"
