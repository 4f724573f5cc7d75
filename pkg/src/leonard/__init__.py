"""Exact construction and verification of q-Racah Leonard pairs and triples."""

from .scalars import GF, Q, FieldConfig, Fp, ParseError, ZeroInverse, FieldMismatch
from .matrices import Matrix, Singular, DimensionMismatch, NotMultiplicityFree
from .report import Check, Report, VerificationReport
from .params import (
    AWCoefficients,
    DerivedScalars,
    InadmissibleTuple,
    NoRootInField,
    ParameterArray,
    QRacahTuple,
    TripleEigenData,
    Z3Constants,
    aw_coefficients,
    check_pair_admissible,
    check_triple_admissible,
    derived_scalars,
    eigen_sequence,
    parameter_array,
    recover_a,
    recover_c,
    validate_parameter_array,
    z3_constants,
)
from .actions import GroupWord, apply_word, hat_invariant, pair_equivalents, triple_orbit, twins
from .realize import (
    LeonardRealization,
    NTCoefficients,
    build_a_epsilon,
    build_triple,
    nt_decompose,
    rho,
    split_basis_from_pair,
    split_pair,
    symmetrizer,
    transition_matrix,
)
from .verify import full_verification, verify_realization

__version__ = "0.1.0"
