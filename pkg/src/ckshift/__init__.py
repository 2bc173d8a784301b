"""Entropy of subshifts of finite type, three independent ways, plus an
exact symbolic verifier for the associated generator algebra."""

from .matrix import (
    DualDecomposition,
    EntryOutOfRangeError,
    IntMatrix,
    MatrixError,
    NoConvergenceError,
    NotIrreducibleError,
    NotSquareError,
    PerronData,
    TransitionMatrix,
    ZeroColumnError,
    ZeroRowError,
    dual_matrix,
    is_irreducible,
    is_permutation,
    load_int_matrix,
    load_matrix,
    matrix_power,
    spectral_radius,
    validate,
    validate_int,
    witness_dimension,
    word_count,
)
from .sft import (
    WORD_CAP,
    ConvergenceReport,
    ConvergenceRow,
    ParryData,
    SymbolOutOfRangeError,
    TooManyWordsError,
    cylinder_probability,
    entropy_estimates,
    enumerate_words,
    is_admissible,
    markov_entropy,
    parry_measure,
    partition_entropy,
)
from .ck import (
    BlockDiagonal,
    BlockMatrix,
    CKElement,
    CuntzKriegerAlgebra,
    DepthExceededError,
    DepthTooSmallError,
    InadmissibleWordError,
    Monomial,
    NonZeroDegreeError,
    VerificationReport,
    WitnessPreconditionError,
    verify_relations,
    verify_witness_decomposition,
)

__version__ = "0.1.0"
