"""Exact verification and simulation toolkit for a five-qutrit
error-correcting code.

The package proves the code's structural claims computationally — error
basis completeness, stabilizer commutation, Knill-Laflamme correctability,
syndrome uniqueness, the qutrit Hamming bound — using exact cyclotomic
arithmetic, and estimates logical failure rates under independent
per-site noise.
"""

from .analytics import (
    NoiseModel,
    TrialReport,
    css_counting_argument,
    failure_probability,
    hamming_bound,
    monte_carlo,
    pseudo_threshold,
    wilson_interval,
)
from .code import (
    CodeConstructionError,
    StabilizerCode,
    build_code,
    canonical_codewords,
    codespace_projector,
    crosscheck_reference_codewords,
    css_structure_report,
    encode,
    find_logical_operators,
    knill_laflamme_check,
    load_reference_listings,
)
from .cyclo import (
    CycloNumber,
    DenseMatrix,
    DimensionMismatchError,
    StateVector,
    exact_rank,
    index_to_ket,
    ket_to_index,
)
from .decode import (
    NotAnEigenstateError,
    Syndrome,
    SyndromeTable,
    UncorrectableError,
    apply_single_site_unitary,
    build_syndrome_table,
    correct,
    extract_syndrome,
    measure_and_correct_branches,
    single_error_set,
    syndrome_of,
)
from .errormodel import (
    PauliCoefficients,
    build_sigma,
    check_sigma_independence,
    decompose_in_pauli,
    decompose_in_sigma,
    verify_span_theorem,
)
from .pauli import (
    TernaryPauli,
    commutation_exponent,
    pauli_from_string,
    pauli_to_dense,
    pauli_to_string,
)

__version__ = "0.1.0"
