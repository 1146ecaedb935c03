"""Exact verification of inner 2-local derivations on matrix rings.

Finite exact-arithmetic base rings, the matrix ring machinery built on
them, witness oracles and brute-force witness search, single-element
witness extraction, corner-to-full extension of derivations and 2-local
derivations, and two-generated subring checks, all wired into a
deterministic batch CLI (``adlocal``).
"""

from .deriv import (
    DerivationMap,
    Failure,
    MapComparison,
    VerificationReport,
    WitnessOracle,
    adversarial_oracle,
    check_derivation,
    check_oracle_consistency,
    check_two_local,
    inner_derivation,
    maps_equal,
    verification_domain,
    verification_elements,
    witness_search,
)
from .errors import (
    AdlocalError,
    CarrierTooLargeError,
    ClosureBudgetError,
    DimensionError,
    EmptyWordError,
    InconsistentOracleError,
    InfiniteRingError,
    MissingWitnessError,
    NonCommutativeBaseError,
    NotADerivationError,
    PreconditionError,
    ShapeMismatchError,
    VerificationFailedError,
)
from .extend import (
    ExtensionTrace,
    double_derivation,
    extend_corner_derivation,
    extend_corner_two_local,
    extend_derivation_to_n,
    extend_derivation_trace,
    extend_extract_compress,
    extend_two_local_to_n,
    extend_two_local_trace,
    phi,
    phi_inv,
)
from .extract import (
    ExtractionState,
    assemble_offdiagonal,
    collect_unit_witnesses,
    diagonal_from_fixed_pair,
    extract_witness,
    run_extraction,
    verify_diagonal_differences,
    verify_unit_image_formula,
)
from .matrix import (
    CornerContext,
    Matrix,
    MatrixRing,
    block_flatten,
    block_view,
    commutator,
    corner_compress,
    corner_embed,
    corner_extract,
    identity_matrix,
    matrix,
    matrix_from_strings,
    matrix_index,
    matrix_ring,
    matrix_to_strings,
    matrix_unit,
    pierce_component,
    staircase,
    zero_matrix,
)
from .rings import (
    CommutativityEvidence,
    PolyQuot,
    Ring,
    Zmod,
    enumerate_elements,
    is_central,
    is_commutative,
    parse_ring_spec,
    polyquot,
    ring_axiom_check,
    zmod,
)
from .twogen import GeneratedSubring, check_inner_on_subring, generate_subring, word_eval

__version__ = "0.1.0"
