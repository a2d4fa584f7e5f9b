"""Exact structure-constant calculus for nilpotent Leibniz and Lie superalgebras.

The package models a Z2-graded algebra as a bracket table over a homogeneous
basis, verifies the graded Leibniz and Lie identities, computes nilpotency
invariants (central series, nilindex, annihilators, characteristic sequences)
in exact rational arithmetic, ships constructors for the classified
maximal-nilindex families, completes chain skeletons by superidentity
rewriting, and runs seeded randomized nonexistence probes.
"""

from .algebra import (
    BasisIndex,
    GradedMap,
    IdentityViolation,
    LieViolation,
    SuperAlgebra,
    apply_basis_change,
    bracket,
    check_grading,
    check_leibniz_superidentity,
    check_lie_superidentity,
    even_index,
    make_superalgebra,
    odd_index,
    parse,
    parse_graded_map,
    serialize,
    serialize_graded_map,
    tables_match,
    to_complex,
)
from .catalog import (
    Skeleton,
    closed_formula_bracket,
    complete_by_superidentity,
    csq_model,
    expand_skeleton,
    max_nilindex_leibniz,
    max_nilindex_super,
    skeleton_algebra,
    thm32_basis_change,
    thm32_family,
    thm32_normal,
    zf_adapted,
)
from .errors import (
    BackendMismatch,
    DegenerateFamily,
    DimensionMismatch,
    DuplicateEntry,
    EmptySearchSpace,
    GradingViolation,
    HypothesisViolated,
    InconsistentStructure,
    IndexOutOfRange,
    LeibnizSuperError,
    NotNilpotent,
    NotTwoGenerated,
    OddDimensionRequired,
    ParseError,
    PartitionMismatch,
    SingularMap,
    ZeroScale,
)
from .invariants import (
    CharSequence,
    SeriesReport,
    center,
    char_seq_at,
    characteristic_sequence,
    descending_central_series,
    nilindex,
    right_annihilator,
    right_mul_matrix,
)
from .linalg import (
    COMPLEX,
    DEFAULT_TOL,
    RATIONAL,
    Matrix,
    Subspace,
    invert,
    jordan_type,
    kernel,
    rank,
    rref,
)
from .verify import (
    GeneratorReport,
    LemmaFormulaReport,
    NormalizationReport,
    ProbeReport,
    check_generator_placement,
    probe_csq_nonexistence,
    probe_zf_nonexistence,
    verify_isomorphism,
    verify_lemma_formula,
    verify_thm32,
)

__version__ = "0.1.0"
