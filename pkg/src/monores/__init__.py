"""Taylor resolutions of monomial ideals.

Builds the Taylor complex of a monomial ideal, classifies the ideal by
dominance, minimizes resolutions by consecutive cancellation (face/facet
elimination or the always-terminating generic pivot loop), computes
Scarf complexes and homological invariants, and verifies every produced
resolution with exact composition and strand-exactness oracles.
"""

from .cancellation import (
    CancellationEvent,
    Deterministic,
    EliminationOutcome,
    Scripted,
    SeededRandom,
    Theorem71Report,
    check_theorem71_hypothesis,
    eliminate_face_facet_pairs,
    find_invertible_entries,
    minimize_generic,
    semidominant_pair_set_A,
    standard_cancellation,
    standard_change_of_basis,
)
from .dominance import (
    SUBSET_SEARCH_CAP,
    DominanceReport,
    classify,
    dominant_variables,
    is_complete_intersection,
    is_dominant_subset,
    is_generic,
    largest_dominant_subset_with,
)
from .invariants import (
    InvariantsReport,
    betti_dominant,
    invariants_from_resolution,
    invariants_semidominant,
    is_scarf,
    pd_equals_two_test,
    scarf_complex,
    scarf_face_counts,
    scarf_necessary_divisibility,
    scarf_parity_test_2semidominant,
    scarf_sufficient_exponents,
)
from .monomials import (
    MAX_EXPONENT,
    CapExceededError,
    IdealError,
    Monomial,
    MonomialIdeal,
    VariableSet,
    divides,
    lcm,
    minimalize,
    total_degree,
)
from .taylor import (
    TAYLOR_MAX_GENERATORS,
    DifferentialMatrix,
    Entry,
    Face,
    LcmLattice,
    Resolution,
    build_taylor,
    lcm_lattice,
    repeated_multidegree_classes,
    strip_trailing_zeros,
)
from .verify import (
    OracleDisagreementError,
    StrandReport,
    betti_oracle,
    compose_check,
    matrix_rank_exact,
    minimality_check,
    strand_exactness,
    strands_all_exact,
)

__all__ = [
    "CancellationEvent",
    "CapExceededError",
    "Deterministic",
    "DifferentialMatrix",
    "DominanceReport",
    "EliminationOutcome",
    "Entry",
    "Face",
    "IdealError",
    "InvariantsReport",
    "LcmLattice",
    "MAX_EXPONENT",
    "Monomial",
    "MonomialIdeal",
    "OracleDisagreementError",
    "Resolution",
    "SUBSET_SEARCH_CAP",
    "Scripted",
    "SeededRandom",
    "StrandReport",
    "TAYLOR_MAX_GENERATORS",
    "Theorem71Report",
    "VariableSet",
    "betti_dominant",
    "betti_oracle",
    "build_taylor",
    "check_theorem71_hypothesis",
    "classify",
    "compose_check",
    "divides",
    "dominant_variables",
    "eliminate_face_facet_pairs",
    "find_invertible_entries",
    "invariants_from_resolution",
    "invariants_semidominant",
    "is_complete_intersection",
    "is_dominant_subset",
    "is_generic",
    "is_scarf",
    "largest_dominant_subset_with",
    "lcm",
    "lcm_lattice",
    "matrix_rank_exact",
    "minimality_check",
    "minimalize",
    "minimize_generic",
    "pd_equals_two_test",
    "repeated_multidegree_classes",
    "scarf_complex",
    "scarf_face_counts",
    "scarf_necessary_divisibility",
    "scarf_parity_test_2semidominant",
    "scarf_sufficient_exponents",
    "semidominant_pair_set_A",
    "standard_cancellation",
    "standard_change_of_basis",
    "strand_exactness",
    "strands_all_exact",
    "strip_trailing_zeros",
    "total_degree",
]
