from .complexes import (
    Cohomology, ComplexError, ConeData, Generator, GradedComplex, chain_map_violations,
    cohomology_ranks, cone, double_cone, filtration_page_one, find_violations, int_complex,
    is_acyclic, leading_split, reweight, verify_complex, weighted_differential, zero_complex,
)
from .factorization import (
    FactorizationError, MatrixFactorization, MFCohomology, mf_cohomology, mf_morphism_check,
    mf_verify, quotient_invariants,
)
from .lemma import LemmaReport, double_cone_lemma_check, random_chain_map, random_cone_data

__all__ = [
    "Cohomology", "ComplexError", "ConeData", "FactorizationError", "Generator", "GradedComplex",
    "LemmaReport", "MFCohomology", "MatrixFactorization", "chain_map_violations",
    "cohomology_ranks", "cone", "double_cone", "double_cone_lemma_check", "filtration_page_one",
    "find_violations", "int_complex", "is_acyclic", "leading_split", "mf_cohomology",
    "mf_morphism_check", "mf_verify", "quotient_invariants", "random_chain_map",
    "random_cone_data", "reweight", "verify_complex", "weighted_differential", "zero_complex",
]
