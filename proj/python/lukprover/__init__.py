"""Python access to the lukprover library (formulas, proofs, finite models, corpus)."""

from ._core import (
    ParseError,
    canonical,
    check_proof,
    check_script,
    class_flags,
    count_models,
    expand,
    find_countermodel,
    k_contradiction,
    lukasiewicz_chain,
    normalize_formula,
    prove,
    run_corpus,
    theories,
    to_hilbert,
    translate,
    valid,
)

__all__ = [name for name in dir() if not name.startswith("_")]
