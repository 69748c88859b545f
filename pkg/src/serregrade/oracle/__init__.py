"""Monomial and Stanley-Reisner oracles, independent of the Groebner engine."""

from .monomial import (
    MAX_SWEEP_VARS,
    MonomialIdeal,
    UnsupportedOracleInput,
    as_monomial_ideal,
    associated_primes,
    enumerate_check_thm35,
    is_cohen_macaulay,
    local_dimension,
    minimal_primes,
    monomial_depth,
    monomial_primes_over,
    ncm_locus_monomial,
    prime_in_class,
    reisner_depth,
    s_dimension_monomial,
    s_height_monomial,
    thm314_check,
)
from .simplicial import SimplicialComplex, hochster_depth, is_cohen_macaulay_complex, rank_mod_p

__all__ = [
    "MAX_SWEEP_VARS",
    "MonomialIdeal",
    "SimplicialComplex",
    "UnsupportedOracleInput",
    "as_monomial_ideal",
    "associated_primes",
    "enumerate_check_thm35",
    "hochster_depth",
    "is_cohen_macaulay",
    "is_cohen_macaulay_complex",
    "local_dimension",
    "minimal_primes",
    "monomial_depth",
    "monomial_primes_over",
    "ncm_locus_monomial",
    "prime_in_class",
    "rank_mod_p",
    "reisner_depth",
    "s_dimension_monomial",
    "s_height_monomial",
    "thm314_check",
]
