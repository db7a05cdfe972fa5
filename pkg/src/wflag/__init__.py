"""Exact-arithmetic search for orbifolds polarized in weighted flag varieties."""
from __future__ import annotations

from .formats import (
    FORMATS,
    CocharacterParam,
    EmbeddingData,
    FormatSpec,
    ambient_weights,
    enumerate_parameters,
    graded_series_coefficients,
    hilbert_series,
)
from .orbifold import (
    OrbifoldContribution,
    QuotientSingularity,
    basket_kernel,
    baskets,
    gcd_closure,
    initial_term,
    porb_cont,
    qorb,
)
from .ratfun import (
    DomainError,
    RationalFunction,
    TruncatedSeries,
    UniPolynomial,
    evaluate_at,
    poly_gcd,
    poly_xgcd,
    series_of,
)
from .search import (
    G2_FANO_TABLE,
    Candidate,
    SearchConfig,
    SweepResult,
    degree_of,
    is_terminal_type,
    iter_search,
    merge_candidates,
    pos_wt,
    search,
    search_embedding,
    solve_multiplicities,
    sweep_parameters,
    terminal_basket,
)

__all__ = [
    "FORMATS",
    "CocharacterParam",
    "EmbeddingData",
    "FormatSpec",
    "ambient_weights",
    "enumerate_parameters",
    "graded_series_coefficients",
    "hilbert_series",
    "OrbifoldContribution",
    "QuotientSingularity",
    "basket_kernel",
    "baskets",
    "gcd_closure",
    "initial_term",
    "porb_cont",
    "qorb",
    "DomainError",
    "RationalFunction",
    "TruncatedSeries",
    "UniPolynomial",
    "evaluate_at",
    "poly_gcd",
    "poly_xgcd",
    "series_of",
    "G2_FANO_TABLE",
    "Candidate",
    "SearchConfig",
    "SweepResult",
    "degree_of",
    "is_terminal_type",
    "iter_search",
    "merge_candidates",
    "pos_wt",
    "search",
    "search_embedding",
    "solve_multiplicities",
    "sweep_parameters",
    "terminal_basket",
]

__version__ = "0.1.0"
