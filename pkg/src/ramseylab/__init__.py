"""Ramsey numbers of small uniform hypergraphs: constructions, search and verification."""

from .core import (
    Coloring,
    Embedding,
    Pattern,
    Status,
    UniformHypergraph,
    ValidationError,
    colex_rank,
    colex_unrank,
    count_mono_copies,
    find_mono_copy,
    pattern_catalog,
    verify_embedding,
)
from .search import exists_good_coloring, ramsey_bounds, turan_number

__all__ = [
    "Coloring", "Embedding", "Pattern", "Status", "UniformHypergraph", "ValidationError",
    "colex_rank", "colex_unrank", "count_mono_copies", "find_mono_copy", "pattern_catalog",
    "verify_embedding", "exists_good_coloring", "ramsey_bounds", "turan_number",
]
__version__ = "0.1.0"
