"""Executable Ramsey goodness machinery for uniform hypergraphs at desk scale."""

from .core import (
    BLUE,
    BurrBound,
    GuardExceeded,
    Hypergraph,
    RED,
    RamseyProfile,
    Tournament,
    TwoColoring,
    burr_bound,
    colex_rank,
    colex_unrank,
    complete_hypergraph,
    coloring_from_json,
    coloring_to_json,
    ell_cycle,
    ell_path,
    fano,
    hypergraph_from_json,
    hypergraph_to_json,
    ramsey_profile,
    single_edge,
    tournament_hypergraph,
    transitive_tournament_hypergraph,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
