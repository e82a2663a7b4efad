"""Oriented graphs with forbidden induced subgraphs: detection, exact colouring,
constructive colourings and instance checks."""
from .digraph import OrientedGraph, blow_up, is_extension_of, layers, scc
from .errors import (
    BudgetExhausted,
    ChiForbError,
    NotInClass,
    OddCycleFound,
    StructureViolation,
    TooLarge,
)
from .patterns import PatternKind, find_induced, find_odd_hole, is_f_free, parse_pattern
from .coloring import Coloring, chi_exact, tri_exact

__version__ = "0.1.0"

__all__ = [
    "OrientedGraph", "blow_up", "is_extension_of", "layers", "scc",
    "BudgetExhausted", "ChiForbError", "NotInClass", "OddCycleFound", "StructureViolation", "TooLarge",
    "PatternKind", "find_induced", "find_odd_hole", "is_f_free", "parse_pattern",
    "Coloring", "chi_exact", "tri_exact",
]
