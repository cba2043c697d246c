"""Edge ideals of edge-weighted trees: Betti tables, depth, regularity and checkers."""

from .linalg import GF32003, RATIONALS, FieldSpec
from .monomials import MonomialIdeal, ResourceLimitError, ideal_power, minimalize
from .resolution import BettiTable, betti, betti_koszul, betti_taylor, depth_profile
from .tree import WeightedTree, analyze, edge_ideal, generate_random

__all__ = [
    "BettiTable", "FieldSpec", "GF32003", "MonomialIdeal", "RATIONALS", "ResourceLimitError", "WeightedTree",
    "analyze", "betti", "betti_koszul", "betti_taylor", "depth_profile", "edge_ideal", "generate_random",
    "ideal_power", "minimalize",
]
