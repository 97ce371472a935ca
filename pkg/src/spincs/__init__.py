"""Exact topological and algebraic data of the spin-Chern-Simons action."""

from .cohomology import CohClass, CohomologyRing, load_ring, s1_x_s2, surface, torus2, torus3
from .ko import KOClass
from .levels import LevelClass, VirtualRep, lam, parse_rep
from .lines import GradedLine, LineExpr
from .phase import Phase
from .quadratic import SpinStructure, bform, q, q_general, spin_shift

__all__ = [
    "CohClass",
    "CohomologyRing",
    "GradedLine",
    "KOClass",
    "LevelClass",
    "LineExpr",
    "Phase",
    "SpinStructure",
    "VirtualRep",
    "bform",
    "lam",
    "load_ring",
    "parse_rep",
    "q",
    "q_general",
    "s1_x_s2",
    "spin_shift",
    "surface",
    "torus2",
    "torus3",
]
