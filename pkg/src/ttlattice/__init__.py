"""Finite models for tensor-triangular lattice theory."""

from .bigsupport import CategorifiedLattice, ltg_check, open_categorified, random_tau, thomason_categorified
from .frames import FiniteFrame, FiniteSpace, hochster_dual, omega, points, pt_space
from .poset import FiniteLattice, FinitePoset, is_distributive, is_lattice
from .poly import Poly
from .radical import PrimeIdealKx, RadicalIdeal

__version__ = "0.1.0"

__all__ = [
    "CategorifiedLattice",
    "FiniteFrame",
    "FiniteLattice",
    "FinitePoset",
    "FiniteSpace",
    "Poly",
    "PrimeIdealKx",
    "RadicalIdeal",
    "hochster_dual",
    "is_distributive",
    "is_lattice",
    "ltg_check",
    "omega",
    "open_categorified",
    "points",
    "pt_space",
    "random_tau",
    "thomason_categorified",
]
