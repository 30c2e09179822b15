"""Exact linear relations among entries of powers of generic matrices, and
the walk-word bijection behind the tridiagonal anti-diagonal identity."""

from .polyring import Poly, exact_div, format_poly, normalize, parse
from .relations import EntrySet, Relation, classify_subsets, find_relation, relation_report, verify_relation
from .symmatrix import SymMatrix, charpoly, generic_matrix, mat_mul, mat_pow, tridiagonal_matrix

__all__ = [
    "EntrySet",
    "Poly",
    "Relation",
    "SymMatrix",
    "charpoly",
    "classify_subsets",
    "exact_div",
    "find_relation",
    "format_poly",
    "generic_matrix",
    "mat_mul",
    "mat_pow",
    "normalize",
    "parse",
    "relation_report",
    "tridiagonal_matrix",
    "verify_relation",
]
