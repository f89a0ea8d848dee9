"""Signed descent-class sums of the L statistic on the hyperoctahedral group."""
from .core import (
    IndexSet,
    SignedPermutation,
    all_index_sets,
    compose,
    descent_set,
    generator,
    identity,
    inverse,
    is_chessboard,
    length,
    parse_index_set,
    parse_window,
    sign,
)
from .enumeration import ClassQuery, DescentTable, iter_class, s_bipoly, s_poly, s_poly_chessboard
from .polynomials import BiPoly, UniPoly, divides_xt_plus_one, f_poly
from .statistics import abc, big_l

__all__ = [
    "BiPoly",
    "ClassQuery",
    "DescentTable",
    "IndexSet",
    "SignedPermutation",
    "UniPoly",
    "abc",
    "all_index_sets",
    "big_l",
    "compose",
    "descent_set",
    "divides_xt_plus_one",
    "f_poly",
    "generator",
    "identity",
    "inverse",
    "is_chessboard",
    "iter_class",
    "length",
    "parse_index_set",
    "parse_window",
    "s_bipoly",
    "s_poly",
    "s_poly_chessboard",
    "sign",
]
