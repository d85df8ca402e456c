"""Exact arithmetic kernels: polynomials, rational functions and series."""

from .linalg import nullspace, rank, rref
from .poly import Poly, Q, Rational, irreducible_factors, rat_str, rational_roots
from .ratfunc import RatFunc
from .series import (LogSeries, Series, compose, invert_unit, nth_root_unit,
                     pade_reconstruct, reverse)

__all__ = [
    "LogSeries", "Poly", "Q", "RatFunc", "Rational", "Series", "compose",
    "invert_unit", "irreducible_factors", "nth_root_unit", "nullspace",
    "pade_reconstruct", "rank", "rat_str", "rational_roots", "reverse", "rref",
]
