"""Exact rational-function arithmetic and the manifest expression parser."""

from .parser import parse_expression
from .rational import (
    RationalFunction,
    arith,
    differentiate,
    evaluate,
    format_polynomial,
    irreducible_factors,
    is_zero,
    poly_context,
)

__all__ = [
    "RationalFunction",
    "arith",
    "differentiate",
    "evaluate",
    "format_polynomial",
    "irreducible_factors",
    "is_zero",
    "parse_expression",
    "poly_context",
]
