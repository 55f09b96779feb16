"""Exact symbolic layer: rational functions in z, zbar and formal operators."""
from .expr import (
    I,
    Z,
    ZBAR,
    GaussRational,
    RationalExpr,
    as_expr,
    conjugate,
    diff,
    format_gauss,
)
from .grammar import ParseError, format_expr, parse_expr
from .operators import FormalOperator, Series, op_apply, op_commutator, series_equal

__all__ = [
    "I",
    "Z",
    "ZBAR",
    "FormalOperator",
    "GaussRational",
    "ParseError",
    "RationalExpr",
    "Series",
    "as_expr",
    "conjugate",
    "diff",
    "format_expr",
    "format_gauss",
    "op_apply",
    "op_commutator",
    "parse_expr",
    "series_equal",
]
