"""Exact cyclotomic arithmetic and linear algebra."""
from .cyclotomic import CycNumber, as_cyc, cyclotomic_polynomial, field_data, lcm
from .linalg import (
    IntertwinerInconclusive,
    Matrix,
    commutant,
    det,
    independent_columns,
    inverse,
    rank,
    rank_kernel,
    solve_in_span,
    solve_intertwiner,
)

__all__ = [
    "CycNumber",
    "IntertwinerInconclusive",
    "Matrix",
    "as_cyc",
    "commutant",
    "cyclotomic_polynomial",
    "det",
    "field_data",
    "independent_columns",
    "inverse",
    "lcm",
    "rank",
    "rank_kernel",
    "solve_in_span",
    "solve_intertwiner",
]
