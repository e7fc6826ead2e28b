"""Exact polynomial machinery for reducing Diophantine solvability to
embeddings of affine spaces into affine varieties."""

from .polyparse import ParseError, format_polynomial, parse_polynomial
from .polyring import (
    MINUS_INFINITY,
    ContextMismatch,
    DivisionByZero,
    IncompletePoint,
    NotDivisible,
    Polynomial,
    UnknownVariable,
    VarContext,
    derivative,
    evaluate,
    exact_div,
    ring_ops,
    substitute,
)

__version__ = "0.1.0"
