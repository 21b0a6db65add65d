"""Exact calculus of forms, multivectors, Lie algebroids and multiplicative structures."""

from .exterior import GradedElement, koszul_bracket, parse_element, schouten_bracket
from .poly import Chart, PolyExpr, parse_poly
from .report import VerificationReport

__all__ = [
    "Chart",
    "GradedElement",
    "PolyExpr",
    "VerificationReport",
    "koszul_bracket",
    "parse_element",
    "parse_poly",
    "schouten_bracket",
]
