"""Partial and distance degrees of the generic offset of a plane algebraic curve."""

__version__ = "0.1.0"

from .errors import CostGuard, DegeneracyError, InternalError, OffsetDegreeError, ValidationError
from .formulas import (
    DegreeReport,
    ImplicitCurve,
    degree_report,
    distance_degree_implicit,
    partial_degree_implicit,
    partial_degree_parametric_A,
    partial_degree_parametric_B,
    validate_implicit,
)
from .parser import RationalParametrization, parse_parametrization, parse_polynomial
from .polyring import Polynomial, Ring

__all__ = [
    "__version__",
    "CostGuard",
    "DegeneracyError",
    "DegreeReport",
    "ImplicitCurve",
    "InternalError",
    "OffsetDegreeError",
    "Polynomial",
    "RationalParametrization",
    "Ring",
    "ValidationError",
    "degree_report",
    "distance_degree_implicit",
    "parse_parametrization",
    "parse_polynomial",
    "partial_degree_implicit",
    "partial_degree_parametric_A",
    "partial_degree_parametric_B",
    "validate_implicit",
]
