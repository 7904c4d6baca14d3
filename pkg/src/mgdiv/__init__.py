"""Exact divisor-class calculus on moduli spaces of pointed curves and their symmetric quotients."""

from .classes import Coefficient, DivisorClass, add, coefficient_of, equals, format_class, scale, substitute_params
from .curves import TestCurve, catalog, pair
from .errors import MgdivError
from .expr import parse_class
from .spaces import SpaceId, canonicalize, enumerate_basis

__version__ = "0.1.0"

__all__ = [
    "Coefficient",
    "DivisorClass",
    "MgdivError",
    "SpaceId",
    "TestCurve",
    "add",
    "canonicalize",
    "catalog",
    "coefficient_of",
    "enumerate_basis",
    "equals",
    "format_class",
    "pair",
    "parse_class",
    "scale",
    "substitute_params",
]
