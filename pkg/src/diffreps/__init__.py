"""Exact differential-operator representations of sl(2), Witt and Virasoro algebras."""

from .coeffs import LAURENT, LAURENT_Q, RATIONAL, SERIES, series_ring
from .diffop import DiffOp, bracket, compose
from .errors import DiffRepsError
from .parse import parse_coeff, parse_op, parse_scalar, render
from .reps import (
    Representation,
    Triple,
    build,
    casimir_value,
    classify,
    verify_brackets,
)
from .scalar import Scalar

__version__ = "0.1.0"

__all__ = [
    "DiffOp",
    "DiffRepsError",
    "LAURENT",
    "LAURENT_Q",
    "RATIONAL",
    "Representation",
    "SERIES",
    "Scalar",
    "Triple",
    "bracket",
    "build",
    "casimir_value",
    "classify",
    "compose",
    "parse_coeff",
    "parse_op",
    "parse_scalar",
    "render",
    "series_ring",
    "verify_brackets",
]
