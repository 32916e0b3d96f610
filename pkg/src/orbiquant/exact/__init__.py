"""Exact scalars, hbar-series and linear algebra."""

from ._backend import BACKEND
from .cyclotomic import Cyc, IncompatibleFieldError, cyclotomic_polynomial, totient, zeta
from .linalg import (
    ExactMatrix,
    in_span,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve,
    sparse_kernel,
    sparse_rank,
    span_basis,
)
from .rational import QQ, as_rational, format_rational, parse_rational
from .series import HSeries
from .serialize import SchemaError, scalar_from_json, scalar_to_json

__all__ = [
    "BACKEND",
    "Cyc",
    "ExactMatrix",
    "HSeries",
    "IncompatibleFieldError",
    "QQ",
    "SchemaError",
    "as_rational",
    "cyclotomic_polynomial",
    "format_rational",
    "in_span",
    "inverse",
    "kernel_basis",
    "parse_rational",
    "rank",
    "rref",
    "scalar_from_json",
    "scalar_to_json",
    "solve",
    "sparse_kernel",
    "sparse_rank",
    "span_basis",
    "totient",
    "zeta",
]
