"""Fedosov quantization of affine symplectic space with polynomial data."""

from .connection import CapError, FedosovConnection, de_rham, koszul_delta, koszul_delta_inv, nabla
from .data import FedosovData, NotClosedError, symmetric_gamma
from .equivariance import equivariance_check
from .fiberwise import FormChain, kappa0_identities, restrict_section
from .quantize import (
    fedosov_r,
    flat_lift_lambda,
    function_to_series,
    moyal_of_functions,
    random_function,
    star_product,
    verify_fedosov,
)
from .sections import BundleSection

__all__ = [
    "BundleSection",
    "CapError",
    "FedosovConnection",
    "FedosovData",
    "FormChain",
    "NotClosedError",
    "de_rham",
    "equivariance_check",
    "fedosov_r",
    "flat_lift_lambda",
    "function_to_series",
    "kappa0_identities",
    "koszul_delta",
    "koszul_delta_inv",
    "moyal_of_functions",
    "nabla",
    "random_function",
    "restrict_section",
    "star_product",
    "symmetric_gamma",
    "verify_fedosov",
]
