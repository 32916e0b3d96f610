"""Hochschild (co)homology of finite-dimensional algebras and twisted group algebras."""

from .algebra import (
    AlgebraError,
    Bimodule,
    FiniteDimAlgebra,
    TwistedGroupAlgebra,
    algebra_from_json,
    standard_algebra,
)
from .bar import HochschildComplex, ResourceCapError, bar_hochschild, decomposition_check
from .checks import differential_suite, homotopy_suite
from .koszul import UnsupportedError, hkr_cochain, hkr_cocycle_defect, koszul_ext, random_polynomial
from .mixed import MixedResolution, bidegree
from .morita import invariant_subalgebra, symmetrizer_morita

__all__ = [
    "AlgebraError",
    "Bimodule",
    "FiniteDimAlgebra",
    "HochschildComplex",
    "MixedResolution",
    "ResourceCapError",
    "TwistedGroupAlgebra",
    "UnsupportedError",
    "algebra_from_json",
    "bar_hochschild",
    "bidegree",
    "decomposition_check",
    "differential_suite",
    "hkr_cochain",
    "hkr_cocycle_defect",
    "homotopy_suite",
    "invariant_subalgebra",
    "koszul_ext",
    "random_polynomial",
    "standard_algebra",
    "symmetrizer_morita",
]
