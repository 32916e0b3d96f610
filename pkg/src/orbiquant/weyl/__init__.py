"""Formal Weyl algebra, Moyal product, fixed-space splitting and twisted chains."""

from .checks import cycle_suite, moyal_suite, random_weyl
from .chains import TwistedChain, antisym_mu, twisted_cycle_psi, wedge_sign
from .element import WeylElement, substitution_columns
from .space import SymplecticSpace, darboux_form
from .splitting import NotSymplecticError, Splitting, fixed_splitting, is_form_preserving, pfaffian

__all__ = [
    "NotSymplecticError",
    "Splitting",
    "SymplecticSpace",
    "TwistedChain",
    "WeylElement",
    "antisym_mu",
    "cycle_suite",
    "darboux_form",
    "fixed_splitting",
    "is_form_preserving",
    "moyal_suite",
    "pfaffian",
    "random_weyl",
    "substitution_columns",
    "twisted_cycle_psi",
    "wedge_sign",
]
