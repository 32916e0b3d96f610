"""Orbifold cohomology of symplectic quotients."""

from .chen_ruan import *  # noqa: F401,F403
from .chen_ruan import __all__  # noqa: F401
