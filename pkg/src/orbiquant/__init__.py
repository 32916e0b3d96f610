"""Exact computer algebra for Weyl algebras, Fedosov quantization, twisted group
algebras and orbifold cohomology of symplectic quotients."""

__version__ = "0.1.0"
