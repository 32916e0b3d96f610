"""Rational numbers: gmpy2's ``mpq`` when available, ``fractions.Fraction`` otherwise."""

from __future__ import annotations

import numbers
from fractions import Fraction

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    QQ = Fraction

__all__ = ["QQ", "as_rational", "is_rational", "parse_rational", "format_rational"]


def is_rational(x) -> bool:
    return isinstance(x, numbers.Rational)


def as_rational(x):
    """Convert ints, Fractions, mpq and ``"p/q"`` strings to ``QQ``."""
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, bool):
        return QQ(int(x))
    if isinstance(x, numbers.Rational):
        return QQ(int(x.numerator), int(x.denominator))
    raise TypeError(f"not a rational number: {x!r}")


def parse_rational(text: str):
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        q = int(q)
        if q == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return QQ(int(p), q)
    return QQ(int(text))


def format_rational(x) -> str:
    x = as_rational(x)
    p, q = int(x.numerator), int(x.denominator)
    return str(p) if q == 1 else f"{p}/{q}"
