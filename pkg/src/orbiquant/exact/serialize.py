"""JSON encodings of scalars, matrices and hbar-series.

* rationals: ``"p/q"`` (or ``"p"``), plain JSON integers are accepted on input
* cyclotomic elements: ``{"zeta_order": N, "coeffs": [rational, ...]}``
* series: ``{"floor": f, "cap": c, "terms": {"k": scalar}}`` (``cap`` may be null)
"""

from __future__ import annotations

import numbers

from .cyclotomic import Cyc
from .rational import as_rational, format_rational
from .series import HSeries

__all__ = [
    "SchemaError",
    "scalar_to_json",
    "scalar_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "series_to_json",
    "series_from_json",
]


class SchemaError(ValueError):
    """Input does not follow the documented JSON layout."""


def scalar_to_json(x):
    if isinstance(x, Cyc):
        if x.is_rational():
            return format_rational(x.rational_value())
        return {"zeta_order": x.order, "coeffs": [format_rational(c) for c in x.coeffs]}
    if isinstance(x, numbers.Rational):
        return format_rational(x)
    raise SchemaError(f"cannot encode scalar {x!r}")


def scalar_from_json(obj, zeta_order: int | None = None):
    """Decode a scalar; bare rationals are lifted into ``Q(zeta_order)`` if given."""
    if isinstance(obj, dict):
        try:
            order = int(obj["zeta_order"])
            coeffs = obj["coeffs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad cyclotomic scalar {obj!r}") from exc
        if zeta_order is not None and order != zeta_order and order > 2 and zeta_order > 2:
            raise SchemaError(f"scalar over Q(zeta_{order}) in a Q(zeta_{zeta_order}) context")
        try:
            value = Cyc(order, [as_rational(c) for c in coeffs])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad cyclotomic scalar {obj!r}") from exc
        return value.rational_value() if value.is_rational() else value
    if isinstance(obj, bool) or isinstance(obj, float):
        raise SchemaError(f"scalars must be integers or 'p/q' strings, got {obj!r}")
    try:
        return as_rational(obj)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {obj!r}") from exc


def matrix_to_json(M) -> list:
    entries = M.entries if hasattr(M, "entries") else M
    return [[scalar_to_json(x) for x in row] for row in entries]


def matrix_from_json(obj, zeta_order: int | None = None):
    from .linalg import ExactMatrix

    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise SchemaError("matrix must be a list of rows")
    rows = [[scalar_from_json(x, zeta_order) for x in r] for r in obj]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise SchemaError("ragged matrix")
    return ExactMatrix(rows)


def series_to_json(s: HSeries) -> dict:
    return {
        "floor": s.floor,
        "cap": s.cap,
        "terms": {str(k): scalar_to_json(v) for k, v in sorted(s.terms.items())},
    }


def series_from_json(obj) -> HSeries:
    try:
        terms = {int(k): scalar_from_json(v) for k, v in obj.get("terms", {}).items()}
        return HSeries(terms, floor=obj.get("floor"), cap=obj.get("cap"))
    except (AttributeError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad series {obj!r}") from exc
