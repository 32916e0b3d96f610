"""Elements of the formal Weyl algebra truncated by Fedosov weight."""

from __future__ import annotations

import math
import numbers

from ..exact.cyclotomic import Cyc
from ..exact.linalg import ExactMatrix, field_elem
from ..exact.poly import add_into, poly_linear_substitute
from ..exact.rational import QQ
from ..exact.serialize import SchemaError, scalar_from_json, scalar_to_json
from .space import SymplecticSpace

__all__ = ["WeylElement", "substitution_columns"]


def _is_scalar(x) -> bool:
    return isinstance(x, (numbers.Rational, Cyc))


def _min_cap(*caps):
    known = [c for c in caps if c is not None]
    return min(known) if known else None


def substitution_columns(g) -> list[dict]:
    """Columns of ``g`` as sparse dicts: ``y^j -> sum_i g[i, j] y^i``."""
    g = g if isinstance(g, ExactMatrix) else ExactMatrix(g)
    return [{i: g[i, j] for i in range(g.rows) if g[i, j] != 0} for j in range(g.cols)]


class WeylElement:
    """``sum hbar^k a_{k,alpha} y^alpha`` with keys ``(k, alpha)``.

    ``cap`` bounds the Fedosov weight ``2k + |alpha|`` of every stored term;
    terms above it are unknown.  ``cap=None`` means the element is exact.
    """

    __slots__ = ("space", "terms", "cap")

    def __init__(self, space: SymplecticSpace, terms=None, cap: int | None = None):
        self.space = space
        self.cap = cap
        clean = {}
        for (k, alpha), v in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != space.dim:
                raise ValueError("y-multidegree has the wrong length")
            if cap is not None and 2 * k + sum(alpha) > cap:
                continue
            v = field_elem(v)
            if v != 0:
                add_into(clean, (int(k), alpha), v)
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, space, cap=None) -> WeylElement:
        return cls(space, {}, cap)

    @classmethod
    def const(cls, space, c=1, cap=None) -> WeylElement:
        return cls(space, {(0, space.zero_mono()): c}, cap)

    @classmethod
    def y(cls, space, i: int, cap=None) -> WeylElement:
        return cls(space, {(0, space.unit_mono(i)): 1}, cap)

    @classmethod
    def hbar(cls, space, power: int = 1, cap=None) -> WeylElement:
        return cls(space, {(power, space.zero_mono()): 1}, cap)

    @classmethod
    def from_poly(cls, space, poly: dict, k: int = 0, cap=None) -> WeylElement:
        return cls(space, {(k, a): c for a, c in poly.items()}, cap)

    def _new(self, terms, cap) -> WeylElement:
        obj = object.__new__(WeylElement)
        obj.space = self.space
        obj.cap = cap
        if cap is not None:
            terms = {key: v for key, v in terms.items() if 2 * key[0] + sum(key[1]) <= cap}
        obj.terms = terms
        return obj

    def _check(self, other: WeylElement):
        if other.space != self.space:
            raise ValueError("Weyl elements live over different symplectic spaces")

    # linear structure
    def __add__(self, other):
        if _is_scalar(other):
            other = WeylElement.const(self.space, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, v in other.terms.items():
            add_into(out, key, v)
        return self._new(out, _min_cap(self.cap, other.cap))

    __radd__ = __add__

    def __neg__(self):
        return self._new({key: -v for key, v in self.terms.items()}, self.cap)

    def __sub__(self, other):
        if _is_scalar(other):
            other = WeylElement.const(self.space, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> WeylElement:
        c = field_elem(c)
        if c == 0:
            return self._new({}, self.cap)
        return self._new({key: v * c for key, v in self.terms.items()}, self.cap)

    def shift_hbar(self, power: int) -> WeylElement:
        cap = None if self.cap is None else self.cap + 2 * power
        return self._new({(k + power, a): v for (k, a), v in self.terms.items()}, cap)

    # product
    def moyal(self, other: WeylElement) -> WeylElement:
        """Moyal-Weyl product ``self o other``."""
        self._check(other)
        va, vb = self.filtration_weight(), other.filtration_weight()
        caps = [self.cap, other.cap]
        if self.cap is not None and vb != math.inf:
            caps.append(self.cap + vb)
        if other.cap is not None and va != math.inf:
            caps.append(other.cap + va)
        cap = _min_cap(*caps)
        out: dict = {}
        mono = self.space.moyal_monomials
        for (k1, a1), v1 in self.terms.items():
            w1 = 2 * k1 + sum(a1)
            for (k2, a2), v2 in other.terms.items():
                if cap is not None and w1 + 2 * k2 + sum(a2) > cap:
                    continue
                c = v1 * v2
                for (k, a), m in mono(a1, a2).items():
                    add_into(out, (k1 + k2 + k, a), c * m)
        return self._new(out, cap)

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return self.moyal(other)
        if _is_scalar(other) or isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other) or isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def commutator(self, other: WeylElement) -> WeylElement:
        return self.moyal(other) - other.moyal(self)

    def commutative_product(self, other: WeylElement) -> WeylElement:
        """Pointwise product of the underlying power series (hbar kept)."""
        self._check(other)
        out: dict = {}
        for (k1, a1), v1 in self.terms.items():
            for (k2, a2), v2 in other.terms.items():
                add_into(out, (k1 + k2, tuple(x + y for x, y in zip(a1, a2))), v1 * v2)
        va, vb = self.filtration_weight(), other.filtration_weight()
        caps = [self.cap, other.cap]
        if self.cap is not None and vb != math.inf:
            caps.append(self.cap + vb)
        if other.cap is not None and va != math.inf:
            caps.append(other.cap + va)
        return self._new(out, _min_cap(*caps))

    # structure
    def filtration_weight(self):
        """Minimum of ``2k + |alpha|`` over stored terms; ``math.inf`` for zero."""
        if not self.terms:
            return math.inf
        return min(2 * k + sum(a) for k, a in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, cap: int) -> WeylElement:
        return self._new(dict(self.terms), _min_cap(self.cap, cap))

    def constant_term(self):
        return self.terms.get((0, self.space.zero_mono()), QQ(0))

    def without_constant(self) -> WeylElement:
        """Drop every term with ``|alpha| = 0`` (all hbar powers)."""
        return self._new({key: v for key, v in self.terms.items() if any(key[1])}, self.cap)

    def act(self, g) -> WeylElement:
        """Left action ``a^g``: substitute ``y^j -> sum_i g[i, j] y^i``."""
        g = g if isinstance(g, ExactMatrix) else ExactMatrix(g)
        if g.rows != self.space.dim or g.cols != self.space.dim:
            raise ValueError("group element has the wrong dimension")
        return self.substitute(substitution_columns(g))

    def substitute(self, columns: list[dict]) -> WeylElement:
        by_k: dict = {}
        for (k, a), v in self.terms.items():
            by_k.setdefault(k, {})[a] = v
        out: dict = {}
        for k, poly in by_k.items():
            for a, v in poly_linear_substitute(poly, columns, self.space.dim).items():
                add_into(out, (k, a), v)
        return self._new(out, self.cap)

    def y_derivative(self, i: int) -> WeylElement:
        out: dict = {}
        for (k, a), v in self.terms.items():
            if a[i]:
                b = a[:i] + (a[i] - 1,) + a[i + 1 :]
                add_into(out, (k, b), v * a[i])
        cap = None if self.cap is None else self.cap - 1
        return self._new(out, cap)

    def agrees_with(self, other: WeylElement, upto: int | None = None) -> bool:
        """Equality of all terms of weight ``<= min(caps, upto)``."""
        self._check(other)
        bound = _min_cap(self.cap, other.cap, upto)
        keys = set(self.terms) | set(other.terms)
        for key in keys:
            if bound is not None and 2 * key[0] + sum(key[1]) > bound:
                continue
            if self.terms.get(key, 0) != other.terms.get(key, 0):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            if _is_scalar(other):
                return self.terms == WeylElement.const(self.space, other).terms
            return NotImplemented
        return self.space == other.space and self.terms == other.terms and self.cap == other.cap

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.cap))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (k, a), v in sorted(self.terms.items()):
            ys = "*".join(f"y{i + 1}^{e}" if e > 1 else f"y{i + 1}" for i, e in enumerate(a) if e)
            h = "" if k == 0 else f"h^{k}"
            parts.append("*".join(p for p in (f"({v})", h, ys) if p))
        tail = "" if self.cap is None else f"  [weight <= {self.cap}]"
        return " + ".join(parts) + tail

    # JSON: terms carry a y multi-index list of 0-based indices
    def to_json(self) -> dict:
        terms = []
        for (k, a), v in sorted(self.terms.items()):
            ydeg = [i for i, e in enumerate(a) for _ in range(e)]
            terms.append({"hbar": k, "ydeg": ydeg, "coeff": scalar_to_json(v)})
        return {"schema": "1", "weight_cap": self.cap, "terms": terms}

    @classmethod
    def from_json(cls, space: SymplecticSpace, obj) -> WeylElement:
        try:
            items = obj["terms"] if isinstance(obj, dict) else obj
            cap = obj.get("weight_cap") if isinstance(obj, dict) else None
            terms: dict = {}
            for t in items:
                a = [0] * space.dim
                for i in t.get("ydeg", []):
                    a[int(i)] += 1
                add_into(terms, (int(t.get("hbar", 0)), tuple(a)), scalar_from_json(t["coeff"]))
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            raise SchemaError(f"bad Weyl element: {exc}") from exc
        return cls(space, terms, cap)
