"""Sections of the Weyl bundle with values in exterior forms over affine space.

A section is ``sum hbar^k a(x) y^alpha dx^S`` stored as
``{(xexp, k, yexp, S): coeff}`` with ``S`` a strictly increasing index
tuple.  ``cap`` bounds the Fedosov weight ``2k + |alpha|`` (``dx`` has
weight zero); terms of weight ``<= cap`` are exact, ``cap=None`` means the
whole section is exact.  The fiberwise product is the Moyal product in ``y``
combined with the wedge product of forms and the ordinary product in ``x``.
"""

from __future__ import annotations

import math
import random

from ..exact.cyclotomic import Cyc
from ..exact.linalg import field_elem
from ..exact.poly import add_into, poly_linear_substitute
from ..exact.rational import QQ
from ..weyl.element import WeylElement, substitution_columns
from ..weyl.space import SymplecticSpace

__all__ = ["BundleSection", "wedge_merge", "min_cap"]


def min_cap(*caps):
    known = [c for c in caps if c is not None]
    return min(known) if known else None


def wedge_merge(S: tuple, T: tuple):
    """``dx^S ^ dx^T = sign dx^U``; ``None`` if an index repeats."""
    if not T:
        return 1, S
    if not S:
        return 1, T
    if set(S) & set(T):
        return None
    inversions = 0
    for t in T:
        inversions += sum(1 for s in S if s > t)
    return (-1 if inversions % 2 else 1), tuple(sorted(S + T))


def _weight(key) -> int:
    return 2 * key[1] + sum(key[2])


class BundleSection:
    __slots__ = ("space", "terms", "cap")

    def __init__(self, space: SymplecticSpace, terms=None, cap: int | None = None):
        self.space = space
        self.cap = cap
        dim = space.dim
        clean: dict = {}
        for key, v in (terms or {}).items():
            x, k, y, S = key
            if len(x) != dim or len(y) != dim:
                raise ValueError("multidegree has the wrong length")
            if any(S[i] >= S[i + 1] for i in range(len(S) - 1)):
                raise ValueError("dx indices must be strictly increasing")
            if cap is not None and 2 * k + sum(y) > cap:
                continue
            add_into(clean, (tuple(x), int(k), tuple(y), tuple(S)), field_elem(v))
        self.terms = clean

    @classmethod
    def _raw(cls, space, terms: dict, cap) -> BundleSection:
        """Trusted constructor: ``terms`` are canonical and nonzero."""
        obj = cls.__new__(cls)
        obj.space = space
        obj.cap = cap
        if cap is not None:
            terms = {key: v for key, v in terms.items() if 2 * key[1] + sum(key[2]) <= cap}
        obj.terms = terms
        return obj

    # constructors
    @classmethod
    def zero(cls, space, cap=None) -> BundleSection:
        return cls._raw(space, {}, cap)

    @classmethod
    def const(cls, space, c=1, cap=None) -> BundleSection:
        z = space.zero_mono()
        return cls(space, {(z, 0, z, ()): c}, cap)

    @classmethod
    def y(cls, space, i: int, cap=None) -> BundleSection:
        z = space.zero_mono()
        return cls(space, {(z, 0, space.unit_mono(i), ()): 1}, cap)

    @classmethod
    def x(cls, space, i: int, cap=None) -> BundleSection:
        z = space.zero_mono()
        return cls(space, {(space.unit_mono(i), 0, z, ()): 1}, cap)

    @classmethod
    def dx(cls, space, i: int, cap=None) -> BundleSection:
        z = space.zero_mono()
        return cls(space, {(z, 0, z, (i,)): 1}, cap)

    @classmethod
    def function(cls, space, poly: dict, k: int = 0, cap=None) -> BundleSection:
        """The section ``hbar^k f(x)`` for a polynomial ``{xexp: coeff}``."""
        z = space.zero_mono()
        return cls(space, {(tuple(e), k, z, ()): c for e, c in poly.items()}, cap)

    @classmethod
    def from_weyl(cls, w: WeylElement, cap=None) -> BundleSection:
        z = w.space.zero_mono()
        return cls(w.space, {(z, k, a, ()): v for (k, a), v in w.terms.items()}, min_cap(cap, w.cap))

    @classmethod
    def random(cls, space, rng: random.Random, terms: int = 4, max_x: int = 2, max_y: int = 3,
               max_hbar: int = 1, max_forms: int | None = None, cap=None) -> BundleSection:
        dim = space.dim
        top = dim if max_forms is None else max_forms
        out: dict = {}
        for _ in range(terms):
            x = [0] * dim
            for _ in range(rng.randint(0, max_x)):
                x[rng.randrange(dim)] += 1
            y = [0] * dim
            for _ in range(rng.randint(0, max_y)):
                y[rng.randrange(dim)] += 1
            S = tuple(sorted(rng.sample(range(dim), rng.randint(0, top))))
            c = QQ(rng.randint(-5, 5), rng.randint(1, 3))
            add_into(out, (tuple(x), rng.randint(0, max_hbar), tuple(y), S), c)
        return cls(space, out, cap)

    def _new(self, terms, cap) -> BundleSection:
        return BundleSection._raw(self.space, terms, cap)

    # linear structure
    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, BundleSection):
            return NotImplemented
        out = dict(self.terms)
        for key, v in other.terms.items():
            add_into(out, key, v)
        return self._new(out, min_cap(self.cap, other.cap))

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()}, self.cap)

    def __sub__(self, other):
        if not isinstance(other, BundleSection):
            return NotImplemented
        out = dict(self.terms)
        for key, v in other.terms.items():
            add_into(out, key, -v)
        return self._new(out, min_cap(self.cap, other.cap))

    def scale(self, c) -> BundleSection:
        c = field_elem(c)
        if c == 0:
            return self._new({}, self.cap)
        return self._new({k: v * c for k, v in self.terms.items()}, self.cap)

    def shift_hbar(self, power: int) -> BundleSection:
        """Multiply by ``hbar^power`` (negative powers are allowed)."""
        cap = None if self.cap is None else self.cap + 2 * power
        return self._new({(x, k + power, y, S): v for (x, k, y, S), v in self.terms.items()}, cap)

    def truncate(self, cap: int | None) -> BundleSection:
        return self._new(dict(self.terms), min_cap(self.cap, cap))

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def filtration_weight(self):
        if not self.terms:
            return math.inf
        return min(_weight(k) for k in self.terms)

    def form_degrees(self) -> set:
        return {len(k[3]) for k in self.terms}

    def form_part(self, p: int) -> BundleSection:
        return self._new({k: v for k, v in self.terms.items() if len(k[3]) == p}, self.cap)

    def weight_part(self, w: int) -> BundleSection:
        return self._new({k: v for k, v in self.terms.items() if _weight(k) == w}, self.cap)

    def sigma(self) -> BundleSection:
        """``a|_{y=0, dx=0}``."""
        return self._new({k: v for k, v in self.terms.items() if not any(k[2]) and not k[3]}, self.cap)

    def function_part(self) -> dict:
        """``sigma(a)`` as ``{(xexp, k): coeff}``."""
        return {(x, k): v for (x, k, y, S), v in self.terms.items() if not any(y) and not S}

    def agrees_with(self, other: BundleSection, upto: int | None = None) -> bool:
        """Equality on every weight both sections know (and ``<= upto``)."""
        bound = min_cap(self.cap, other.cap, upto)
        keys = set(self.terms) | set(other.terms)
        for key in keys:
            if bound is not None and _weight(key) > bound:
                continue
            if self.terms.get(key, 0) != other.terms.get(key, 0):
                return False
        return True

    def is_zero_upto(self, upto: int | None = None) -> bool:
        bound = min_cap(self.cap, upto)
        return all(bound is not None and _weight(k) > bound for k in self.terms)

    def __eq__(self, other):
        return isinstance(other, BundleSection) and self.terms == other.terms and self.cap == other.cap

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.cap))

    def __repr__(self):
        return f"BundleSection({len(self.terms)} terms, cap={self.cap})"

    # products
    def _valuation(self):
        if not self.terms:
            return math.inf if self.cap is None else self.cap + 1
        return self.filtration_weight()

    def _product_cap(self, other: BundleSection, shift: int = 0):
        va, vb = self._valuation(), other._valuation()
        caps = []
        # an empty factor known only below its cap still has valuation > cap
        if self.cap is not None and vb != math.inf:
            caps.append(self.cap + vb)
        if other.cap is not None and va != math.inf:
            caps.append(other.cap + va)
        cap = min_cap(*caps)
        return None if cap is None else cap - shift

    def moyal(self, other: BundleSection, cap: int | None = None) -> BundleSection:
        """Fiberwise product ``self o other``; Moyal products preserve weight additively."""
        cap = min_cap(self._product_cap(other), cap)
        mono = self.space.moyal_monomials
        out: dict = {}
        right = [(key, _weight(key), v) for key, v in other.terms.items()]
        for (x1, k1, y1, S1), v1 in self.terms.items():
            w1 = 2 * k1 + sum(y1)
            for (x2, k2, y2, S2), w2, v2 in right:
                if cap is not None and w1 + w2 > cap:
                    continue
                wedge = wedge_merge(S1, S2)
                if wedge is None:
                    continue
                sign, S = wedge
                x = tuple(a + b for a, b in zip(x1, x2))
                c = v1 * v2 if sign == 1 else -(v1 * v2)
                for (k, y), m in mono(y1, y2).items():
                    add_into(out, (x, k1 + k2 + k, y, S), c * m)
        return self._new(out, cap)

    def __mul__(self, other):
        if isinstance(other, BundleSection):
            return self.moyal(other)
        if isinstance(other, (int, Cyc)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Cyc)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def commutator(self, other: BundleSection, cap: int | None = None) -> BundleSection:
        """Graded commutator ``a o b - (-1)^{|a||b|} b o a`` on form-homogeneous parts."""
        out = BundleSection.zero(self.space, min_cap(self._product_cap(other), cap))
        for p in self.form_degrees():
            a = self.form_part(p)
            for q in other.form_degrees():
                b = other.form_part(q)
                ab = a.moyal(b, cap)
                ba = b.moyal(a, cap)
                out = out + (ab + ba if (p * q) % 2 else ab - ba)
        return out

    def ad_over_hbar(self, other: BundleSection, cap: int | None = None) -> BundleSection:
        """``(1/hbar)[self, other]``; the commutator always starts at ``hbar^1``."""
        inner = None if cap is None else cap + 2
        return self.commutator(other, inner).shift_hbar(-1)

    # group action on x, y and dx simultaneously
    def act(self, g) -> BundleSection:
        """Linear substitution ``v^j -> sum_i g[i, j] v^i`` for ``v = x, y, dx``."""
        cols = substitution_columns(g)
        dim = self.space.dim
        xcache: dict = {}
        dxcache: dict = {}

        def sub(e):
            hit = xcache.get(e)
            if hit is None:
                hit = poly_linear_substitute({e: QQ(1)}, cols, dim)
                xcache[e] = hit
            return hit

        def sub_dx(S):
            hit = dxcache.get(S)
            if hit is None:
                acc = {(): QQ(1)}
                for j in S:
                    nxt: dict = {}
                    for T, c in acc.items():
                        for i, gij in cols[j].items():
                            w = wedge_merge(T, (i,))
                            if w is not None:
                                add_into(nxt, w[1], c * gij * w[0])
                    acc = nxt
                hit = acc
                dxcache[S] = hit
            return hit

        out: dict = {}
        for (x, k, y, S), v in self.terms.items():
            for x2, cx in sub(x).items():
                for y2, cy in sub(y).items():
                    for S2, cs in sub_dx(S).items():
                        add_into(out, (x2, k, y2, S2), v * cx * cy * cs)
        return self._new(out, self.cap)

    # JSON (0-based exponent lists)
    def to_json(self) -> dict:
        from ..exact.serialize import scalar_to_json

        terms = []
        for (x, k, y, S), v in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][3], kv[0][2], kv[0][0])):
            terms.append({"xexp": list(x), "hbar": k, "yexp": list(y), "dx": list(S), "coeff": scalar_to_json(v)})
        return {"weight_cap": self.cap, "terms": terms}
