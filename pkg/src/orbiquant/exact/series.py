"""Truncated Laurent series in hbar with exact coefficients."""

from __future__ import annotations

import numbers

from .rational import QQ, as_rational

__all__ = ["HSeries"]


def _scalar(c):
    from .cyclotomic import Cyc

    if isinstance(c, Cyc):
        return c
    return as_rational(c)


class HSeries:
    """Laurent series ``sum_{floor <= k < cap} c_k hbar**k``.

    ``cap`` is exclusive: nothing is known about coefficients at or above it.
    ``cap=None`` marks an exact (polynomial) series.
    """

    __slots__ = ("floor", "cap", "terms")

    def __init__(self, terms=None, floor: int | None = None, cap: int | None = None):
        raw = {int(k): _scalar(v) for k, v in (terms or {}).items()}
        kept = {k: v for k, v in raw.items() if v != 0 and (cap is None or k < cap)}
        if floor is None:
            floor = min(kept) if kept else (0 if cap is None else min(0, cap))
        if any(k < floor for k in kept):
            raise ValueError("term below the declared floor")
        if cap is not None and cap < floor:
            floor = cap
        self.floor = floor
        self.cap = cap
        self.terms = kept

    @classmethod
    def monomial(cls, k: int, coeff=1, cap: int | None = None) -> HSeries:
        return cls({k: coeff}, floor=k, cap=cap)

    @classmethod
    def constant(cls, c, cap: int | None = None) -> HSeries:
        return cls({0: c}, floor=0, cap=cap)

    def __getitem__(self, k: int):
        if self.cap is not None and k >= self.cap:
            raise IndexError(f"coefficient of hbar^{k} is beyond the cap {self.cap}")
        return self.terms.get(k, QQ(0))

    def valuation(self) -> int | None:
        return min(self.terms) if self.terms else None

    def _coerce(self, other) -> HSeries | None:
        if isinstance(other, HSeries):
            return other
        from .cyclotomic import Cyc

        if isinstance(other, (numbers.Rational, Cyc)):
            return HSeries.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        cap = _min_cap(self.cap, o.cap)
        terms = dict(self.terms)
        for k, v in o.terms.items():
            terms[k] = terms.get(k, 0) + v
        return HSeries(terms, floor=min(self.floor, o.floor), cap=cap)

    __radd__ = __add__

    def __neg__(self):
        return HSeries({k: -v for k, v in self.terms.items()}, floor=self.floor, cap=self.cap)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        caps = []
        if self.cap is not None:
            caps.append(self.cap + o.floor)
        if o.cap is not None:
            caps.append(o.cap + self.floor)
        cap = min(caps) if caps else None
        terms: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = k1 + k2
                if cap is None or k < cap:
                    terms[k] = terms.get(k, 0) + v1 * v2
        return HSeries(terms, floor=self.floor + o.floor, cap=cap)

    __rmul__ = __mul__

    def invert_unit(self) -> HSeries:
        """Inverse of a series whose lowest stored coefficient is nonzero.

        The series is rewritten as ``hbar**v * u`` with ``u(0) != 0``; the
        inverse has floor ``-v`` and cap ``cap - 2v``.
        """
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("invert_unit of the zero series")
        if self.cap is None:
            if len(self.terms) == 1:
                return HSeries({-v: 1 / self.terms[v]}, floor=-v)
            raise ValueError("exact series with several terms has no exact inverse; set a cap")
        n = self.cap - v  # precision of u
        u = [self.terms.get(v + i, 0) for i in range(n)]
        inv0 = 1 / u[0]
        w = [inv0] + [0] * (n - 1)
        for i in range(1, n):
            s = 0
            for j in range(1, i + 1):
                if u[j]:
                    s = s + u[j] * w[i - j]
            w[i] = -s * inv0
        return HSeries({i - v: c for i, c in enumerate(w)}, floor=-v, cap=n - v)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.invert_unit()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.cap == o.cap and self.terms == o.terms

    def __hash__(self):
        return hash((self.cap, frozenset(self.terms.items())))

    def agrees_with(self, other, upto: int | None = None) -> bool:
        """Coefficient-wise equality below ``upto`` and both caps."""
        o = self._coerce(other)
        bound = _min_cap(_min_cap(self.cap, o.cap), upto)
        keys = set(self.terms) | set(o.terms)
        return all(self.terms.get(k, 0) == o.terms.get(k, 0) for k in keys if bound is None or k < bound)

    def truncate(self, cap: int) -> HSeries:
        return HSeries(self.terms, floor=self.floor, cap=_min_cap(self.cap, cap))

    def __repr__(self):
        body = " + ".join(f"({v})*h^{k}" for k, v in sorted(self.terms.items())) or "0"
        tail = "" if self.cap is None else f" + O(h^{self.cap})"
        return body + tail


def _min_cap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)
