"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as an integer numerator vector together with a positive
common denominator, reduced modulo the N-th cyclotomic polynomial so that it has
length phi(N).  Orders 1 and 2 give Q itself; elements of Q mix freely with any
field, but two genuinely different cyclotomic fields never do.
"""

from __future__ import annotations

import math
import numbers
from functools import lru_cache

from ._backend import conv_reduce
from .rational import QQ, as_rational

__all__ = [
    "Cyc",
    "IncompatibleFieldError",
    "cyclotomic_polynomial",
    "totient",
    "zeta",
]


class IncompatibleFieldError(ValueError):
    """Raised when combining elements of different cyclotomic fields."""


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[: len(den) - 1]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _field(n: int):
    phi = totient(n)
    cp = cyclotomic_polynomial(n)
    # reduction table: x**e mod Phi_n for every e a product or a raw power can reach
    size = max(2 * phi - 1, n)
    table: list[list[int] | None] = [None] * size
    cur = [0] * phi
    cur[0] = 1
    for e in range(size):
        if e >= phi:
            table[e] = list(cur)
        # multiply cur by x
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cp[i]
    return phi, table


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = math.gcd(den, *num)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


def _compatible(n1: int, n2: int) -> int:
    if n1 == n2:
        return n1
    if totient(n1) == 1:
        return n2
    if totient(n2) == 1:
        return n1
    raise IncompatibleFieldError(f"cannot combine elements of Q(zeta_{n1}) and Q(zeta_{n2})")


class Cyc:
    """Element of Q(zeta_N).

    >>> Cyc.zeta(4) * Cyc.zeta(4) == -1
    True
    """

    __slots__ = ("order", "num", "den", "_hash")

    def __init__(self, order: int, coeffs=()):
        phi, table = _field(order)
        rats = [as_rational(c) for c in coeffs]
        den = 1
        for r in rats:
            den = den * int(r.denominator) // math.gcd(den, int(r.denominator))
        ints = [int(r.numerator) * (den // int(r.denominator)) for r in rats]
        if len(ints) > phi:
            # fold with x**N = 1, then reduce the powers >= phi
            folded = [0] * order
            for e, c in enumerate(ints):
                folded[e % order] += c
            ints = conv_reduce(folded, [1], table, phi)
        ints = ints + [0] * (phi - len(ints))
        num, den = _normalize(ints, den)
        self.order = order
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, order: int, num, den: int) -> Cyc:
        obj = object.__new__(cls)
        obj.num, obj.den = _normalize(list(num), den)
        obj.order = order
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, order: int, value) -> Cyc:
        value = as_rational(value)
        phi, _ = _field(order)
        return cls._raw(order, [int(value.numerator)] + [0] * (phi - 1), int(value.denominator))

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> Cyc:
        coeffs = [0] * order
        coeffs[power % order] = 1
        return cls(order, coeffs)

    @property
    def phi(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> tuple:
        return tuple(QQ(c, self.den) for c in self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return QQ(self.num[0], self.den)

    def _coerce(self, other) -> Cyc | None:
        if isinstance(other, Cyc):
            order = _compatible(self.order, other.order)
            if order != other.order:
                return Cyc.rational(order, QQ(other.num[0], other.den))
            return other
        if isinstance(other, numbers.Rational):
            return Cyc.rational(self.order, other)
        return None

    def _lift_self(self, order: int) -> Cyc:
        if order == self.order:
            return self
        return Cyc.rational(order, QQ(self.num[0], self.den))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        s = self._lift_self(o.order)
        d = s.den * o.den // math.gcd(s.den, o.den)
        fs, fo = d // s.den, d // o.den
        return Cyc._raw(o.order, [a * fs + b * fo for a, b in zip(s.num, o.num)], d)

    __radd__ = __add__

    def __neg__(self):
        return Cyc._raw(self.order, [-a for a in self.num], self.den)

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
        s = self._lift_self(o.order)
        phi, table = _field(o.order)
        if phi == 1:
            return Cyc._raw(o.order, [s.num[0] * o.num[0]], s.den * o.den)
        return Cyc._raw(o.order, conv_reduce(list(s.num), list(o.num), table, phi), s.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> Cyc:
        if not any(self.num):
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyc._raw(self.order, [self.den] + [0] * (self.phi - 1), self.num[0])
        from .linalg import solve_rational

        phi, table = _field(self.order)
        # columns: self * x**j
        cols = []
        for j in range(phi):
            e = [0] * phi
            e[j] = 1
            cols.append(conv_reduce(list(self.num), e, table, phi))
        matrix = [[QQ(cols[j][i], self.den) for j in range(phi)] for i in range(phi)]
        rhs = [QQ(1)] + [QQ(0)] * (phi - 1)
        sol = solve_rational(matrix, rhs)
        return Cyc(self.order, sol)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyc.rational(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        if isinstance(other, Cyc):
            if self.order == other.order:
                return self.num == other.num and self.den == other.den
            return self.is_rational() and other.is_rational() and self.rational_value() == other.rational_value()
        if isinstance(other, numbers.Rational):
            return self.is_rational() and self.num[0] * int(other.denominator) == self.den * int(other.numerator)
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(QQ(self.num[0], self.den))
            else:
                self._hash = hash((self.order, self.num, self.den))
        return self._hash

    def conjugate(self) -> Cyc:
        """Complex conjugation zeta -> zeta**-1."""
        coeffs = [0] * self.order
        for e, c in enumerate(self.num):
            coeffs[(-e) % self.order] += c
        return Cyc(self.order, [QQ(c, self.den) for c in coeffs])

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(c * z**e for e, c in enumerate(self.num)) / self.den

    def __repr__(self):
        return f"Cyc({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_rational():
            return str(self.rational_value())
        parts = []
        for e, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if e == 0 else f"{c}*z{self.order}^{e}")
        return " + ".join(parts)


def zeta(order: int, power: int = 1) -> Cyc:
    return Cyc.zeta(order, power)
