"""Normalized twisted Hochschild chains of the Weyl algebra.

A chain of degree q is stored as ``{(k, (alpha_0, ..., alpha_q)): coeff}``
meaning ``hbar^k y^alpha_0 (x) y^alpha_1 (x) ... (x) y^alpha_q``; hbar is central
so it is collected in front.  Normalization drops every term whose slot
``s >= 1`` is a constant.
"""

from __future__ import annotations

from ..exact.linalg import ExactMatrix, field_elem
from ..exact.poly import add_into, poly_linear_substitute
from ..exact.rational import QQ
from .element import WeylElement, substitution_columns
from .space import SymplecticSpace
from .splitting import fixed_splitting

__all__ = ["TwistedChain", "twisted_cycle_psi", "antisym_mu", "wedge_sign"]


class TwistedChain:
    def __init__(self, space: SymplecticSpace, g, degree: int, terms=None, normalized: bool = True):
        self.space = space
        self.g = g if isinstance(g, ExactMatrix) else ExactMatrix(g)
        self.degree = degree
        self.normalized = normalized
        out: dict = {}
        for (k, alphas), v in (terms or {}).items():
            alphas = tuple(tuple(a) for a in alphas)
            if len(alphas) != degree + 1:
                raise ValueError("tensor length does not match the degree")
            if normalized and any(not any(a) for a in alphas[1:]):
                continue
            add_into(out, (k, alphas), field_elem(v))
        self.terms = out

    @classmethod
    def tensor(cls, space, g, factors: list[WeylElement], normalized: bool = True) -> TwistedChain:
        """Multilinear expansion of ``a_0 (x) a_1 (x) ... (x) a_q``."""
        acc = {(0, ()): QQ(1)}
        for a in factors:
            nxt: dict = {}
            for (k, alphas), c in acc.items():
                for (k2, al), v in a.terms.items():
                    add_into(nxt, (k + k2, alphas + (al,)), c * v)
            acc = nxt
        return cls(space, g, len(factors) - 1, acc, normalized)

    def _new(self, degree, terms) -> TwistedChain:
        return TwistedChain(self.space, self.g, degree, terms, self.normalized)

    def __add__(self, other: TwistedChain) -> TwistedChain:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        out = dict(self.terms)
        for key, v in other.terms.items():
            add_into(out, key, v)
        return self._new(self.degree, out)

    def __neg__(self):
        return self._new(self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> TwistedChain:
        return self._new(self.degree, {k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TwistedChain) and self.degree == other.degree and self.terms == other.terms

    def __repr__(self):
        return f"TwistedChain(degree={self.degree}, terms={len(self.terms)})"

    def boundary(self, product: str = "moyal", twist=None) -> TwistedChain:
        """Twisted Hochschild boundary.

        ``b(a_0|...|a_q) = a_0 a_1^t | a_2 | ... + sum_i (-1)^i ...|a_i a_{i+1}|...
        + (-1)^q a_q a_0 | a_1 | ... | a_{q-1}`` where ``t`` is the twist
        (default: the left action of ``g``) and the product is Moyal or
        commutative.
        """
        q = self.degree
        if q == 0:
            return self._new(-1, {})
        cols = substitution_columns(self.g if twist is None else twist)
        dim = self.space.dim
        tw_cache: dict = {}

        def twisted(alpha):
            hit = tw_cache.get(alpha)
            if hit is None:
                hit = poly_linear_substitute({alpha: QQ(1)}, cols, dim)
                tw_cache[alpha] = hit
            return hit

        if product == "moyal":
            mult = self.space.moyal_monomials
        elif product == "commutative":
            def mult(a, b):
                return {(0, tuple(x + y for x, y in zip(a, b))): QQ(1)}
        else:
            raise ValueError(f"unknown product {product!r}")

        out: dict = {}
        norm = self.normalized
        for (k, al), v in self.terms.items():
            # first face, twisted
            rest = al[2:]
            for a1, c1 in twisted(al[1]).items():
                for (k2, m), c2 in mult(al[0], a1).items():
                    add_into(out, (k + k2, (m,) + rest), v * c1 * c2)
            for i in range(1, q):
                sign = -1 if i % 2 else 1
                for (k2, m), c2 in mult(al[i], al[i + 1]).items():
                    if norm and not any(m):
                        continue
                    add_into(out, (k + k2, al[:i] + (m,) + al[i + 2 :]), v * c2 * sign)
            sign = -1 if q % 2 else 1
            for (k2, m), c2 in mult(al[q], al[0]).items():
                add_into(out, (k + k2, (m,) + al[1:q]), v * c2 * sign)
        return TwistedChain(self.space, self.g, q - 1, out, norm)


def twisted_cycle_psi(g, space: SymplecticSpace, basis=None) -> TwistedChain:
    """``sum_sigma eps_sigma 1 (x) v_sigma(1) (x) ... (x) v_sigma(2m)`` over the fixed space.

    ``basis`` optionally replaces the fixed-space basis from elimination (any
    basis of ``ker(g - 1)`` gives the same chain).
    """
    split = fixed_splitting(g, space.B)
    if basis is not None:
        split = _rebased(split, basis, space)
    eps = split.liouville()
    lin = [
        WeylElement(space, {(0, space.unit_mono(i)): c for i, c in enumerate(v) if c != 0})
        for v in split.fixed
    ]
    one = WeylElement.const(space)
    total = TwistedChain(space, g, 2 * split.m, {})
    for perm, e in eps.items():
        if e == 0:
            continue
        total = total + TwistedChain.tensor(space, g, [one] + [lin[p] for p in perm]).scale(e)
    return total


def _rebased(split, basis, space):
    from ..exact.linalg import inverse
    from .splitting import Splitting, _bilinear

    basis = [[field_elem(x) for x in v] for v in basis]
    M = ExactMatrix([[_bilinear(space.B, v, w) for w in basis] for v in basis], cols=len(basis))
    dual = inverse(M).transpose() if basis else M
    return Splitting(fixed=basis, image=split.image, restricted_form=M, dual_form=dual, projection=split.projection)


def wedge_sign(indices) -> tuple[int, tuple] | None:
    """Sort a wedge of basis 1-forms; ``None`` if an index repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


def antisym_mu(chain: TwistedChain, g=None) -> dict:
    """``pr(a_0) d(pr a_1) ^ ... ^ d(pr a_q)`` written in y-coordinates.

    Returns ``{(k, exponent, wedge_indices): coeff}`` with ``wedge_indices`` a
    sorted tuple of the ``dy^i`` factors.
    """
    g = chain.g if g is None else (g if isinstance(g, ExactMatrix) else ExactMatrix(g))
    space = chain.space
    dim = space.dim
    split = fixed_splitting(g, space.B)
    cols = substitution_columns(split.projection)
    cache: dict = {}

    def pr(alpha):
        hit = cache.get(alpha)
        if hit is None:
            hit = poly_linear_substitute({alpha: QQ(1)}, cols, dim)
            cache[alpha] = hit
        return hit

    def d(poly):
        # {(exponent, i): coeff} for sum c * d_i(z^a) dy^i
        out: dict = {}
        for a, c in poly.items():
            for i in range(dim):
                if a[i]:
                    b = a[:i] + (a[i] - 1,) + a[i + 1 :]
                    add_into(out, (b, i), c * a[i])
        return out

    result: dict = {}
    for (k, al), v in chain.terms.items():
        acc = {(a, ()): c * v for a, c in pr(al[0]).items()}
        for slot in al[1:]:
            nxt: dict = {}
            diff = d(pr(slot))
            for (a, w), c in acc.items():
                for (b, i), c2 in diff.items():
                    if i in w:
                        continue
                    nxt_key = (tuple(x + y for x, y in zip(a, b)), w + (i,))
                    add_into(nxt, nxt_key, c * c2)
            acc = nxt
            if not acc:
                break
        for (a, w), c in acc.items():
            s = wedge_sign(w)
            if s is not None:
                add_into(result, (k, a, s[1]), c * s[0])
    return result

