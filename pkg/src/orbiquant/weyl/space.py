"""Symplectic vector spaces and the Moyal-Weyl product on monomials."""

from __future__ import annotations

from ..exact.linalg import ExactMatrix, inverse
from ..exact.rational import QQ

__all__ = ["SymplecticSpace", "darboux_form"]


def darboux_form(n: int) -> ExactMatrix:
    """Block form with ``B(y^{2a-1}, y^{2a}) = 1`` (1-based Darboux pairs)."""
    dim = 2 * n
    rows = [[QQ(0)] * dim for _ in range(dim)]
    for a in range(n):
        rows[2 * a][2 * a + 1] = QQ(1)
        rows[2 * a + 1][2 * a] = QQ(-1)
    return ExactMatrix(rows)


class SymplecticSpace:
    """A vector space with basis ``y^1..y^{2n}`` and bivector ``B^{ij} = B(y^i, y^j)``.

    ``omega`` is the inverse matrix, ``B^{ik} omega_{kj} = delta^i_j``.
    """

    def __init__(self, form=None, *, n: int | None = None, zeta_order: int = 1):
        if form is None:
            if n is None:
                raise ValueError("give a form matrix or n")
            form = darboux_form(n)
        B = form if isinstance(form, ExactMatrix) else ExactMatrix(form)
        if B.rows != B.cols or B.rows % 2:
            raise ValueError("symplectic form must be square of even size")
        if B.transpose() != -B:
            raise ValueError("symplectic form must be antisymmetric")
        try:
            self.omega = inverse(B)
        except ZeroDivisionError:
            raise ValueError("symplectic form must be invertible") from None
        self.B = B
        self.dim = B.rows
        self.n = self.dim // 2
        self.zeta_order = zeta_order
        # half-coefficients of the exponent, one per nonzero entry
        self.pairs = tuple(
            (i, j, B[i, j] / 2) for i in range(self.dim) for j in range(self.dim) if B[i, j] != 0
        )
        self._mono_cache: dict = {}

    @classmethod
    def darboux(cls, n: int) -> SymplecticSpace:
        return cls(darboux_form(n))

    def __eq__(self, other):
        return isinstance(other, SymplecticSpace) and self.B == other.B

    def __hash__(self):
        return hash(self.B)

    def __repr__(self):
        return f"SymplecticSpace(dim={self.dim})"

    def zero_mono(self) -> tuple:
        return (0,) * self.dim

    def unit_mono(self, i: int) -> tuple:
        return tuple(int(t == i) for t in range(self.dim))

    def moyal_monomials(self, alpha: tuple, beta: tuple) -> dict:
        """``y^alpha o y^beta`` as ``{(hbar_power, exponent): coeff}`` (cached)."""
        key = (alpha, beta)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        pairs = self.pairs
        npairs = len(pairs)
        a_rem = list(alpha)
        b_rem = list(beta)

        def rec(p: int, k: int, coeff):
            if p == npairs:
                mono = tuple(x + y for x, y in zip(a_rem, b_rem))
                kk = (k, mono)
                nv = out.get(kk, 0) + coeff
                if nv != 0:
                    out[kk] = nv
                else:
                    out.pop(kk, None)
                return
            i, j, c = pairs[p]
            top = min(a_rem[i], b_rem[j])
            term = coeff
            ai, bj = a_rem[i], b_rem[j]
            for m in range(top + 1):
                if m:
                    # d_i^m y^a_i = a!/(a-m)! ..., exponent series c^m / m!
                    term = term * c * (ai - m + 1) * (bj - m + 1) / m
                a_rem[i] = ai - m
                b_rem[j] = bj - m
                rec(p + 1, k + m, term)
            a_rem[i] = ai
            b_rem[j] = bj

        rec(0, 0, QQ(1))
        self._mono_cache[key] = out
        return out
