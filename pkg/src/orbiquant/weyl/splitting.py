"""The splitting ``V = ker(g - 1) + im(g - 1)`` and its projection."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from ..exact.linalg import ExactMatrix, inverse, kernel_basis, rref
from ..exact.rational import QQ

__all__ = [
    "NotSymplecticError",
    "Splitting",
    "fixed_splitting",
    "is_form_preserving",
    "pfaffian",
    "permutation_sign",
]


class NotSymplecticError(ValueError):
    """The matrix does not preserve the symplectic form."""


def is_form_preserving(g: ExactMatrix, B: ExactMatrix) -> bool:
    """``g^T B g == B``: the substitution ``y^j -> g y^j`` preserves ``B``."""
    return g.transpose() @ B @ g == B


def permutation_sign(p) -> int:
    p = list(p)
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def pfaffian(M) -> object:
    """Pfaffian of an antisymmetric matrix by expansion along the first row."""
    rows = [list(r) for r in (M.entries if isinstance(M, ExactMatrix) else M)]
    n = len(rows)
    if n == 0:
        return QQ(1)
    if n % 2:
        return QQ(0)
    total = QQ(0)
    for j in range(1, n):
        if rows[0][j] == 0:
            continue
        keep = [t for t in range(n) if t not in (0, j)]
        minor = [[rows[a][b] for b in keep] for a in keep]
        sign = 1 if j % 2 == 1 else -1
        total = total + sign * rows[0][j] * pfaffian(minor)
    return total


@dataclass(frozen=True)
class Splitting:
    """Fixed/moving decomposition for one group element.

    ``fixed`` and ``image`` are lists of column vectors in y-coordinates;
    ``restricted_form`` is ``B`` on the fixed basis, ``dual_form`` its inverse
    transpose (the form whose top power gives the Liouville coefficients).
    """

    fixed: list
    image: list
    restricted_form: ExactMatrix
    dual_form: ExactMatrix
    projection: ExactMatrix

    @property
    def m(self) -> int:
        return len(self.fixed) // 2

    def liouville(self) -> dict:
        """Components ``eps_{a_1..a_2m}`` of the m-fold wedge of the dual form.

        Returned as ``{permutation tuple: coeff}`` over the fixed basis indices.
        """
        m = self.m
        top = factorial(m) * pfaffian(self.dual_form)
        return {p: top * permutation_sign(p) for p in permutations(range(2 * m))}


def _column_space(M: ExactMatrix) -> list:
    R, piv = rref(M.transpose())
    return [list(R.entries[i]) for i in range(len(piv))]


def fixed_splitting(g, B) -> Splitting:
    g = g if isinstance(g, ExactMatrix) else ExactMatrix(g)
    B = B if isinstance(B, ExactMatrix) else ExactMatrix(B)
    n = B.rows
    if g.rows != n or g.cols != n:
        raise ValueError("group element has the wrong dimension")
    if not is_form_preserving(g, B):
        raise NotSymplecticError("matrix does not preserve the symplectic form")
    gm = g - ExactMatrix.identity(n)
    fixed = kernel_basis(gm)
    image = _column_space(gm)

    def restrict(vs, ws):
        return ExactMatrix([[_bilinear(B, v, w) for w in ws] for v in vs], cols=len(ws))

    M = restrict(fixed, fixed)
    if fixed:
        try:
            dual = inverse(M).transpose()
        except ZeroDivisionError:
            raise NotSymplecticError("restricted form on the fixed space is degenerate") from None
    else:
        dual = ExactMatrix([], cols=0)
    if image:
        try:
            inverse(restrict(image, image))
        except ZeroDivisionError:
            raise NotSymplecticError("restricted form on the image is degenerate") from None
    Q = ExactMatrix([[v[i] for v in fixed + image] for i in range(n)], cols=n)
    D = ExactMatrix([[QQ(int(i == j and i < len(fixed))) for j in range(n)] for i in range(n)], cols=n)
    P = Q @ D @ inverse(Q)
    return Splitting(fixed=fixed, image=image, restricted_form=M, dual_form=dual, projection=P)


def _bilinear(B: ExactMatrix, v, w):
    s = QQ(0)
    for i, vi in enumerate(v):
        if vi == 0:
            continue
        for j, wj in enumerate(w):
            if wj != 0 and B[i, j] != 0:
                s = s + vi * B[i, j] * wj
    return s
