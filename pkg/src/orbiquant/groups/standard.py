"""Small symplectic groups used in examples, presets and tests."""

from __future__ import annotations

from itertools import permutations

from ..exact.cyclotomic import Cyc
from ..exact.linalg import ExactMatrix
from ..exact.rational import QQ
from ..weyl.space import SymplecticSpace
from .matrix_group import FiniteSymplecticGroup, close_group

__all__ = [
    "cyclic_sl2",
    "diag_reflection_c4",
    "minus_identity",
    "plane_permutation",
    "plane_swap",
    "rotation_z4",
    "symmetric_double",
    "trivial_symplectic",
]


def _diag(entries) -> ExactMatrix:
    n = len(entries)
    return ExactMatrix([[entries[i] if i == j else QQ(0) for j in range(n)] for i in range(n)])


def trivial_symplectic(n: int = 1) -> FiniteSymplecticGroup:
    return close_group([], SymplecticSpace.darboux(n), name="trivial")


def minus_identity(n: int = 1) -> FiniteSymplecticGroup:
    """``{1, -1}`` acting on ``C^{2n}``."""
    return close_group([_diag([QQ(-1)] * (2 * n))], SymplecticSpace.darboux(n), name="Z2")


def cyclic_sl2(N: int) -> FiniteSymplecticGroup:
    """``Z_N`` generated by ``diag(zeta_N, zeta_N^{-1})`` on ``C^2``."""
    space = SymplecticSpace(SymplecticSpace.darboux(1).B, zeta_order=N)
    if N <= 2:
        gen = _diag([QQ(1 if N == 1 else -1)] * 2)
    else:
        gen = _diag([Cyc.zeta(N, 1), Cyc.zeta(N, -1)])
    return close_group([gen], space, name=f"Z{N}")


def rotation_z4() -> FiniteSymplecticGroup:
    """``Z_4`` generated by the quarter turn ``y^1 -> -y^2, y^2 -> y^1``."""
    gen = ExactMatrix([[0, 1], [-1, 0]])
    return close_group([gen], SymplecticSpace.darboux(1), name="Z4")


def plane_permutation(perm, n: int) -> ExactMatrix:
    """Matrix moving Darboux plane ``a`` to plane ``perm[a]``."""
    dim = 2 * n
    rows = [[QQ(0)] * dim for _ in range(dim)]
    for a in range(n):
        for r in range(2):
            rows[2 * perm[a] + r][2 * a + r] = QQ(1)
    return ExactMatrix(rows)


def plane_swap() -> FiniteSymplecticGroup:
    """Order-2 group swapping the two Darboux planes of ``C^4``."""
    return close_group([plane_permutation([1, 0], 2)], SymplecticSpace.darboux(2), name="S2")


def symmetric_double(n: int = 3) -> FiniteSymplecticGroup:
    """``S_n`` permuting ``n`` Darboux planes of ``C^{2n}`` (the symplectic double of ``C^n``)."""
    gens = [plane_permutation(p, n) for p in permutations(range(n)) if sum(1 for i, x in enumerate(p) if i != x) == 2]
    return close_group(gens, SymplecticSpace.darboux(n), name=f"S{n}")


def diag_reflection_c4() -> FiniteSymplecticGroup:
    """``{1, diag(-1,-1,1,1)}`` on ``C^4``."""
    gen = _diag([QQ(-1), QQ(-1), QQ(1), QQ(1)])
    return close_group([gen], SymplecticSpace.darboux(2), name="Z2")
