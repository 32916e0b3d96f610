"""The symmetrizer ``e = (1/|G|) sum g`` and the comparison of ``A[G]`` with ``A^G``."""

from __future__ import annotations

from ..exact.linalg import solve, sparse_rank
from ..exact.rational import QQ
from .algebra import FiniteDimAlgebra, TwistedGroupAlgebra, vec_add

__all__ = ["invariant_subalgebra", "symmetrizer_morita"]


def _coords(vec: dict, basis: list[dict], dim: int):
    """Coordinates of ``vec`` in ``basis`` (``None`` if outside the span)."""
    M = [[b.get(i, QQ(0)) for b in basis] for i in range(dim)]
    return solve(M, [vec.get(i, QQ(0)) for i in range(dim)])


def invariant_subalgebra(A: FiniteDimAlgebra) -> tuple[FiniteDimAlgebra, list[dict]]:
    """``A^G`` with structure constants on the invariant basis, plus that basis."""
    basis = A.invariant_basis()
    table = []
    for u in basis:
        row = []
        for v in basis:
            c = _coords(A.mul(u, v), basis, A.dim)
            if c is None:
                raise ArithmeticError("invariants are not closed under multiplication")
            row.append(c)
        table.append(row)
    unit = _coords(A.unit, basis, A.dim)
    return FiniteDimAlgebra(table, unit, name=f"{A.name}^G"), basis


def symmetrizer_morita(A: FiniteDimAlgebra) -> dict:
    AG = TwistedGroupAlgebra(A)
    e = AG.symmetrizer()
    idempotent = AG.mul(e, e) == e
    inv, basis = invariant_subalgebra(A)
    hh0_inv = inv.hh0_dim()
    hh0_ag = AG.hh0_dim()
    # e A[G] e and the map a -> a e from A^G
    corner = [AG.mul(AG.mul(e, {s: QQ(1)}), e) for s in range(AG.dim)]
    corner_dim = sparse_rank([dict(v) for v in corner])
    ident = A.group.identity
    images = [AG.mul(AG.element(a, ident), e) for a in basis]
    in_corner = all(AG.mul(AG.mul(e, x), e) == x for x in images)
    injective = sparse_rank([dict(v) for v in images]) == len(basis)
    multiplicative = all(
        AG.mul(images[i], images[j]) == AG.mul(AG.element(A.mul(basis[i], basis[j]), ident), e)
        for i in range(len(basis))
        for j in range(len(basis))
    )
    unital = vec_add(AG.mul(AG.element(A.unit, ident), e), e, -1) == {}
    iso = in_corner and injective and multiplicative and unital and corner_dim == len(basis)
    return {
        "idempotent": idempotent,
        "invariant_dim": len(basis),
        "corner_dim": corner_dim,
        "corner_isomorphic_to_invariants": iso,
        "hh0_invariants": hh0_inv,
        "hh0_twisted": hh0_ag,
        "hh0_equal": hh0_inv == hh0_ag,
        "faithful_action": A.is_faithful(),
    }
