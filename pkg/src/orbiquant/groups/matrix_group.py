"""Finite subgroups of Sp(2n) over cyclotomic fields."""

from __future__ import annotations

from collections import deque

from ..exact.linalg import ExactMatrix, inverse, rank
from ..exact.serialize import SchemaError, matrix_from_json, matrix_to_json
from ..weyl.space import SymplecticSpace
from ..weyl.splitting import NotSymplecticError, fixed_splitting, is_form_preserving
from .abstract import FiniteGroup

__all__ = [
    "GroupExplosionError",
    "FiniteSymplecticGroup",
    "close_group",
    "is_symplectic_reflection",
    "group_from_json",
    "group_to_json",
]


class GroupExplosionError(RuntimeError):
    """Closure exceeded the declared size bound."""


def is_symplectic_reflection(g) -> bool:
    """``rank(g - 1) == 2``; the identity is never a reflection."""
    g = g if isinstance(g, ExactMatrix) else ExactMatrix(g)
    return rank(g - ExactMatrix.identity(g.rows)) == 2


class FiniteSymplecticGroup:
    """Closed finite matrix group with its multiplication table."""

    def __init__(self, space: SymplecticSpace, elements: list[ExactMatrix], name: str = ""):
        self.space = space
        self.elements = list(elements)
        index = {g: i for i, g in enumerate(self.elements)}
        if len(index) != len(self.elements):
            raise ValueError("duplicate group elements")
        table = []
        for a in self.elements:
            row = []
            for b in self.elements:
                ab = a @ b
                if ab not in index:
                    raise ValueError("element list is not closed under products")
                row.append(index[ab])
            table.append(row)
        self.index = index
        self.abstract = FiniteGroup(table, name=name)
        self.name = name

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> int:
        return self.abstract.identity

    def conjugacy_classes(self) -> list[list[int]]:
        return self.abstract.conjugacy_classes()

    def centralizer_order(self, i: int) -> int:
        return len(self.abstract.centralizer(i))

    def class_representatives(self) -> list[int]:
        return [c[0] for c in self.conjugacy_classes()]

    def element_order(self, i: int) -> int:
        return self.abstract.element_order(i)

    def splitting(self, i: int):
        return fixed_splitting(self.elements[i], self.space.B)

    def __repr__(self):
        return f"FiniteSymplecticGroup({self.name or 'order ' + str(self.order)}, dim={self.space.dim})"


def close_group(generators, space: SymplecticSpace, bound: int = 1000, name: str = "") -> FiniteSymplecticGroup:
    """Breadth-first closure of ``generators`` under multiplication.

    Raises :class:`NotSymplecticError` for a generator not preserving the form
    and :class:`GroupExplosionError` once more than ``bound`` elements appear.
    """
    gens = [g if isinstance(g, ExactMatrix) else ExactMatrix(g) for g in generators]
    dim = space.dim
    for g in gens:
        if g.rows != dim or g.cols != dim:
            raise ValueError("generator has the wrong dimension")
        if not is_form_preserving(g, space.B):
            raise NotSymplecticError(f"generator {g} does not preserve the symplectic form")
        inverse(g)
    one = ExactMatrix.identity(dim)
    seen = {one: None}
    order = [one]
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x @ g
            if y not in seen:
                seen[y] = None
                order.append(y)
                if len(order) > bound:
                    raise GroupExplosionError(f"group closure exceeds {bound} elements")
                queue.append(y)
    return FiniteSymplecticGroup(space, order, name=name)


def group_to_json(G: FiniteSymplecticGroup, generators=None) -> dict:
    gens = generators if generators is not None else G.elements
    return {
        "schema": "1",
        "zeta_order": G.space.zeta_order,
        "dim": G.space.dim,
        "form": matrix_to_json(G.space.B),
        "generators": [matrix_to_json(g) for g in gens],
    }


def group_from_json(obj, bound: int = 1000) -> FiniteSymplecticGroup:
    if not isinstance(obj, dict):
        raise SchemaError("group input must be a JSON object")
    try:
        N = int(obj.get("zeta_order", 1))
        dim = int(obj["dim"])
        gens = obj["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"group input needs 'dim' and 'generators': {exc}") from exc
    if N < 1:
        raise SchemaError("zeta_order must be positive")
    form = matrix_from_json(obj["form"], N) if "form" in obj else None
    try:
        space = SymplecticSpace(form, n=dim // 2, zeta_order=N)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    if space.dim != dim:
        raise SchemaError("form size does not match 'dim'")
    mats = [matrix_from_json(g, N) for g in gens]
    return close_group(mats, space, bound=bound, name=str(obj.get("name", "")))
