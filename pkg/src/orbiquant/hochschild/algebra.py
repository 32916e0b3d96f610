"""Finite-dimensional algebras with group actions, their bimodules and A[G].

Vectors are sparse dicts ``{basis_index: coeff}``.  The structure constants
satisfy ``e_i e_j = sum_k table[i][j][k] e_k``.  An action matrix ``M`` of a
group element sends ``e_j`` to ``sum_i M[i][j] e_i``; it must be a left action,
``a^(gh) = (a^h)^g``, which is what makes ``(ag)(bh) = a b^g gh`` associative.
"""

from __future__ import annotations

from ..exact.cyclotomic import Cyc
from ..exact.linalg import field_elem, sparse_kernel, sparse_rank
from ..exact.poly import add_into
from ..exact.rational import QQ
from ..exact.serialize import SchemaError, scalar_from_json
from ..groups.abstract import FiniteGroup, cyclic_group, symmetric_group, trivial_group

__all__ = [
    "AlgebraError",
    "Bimodule",
    "FiniteDimAlgebra",
    "TwistedGroupAlgebra",
    "algebra_from_json",
    "standard_algebra",
    "vec_add",
    "vec_scale",
]


class AlgebraError(ValueError):
    """Structure constants or actions violate an algebra axiom."""


def vec_add(u: dict, v: dict, c=1) -> dict:
    out = dict(u)
    for k, x in v.items():
        add_into(out, k, x * c)
    return out


def vec_scale(u: dict, c) -> dict:
    if c == 0:
        return {}
    return {k: x * c for k, x in u.items()}


class FiniteDimAlgebra:
    def __init__(self, table, unit, action=None, group: FiniteGroup | None = None, name: str = "", check: bool = True):
        self.dim = len(table)
        self.name = name
        self._mul = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                coeffs = table[i][j]
                if len(coeffs) != self.dim:
                    raise AlgebraError("structure constants have the wrong shape")
                row.append({k: field_elem(c) for k, c in enumerate(coeffs) if c != 0})
            self._mul.append(row)
        self.unit = {i: field_elem(c) for i, c in enumerate(unit) if c != 0}
        self.group = group if group is not None else trivial_group()
        self._act: list[list[dict]] = []
        for g in self.group.elements():
            if action is not None and g in action:
                M = action[g]
                cols = [{i: field_elem(M[i][j]) for i in range(self.dim) if M[i][j] != 0} for j in range(self.dim)]
            elif g == self.group.identity or action is None:
                cols = [{j: QQ(1)} for j in range(self.dim)]
            else:
                raise AlgebraError(f"no action matrix for group element {g}")
            self._act.append(cols)
        if check:
            self.validate()

    # basis-level operations
    def mul_basis(self, i: int, j: int) -> dict:
        return self._mul[i][j]

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, x in u.items():
            for j, y in v.items():
                xy = x * y
                for k, c in self._mul[i][j].items():
                    add_into(out, k, xy * c)
        return out

    def act_basis(self, g: int, j: int) -> dict:
        return self._act[g][j]

    def act(self, g: int, u: dict) -> dict:
        out: dict = {}
        for j, x in u.items():
            for i, c in self._act[g][j].items():
                add_into(out, i, x * c)
        return out

    def basis(self, i: int) -> dict:
        return {i: QQ(1)}

    def validate(self) -> None:
        n = self.dim
        B = [self.basis(i) for i in range(n)]
        for i in range(n):
            if self.mul(self.unit, B[i]) != B[i] or self.mul(B[i], self.unit) != B[i]:
                raise AlgebraError("unit axiom fails")
            for j in range(n):
                ij = self.mul_basis(i, j)
                for k in range(n):
                    if self.mul(ij, B[k]) != self.mul(B[i], self.mul_basis(j, k)):
                        raise AlgebraError(f"associativity fails on basis triple ({i}, {j}, {k})")
        G = self.group
        for g in G.elements():
            for i in range(n):
                for j in range(n):
                    if self.act(g, self.mul_basis(i, j)) != self.mul(self.act(g, B[i]), self.act(g, B[j])):
                        raise AlgebraError(f"group element {g} does not act by an algebra automorphism")
            if self.act(g, self.unit) != self.unit:
                raise AlgebraError(f"group element {g} does not fix the unit")
            for h in G.elements():
                gh = G.mul[g][h]
                for j in range(n):
                    if self.act(g, self.act_basis(h, j)) != self.act_basis(gh, j):
                        raise AlgebraError("action matrices do not define a left group action")

    def is_faithful(self) -> bool:
        ident = [{j: QQ(1)} for j in range(self.dim)]
        return all(self._act[g] != ident for g in self.group.elements() if g != self.group.identity)

    def invariant_basis(self) -> list[dict]:
        """Basis of ``A^G``."""
        rows = []
        for g in self.group.elements():
            for i in range(self.dim):
                row = {}
                for j in range(self.dim):
                    c = self._act[g][j].get(i, 0) - (1 if i == j else 0)
                    if c != 0:
                        row[j] = c
                if row:
                    rows.append(row)
        return sparse_kernel(rows, range(self.dim))

    def unit_pivot(self) -> int:
        return min(self.unit)

    def project_bar(self, u: dict) -> dict:
        """Image in ``A / k1`` with coordinates on the basis indices other than the unit pivot."""
        p = self.unit_pivot()
        c = u.get(p)
        if c is None or c == 0:
            return dict(u)
        out = {k: x for k, x in u.items() if k != p}
        up = self.unit[p]
        for k, x in self.unit.items():
            if k != p:
                add_into(out, k, -c * x / up)
        return out

    def bar_basis(self) -> list[int]:
        p = self.unit_pivot()
        return [i for i in range(self.dim) if i != p]

    def hh0_dim(self) -> int:
        """``dim A / [A, A]``."""
        rows = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                c = vec_add(self.mul_basis(i, j), self.mul_basis(j, i), -1)
                if c:
                    rows.append(c)
        return self.dim - sparse_rank(rows)

    def __repr__(self):
        return f"FiniteDimAlgebra({self.name or 'dim ' + str(self.dim)}, group order {self.group.order})"


class Bimodule:
    """Bimodule over an algebra, optionally with left/right group multiplications.

    ``left(i, m)``, ``right(m, i)`` act by basis elements of the algebra on basis
    element ``m``; ``left_group(g, m)`` and ``right_group(m, g)`` realize the
    group elements when the bimodule comes from an ``A[G]``-bimodule.
    """

    def __init__(self, dim: int, left, right, left_group=None, right_group=None, name: str = ""):
        self.dim = dim
        self._left = left
        self._right = right
        self._lg = left_group
        self._rg = right_group
        self.name = name

    def left(self, i: int, m: int) -> dict:
        return self._left(i, m)

    def right(self, m: int, i: int) -> dict:
        return self._right(m, i)

    def left_vec(self, a: dict, v: dict) -> dict:
        out: dict = {}
        for i, x in a.items():
            for m, y in v.items():
                for k, c in self._left(i, m).items():
                    add_into(out, k, x * y * c)
        return out

    def right_vec(self, v: dict, a: dict) -> dict:
        out: dict = {}
        for m, y in v.items():
            for i, x in a.items():
                for k, c in self._right(m, i).items():
                    add_into(out, k, x * y * c)
        return out

    @property
    def has_group(self) -> bool:
        return self._lg is not None

    def conjugate(self, g: int, ginv: int, v: dict) -> dict:
        """``g m g^{-1}``."""
        out: dict = {}
        for m, y in v.items():
            for k, c in self._lg(g, m).items():
                for k2, c2 in self._rg(k, ginv).items():
                    add_into(out, k2, y * c * c2)
        return out

    @classmethod
    def regular(cls, A: FiniteDimAlgebra) -> Bimodule:
        # conjugation by g acts as the automorphism: g m g^{-1} = m^g
        return cls(
            A.dim,
            lambda i, m: A.mul_basis(i, m),
            lambda m, i: A.mul_basis(m, i),
            lambda g, m: A.act_basis(g, m),
            lambda m, g: {m: QQ(1)},
            name="regular",
        )


class TwistedGroupAlgebra(FiniteDimAlgebra):
    """``A[G]`` with basis ``(i, g)`` flattened to ``g * dim A + i``."""

    def __init__(self, base: FiniteDimAlgebra):
        self.base = base
        G = base.group
        n = base.dim
        N = n * G.order
        self.G = G
        table = [[[QQ(0)] * N for _ in range(N)] for _ in range(N)]
        for g in G.elements():
            for h in G.elements():
                gh = G.mul[g][h]
                for i in range(n):
                    for j in range(n):
                        prod = base.mul({i: QQ(1)}, base.act_basis(g, j))
                        for k, c in prod.items():
                            table[g * n + i][h * n + j][gh * n + k] += c
        unit = [QQ(0)] * N
        for k, c in base.unit.items():
            unit[G.identity * n + k] = c
        super().__init__(table, unit, name=f"{base.name}[G]", check=False)

    def index(self, i: int, g: int) -> int:
        return g * self.base.dim + i

    def split(self, idx: int) -> tuple[int, int]:
        return idx % self.base.dim, idx // self.base.dim

    def element(self, a: dict, g: int) -> dict:
        """``a g`` for ``a`` in the base algebra."""
        return {self.index(i, g): c for i, c in a.items()}

    def group_element(self, g: int) -> dict:
        return self.element(self.base.unit, g)

    def symmetrizer(self) -> dict:
        """``e = (1/|G|) sum_g g``."""
        out: dict = {}
        w = QQ(1, self.G.order)
        for g in self.G.elements():
            for k, c in self.group_element(g).items():
                add_into(out, k, c * w)
        return out

    def as_base_bimodule(self) -> Bimodule:
        """``A[G]`` as an ``A``-bimodule with the group acting on both sides."""

        def left(i, m):
            return self.mul_basis(self.index(i, self.G.identity), m)

        def right(m, i):
            return self.mul_basis(m, self.index(i, self.G.identity))

        def lg(g, m):
            return self.mul(self.group_element(g), {m: QQ(1)})

        def rg(m, g):
            return self.mul({m: QQ(1)}, self.group_element(g))

        return Bimodule(self.dim, left, right, lg, rg, name="A[G]")

    def sector_bimodule(self, g: int) -> list[int]:
        """Basis indices of the summand ``A g``."""
        n = self.base.dim
        return [self.index(i, g) for i in range(n)]


# --- standard configurations -------------------------------------------------

def _group(name: str) -> FiniteGroup:
    name = name.upper()
    if name in ("1", "TRIVIAL", "Z1"):
        return trivial_group()
    if name.startswith("Z"):
        return cyclic_group(int(name[1:]))
    if name.startswith("S"):
        return symmetric_group(int(name[1:]))
    raise SchemaError(f"unknown group {name!r}")


def _sign_of(G: FiniteGroup, g: int) -> int:
    if hasattr(G, "perms"):
        from ..weyl.splitting import permutation_sign

        return permutation_sign(G.perms[g])
    if G.order % 2:
        return 1
    return -1 if g % 2 else 1


def standard_algebra(kind: str, group: str = "1") -> FiniteDimAlgebra:
    """Named desk-scale algebras with the standard actions.

    ``kind``: ``C`` (the ground field), ``C2`` (``C x C``), ``dual`` (``C[x]/(x^2)``),
    ``M2`` (2x2 matrices).  ``group``: ``1``, ``Zn`` or ``Sn``.  Actions:

    * ``C``: trivial;
    * ``C2``: swap of the factors through the sign character (``Z_odd``: trivial);
    * ``dual``: ``x -> chi(g) x`` with ``chi`` a faithful character of ``Z_n``,
      the sign character for ``S_n``;
    * ``M2``: trivial.
    """
    G = _group(group)
    kind = kind.lower()
    if kind in ("c", "field"):
        return FiniteDimAlgebra([[[1]]], [1], None, G, name="C")
    if kind in ("c2", "cxc"):
        table = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
        action = {}
        for g in G.elements():
            if _sign_of(G, g) == -1:
                action[g] = [[0, 1], [1, 0]]
            else:
                action[g] = [[1, 0], [0, 1]]
        return FiniteDimAlgebra(table, [1, 1], action, G, name="C2")
    if kind in ("dual", "cx/x2", "c[x]/(x^2)"):
        table = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
        action = {}
        for g in G.elements():
            if hasattr(G, "perms") or G.name.startswith("S"):
                chi = QQ(_sign_of(G, g))
            elif G.order <= 2:
                chi = QQ(-1 if g % 2 else 1)
            else:
                chi = Cyc.zeta(G.order, g)
            action[g] = [[1, 0], [0, chi]]
        return FiniteDimAlgebra(table, [1, 0], action, G, name="C[x]/(x^2)")
    if kind in ("m2", "matrix"):
        # e_{ab} with index 2a + b; e_ab e_cd = delta_bc e_ad
        table = [[[0] * 4 for _ in range(4)] for _ in range(4)]
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    for d in range(2):
                        if b == c:
                            table[2 * a + b][2 * c + d][2 * a + d] = 1
        return FiniteDimAlgebra(table, [1, 0, 0, 1], None, G, name="M2")
    raise SchemaError(f"unknown algebra {kind!r}")


def _group_from_json(obj) -> FiniteGroup:
    if obj is None:
        return trivial_group()
    if isinstance(obj, str):
        return _group(obj)
    if isinstance(obj, dict):
        kind = obj.get("type")
        if kind == "cyclic":
            return cyclic_group(int(obj["order"]))
        if kind == "symmetric":
            return symmetric_group(int(obj["degree"]))
        if kind == "table":
            return FiniteGroup(obj["table"])
    raise SchemaError(f"bad group description {obj!r}")


def algebra_from_json(obj) -> FiniteDimAlgebra:
    """``{"dim", "table", "unit", "group", "action": {g_index: matrix}}`` or ``{"preset", "group"}``."""
    if not isinstance(obj, dict):
        raise SchemaError("algebra input must be a JSON object")
    if "preset" in obj:
        return standard_algebra(str(obj["preset"]), str(obj.get("group", "1")))
    try:
        dim = int(obj["dim"])
        table = [[[scalar_from_json(c) for c in obj["table"][i][j]] for j in range(dim)] for i in range(dim)]
        unit = [scalar_from_json(c) for c in obj["unit"]]
        G = _group_from_json(obj.get("group"))
        action = None
        if "action" in obj:
            action = {int(g): [[scalar_from_json(c) for c in row] for row in M] for g, M in obj["action"].items()}
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"bad algebra input: {exc}") from exc
    if len(unit) != dim:
        raise SchemaError("unit vector has the wrong length")
    return FiniteDimAlgebra(table, unit, action, G, name=str(obj.get("name", "")))
