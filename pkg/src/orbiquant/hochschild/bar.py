"""Hochschild (co)homology through the (normalized) bar complex.

Chains ``C_q(A, M) = M (x) Abar^{(x) q}`` are keyed ``(m, (t_1, ..., t_q))`` where
``t_i`` runs over :meth:`FiniteDimAlgebra.bar_basis`; cochains
``Hom(Abar^{(x) q}, M)`` are keyed ``((t_1, ..., t_q), m)``.  With
``normalized=False`` the full algebra basis is used in every slot.
"""

from __future__ import annotations

from itertools import product

from ..exact.linalg import sparse_rank
from ..exact.poly import add_into
from ..exact.rational import QQ
from .algebra import Bimodule, FiniteDimAlgebra, TwistedGroupAlgebra

__all__ = [
    "HochschildComplex",
    "ResourceCapError",
    "bar_hochschild",
    "decomposition_check",
]

DEFAULT_MAX_CELLS = 60000


class ResourceCapError(RuntimeError):
    """A complex would exceed the configured size limit."""


class HochschildComplex:
    def __init__(self, A: FiniteDimAlgebra, M: Bimodule, normalized: bool = True, max_cells: int = DEFAULT_MAX_CELLS):
        self.A = A
        self.M = M
        self.normalized = normalized
        self.slots = A.bar_basis() if normalized else list(range(A.dim))
        self.max_cells = max_cells
        self._proj_cache: dict = {}

    # helpers
    def _slot(self, vec: dict) -> dict:
        return self.A.project_bar(vec) if self.normalized else vec

    def _prod(self, s: int, t: int) -> dict:
        key = (s, t)
        hit = self._proj_cache.get(key)
        if hit is None:
            hit = self._slot(self.A.mul_basis(s, t))
            self._proj_cache[key] = hit
        return hit

    def chain_dim(self, q: int) -> int:
        return self.M.dim * len(self.slots) ** q

    def _guard(self, q: int) -> None:
        if q >= 0 and self.chain_dim(q) > self.max_cells:
            raise ResourceCapError(
                f"degree-{q} cells: {self.chain_dim(q)} exceeds the limit {self.max_cells}"
            )

    def chain_basis(self, q: int):
        self._guard(q)
        for m in range(self.M.dim):
            for t in product(self.slots, repeat=q):
                yield (m, t)

    def cochain_basis(self, q: int):
        self._guard(q)
        for t in product(self.slots, repeat=q):
            for m in range(self.M.dim):
                yield (t, m)

    # chains
    def boundary(self, chain: dict) -> dict:
        out: dict = {}
        for (m, t), v in chain.items():
            q = len(t)
            if q == 0:
                continue
            for m2, c in self.M.right(m, t[0]).items():
                add_into(out, (m2, t[1:]), v * c)
            for i in range(1, q):
                sign = -1 if i % 2 else 1
                for s, c in self._prod(t[i - 1], t[i]).items():
                    add_into(out, (m, t[: i - 1] + (s,) + t[i + 1 :]), v * c * sign)
            sign = -1 if q % 2 else 1
            for m2, c in self.M.left(t[-1], m).items():
                add_into(out, (m2, t[:-1]), v * c * sign)
        return out

    def alpha(self, g: int, chain: dict) -> dict:
        """``(m, a_1, ..., a_q) -> (g m g^{-1}, a_1^g, ..., a_q^g)``."""
        G = self.A.group
        ginv = G.inv[g]
        acted = {}
        out: dict = {}
        for (m, t), v in chain.items():
            parts = [[(mm, c) for mm, c in self.M.conjugate(g, ginv, {m: QQ(1)}).items()]]
            for s in t:
                if s not in acted:
                    acted[s] = list(self._slot(self.A.act_basis(g, s)).items())
                parts.append(acted[s])
            for combo in product(*parts):
                c = v
                for _, x in combo:
                    c = c * x
                add_into(out, (combo[0][0], tuple(k for k, _ in combo[1:])), c)
        return out

    def averaged(self, chain: dict, action) -> dict:
        G = self.A.group
        out: dict = {}
        w = QQ(1, G.order)
        for g in G.elements():
            for k, v in action(g, chain).items():
                add_into(out, k, v * w)
        return out

    def homology_dim(self, q: int) -> int:
        dq = self._rank_boundary(q)
        dq1 = self._rank_boundary(q + 1)
        return self.chain_dim(q) - dq - dq1

    def _rank_boundary(self, q: int) -> int:
        if q <= 0:
            return 0
        return sparse_rank([self.boundary({b: QQ(1)}) for b in self.chain_basis(q)])

    def invariant_homology_dim(self, q: int) -> int:
        """``dim H_q(C^G)``, equal to ``dim HH_q(A, M)^G`` in characteristic 0."""
        inv_q = self._invariant_chains(q)
        r = sparse_rank(inv_q)
        dq = sparse_rank([self.boundary(v) for v in inv_q]) if q > 0 else 0
        inv_q1 = self._invariant_chains(q + 1)
        dq1 = sparse_rank([self.boundary(v) for v in inv_q1])
        return r - dq - dq1

    def _invariant_chains(self, q: int) -> list[dict]:
        return [self.averaged({b: QQ(1)}, self.alpha) for b in self.chain_basis(q)]

    def burnside_invariant_dim(self, q: int) -> object:
        """``(1/|G|) sum_g trace alpha(g)`` on ``C_q``."""
        G = self.A.group
        total = QQ(0)
        for g in G.elements():
            for b in self.chain_basis(q):
                total = total + self.alpha(g, {b: QQ(1)}).get(b, 0)
        return total / G.order

    # cochains
    def coboundary_rows(self, q: int) -> list[dict]:
        """Rows of ``delta: C^q -> C^{q+1}``, one per output coordinate ``(S, m')``."""
        self._guard(q + 1)
        M = self.M
        rows = []
        for S in product(self.slots, repeat=q + 1):
            acc: dict = {}  # m' -> {(T, m): coeff}
            tail = S[1:]
            for m in range(M.dim):
                for m2, c in M.left(S[0], m).items():
                    add_into(acc.setdefault(m2, {}), (tail, m), c)
            for i in range(1, q + 1):
                sign = -1 if i % 2 else 1
                for s, c in self._prod(S[i - 1], S[i]).items():
                    T = S[: i - 1] + (s,) + S[i + 1 :]
                    for m in range(M.dim):
                        add_into(acc.setdefault(m, {}), (T, m), c * sign)
            sign = -1 if (q + 1) % 2 else 1
            head = S[:q]
            for m in range(M.dim):
                for m2, c in M.right(m, S[-1]).items():
                    add_into(acc.setdefault(m2, {}), (head, m), c * sign)
            rows.extend(r for r in acc.values() if r)
        return rows

    def coboundary(self, cochain: dict, q: int) -> dict:
        """Apply ``delta`` to a degree-``q`` cochain ``{(T, m): coeff}``."""
        M = self.M
        out: dict = {}
        for S in product(self.slots, repeat=q + 1):
            def val(T):
                return {m: cochain[(T, m)] for m in range(M.dim) if (T, m) in cochain}

            res: dict = {}
            for m, c in val(S[1:]).items():
                for m2, x in M.left(S[0], m).items():
                    add_into(res, m2, c * x)
            for i in range(1, q + 1):
                sign = -1 if i % 2 else 1
                for s, cs in self._prod(S[i - 1], S[i]).items():
                    for m, c in val(S[: i - 1] + (s,) + S[i + 1 :]).items():
                        add_into(res, m, c * cs * sign)
            sign = -1 if (q + 1) % 2 else 1
            for m, c in val(S[:q]).items():
                for m2, x in M.right(m, S[-1]).items():
                    add_into(res, m2, c * x * sign)
            for m, c in res.items():
                add_into(out, (S, m), c)
        return out

    def cohomology_dim(self, q: int) -> int:
        dim_q = len(self.slots) ** q * self.M.dim
        r_out = sparse_rank(self.coboundary_rows(q))
        r_in = sparse_rank(self.coboundary_rows(q - 1)) if q > 0 else 0
        return dim_q - r_out - r_in

    def alpha_cochain(self, g: int, cochain: dict, q: int) -> dict:
        """``(alpha(g) Psi)(a_1..a_q) = g Psi(a_1^{g^{-1}}, ..., a_q^{g^{-1}}) g^{-1}``."""
        G = self.A.group
        ginv = G.inv[g]
        acted = {s: list(self._slot(self.A.act_basis(ginv, s)).items()) for s in self.slots}
        out: dict = {}
        for S in product(self.slots, repeat=q):
            for combo in product(*[acted[s] for s in S]):
                T = tuple(k for k, _ in combo)
                c = QQ(1)
                for _, x in combo:
                    c = c * x
                for m in range(self.M.dim):
                    v = cochain.get((T, m))
                    if v is None:
                        continue
                    for m2, x in self.M.conjugate(g, ginv, {m: QQ(1)}).items():
                        add_into(out, (S, m2), v * c * x)
        return out

    def invariant_cohomology_dim(self, q: int) -> int:
        def inv(qq):
            basis = []
            for b in self.cochain_basis(qq):
                basis.append(self.averaged({b: QQ(1)}, lambda g, ch: self.alpha_cochain(g, ch, qq)))
            return basis

        inv_q = inv(q)
        r = sparse_rank(inv_q)
        d_out = sparse_rank([self.coboundary(v, q) for v in inv_q])
        d_in = sparse_rank([self.coboundary(v, q - 1) for v in inv(q - 1)]) if q > 0 else 0
        return r - d_out - d_in


def bar_hochschild(A: FiniteDimAlgebra, M: Bimodule | None = None, q: int = 0, variant: str = "homology", normalized: bool = True, max_cells: int = DEFAULT_MAX_CELLS) -> int:
    """Dimension of ``HH_q(A, M)`` or ``HH^q(A, M)`` (``M`` defaults to ``A``)."""
    M = Bimodule.regular(A) if M is None else M
    C = HochschildComplex(A, M, normalized=normalized, max_cells=max_cells)
    if variant == "homology":
        return C.homology_dim(q)
    if variant == "cohomology":
        return C.cohomology_dim(q)
    raise ValueError(f"unknown variant {variant!r}")


def decomposition_check(A: FiniteDimAlgebra, q: int, variant: str = "homology", max_cells: int = DEFAULT_MAX_CELLS) -> dict:
    """Compare ``HH_q(A[G], A[G])`` with ``HH_q(A, A[G])^G`` (or the cohomology analogue)."""
    AG = TwistedGroupAlgebra(A)
    lhs_complex = HochschildComplex(AG, Bimodule.regular(AG), max_cells=max_cells)
    rhs_complex = HochschildComplex(A, AG.as_base_bimodule(), max_cells=max_cells)
    if variant == "homology":
        lhs = lhs_complex.homology_dim(q)
        rhs = rhs_complex.invariant_homology_dim(q)
    elif variant == "cohomology":
        lhs = lhs_complex.cohomology_dim(q)
        rhs = rhs_complex.invariant_cohomology_dim(q)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return {"q": q, "variant": variant, "lhs_dim": lhs, "rhs_dim": rhs, "equal": lhs == rhs}
