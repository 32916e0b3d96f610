"""The mixed bar/group resolution ``C_{m,q} = A[G] (x) A^{(x) m} (x) A[G] (x) k[G]^{(x) q}``.

Keys of a chain:

* ``(s0, (a_1..a_m), s1, (g_1..g_q))`` with ``s0, s1`` flat ``A[G]`` basis
  indices, ``a_i`` basis indices of ``A`` and ``g_i`` group elements;
* ``(s,)`` for the augmentation term ``A[G]`` in total degree ``-1``.

``beta`` is the bar direction, ``beta_prime`` the Eilenberg-MacLane
direction and ``chi`` the contracting homotopy; together they satisfy
``chi D + D chi = Id`` with ``D = beta + beta_prime``.
"""

from __future__ import annotations

import random

from ..exact.cyclotomic import Cyc
from ..exact.poly import add_into
from ..exact.rational import QQ
from .algebra import FiniteDimAlgebra, TwistedGroupAlgebra

__all__ = ["MixedResolution", "bidegree"]


def bidegree(key) -> tuple[int, int] | None:
    """``(m, q)`` of a key, ``None`` for the augmentation."""
    if len(key) == 1:
        return None
    return len(key[1]), len(key[3])


class MixedResolution:
    def __init__(self, A: FiniteDimAlgebra):
        self.A = A
        self.AG = TwistedGroupAlgebra(A)
        self.G = A.group
        self._act_cache: dict = {}

    # small helpers
    def _act(self, g: int, i: int) -> dict:
        key = (g, i)
        hit = self._act_cache.get(key)
        if hit is None:
            hit = self.A.act_basis(g, i)
            self._act_cache[key] = hit
        return hit

    def _ag(self, i: int, g: int) -> int:
        return self.AG.index(i, g)

    def _unit_times(self, g: int) -> dict:
        return self.AG.group_element(g)

    # differentials
    def beta(self, chain: dict) -> dict:
        A, AG = self.A, self.AG
        out: dict = {}
        for key, v in chain.items():
            if len(key) == 1:
                continue
            s0, a, s1, gs = key
            m, q = len(a), len(gs)
            if m == 0:
                if q == 0:
                    for s, c in AG.mul_basis(s0, s1).items():
                        add_into(out, (s,), v * c)
                continue
            vq = v if q % 2 == 0 else -v
            # a g a_1 = a a_1^g g
            for s, c in AG.mul_basis(s0, self._ag(a[0], self.G.identity)).items():
                add_into(out, (s, a[1:], s1, gs), vq * c)
            for i in range(1, m):
                sign = -1 if i % 2 else 1
                for t, c in A.mul_basis(a[i - 1], a[i]).items():
                    add_into(out, (s0, a[: i - 1] + (t,) + a[i + 1 :], s1, gs), vq * c * sign)
            sign = -1 if m % 2 else 1
            for s, c in AG.mul_basis(self._ag(a[-1], self.G.identity), s1).items():
                add_into(out, (s0, a[:-1], s, gs), vq * c * sign)
        return out

    def beta_prime(self, chain: dict) -> dict:
        G, AG = self.G, self.AG
        out: dict = {}
        for key, v in chain.items():
            if len(key) == 1:
                continue
            s0, a, s1, gs = key
            q = len(gs)
            if q == 0:
                continue
            g1 = gs[0]
            g1inv = G.inv[g1]
            i0, g = AG.split(s0)
            j, h = AG.split(s1)
            new_s0 = self._ag(i0, G.mul[g][g1])
            new_h = G.mul[g1inv][h]
            # expand a_1^{g1^-1} (x) ... (x) a_m^{g1^-1} (x) b^{g1^-1}
            acc = {(): v}
            for ai in a:
                nxt: dict = {}
                for t, c in acc.items():
                    for k, x in self._act(g1inv, ai).items():
                        add_into(nxt, t + (k,), c * x)
                acc = nxt
            rest = gs[1:]
            for t, c in acc.items():
                for k, x in self._act(g1inv, j).items():
                    add_into(out, (new_s0, t, self._ag(k, new_h), rest), c * x)
            for i in range(1, q):
                sign = -1 if i % 2 else 1
                merged = gs[: i - 1] + (G.mul[gs[i - 1]][gs[i]],) + gs[i + 1 :]
                add_into(out, (s0, a, s1, merged), v * sign)
            sign = -1 if q % 2 else 1
            add_into(out, (s0, a, s1, gs[:-1]), v * sign)
        return out

    def D(self, chain: dict) -> dict:
        out = self.beta(chain)
        for k, v in self.beta_prime(chain).items():
            add_into(out, k, v)
        return out

    def chi(self, chain: dict) -> dict:
        G, AG = self.G, self.AG
        unit = AG.unit
        out: dict = {}
        for key, v in chain.items():
            if len(key) == 1:
                (s,) = key
                for u, c in unit.items():
                    add_into(out, (u, (), s, ()), v * c)
                continue
            s0, a, s1, gs = key
            q = len(gs)
            i0, g = AG.split(s0)
            vq = v if q % 2 == 0 else -v
            ginv = G.inv[g]
            for u, c in self._unit_times(g).items():
                for k, x in self._act(ginv, i0).items():
                    add_into(out, (u, (k,) + a, s1, gs), vq * c * x)
            if not a:
                for s, c in AG.mul_basis(s0, s1).items():
                    for u, cu in unit.items():
                        add_into(out, (u, (), s, (g,) + gs), v * c * cu)
        return out

    # module structure
    def left_mul(self, s: int, chain: dict) -> dict:
        """Left multiplication by the ``A[G]`` basis element ``s``."""
        AG = self.AG
        out: dict = {}
        for key, v in chain.items():
            for t, c in AG.mul_basis(s, key[0]).items():
                add_into(out, (t,) + key[1:], v * c)
        return out

    def right_mul(self, chain: dict, s: int) -> dict:
        AG = self.AG
        out: dict = {}
        for key, v in chain.items():
            if len(key) == 1:
                for t, c in AG.mul_basis(key[0], s).items():
                    add_into(out, (t,), v * c)
                continue
            for t, c in AG.mul_basis(key[2], s).items():
                add_into(out, (key[0], key[1], t, key[3]), v * c)
        return out

    # random data
    def random_scalar(self, rng: random.Random):
        c = QQ(rng.randint(-3, 3), rng.randint(1, 2))
        for g in self.G.elements():
            for j in range(self.A.dim):
                for x in self.A.act_basis(g, j).values():
                    if isinstance(x, Cyc) and not x.is_rational() and rng.random() < 0.5:
                        return c + x * rng.randint(-2, 2)
        return c

    def random_chain(self, rng: random.Random, m: int, q: int, terms: int = 3) -> dict:
        out: dict = {}
        n_ag, n_a, n_g = self.AG.dim, self.A.dim, self.G.order
        if m < 0:
            for _ in range(terms):
                add_into(out, (rng.randrange(n_ag),), self.random_scalar(rng))
            return out
        for _ in range(terms):
            key = (
                rng.randrange(n_ag),
                tuple(rng.randrange(n_a) for _ in range(m)),
                rng.randrange(n_ag),
                tuple(rng.randrange(n_g) for _ in range(q)),
            )
            add_into(out, key, self.random_scalar(rng))
        return out

    @staticmethod
    def difference(x: dict, y: dict) -> dict:
        out = dict(x)
        for k, v in y.items():
            add_into(out, k, -v)
        return out

    def homotopy_defect(self, chain: dict) -> dict:
        """``chi D c + D chi c - c``; zero exactly when the homotopy identity holds."""
        lhs = self.chi(self.D(chain))
        for k, v in self.D(self.chi(chain)).items():
            add_into(lhs, k, v)
        return self.difference(lhs, chain)
