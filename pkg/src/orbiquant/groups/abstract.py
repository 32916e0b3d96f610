"""Finite groups given by multiplication tables."""

from __future__ import annotations

from itertools import permutations

__all__ = ["FiniteGroup", "cyclic_group", "symmetric_group", "trivial_group"]


class FiniteGroup:
    """Group on ``0..n-1`` with ``mul[a][b] = ab``; element 0 need not be the identity."""

    def __init__(self, table, labels=None, name: str = ""):
        self.mul = [list(r) for r in table]
        n = len(self.mul)
        if any(len(r) != n for r in self.mul):
            raise ValueError("multiplication table must be square")
        ids = [e for e in range(n) if all(self.mul[e][x] == x and self.mul[x][e] == x for x in range(n))]
        if len(ids) != 1:
            raise ValueError("table has no unique identity")
        self.identity = ids[0]
        self.inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.mul[a][b] == self.identity:
                    self.inv[a] = b
                    break
            if self.inv[a] is None:
                raise ValueError("table has an element without inverse")
        for a in range(n):
            if sorted(self.mul[a]) != list(range(n)):
                raise ValueError("table is not a Latin square")
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.name = name
        self._classes = None

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self):
        return len(self.mul)

    def elements(self):
        return range(len(self.mul))

    def is_associative(self) -> bool:
        m = self.mul
        n = len(m)
        return all(m[m[a][b]][c] == m[a][m[b][c]] for a in range(n) for b in range(n) for c in range(n))

    def conj(self, h: int, g: int) -> int:
        """``h g h^{-1}``."""
        return self.mul[self.mul[h][g]][self.inv[h]]

    def conjugacy_classes(self) -> list[list[int]]:
        if self._classes is None:
            seen: set = set()
            classes = []
            for g in self.elements():
                if g in seen:
                    continue
                cls = sorted({self.conj(h, g) for h in self.elements()})
                seen.update(cls)
                classes.append(cls)
            self._classes = classes
        return self._classes

    def centralizer(self, g: int) -> list[int]:
        return [h for h in self.elements() if self.mul[h][g] == self.mul[g][h]]

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"


def cyclic_group(n: int) -> FiniteGroup:
    """``Z_n`` with element ``k`` standing for the k-th power of a generator."""
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}")


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def symmetric_group(n: int) -> FiniteGroup:
    """``S_n`` on permutations in lexicographic order; ``(p q)(i) = p(q(i))``."""
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    g = FiniteGroup(table, labels=["".join(str(x + 1) for x in p) for p in perms], name=f"S{n}")
    g.perms = perms
    return g
