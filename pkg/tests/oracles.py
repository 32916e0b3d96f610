"""Independent reference computations used to freeze derived values.

They share no code with the package beyond plain data: polynomials are dicts
``{(hbar_power, exponent_tuple): Fraction}`` and matrices are nested lists.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial


def moyal(p: dict, q: dict, B, max_order: int | None = None) -> dict:
    """``sum_n (hbar/2)^n / n! P^n (p (x) q)`` with ``P = B^{ij} d_i (x) d_j``, multiplied out.

    ``P`` is applied to the tensor ``p (x) q`` stored as ``{(k, a, b): c}``;
    the series stops once every term is differentiated away.
    """
    dim = len(B)
    pairs = [(i, j, Fraction(B[i][j])) for i in range(dim) for j in range(dim) if B[i][j] != 0]
    state: dict = {}
    for (kp, a), cp in p.items():
        for (kq, b), cq in q.items():
            key = (kp + kq, a, b)
            state[key] = state.get(key, 0) + Fraction(cp) * Fraction(cq)
    out: dict = {}
    n = 0
    while state and (max_order is None or n <= max_order):
        scale = Fraction(1, 2**n * factorial(n))
        for (k, a, b), c in state.items():
            mono = tuple(x + y for x, y in zip(a, b))
            key = (k + n, mono)
            out[key] = out.get(key, 0) + scale * c
        nxt: dict = {}
        for (k, a, b), c in state.items():
            for i, j, bij in pairs:
                if a[i] == 0 or b[j] == 0:
                    continue
                a2 = a[:i] + (a[i] - 1,) + a[i + 1 :]
                b2 = b[:j] + (b[j] - 1,) + b[j + 1 :]
                key = (k, a2, b2)
                nxt[key] = nxt.get(key, 0) + c * bij * a[i] * b[j]
        state = {key: v for key, v in nxt.items() if v}
        n += 1
    return {key: v for key, v in out.items() if v}


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def perm_sign(p) -> int:
    p = list(p)
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def conjugacy_class_sizes(elements, mult, inv) -> list[int]:
    """Brute-force orbits of conjugation on a group given by index tables."""
    seen: set = set()
    sizes = []
    for x in range(len(elements)):
        if x in seen:
            continue
        orbit = {mult(mult(g, x), inv(g)) for g in range(len(elements))}
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def permutation_matrix_group(n: int):
    """``S_n`` acting by permutation matrices, as lists."""
    mats = []
    for p in permutations(range(n)):
        mats.append([[1 if p[j] == i else 0 for j in range(n)] for i in range(n)])
    return mats


def fraction_rank(rows: list[list]) -> int:
    M = [[Fraction(x) for x in r] for r in rows if any(r)]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(rank + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def bar_homology_dims(mult, dim: int, qmax: int) -> list[int]:
    """``HH_q(A, A)`` from the unnormalized bar complex ``A^{(x) q+1}``.

    ``mult(i, j)`` returns ``{k: coeff}`` over the rationals.
    """
    def cells(q):
        return list(product(range(dim), repeat=q + 1))

    def boundary_matrix(q):
        src, tgt = cells(q), cells(q - 1)
        index = {c: n for n, c in enumerate(tgt)}
        rows = []
        for c in src:
            col = [Fraction(0)] * len(tgt)
            for i in range(q):
                for k, v in mult(c[i], c[i + 1]).items():
                    col[index[c[:i] + (k,) + c[i + 2 :]]] += (-1) ** i * Fraction(str(v))
            for k, v in mult(c[q], c[0]).items():
                col[index[(k,) + c[1:q]]] += (-1) ** q * Fraction(str(v))
            rows.append(col)
        return rows

    ranks = [0] + [fraction_rank(boundary_matrix(q)) for q in range(1, qmax + 2)]
    return [dim ** (q + 1) - ranks[q] - ranks[q + 1] for q in range(qmax + 1)]
