"""Ext of a polynomial ring over its enveloping algebra, and the HKR cocycle.

For ``A_0 = C[x_1..x_d]`` the Koszul resolution gives the cochain complex
``A_0^e (x) Lambda^i``, ``d(f e^S) = sum_j (x_j - x'_j) f e^j ^ e^S`` with
``A_0^e = C[x, x']``.  An internal degree ``t`` fixes the polynomial degree
``p = t - d + i`` at level ``i`` so that each graded piece is finite.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations
from math import comb

from ..exact.linalg import sparse_rank
from ..exact.poly import add_into, monomials_of_degree, poly_deriv, poly_mul
from ..exact.rational import QQ
from ..weyl.splitting import permutation_sign

__all__ = [
    "UnsupportedError",
    "koszul_ext",
    "hkr_cochain",
    "hkr_cocycle_defect",
    "random_polynomial",
]

MAX_VARIABLES = 3


class UnsupportedError(ValueError):
    """Request outside the supported range."""


def _wedge_in(j: int, S: tuple):
    if j in S:
        return None
    sign = -1 if sum(1 for s in S if s < j) % 2 else 1
    return sign, tuple(sorted(S + (j,)))


def _differential_rows(d: int, i: int, p: int) -> list[dict]:
    """Images of the basis ``x^a e^S`` (degree ``p``, ``|S| = i``) at level ``i + 1``."""
    rows = []
    if p < 0:
        return rows
    for S in combinations(range(d), i):
        for a in monomials_of_degree(2 * d, p):
            img: dict = {}
            for j in range(d):
                w = _wedge_in(j, S)
                if w is None:
                    continue
                sign, T = w
                up = list(a)
                up[j] += 1
                add_into(img, (tuple(up), T), QQ(sign))
                up = list(a)
                up[d + j] += 1
                add_into(img, (tuple(up), T), QQ(-sign))
            rows.append(img)
    return rows


def _level_dim(d: int, i: int, p: int) -> int:
    if p < 0 or i < 0 or i > d:
        return 0
    return comb(d, i) * comb(p + 2 * d - 1, 2 * d - 1)


def koszul_ext(d: int, degree_cap: int) -> dict:
    """``{i: [dim Ext^i in internal degree t for t = 0..degree_cap]}``."""
    if d < 1 or d > MAX_VARIABLES:
        raise UnsupportedError(f"koszul_ext supports 1 <= d <= {MAX_VARIABLES}, got {d}")
    out = {i: [] for i in range(d + 1)}
    for t in range(degree_cap + 1):
        ranks = {}
        for i in range(d + 1):
            p = t - d + i
            ranks[i] = sparse_rank(_differential_rows(d, i, p)) if i < d else 0
        for i in range(d + 1):
            p = t - d + i
            dim = _level_dim(d, i, p)
            out[i].append(dim - ranks[i] - (ranks[i - 1] if i > 0 else 0))
    return out


def random_polynomial(rng: random.Random, d: int, max_degree: int = 3, terms: int = 3) -> dict:
    out: dict = {}
    for _ in range(terms):
        deg = rng.randint(0, max_degree)
        mono = [0] * d
        for _ in range(deg):
            mono[rng.randrange(d)] += 1
        add_into(out, tuple(mono), QQ(rng.randint(-4, 4)))
    return out


def hkr_cochain(f: dict, d: int):
    """``eps(f d_1 ^ ... ^ d_d)(a_1..a_d) = f det(d a_i / d x_j)``."""

    def cochain(args):
        total: dict = {}
        grads = [[poly_deriv(a, j) for j in range(d)] for a in args]
        for perm in permutations(range(d)):
            term = dict(f)
            for i, j in enumerate(perm):
                term = poly_mul(term, grads[i][j])
                if not term:
                    break
            s = permutation_sign(perm)
            for k, v in term.items():
                add_into(total, k, v * s)
        return total

    return cochain


def hkr_cocycle_defect(f: dict, args: list[dict], d: int) -> dict:
    """Hochschild coboundary of ``eps(f)`` evaluated on ``d + 1`` polynomials."""
    psi = hkr_cochain(f, d)
    q = d
    out = poly_mul(args[0], psi(args[1:]))
    for i in range(1, q + 1):
        merged = args[: i - 1] + [poly_mul(args[i - 1], args[i])] + args[i + 1 :]
        sign = -1 if i % 2 else 1
        for k, v in psi(merged).items():
            add_into(out, k, v * sign)
    sign = -1 if (q + 1) % 2 else 1
    for k, v in poly_mul(psi(args[:q]), args[q]).items():
        add_into(out, k, v * sign)
    return out
