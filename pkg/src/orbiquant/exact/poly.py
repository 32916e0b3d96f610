"""Sparse commutative polynomials stored as ``{exponent_tuple: coeff}`` dicts.

These helpers are shared by the Weyl, Fedosov and Koszul layers, which keep
their own richer key structures but reduce to this representation for
substitutions and derivatives.
"""

from __future__ import annotations

import itertools
from math import factorial

from .rational import QQ

__all__ = [
    "add_into",
    "clean",
    "mono_add",
    "mono_deriv",
    "mono_degree",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_deriv",
    "poly_linear_substitute",
    "poly_eval_monomials",
    "multinomial_pow",
    "monomials_of_degree",
    "factorial_of",
]


def add_into(target: dict, key, value) -> None:
    """``target[key] += value`` dropping exact zeros."""
    if value == 0:
        return
    nv = target.get(key, 0) + value
    if nv != 0:
        target[key] = nv
    else:
        target.pop(key, None)


def clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


def mono_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(a: tuple) -> int:
    return sum(a)


def mono_deriv(a: tuple, i: int):
    """``d/dz_i z^a = c z^(a - e_i)``; returns ``(c, exponent)`` or ``None``."""
    c = a[i]
    if c == 0:
        return None
    return c, a[:i] + (c - 1,) + a[i + 1 :]


def factorial_of(a: tuple) -> int:
    out = 1
    for e in a:
        out *= factorial(e)
    return out


def poly_add(p: dict, q: dict, scale=1) -> dict:
    out = dict(p)
    for k, v in q.items():
        add_into(out, k, v * scale if scale != 1 else v)
    return out


def poly_scale(p: dict, c) -> dict:
    if c == 0:
        return {}
    return {k: v * c for k, v in p.items()}


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for k1, v1 in p.items():
        for k2, v2 in q.items():
            add_into(out, mono_add(k1, k2), v1 * v2)
    return out


def poly_deriv(p: dict, i: int) -> dict:
    out: dict = {}
    for k, v in p.items():
        r = mono_deriv(k, i)
        if r is not None:
            add_into(out, r[1], v * r[0])
    return out


def multinomial_pow(linear: dict, e: int, nvars: int) -> dict:
    """Power of a linear form ``{var: coeff}`` as a polynomial in ``nvars`` variables."""
    result = {(0,) * nvars: QQ(1)}
    base = {tuple(int(j == i) for j in range(nvars)): c for i, c in linear.items() if c != 0}
    for _ in range(e):
        result = poly_mul(result, base)
    return result


def poly_linear_substitute(p: dict, columns: list[dict], nvars: int) -> dict:
    """Substitute ``z_j -> sum_i columns[j][i] z_i``.

    ``columns[j]`` is a sparse dict ``{i: coeff}``; the result lives in ``nvars``
    variables.
    """
    powers: dict = {}

    def power(j: int, e: int) -> dict:
        key = (j, e)
        if key not in powers:
            if e == 0:
                powers[key] = {(0,) * nvars: QQ(1)}
            else:
                base = {tuple(int(t == i) for t in range(nvars)): c for i, c in columns[j].items() if c != 0}
                powers[key] = poly_mul(power(j, e - 1), base)
        return powers[key]

    out: dict = {}
    for mono, c in p.items():
        term = {(0,) * nvars: c}
        for j, e in enumerate(mono):
            if e:
                term = poly_mul(term, power(j, e))
                if not term:
                    break
        for k, v in term.items():
            add_into(out, k, v)
    return out


def poly_eval_monomials(p: dict, values: list) -> object:
    total = QQ(0)
    for mono, c in p.items():
        t = c
        for v, e in zip(values, mono):
            if e:
                t = t * v**e
        total = total + t
    return total


def monomials_of_degree(nvars: int, degree: int):
    """All exponent tuples of total degree ``degree`` (lexicographic order)."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for comb in itertools.combinations_with_replacement(range(nvars), degree):
        a = [0] * nvars
        for i in comb:
            a[i] += 1
        yield tuple(a)
