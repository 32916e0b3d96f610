"""Randomised identity suites for the Moyal product and the twisted cycles ``psi(g)``."""

from __future__ import annotations

import random

from ..exact.rational import QQ
from .chains import twisted_cycle_psi
from .element import WeylElement
from .space import SymplecticSpace

__all__ = ["cycle_suite", "moyal_suite", "random_weyl"]


def random_weyl(space: SymplecticSpace, rng: random.Random, max_ydeg: int = 4,
                terms: int = 3, max_hbar: int = 1) -> WeylElement:
    out: dict = {}
    for _ in range(terms):
        alpha = [0] * space.dim
        for _ in range(rng.randint(0, max_ydeg)):
            alpha[rng.randrange(space.dim)] += 1
        key = (rng.randint(0, max_hbar), tuple(alpha))
        out[key] = out.get(key, 0) + QQ(rng.randint(-5, 5), rng.randint(1, 3))
    return WeylElement(space, out)


def moyal_suite(space: SymplecticSpace, trials: int = 1000, seed: int = 0, max_ydeg: int = 4) -> list[dict]:
    """Associativity on random triples and ``[y^i, y^j] = hbar B^{ij}``."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        a, b, c = (random_weyl(space, rng, max_ydeg) for _ in range(3))
        if (a * b) * c != a * (b * c):
            bad += 1
    comm_bad = 0
    for i in range(space.dim):
        for j in range(space.dim):
            lhs = WeylElement.y(space, i).commutator(WeylElement.y(space, j))
            if lhs != WeylElement.hbar(space).scale(space.B[i, j]):
                comm_bad += 1
    return [
        {"name": "Moyal associativity", "tag": "circ", "passed": bad == 0, "failures": bad,
         "trials": trials, "max_ydeg": max_ydeg},
        {"name": "[y^i, y^j] = hbar B^ij", "tag": "circ", "passed": comm_bad == 0, "failures": comm_bad},
    ]


def cycle_suite(group) -> dict:
    """``b psi(g) = 0`` for every element of a finite symplectic group."""
    failing = []
    sizes = []
    for idx, g in enumerate(group.elements):
        psi = twisted_cycle_psi(g, group.space)
        sizes.append(len(psi.terms))
        if not psi.boundary().is_zero():
            failing.append(idx)
    return {"name": "b psi(g) = 0", "tag": "ka-mb", "passed": not failing, "failing_elements": failing,
            "elements": len(sizes), "psi_terms": sizes}
