"""Compatibility of the Fedosov construction with a linear finite group action."""

from __future__ import annotations

import random

from ..exact.linalg import ExactMatrix
from ..groups.matrix_group import FiniteSymplecticGroup
from .connection import FedosovConnection
from .data import FedosovData
from .quantize import random_function

__all__ = ["equivariance_check"]


def _elements(group) -> list[ExactMatrix]:
    if isinstance(group, FiniteSymplecticGroup):
        return list(group.elements)
    return [g if isinstance(g, ExactMatrix) else ExactMatrix(g) for g in group]


def equivariance_check(data: FedosovData, group, pairs: int = 100, hbar_order: int = 3,
                       seed: int = 0, lifts: int | None = None) -> dict:
    """Check ``lambda(a^g) = lambda(a)^g`` and ``(a*b)^g = a^g * b^g``.

    Invariance of ``Gamma`` and ``Omega_h`` under every element is checked
    first; when it fails the report names the offending input and element and
    the star-product comparison is skipped.
    """
    elements = _elements(group)
    for g in elements:
        if g.rows != data.dim:
            raise ValueError("group element dimension does not match the data")
    failures = []
    for idx, g in enumerate(elements):
        inv = data.invariance_report(g)
        for name, ok in inv.items():
            if not ok:
                failures.append({"element": idx, "input": name.replace("_invariant", "")})
        if (g.transpose() @ data.space.B @ g) != data.space.B:
            failures.append({"element": idx, "input": "omega"})
    report = {
        "schema": "1",
        "command": "equivariance",
        "group_order": len(elements),
        "data_invariant": not failures,
        "invariance_failures": failures,
    }
    if failures:
        report.update({"checks": [], "passed": False})
        return report

    rng = random.Random(seed)
    conn = FedosovConnection(data, cap=2 * hbar_order)
    cap = 2 * hbar_order - 2
    space = data.space
    lift_bad = star_bad = 0
    n_lifts = max(1, pairs // 5) if lifts is None else lifts
    for _ in range(n_lifts):
        a = random_function(space, rng)
        la = conn.flat_lift(a, cap)
        for g in elements:
            if not conn.flat_lift(a.act(g), cap).agrees_with(la.act(g), cap):
                lift_bad += 1
    for _ in range(pairs):
        a, b = random_function(space, rng), random_function(space, rng)
        ab = conn.star(a, b, hbar_order)
        for g in elements:
            if not ab.act(g).agrees_with(conn.star(a.act(g), b.act(g), hbar_order), cap):
                star_bad += 1
    checks = [
        {"name": "lambda(a^g) = lambda(a)^g", "tag": "la", "passed": lift_bad == 0, "failures": lift_bad},
        {"name": "(a*b)^g = a^g * b^g", "tag": "star", "passed": star_bad == 0, "failures": star_bad,
         "pairs": pairs, "hbar_order": hbar_order},
    ]
    report.update({"checks": checks, "passed": all(c["passed"] for c in checks)})
    return report
