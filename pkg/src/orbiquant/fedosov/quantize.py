"""Star products from the flat lift, and the verification suite for a Fedosov connection."""

from __future__ import annotations

import random

from ..exact.rational import QQ
from ..exact.series import HSeries
from ..weyl.element import WeylElement
from .connection import FedosovConnection, koszul_delta, koszul_delta_inv
from .data import FedosovData
from .sections import BundleSection

__all__ = [
    "fedosov_r",
    "flat_lift_lambda",
    "function_to_series",
    "moyal_of_functions",
    "random_function",
    "star_product",
    "verify_fedosov",
]


def fedosov_r(data: FedosovData, cap: int | None = None) -> FedosovConnection:
    return FedosovConnection(data, cap)


def _as_section(space, f) -> BundleSection:
    if isinstance(f, BundleSection):
        return f
    return BundleSection.function(space, f)


def flat_lift_lambda(f, conn: FedosovConnection, cap: int | None = None) -> BundleSection:
    """``lambda(f)`` for a polynomial ``{xexp: coeff}`` or a y-free section."""
    return conn.flat_lift(_as_section(conn.space, f), cap)


def star_product(f, g, conn: FedosovConnection, hbar_order: int) -> BundleSection:
    """``f * g`` through ``hbar^{hbar_order - 1}`` as a y-free section."""
    return conn.star(_as_section(conn.space, f), _as_section(conn.space, g), hbar_order)


def function_to_series(section: BundleSection, hbar_order: int | None = None) -> dict:
    """``{xexp: HSeries}`` with the hbar expansion of every coefficient."""
    grouped: dict = {}
    for (x, k), v in section.function_part().items():
        grouped.setdefault(x, {})[k] = v
    return {x: HSeries(terms, cap=hbar_order) for x, terms in grouped.items()}


def moyal_of_functions(f: BundleSection, g: BundleSection) -> BundleSection:
    """Moyal product of two functions of ``x`` using the bivector of the space."""
    space = f.space

    def weyl(s):
        return WeylElement(space, {(k, x): v for (x, k), v in s.function_part().items()})

    prod = weyl(f).moyal(weyl(g))
    return BundleSection(space, {(a, k, space.zero_mono(), ()): v for (k, a), v in prod.terms.items()})


def random_function(space, rng: random.Random, max_degree: int = 2, terms: int = 3) -> BundleSection:
    poly: dict = {}
    for _ in range(terms):
        e = [0] * space.dim
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(space.dim)] += 1
        e = tuple(e)
        poly[e] = poly.get(e, 0) + QQ(rng.randint(-4, 4), rng.randint(1, 2))
    return BundleSection.function(space, {e: c for e, c in poly.items() if c != 0})


def _check(name: str, tag: str, passed: bool, **detail) -> dict:
    out = {"name": name, "tag": tag, "passed": bool(passed)}
    out.update(detail)
    return out


def verify_fedosov(data: FedosovData, weight_cap: int | None = None, hbar_order: int = 4,
                   trials: int = 20, hodge_trials: int = 500, seed: int = 0) -> dict:
    """Run every Fedosov identity on random inputs and return a report."""
    rng = random.Random(seed)
    W = data.weight_cap if weight_cap is None else int(weight_cap)
    space = data.space
    checks = []

    bad = 0
    for _ in range(hodge_trials):
        a = BundleSection.random(space, rng)
        if (a.sigma() + koszul_delta(koszul_delta_inv(a)) + koszul_delta_inv(koszul_delta(a))).terms != a.terms:
            bad += 1
    checks.append(_check("hodge identity", "Hodge", bad == 0, trials=hodge_trials, failures=bad))
    bad = sum(
        1
        for _ in range(hodge_trials // 5)
        for a in [BundleSection.random(space, rng)]
        if not koszul_delta(koszul_delta(a)).is_zero() or not koszul_delta_inv(koszul_delta_inv(a)).is_zero()
    )
    checks.append(_check("delta and delta^-1 square to zero", "de", bad == 0, failures=bad))

    conn = FedosovConnection(data, cap=max(W + 2, 2 * hbar_order))
    checks.append(_check("r has weight >= 3 and one dx", "iter",
                         conn.r.filtration_weight() >= 3 and conn.r.form_degrees() <= {1},
                         iterations=conn.iterations, terms=len(conn.r.terms), status=conn.status))
    R = conn.curvature_R()
    bad = 0
    for _ in range(trials):
        a = BundleSection.random(space, rng, max_forms=1)
        lhs = conn.nabla(conn.nabla(a))
        if not (lhs - R.commutator(a).scale(QQ(1, 2))).is_zero():
            bad += 1
    checks.append(_check("nabla^2 = (1/2)[R, .]", "nabla", bad == 0, failures=bad))

    cw = conn.weyl_curvature()
    checks.append(_check("C^W = -omega + Omega_h", "nado", cw.agrees_with(conn.expected_curvature(), W),
                         weight_cap=W))
    checks.append(_check("Bianchi D(C^W) = 0", "Weyl-c", conn.D(cw).is_zero_upto(W - 1)))
    bad = 0
    for _ in range(trials):
        a = BundleSection.random(space, rng, max_forms=1)
        if not conn.D(conn.D(a)).is_zero_upto(W):
            bad += 1
    checks.append(_check("D^2 = 0", "DDD1", bad == 0, weight_cap=W, failures=bad))

    lam_cap = 2 * hbar_order - 2
    sig_bad = flat_bad = 0
    for _ in range(trials):
        f = random_function(space, rng)
        lf = conn.flat_lift(f, lam_cap)
        if lf.sigma().terms != f.terms:
            sig_bad += 1
        if not conn.D(lf).is_zero_upto(lam_cap - 1):
            flat_bad += 1
    checks.append(_check("sigma lambda = id", "la", sig_bad == 0, failures=sig_bad))
    checks.append(_check("D lambda = 0", "la", flat_bad == 0, failures=flat_bad, weight_cap=lam_cap - 1))

    assoc_bad = unit_bad = 0
    one = BundleSection.const(space)
    for _ in range(max(1, trials // 4)):
        a, b, c = (random_function(space, rng) for _ in range(3))
        left = conn.star(conn.star(a, b, hbar_order), c, hbar_order)
        right = conn.star(a, conn.star(b, c, hbar_order), hbar_order)
        if not left.agrees_with(right, lam_cap):
            assoc_bad += 1
        if not conn.star(a, one, hbar_order).agrees_with(a, lam_cap):
            unit_bad += 1
    checks.append(_check("star associativity", "star", assoc_bad == 0, hbar_order=hbar_order, failures=assoc_bad))
    checks.append(_check("a * 1 = a", "star", unit_bad == 0, failures=unit_bad))

    bracket_bad = 0
    for _ in range(max(1, trials // 4)):
        a, b = random_function(space, rng), random_function(space, rng)
        comm = (conn.star(a, b, 2) - conn.star(b, a, 2)).truncate(2)
        if not comm.agrees_with(moyal_of_functions(a, b) - moyal_of_functions(b, a), 2):
            bracket_bad += 1
    checks.append(_check("a*b - b*a = hbar{a,b} + O(hbar^2)", "star", bracket_bad == 0, failures=bracket_bad))

    flat = FedosovConnection(FedosovData(data.omega, weight_cap=data.weight_cap), cap=2 * hbar_order)
    flat_bad = 0
    for _ in range(max(1, trials // 4)):
        a, b = random_function(space, rng), random_function(space, rng)
        if not flat.star(a, b, hbar_order).agrees_with(moyal_of_functions(a, b), lam_cap):
            flat_bad += 1
    checks.append(_check("flat data: star equals Moyal", "circ", flat_bad == 0, failures=flat_bad))

    return {
        "schema": "1",
        "command": "fedosov-verify",
        "weight_cap": W,
        "hbar_order": hbar_order,
        "seed": seed,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
