"""Randomised identity suites for the mixed resolution of ``A[G]``."""

from __future__ import annotations

import random

from .algebra import FiniteDimAlgebra
from .mixed import MixedResolution

__all__ = ["differential_suite", "homotopy_suite"]


def _check(name: str, tag: str, failures: int, **detail) -> dict:
    out = {"name": name, "tag": tag, "passed": failures == 0, "failures": failures}
    out.update(detail)
    return out


def _bidegrees(rng: random.Random, max_m: int, max_q: int):
    m = rng.randint(-1, max_m)
    return m, (0 if m < 0 else rng.randint(0, max_q))


def homotopy_suite(A: FiniteDimAlgebra, trials: int = 500, seed: int = 0,
                   max_m: int = 3, max_q: int = 3) -> dict:
    """``chi D + D chi = Id`` on random chains of bidegree at most ``(max_m, max_q)``."""
    rng = random.Random(seed)
    R = MixedResolution(A)
    bad = 0
    first = None
    for _ in range(trials):
        m, q = _bidegrees(rng, max_m, max_q)
        c = R.random_chain(rng, m, q)
        if R.homotopy_defect(c):
            bad += 1
            if first is None:
                first = [m, q]
    check = _check("chi D + D chi = Id", "hom-op-pro", bad, trials=trials)
    if first is not None:
        check["first_failing_bidegree"] = first
    return check


def differential_suite(A: FiniteDimAlgebra, trials: int = 200, seed: int = 0,
                       max_m: int = 3, max_q: int = 3) -> list[dict]:
    """``beta^2 = beta'^2 = beta beta' + beta' beta = 0`` and bimodule linearity."""
    rng = random.Random(seed)
    R = MixedResolution(A)
    n_ag = R.AG.dim
    fails = {"bb": 0, "bpbp": 0, "anti": 0, "left": 0, "right": 0}
    for _ in range(trials):
        m, q = _bidegrees(rng, max_m, max_q)
        c = R.random_chain(rng, m, q)
        b, bp = R.beta(c), R.beta_prime(c)
        if R.beta(b):
            fails["bb"] += 1
        if R.beta_prime(bp):
            fails["bpbp"] += 1
        if R.difference(R.beta(bp), {k: -v for k, v in R.beta_prime(b).items()}):
            fails["anti"] += 1
        s = rng.randrange(n_ag)
        for op in (R.beta, R.beta_prime):
            if R.difference(op(R.left_mul(s, c)), R.left_mul(s, op(c))):
                fails["left"] += 1
            if R.difference(op(R.right_mul(c, s)), R.right_mul(op(c), s)):
                fails["right"] += 1
    return [
        _check("beta^2 = 0", "beta-a", fails["bb"], trials=trials),
        _check("beta'^2 = 0", "beta'-a", fails["bpbp"], trials=trials),
        _check("beta beta' + beta' beta = 0", "B-B-mod", fails["anti"], trials=trials),
        _check("beta, beta' commute with left A[G] action", "B-B-mod", fails["left"], trials=trials),
        _check("beta, beta' commute with right A[G] action", "B-B-mod", fails["right"], trials=trials),
    ]
