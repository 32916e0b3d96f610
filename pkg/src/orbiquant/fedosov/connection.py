"""Operators on Weyl-bundle forms: ``d``, ``nabla``, the Koszul pair and the Fedosov connection.

Conventions.  ``nabla = d + (1/hbar)[gamma_tilde, .]`` with
``gamma_tilde = (1/2) Gamma_{ijk} y^i y^j dx^k``, which on monomials is
``dx^i d/dx^i - dx^i Gamma^k_{ij} y^j d/dy^k``.  ``R_F = d gamma_tilde +
(1/hbar) gamma_tilde o gamma_tilde`` gives ``nabla^2 = (1/hbar)[R_F, .]`` so
the curvature normalised by ``nabla^2 = (1/2)[R, .]`` is ``R = (2/hbar) R_F``.
Writing ``A = a0 + r`` with ``a0 = -dx^i omega_{ij} y^j``, the Weyl curvature
``C^W = hbar R + 2 nabla A + (1/hbar)[A, A]`` equals ``-omega + Omega_h``
(``omega = omega_{ij} dx^i dx^j`` over ordered pairs) exactly when
``r = delta^{-1}(R_F - Omega_h / 2) + delta^{-1}(nabla r + (1/hbar) r o r)``.
"""

from __future__ import annotations

import logging

from ..exact.poly import add_into
from ..exact.rational import QQ
from .data import FedosovData
from .sections import BundleSection, wedge_merge

__all__ = [
    "CapError",
    "FedosovConnection",
    "de_rham",
    "koszul_delta",
    "koszul_delta_inv",
    "nabla",
]

log = logging.getLogger(__name__)


class CapError(ValueError):
    """The weight cap is too small for the requested precision."""


def _prepend(i: int, S: tuple):
    """``dx^i ^ dx^S``."""
    return wedge_merge((i,), S)


def de_rham(a: BundleSection) -> BundleSection:
    """``dx^i d/dx^i``."""
    out: dict = {}
    for (x, k, y, S), v in a.terms.items():
        for i, e in enumerate(x):
            if not e:
                continue
            w = _prepend(i, S)
            if w is None:
                continue
            x2 = x[:i] + (e - 1,) + x[i + 1 :]
            add_into(out, (x2, k, y, w[1]), v * (e * w[0]))
    return a._new(out, a.cap)


def koszul_delta(a: BundleSection) -> BundleSection:
    """``delta = dx^i d/dy^i``; lowers the weight by one."""
    out: dict = {}
    for (x, k, y, S), v in a.terms.items():
        for i, e in enumerate(y):
            if not e:
                continue
            w = _prepend(i, S)
            if w is None:
                continue
            y2 = y[:i] + (e - 1,) + y[i + 1 :]
            add_into(out, (x, k, y2, w[1]), v * (e * w[0]))
    return a._new(out, None if a.cap is None else a.cap - 1)


def koszul_delta_inv(a: BundleSection) -> BundleSection:
    """``y^k i(d/dx^k)`` followed by the factor ``1/(p+q)``; zero on ``p+q = 0``."""
    out: dict = {}
    for (x, k, y, S), v in a.terms.items():
        q = len(S)
        if q == 0:
            continue
        scale = QQ(1, sum(y) + q)
        for pos, j in enumerate(S):
            S2 = S[:pos] + S[pos + 1 :]
            y2 = y[:j] + (y[j] + 1,) + y[j + 1 :]
            c = v * scale
            add_into(out, (x, k, y2, S2), c if pos % 2 == 0 else -c)
    return a._new(out, None if a.cap is None else a.cap + 1)


def nabla(a: BundleSection, data: FedosovData, christoffel: dict | None = None) -> BundleSection:
    """``dx^i d/dx^i - dx^i Gamma^k_{ij}(x) y^j d/dy^k``; preserves the weight."""
    out = dict(de_rham(a).terms)
    chris = data.christoffel() if christoffel is None else christoffel
    if chris:
        for (x, kh, y, S), v in a.terms.items():
            for (k, i, j), poly in chris.items():
                e = y[k]
                if not e:
                    continue
                w = _prepend(i, S)
                if w is None:
                    continue
                y2 = list(y)
                y2[k] -= 1
                y2[j] += 1
                y2 = tuple(y2)
                c = -v * (e * w[0])
                for px, pc in poly.items():
                    x2 = tuple(s + t for s, t in zip(x, px))
                    add_into(out, (x2, kh, y2, w[1]), c * pc)
    return a._new(out, a.cap)


class FedosovConnection:
    """``D = nabla - delta + (1/hbar)[r, .]`` computed to Fedosov weight ``cap``.

    ``r`` is exact on weights ``<= cap`` (``cap`` defaults to the data's
    weight cap plus two, which certifies ``D^2`` and ``C^W`` up to the
    data's cap).
    """

    def __init__(self, data: FedosovData, cap: int | None = None):
        self.data = data
        self.space = data.space
        self.cap = data.weight_cap + 2 if cap is None else int(cap)
        if self.cap < 1:
            raise CapError("weight cap must be positive")
        self._chris = data.christoffel()
        self._gamma_tilde = data.gamma_tilde()
        self.status = "ok" if self.cap >= 3 else "warning: cap below the first weight of r"
        self.iterations = 0
        self.r = self._solve_r()

    # basic operators
    def nabla(self, a: BundleSection) -> BundleSection:
        return nabla(a, self.data, self._chris)

    def curvature_RF(self) -> BundleSection:
        """``R_F = d gamma_tilde + (1/hbar) gamma_tilde o gamma_tilde`` (weight 2)."""
        g = self._gamma_tilde
        return de_rham(g) + g.moyal(g).shift_hbar(-1)

    def curvature_R(self) -> BundleSection:
        """``R`` normalised by ``nabla^2 a = (1/2)[R, a]``."""
        return self.curvature_RF().shift_hbar(-1).scale(2)

    def _solve_r(self) -> BundleSection:
        cap = self.cap
        data = self.data
        source = self.curvature_RF() - data.omega_h_section().scale(QQ(1, 2))
        base = koszul_delta_inv(source.truncate(cap - 1))
        r = BundleSection.zero(self.space, cap)
        for it in range(cap + 1):
            quad = r.moyal(r, cap=cap + 1).shift_hbar(-1)
            new = (base + koszul_delta_inv((self.nabla(r) + quad).truncate(cap - 1))).truncate(cap)
            self.iterations = it + 1
            if new.terms == r.terms:
                break
            r = new
        r = r.truncate(cap)
        log.debug("r stabilised after %d iterations (%d terms)", self.iterations, len(r.terms))
        return r

    # the connection
    def connection_form(self) -> BundleSection:
        return (self.data.a0() + self.r).truncate(self.cap)

    def D(self, a: BundleSection) -> BundleSection:
        ad = self.r.ad_over_hbar(a, cap=None if a.cap is None else a.cap)
        return self.nabla(a) - koszul_delta(a) + ad

    def weyl_curvature(self) -> BundleSection:
        A = self.connection_form()
        hR = self.curvature_RF().scale(2)
        return hR + self.nabla(A).scale(2) + A.ad_over_hbar(A)

    def expected_curvature(self) -> BundleSection:
        return self.data.omega_h_section() - self.data.omega_section()

    def certified_weight(self) -> int:
        """Weights on which ``D^2`` and ``C^W`` are exact for exact inputs."""
        return self.cap - 2

    # flat sections
    def flat_lift(self, a: BundleSection, cap: int | None = None) -> BundleSection:
        """``lambda(a)``: the solution of ``b = a + delta^{-1}(nabla b + (1/hbar)[r, b])``.

        ``a`` must be a function (no ``y``, no ``dx``).  The result is exact up to
        weight ``cap`` (at most ``self.cap - 2``).
        """
        if any(any(y) or S for (_, _, y, S) in a.terms):
            raise ValueError("flat_lift expects a function of x and hbar")
        top = self.cap - 2
        cap = top if cap is None else cap
        if cap > top:
            raise CapError(f"lift to weight {cap} needs connection cap {cap + 2}, have {self.cap}")
        a = a.truncate(cap)
        b = a
        for _ in range(cap + 2):
            step = self.nabla(b) + self.r.ad_over_hbar(b, cap=cap - 1)
            new = (a + koszul_delta_inv(step.truncate(cap - 1))).truncate(cap)
            if new.terms == b.terms:
                break
            b = new
        return b.truncate(cap)

    def star(self, f: BundleSection, g: BundleSection, hbar_order: int) -> BundleSection:
        """``sigma(lambda(f) o lambda(g))`` through ``hbar^{hbar_order - 1}``."""
        if hbar_order < 1:
            raise CapError("hbar_order must be positive")
        cap = 2 * hbar_order - 2
        if cap > self.cap - 2:
            raise CapError(
                f"hbar order {hbar_order} needs connection cap {cap + 2}, have {self.cap}"
            )
        lf = self.flat_lift(f.truncate(cap), cap)
        lg = self.flat_lift(g.truncate(cap), cap)
        return lf.moyal(lg, cap=cap).sigma()
