"""Geometric input of the Fedosov construction on affine space."""

from __future__ import annotations

from itertools import permutations

from ..exact.linalg import ExactMatrix, inverse
from ..exact.poly import add_into, mono_deriv
from ..exact.rational import QQ
from ..exact.serialize import SchemaError, matrix_from_json, matrix_to_json, scalar_from_json, scalar_to_json
from ..weyl.space import SymplecticSpace, darboux_form
from .sections import BundleSection, wedge_merge

__all__ = ["FedosovData", "NotClosedError", "symmetric_gamma"]

DEFAULT_WEIGHT_CAP = 10


class NotClosedError(ValueError):
    """``Omega_hbar`` is not closed under the exterior derivative."""


def symmetric_gamma(components: dict) -> dict:
    """Fill every permutation of each ``(i, j, k)`` with the same polynomial."""
    out: dict = {}
    for ijk, poly in components.items():
        for perm in set(permutations(ijk)):
            if perm in out and out[perm] != poly:
                raise ValueError(f"conflicting Gamma entries at {perm}")
            out[perm] = dict(poly)
    return out


class FedosovData:
    """``omega_{ij}``, a totally symmetric ``Gamma_{ijk}(x)`` and ``Omega_hbar``.

    ``gamma`` maps ``(i, j, k)`` to a polynomial ``{xexp: coeff}``;
    ``omega_h`` maps ``(hbar_power, (i, j))`` with ``i < j`` to a polynomial,
    meaning ``hbar^p f(x) dx^i ^ dx^j``.
    """

    def __init__(self, omega, gamma: dict | None = None, omega_h: dict | None = None,
                 weight_cap: int = DEFAULT_WEIGHT_CAP, check: bool = True):
        omega = omega if isinstance(omega, ExactMatrix) else ExactMatrix(omega)
        if omega.rows != omega.cols or omega.rows % 2:
            raise SchemaError("omega must be a square matrix of even size")
        if omega.transpose() != -omega:
            raise SchemaError("omega must be antisymmetric")
        try:
            B = inverse(omega)
        except ZeroDivisionError:
            raise SchemaError("omega must be invertible") from None
        self.omega = omega
        self.space = SymplecticSpace(B)
        self.dim = omega.rows
        self.weight_cap = int(weight_cap)
        if self.weight_cap < 1:
            raise SchemaError("weight_cap must be positive")
        self.gamma = {tuple(k): {tuple(e): QQ(c) if isinstance(c, int) else c for e, c in p.items() if c != 0}
                      for k, p in (gamma or {}).items()}
        self.gamma = {k: p for k, p in self.gamma.items() if p}
        self.omega_h: dict = {}
        for (p, ij), poly in (omega_h or {}).items():
            i, j = ij
            if i == j:
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            tgt = self.omega_h.setdefault((int(p), (i, j)), {})
            for e, c in poly.items():
                add_into(tgt, tuple(e), c * sign)
        self.omega_h = {k: v for k, v in self.omega_h.items() if v}
        if check:
            self.validate()

    @classmethod
    def flat(cls, n: int = 1, weight_cap: int = DEFAULT_WEIGHT_CAP) -> FedosovData:
        """Darboux form, ``Gamma = 0`` and ``Omega_hbar = 0``."""
        return cls(inverse(darboux_form(n)), weight_cap=weight_cap)

    # invariants
    def validate(self) -> None:
        d = self.dim
        for (i, j, k), poly in self.gamma.items():
            if not all(0 <= t < d for t in (i, j, k)):
                raise SchemaError(f"Gamma index out of range: {(i, j, k)}")
            for perm in permutations((i, j, k)):
                if self.gamma.get(perm) != poly:
                    raise SchemaError(f"Gamma is not totally symmetric at {(i, j, k)} vs {perm}")
            self._check_xexp(poly)
        for (p, (i, j)), poly in self.omega_h.items():
            if p < 1:
                raise SchemaError("Omega_h must start at hbar^1")
            if not (0 <= i < d and 0 <= j < d):
                raise SchemaError(f"Omega_h index out of range: {(i, j)}")
            self._check_xexp(poly)
        if not self.omega_h_closed():
            raise NotClosedError("Omega_h is not closed")

    def _check_xexp(self, poly):
        for e in poly:
            if len(e) != self.dim or any(t < 0 for t in e):
                raise SchemaError(f"bad x exponent {list(e)}")

    def omega_h_closed(self) -> bool:
        dOmega: dict = {}
        for (p, (i, j)), poly in self.omega_h.items():
            for e, c in poly.items():
                for m in range(self.dim):
                    de = mono_deriv(e, m)
                    if de is None:
                        continue
                    mult, e2 = de
                    w = wedge_merge((m,), (i, j))
                    if w is None:
                        continue
                    add_into(dOmega, (p, w[1], e2), c * mult * w[0])
        return not dOmega

    def is_flat(self) -> bool:
        return not self.gamma and not self.omega_h

    # sections built from the data
    def gamma_tilde(self) -> BundleSection:
        """``(1/2) Gamma_{ijk}(x) y^i y^j dx^k``; ``nabla = d + (1/hbar)[gamma_tilde, .]``."""
        d = self.dim
        out: dict = {}
        half = QQ(1, 2)
        for (i, j, k), poly in self.gamma.items():
            y = [0] * d
            y[i] += 1
            y[j] += 1
            for e, c in poly.items():
                add_into(out, (e, 0, tuple(y), (k,)), c * half)
        return BundleSection(self.space, out)

    def christoffel(self) -> dict:
        """``Gamma^k_{ij} = omega^{kl} Gamma_{lij}`` with ``omega^{kl} = B^{kl}``."""
        B = self.space.B
        out: dict = {}
        for (l, i, j), poly in self.gamma.items():
            for k in range(self.dim):
                b = B[k, l]
                if b == 0:
                    continue
                tgt = out.setdefault((k, i, j), {})
                for e, c in poly.items():
                    add_into(tgt, e, c * b)
        return {key: p for key, p in out.items() if p}

    def omega_h_section(self) -> BundleSection:
        z = self.space.zero_mono()
        out: dict = {}
        for (p, S), poly in self.omega_h.items():
            for e, c in poly.items():
                add_into(out, (e, p, z, S), c)
        return BundleSection(self.space, out)

    def omega_section(self) -> BundleSection:
        """``omega = omega_{ij} dx^i dx^j`` summed over all ordered pairs."""
        z = self.space.zero_mono()
        out: dict = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                c = self.omega[i, j]
                if c != 0:
                    out[(z, 0, z, (i, j))] = 2 * c
        return BundleSection(self.space, out)

    def a0(self) -> BundleSection:
        """``-dx^i omega_{ij} y^j``, the leading part of the connection form."""
        z = self.space.zero_mono()
        out: dict = {}
        for i in range(self.dim):
            for j in range(self.dim):
                c = self.omega[i, j]
                if c != 0:
                    add_into(out, (z, 0, self.space.unit_mono(j), (i,)), -c)
        return BundleSection(self.space, out)

    # action of a linear map on the data
    def acted(self, g) -> FedosovData:
        """Data transported by the substitution ``v^j -> sum_i g[i, j] v^i``."""
        gt = self.gamma_tilde().act(g)
        gamma: dict = {}
        for (e, _, y, S), c in gt.terms.items():
            idx = [i for i, t in enumerate(y) for _ in range(t)]
            i, j = idx
            factor = 2 if i == j else 1
            for perm in set(permutations((i, j, S[0]))):
                gamma.setdefault(perm, {})[e] = c * factor
        oh: dict = {}
        for (e, p, _, S), c in self.omega_h_section().act(g).terms.items():
            add_into(oh.setdefault((p, S), {}), e, c)
        return FedosovData(self.omega, gamma, oh, self.weight_cap, check=False)

    def invariance_report(self, g) -> dict:
        other = self.acted(g)
        return {
            "gamma_invariant": other.gamma_tilde() == self.gamma_tilde(),
            "omega_h_invariant": other.omega_h_section() == self.omega_h_section(),
        }

    # JSON, 0-based indices, xdeg an exponent list
    def to_json(self) -> dict:
        gamma = []
        for (i, j, k), poly in sorted(self.gamma.items()):
            for e, c in sorted(poly.items()):
                gamma.append({"ijk": [i, j, k], "xdeg": list(e), "coeff": scalar_to_json(c)})
        oh = []
        for (p, (i, j)), poly in sorted(self.omega_h.items()):
            for e, c in sorted(poly.items()):
                oh.append({"hbar": p, "ij": [i, j], "xdeg": list(e), "coeff": scalar_to_json(c)})
        return {
            "schema": "1",
            "dim": self.dim,
            "omega": matrix_to_json(self.omega),
            "Gamma": gamma,
            "Omega_h": oh,
            "weight_cap": self.weight_cap,
        }

    @classmethod
    def from_json(cls, obj) -> FedosovData:
        if not isinstance(obj, dict):
            raise SchemaError("Fedosov data must be a JSON object")
        try:
            dim = int(obj["dim"])
            omega = matrix_from_json(obj["omega"])
            if omega.rows != dim:
                raise SchemaError("omega size does not match dim")
            gamma: dict = {}
            for t in obj.get("Gamma", []):
                key = tuple(int(i) for i in t["ijk"])
                if len(key) != 3:
                    raise SchemaError("Gamma entries need three indices")
                e = tuple(int(v) for v in t.get("xdeg", [0] * dim))
                add_into(gamma.setdefault(key, {}), e, scalar_from_json(t["coeff"]))
            oh: dict = {}
            for t in obj.get("Omega_h", []):
                ij = tuple(int(i) for i in t["ij"])
                if len(ij) != 2:
                    raise SchemaError("Omega_h entries need two indices")
                e = tuple(int(v) for v in t.get("xdeg", [0] * dim))
                add_into(oh.setdefault((int(t["hbar"]), ij), {}), e, scalar_from_json(t["coeff"]))
            cap = int(obj.get("weight_cap", DEFAULT_WEIGHT_CAP))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SchemaError):
                raise
            raise SchemaError(f"bad Fedosov data: {exc}") from exc
        return cls(omega, gamma, oh, cap)
