"""Additive orbifold (Chen-Ruan) cohomology of symplectic quotients.

The Poincare polynomial is ``sum_{[g]} sum_Q t^{codim X_g^Q} P(X_g^Q)^{Z(g)}``.
For a linear quotient ``V/G`` every fixed locus is a linear subspace, so each
conjugacy class contributes ``t^{codim V_g}``.  For other quotients the caller
supplies invariant Betti numbers per fixed component.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..exact.serialize import SchemaError
from ..groups.matrix_group import FiniteSymplecticGroup, is_symplectic_reflection

__all__ = [
    "Component",
    "FixedLocusDatum",
    "IncompleteInputError",
    "OrbifoldSpectrum",
    "general_orbifold_cohomology",
    "linear_fixed_locus_data",
    "linear_orbifold_cohomology",
    "loci_from_json",
    "sra_param_dim",
    "unobstructedness_check",
]


class IncompleteInputError(ValueError):
    """Betti data needed for a check is missing."""

    def __init__(self, missing: list[str]):
        super().__init__("missing required fields: " + ", ".join(missing))
        self.missing = missing


@dataclass(frozen=True)
class Component:
    codim: int
    betti: tuple
    h1_invariant: int | None = None
    permuted: bool = False

    def h1(self) -> int | None:
        if self.h1_invariant is not None:
            return self.h1_invariant
        if len(self.betti) >= 2:
            return self.betti[1]
        return None


@dataclass(frozen=True)
class FixedLocusDatum:
    representative: str
    components: tuple


@dataclass
class OrbifoldSpectrum:
    poincare: dict
    classes: list = field(default_factory=list)

    def coefficient(self, degree: int) -> int:
        return self.poincare.get(degree, 0)

    def total(self) -> int:
        return sum(self.poincare.values())

    def to_json(self) -> dict:
        return {
            "poincare": {str(d): m for d, m in sorted(self.poincare.items())},
            "classes": self.classes,
            "sra_dim": sra_param_dim(self),
        }


def _validate(datum: FixedLocusDatum) -> None:
    for comp in datum.components:
        if comp.codim < 0 or comp.codim % 2:
            raise ValueError(f"class {datum.representative}: fixed component codimension {comp.codim} is not even")
        if any(b < 0 for b in comp.betti):
            raise ValueError(f"class {datum.representative}: negative Betti number")
        if comp.permuted and any(comp.betti[1:]):
            raise ValueError(
                f"class {datum.representative}: components permuted by the centralizer with higher Betti "
                "numbers need the permutation representation, which this input format does not carry"
            )


def general_orbifold_cohomology(data) -> OrbifoldSpectrum:
    """Degree-shifted sum of invariant Betti numbers, one datum per class."""
    poincare: dict = {}
    classes = []
    for datum in data:
        _validate(datum)
        contrib: dict = {}
        for comp in datum.components:
            for j, b in enumerate(comp.betti):
                if b:
                    contrib[j + comp.codim] = contrib.get(j + comp.codim, 0) + b
        for d, m in contrib.items():
            poincare[d] = poincare.get(d, 0) + m
        classes.append(
            {
                "representative": datum.representative,
                "codims": [c.codim for c in datum.components],
                "contribution": {str(d): m for d, m in sorted(contrib.items())},
            }
        )
    return OrbifoldSpectrum({d: m for d, m in poincare.items() if m}, classes)


def linear_fixed_locus_data(G: FiniteSymplecticGroup) -> list[FixedLocusDatum]:
    data = []
    for cls in G.conjugacy_classes():
        rep = cls[0]
        codim = G.space.dim - len(G.splitting(rep).fixed)
        data.append(FixedLocusDatum(str(rep), (Component(codim, (1,), h1_invariant=0),)))
    return data


def linear_orbifold_cohomology(G: FiniteSymplecticGroup) -> OrbifoldSpectrum:
    """``P(t) = sum_{[g]} t^{codim V_g}`` for ``V/G``."""
    spectrum = general_orbifold_cohomology(linear_fixed_locus_data(G))
    for info, cls in zip(spectrum.classes, G.conjugacy_classes()):
        rep = cls[0]
        info.update(
            {
                "size": len(cls),
                "centralizer_order": G.centralizer_order(rep),
                "element_order": G.element_order(rep),
                "codim": info["codims"][0],
                "symplectic_reflection": rep != G.identity and is_symplectic_reflection(G.elements[rep]),
            }
        )
    return spectrum


def sra_param_dim(source) -> int:
    """Coefficient of ``t^2``: the dimension of the deformation parameter space."""
    if isinstance(source, FiniteSymplecticGroup):
        source = linear_orbifold_cohomology(source)
    elif not isinstance(source, OrbifoldSpectrum):
        source = general_orbifold_cohomology(source)
    return source.coefficient(2)


def unobstructedness_check(data, h3_invariant: int | None) -> dict:
    """Check ``H^3(X)^G = 0`` and ``H^1(X_g^Q)^{Z(g)} = 0`` for codimension-2 components."""
    missing, failing = [], []
    if h3_invariant is None:
        missing.append("h3_invariant")
    elif h3_invariant != 0:
        failing.append({"item": "h3_invariant", "value": h3_invariant})
    for datum in data:
        for q, comp in enumerate(datum.components):
            if comp.codim != 2:
                continue
            h1 = comp.h1()
            label = f"classes[{datum.representative}].components[{q}].h1_invariant"
            if h1 is None:
                missing.append(label)
            elif h1 != 0:
                failing.append({"item": label, "value": h1})
    if missing:
        raise IncompleteInputError(missing)
    return {"hypotheses_met": not failing, "failing": failing}


def loci_from_json(obj) -> tuple[list[FixedLocusDatum], int | None]:
    """Parse generic-mode input ``{"h3_invariant": k, "classes": [...]}``."""
    if not isinstance(obj, dict) or not isinstance(obj.get("classes"), list):
        raise SchemaError("fixed-locus input needs a 'classes' list")
    data = []
    for i, c in enumerate(obj["classes"]):
        try:
            comps = []
            for comp in c["components"]:
                betti = tuple(int(b) for b in comp.get("betti", [1]))
                h1 = comp.get("h1_invariant")
                comps.append(
                    Component(int(comp["codim"]), betti, None if h1 is None else int(h1), bool(comp.get("permuted", False)))
                )
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"classes[{i}]: {exc}") from exc
        data.append(FixedLocusDatum(str(c.get("representative", i)), tuple(comps)))
    h3 = obj.get("h3_invariant")
    return data, None if h3 is None else int(h3)
