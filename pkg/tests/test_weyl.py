from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiquant.exact import QQ, ExactMatrix
from orbiquant.groups import cyclic_sl2, minus_identity, plane_swap
from orbiquant.groups.standard import rotation_z4
from orbiquant.weyl import (
    SymplecticSpace,
    TwistedChain,
    WeylElement,
    antisym_mu,
    cycle_suite,
    fixed_splitting,
    moyal_suite,
    twisted_cycle_psi,
)
from orbiquant.weyl.checks import random_weyl

from . import oracles

C2 = SymplecticSpace.darboux(1)
C4 = SymplecticSpace.darboux(2)
MINUS = ExactMatrix([[-1, 0], [0, -1]])
HALF = ExactMatrix([[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def y(space, i):
    return WeylElement.y(space, i)


def weyl_strategy(space, max_deg=3):
    mono = st.tuples(*[st.integers(0, max_deg) for _ in range(space.dim)])
    terms = st.dictionaries(st.tuples(st.integers(0, 1), mono), st.integers(-4, 4), max_size=4)
    return terms.map(lambda t: WeylElement(space, t))


def as_oracle(a: WeylElement) -> dict:
    return {key: Fraction(str(v)) for key, v in a.terms.items()}


def B_lists(space):
    return [[Fraction(str(space.B[i, j])) for j in range(space.dim)] for i in range(space.dim)]


class TestMoyal:
    def test_first_order_expansion(self):
        prod = y(C2, 0) * y(C2, 1)
        expected = WeylElement(C2, {(0, (1, 1)): 1, (1, (0, 0)): QQ(1, 2) * C2.B[0, 1]})
        assert prod == expected

    def test_unit(self):
        a = WeylElement(C2, {(0, (2, 1)): 3, (1, (0, 1)): -1})
        assert WeylElement.const(C2) * a == a == a * WeylElement.const(C2)

    @pytest.mark.parametrize("space", [C2, C4], ids=["C2", "C4"])
    def test_commutator_of_generators(self, space):
        for i in range(space.dim):
            for j in range(space.dim):
                assert y(space, i).commutator(y(space, j)) == WeylElement.hbar(space).scale(space.B[i, j])

    @given(weyl_strategy(C2), weyl_strategy(C2))
    def test_matches_bidifferential_oracle(self, a, b):
        expected = oracles.moyal(as_oracle(a), as_oracle(b), B_lists(C2))
        assert as_oracle(a * b) == expected

    @given(weyl_strategy(C4, 2), weyl_strategy(C4, 2))
    def test_matches_oracle_in_dim4(self, a, b):
        expected = oracles.moyal(as_oracle(a), as_oracle(b), B_lists(C4))
        assert as_oracle(a * b) == expected

    @given(weyl_strategy(C2), weyl_strategy(C2), weyl_strategy(C2))
    def test_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    def test_suite_reports_pass(self):
        assert all(c["passed"] for c in moyal_suite(C2, trials=50, seed=3))

    def test_nonstandard_form(self):
        space = SymplecticSpace(ExactMatrix([[0, 2], [-2, 0]]))
        assert y(space, 0).commutator(y(space, 1)) == WeylElement.hbar(space).scale(2)


class TestWeight:
    @pytest.mark.parametrize(
        "terms,weight",
        [({(1, (1, 0)): 1}, 3), ({(-1, (1, 1)): 1}, 0), ({(0, (0, 0)): 1}, 0)],
    )
    def test_fedosov_weight(self, terms, weight):
        assert WeylElement(C2, terms).filtration_weight() == weight

    def test_cap_is_inclusive(self):
        a = WeylElement(C2, {(0, (3, 0)): 1, (1, (0, 1)): 1, (0, (1, 0)): 1}, cap=2)
        assert set(a.terms) == {(0, (1, 0))}

    @given(weyl_strategy(C2), weyl_strategy(C2))
    def test_weight_is_additive_on_products(self, a, b):
        if a.is_zero() or b.is_zero():
            return
        prod = a * b
        if not prod.is_zero():
            assert prod.filtration_weight() >= a.filtration_weight() + b.filtration_weight()


class TestAction:
    def test_minus_identity_parity(self):
        assert WeylElement(C2, {(0, (1, 1)): 1}).act(MINUS) == WeylElement(C2, {(0, (1, 1)): 1})
        assert y(C2, 0).act(MINUS) == -y(C2, 0)

    def test_identity_acts_trivially(self, rng):
        a = random_weyl(C4, rng)
        assert a.act(ExactMatrix.identity(4)) == a

    @pytest.mark.parametrize("group", [rotation_z4(), cyclic_sl2(3), plane_swap()], ids=["z4", "z3", "swap"])
    def test_action_is_multiplicative(self, group, rng):
        for g in group.elements:
            a, b = random_weyl(group.space, rng, 3), random_weyl(group.space, rng, 3)
            assert (a * b).act(g) == a.act(g) * b.act(g)


class TestSplitting:
    def test_identity(self):
        s = fixed_splitting(ExactMatrix.identity(2), C2.B)
        assert len(s.fixed) == 2 and s.image == [] and s.m == 1

    def test_minus_identity(self):
        s = fixed_splitting(MINUS, C2.B)
        assert s.fixed == [] and s.m == 0

    def test_half_fixed(self):
        s = fixed_splitting(HALF, C4.B)
        assert s.m == 1
        # oracle: V_g is the kernel of g - 1, here span(e_3, e_4)
        span = {tuple(int(x) for x in v) for v in s.fixed}
        assert span == {(0, 0, 1, 0), (0, 0, 0, 1)}


class TestCycles:
    def test_trivial_sector(self):
        psi = twisted_cycle_psi(MINUS, C2)
        assert psi.degree == 0 and psi.terms == {(0, ((0, 0),)): 1}

    def test_untwisted_plane(self):
        psi = twisted_cycle_psi(ExactMatrix.identity(2), C2)
        b12 = C2.B[0, 1]
        assert psi.terms == {(0, ((0, 0), (1, 0), (0, 1))): b12, (0, ((0, 0), (0, 1), (1, 0))): -b12}

    def test_half_fixed_support(self):
        psi = twisted_cycle_psi(HALF, C4)
        assert psi.degree == 2
        for _, alphas in psi.terms:
            for alpha in alphas[1:]:
                assert alpha[0] == alpha[1] == 0

    def test_boundary_by_hand(self):
        chain = TwistedChain.tensor(C2, MINUS, [WeylElement.const(C2), y(C2, 0)])
        assert chain.boundary() == TwistedChain(C2, MINUS, 0, {(0, ((1, 0),)): -2})

    def test_untwisted_boundary_vanishes(self):
        g = ExactMatrix.identity(2)
        chain = TwistedChain.tensor(C2, g, [WeylElement.const(C2), y(C2, 0)])
        assert chain.boundary().is_zero()

    @pytest.mark.parametrize(
        "group", [rotation_z4(), plane_swap(), minus_identity(2), cyclic_sl2(5)], ids=["z4", "swap", "-id4", "z5"]
    )
    def test_psi_is_a_cycle(self, group):
        assert cycle_suite(group)["passed"]

    def test_antisymmetrization_of_psi(self):
        mu = antisym_mu(twisted_cycle_psi(ExactMatrix.identity(2), C2))
        assert mu == {(0, (0, 0), (0, 1)): 2 * C2.B[0, 1]}

    def test_antisymmetrization_kills_moved_directions(self):
        chain = TwistedChain.tensor(C2, MINUS, [WeylElement.const(C2), y(C2, 0)])
        assert antisym_mu(chain) == {}

    def test_mu_of_linear_slot(self):
        chain = TwistedChain.tensor(C2, ExactMatrix.identity(2), [WeylElement.const(C2), y(C2, 1)])
        assert antisym_mu(chain) == {(0, (0, 0), (1,)): 1}
