from __future__ import annotations

import random
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiquant.exact import QQ, ExactMatrix, SchemaError
from orbiquant.fedosov import (
    BundleSection,
    CapError,
    FedosovConnection,
    FedosovData,
    NotClosedError,
    equivariance_check,
    kappa0_identities,
    koszul_delta,
    koszul_delta_inv,
    moyal_of_functions,
    nabla,
    random_function,
    restrict_section,
    symmetric_gamma,
)
from orbiquant.fedosov.connection import de_rham
from orbiquant.groups import minus_identity

FLAT = FedosovData.flat(1, weight_cap=6)
SPACE = FLAT.space
LINEAR_GAMMA = symmetric_gamma({(0, 0, 0): {(1, 0): 1}, (0, 0, 1): {(0, 1): 2}, (0, 1, 1): {(1, 0): -1}})
OMEGA_H = {(1, (0, 1)): {(0, 0): 1}}
MINUS = ExactMatrix([[-1, 0], [0, -1]])
HALF = ExactMatrix([[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def data(gamma=None, omega_h=None, cap=6):
    return FedosovData(FLAT.omega, gamma, omega_h, weight_cap=cap)


@pytest.fixture(scope="module")
def linear_conn():
    return FedosovConnection(data(LINEAR_GAMMA, OMEGA_H), cap=6)


def section(terms):
    return BundleSection(SPACE, terms)


def sections(max_forms=2):
    seeds = st.integers(0, 10**9)
    return seeds.map(lambda s: BundleSection.random(SPACE, random.Random(s), max_forms=max_forms))


class TestKoszulPair:
    def test_delta_of_y(self):
        assert koszul_delta(BundleSection.y(SPACE, 0)) == BundleSection.dx(SPACE, 0)

    def test_delta_inverse_of_dx(self):
        assert koszul_delta_inv(BundleSection.dx(SPACE, 0)) == BundleSection.y(SPACE, 0)

    @given(sections())
    def test_hodge_decomposition(self, a):
        assert a.sigma() + koszul_delta(koszul_delta_inv(a)) + koszul_delta_inv(koszul_delta(a)) == a

    @given(sections())
    def test_nilpotent(self, a):
        assert koszul_delta(koszul_delta(a)).is_zero() and koszul_delta_inv(koszul_delta_inv(a)).is_zero()

    def test_sigma_projection(self):
        z = (0, 0)
        a = section({((1, 0), 1, z, ()): 3, ((0, 0), 0, (1, 0), ()): 1, ((0, 1), 0, z, (0,)): 2})
        assert a.sigma() == section({((1, 0), 1, z, ()): 3})


class TestNabla:
    def test_flat_case(self):
        a = section({((1, 0), 0, (1, 0), ()): 1})
        assert nabla(a, FLAT) == section({((0, 0), 0, (1, 0), (0,)): 1})

    def test_matches_commutator_form(self):
        d = data(LINEAR_GAMMA)
        rng = random.Random(4)
        for _ in range(10):
            a = BundleSection.random(SPACE, rng)
            assert nabla(a, d) == de_rham(a) + d.gamma_tilde().ad_over_hbar(a)

    @given(sections(1), sections(1))
    def test_graded_leibniz(self, a, b):
        d = data(LINEAR_GAMMA)
        sign = -1 if a.form_degrees() == {1} else 1
        if len(a.form_degrees()) > 1:
            a = a.form_part(0)
            sign = 1
        lhs = nabla(a.moyal(b), d)
        rhs = nabla(a, d).moyal(b) + a.moyal(nabla(b, d)).scale(sign)
        assert lhs == rhs

    def test_curvature_normalisation(self, linear_conn):
        R = linear_conn.curvature_R()
        rng = random.Random(9)
        for _ in range(10):
            a = BundleSection.random(SPACE, rng, max_forms=1)
            assert linear_conn.nabla(linear_conn.nabla(a)) == R.commutator(a).scale(QQ(1, 2))


class TestConnection:
    def test_trivial_data(self):
        conn = FedosovConnection(FLAT)
        assert conn.r.is_zero()
        a = BundleSection.random(SPACE, random.Random(1), max_forms=1)
        assert conn.D(a).terms == (nabla(a, FLAT) - koszul_delta(a)).terms

    def test_constant_two_form(self):
        d = data(None, OMEGA_H)
        conn = FedosovConnection(d)
        first = koszul_delta_inv(d.omega_h_section().scale(QQ(-1, 2)))
        # the first iterate is the weight-3 part; (1/hbar) r o r feeds higher hbar powers
        assert conn.r.weight_part(3).terms == first.terms
        assert conn.iterations < conn.cap
        rng = random.Random(2)
        for _ in range(5):
            a = BundleSection.random(SPACE, rng, max_forms=1)
            assert conn.D(conn.D(a)).is_zero()

    def test_leading_term(self, linear_conn):
        conn = FedosovConnection(data(LINEAR_GAMMA), cap=5)
        assert conn.r.weight_part(3).terms == koszul_delta_inv(conn.curvature_RF()).terms
        shifted = linear_conn.curvature_RF() - linear_conn.data.omega_h_section().scale(QQ(1, 2))
        assert linear_conn.r.weight_part(3).terms == koszul_delta_inv(shifted).terms
        assert linear_conn.r.filtration_weight() >= 3 and linear_conn.r.form_degrees() == {1}

    def test_weyl_curvature(self, linear_conn):
        cw = linear_conn.weyl_curvature()
        assert cw.agrees_with(linear_conn.expected_curvature(), linear_conn.certified_weight())

    def test_flatness(self, linear_conn):
        rng = random.Random(3)
        for _ in range(5):
            a = BundleSection.random(SPACE, rng, max_forms=1)
            assert linear_conn.D(linear_conn.D(a)).is_zero_upto(linear_conn.certified_weight())

    def test_r_solves_fixed_point(self, linear_conn):
        c = linear_conn
        source = c.curvature_RF() - c.data.omega_h_section().scale(QQ(1, 2))
        rhs = koszul_delta_inv(source + c.nabla(c.r) + c.r.moyal(c.r).shift_hbar(-1))
        assert rhs.agrees_with(c.r, c.cap)


class TestFlatSections:
    def test_taylor_lift(self):
        conn = FedosovConnection(FLAT, cap=8)
        f = {(3, 0): QQ(1), (1, 2): QQ(-2), (0, 1): QQ(5)}
        lifted = conn.flat_lift(BundleSection.function(SPACE, f))
        # oracle: sum_alpha (1/alpha!) d^alpha f(x) y^alpha
        expected: dict = {}
        for (e1, e2), c in f.items():
            for a1 in range(e1 + 1):
                for a2 in range(e2 + 1):
                    coeff = c * QQ(factorial(e1) * factorial(e2), factorial(e1 - a1) * factorial(e2 - a2))
                    coeff = coeff / (factorial(a1) * factorial(a2))
                    expected[((e1 - a1, e2 - a2), 0, (a1, a2), ())] = coeff
        assert lifted == section(expected).truncate(lifted.cap)

    def test_sigma_of_lift(self, linear_conn):
        rng = random.Random(5)
        for _ in range(5):
            f = random_function(SPACE, rng)
            lf = linear_conn.flat_lift(f)
            assert lf.sigma().terms == f.terms
            assert linear_conn.D(lf).is_zero_upto(lf.cap - 1)

    def test_linear_part_is_differential(self, linear_conn):
        f = random_function(SPACE, random.Random(6), terms=4)
        lf = linear_conn.flat_lift(f)
        linear = {k: v for k, v in lf.terms.items() if k[1] == 0 and sum(k[2]) == 1}
        expected = koszul_delta_inv(de_rham(f))
        assert section(linear) == expected

    def test_cap_guard(self, linear_conn):
        with pytest.raises(CapError):
            linear_conn.star(BundleSection.const(SPACE), BundleSection.const(SPACE), 4)

    def test_rejects_non_function(self, linear_conn):
        with pytest.raises(ValueError):
            linear_conn.flat_lift(BundleSection.y(SPACE, 0))


class TestStar:
    def test_flat_coordinates(self):
        conn = FedosovConnection(FLAT)
        x1, x2 = BundleSection.x(SPACE, 0), BundleSection.x(SPACE, 1)
        comm = conn.star(x1, x2, 3) - conn.star(x2, x1, 3)
        assert comm.terms == {((0, 0), 1, (0, 0), ()): SPACE.B[0, 1]}

    def test_flat_is_moyal(self):
        conn = FedosovConnection(FLAT, cap=8)
        rng = random.Random(7)
        for _ in range(5):
            a, b = random_function(SPACE, rng), random_function(SPACE, rng)
            assert conn.star(a, b, 4).terms == moyal_of_functions(a, b).terms

    def test_unit(self, linear_conn):
        a = random_function(SPACE, random.Random(8))
        assert linear_conn.star(a, BundleSection.const(SPACE), 3).agrees_with(a, 4)
        assert linear_conn.star(BundleSection.const(SPACE), a, 3).agrees_with(a, 4)

    def test_associative(self, linear_conn):
        rng = random.Random(10)
        for _ in range(3):
            a, b, c = (random_function(SPACE, rng) for _ in range(3))
            left = linear_conn.star(linear_conn.star(a, b, 3), c, 3)
            right = linear_conn.star(a, linear_conn.star(b, c, 3), 3)
            assert left.agrees_with(right, 4)

    def test_classical_limit(self, linear_conn):
        a, b = random_function(SPACE, random.Random(11)), random_function(SPACE, random.Random(12))
        prod = linear_conn.star(a, b, 3)
        assert prod.truncate(0) == a.moyal(b).truncate(0)


class TestEquivariance:
    def test_trivial_data_invariant(self):
        r = equivariance_check(FLAT, minus_identity(1), pairs=3)
        assert r["data_invariant"] and r["passed"]

    def test_violation_is_reported(self):
        bad = data(symmetric_gamma({(0, 0, 0): {(0, 0): 1}}))
        r = equivariance_check(bad, minus_identity(1), pairs=3)
        assert not r["passed"] and {"element": 1, "input": "gamma"} in r["invariance_failures"]

    def test_invariant_linear_gamma(self):
        r = equivariance_check(data(LINEAR_GAMMA, OMEGA_H), minus_identity(1), pairs=5)
        assert r["passed"]

    def test_acted_data(self):
        d = data(LINEAR_GAMMA, OMEGA_H)
        assert d.invariance_report(MINUS) == {"gamma_invariant": True, "omega_h_invariant": True}
        swap = ExactMatrix([[0, 1], [-1, 0]])
        assert d.acted(swap).acted(swap).acted(swap).acted(swap).gamma_tilde() == d.gamma_tilde()


class TestKappa:
    def test_isolated_fixed_point(self):
        r = kappa0_identities(MINUS)
        assert r["fixed_dim"] == 0 and r["kappa0_terms"] == 1 and r["passed"]

    def test_half_fixed(self):
        r = kappa0_identities(HALF, cap=6)
        assert r["passed"] and r["fixed_dim"] == 2 and r["constant_slot_images"] > 0

    def test_untwisted(self):
        assert kappa0_identities(ExactMatrix.identity(2), cap=6)["passed"]

    def test_nontrivial_invariant_data(self):
        assert kappa0_identities(MINUS, data(LINEAR_GAMMA, OMEGA_H), cap=6)["passed"]

    def test_curved_half_fixed(self):
        # Gamma invariant under HALF and depending on the fixed coordinates: nu_1 != 0
        gam = symmetric_gamma({(2, 2, 3): {(0, 0, 0, 1): QQ(1)}, (0, 0, 2): {(0, 0, 1, 0): QQ(2)}})
        d = FedosovData(FedosovData.flat(2).omega, gam, weight_cap=6)
        assert d.invariance_report(HALF) == {"gamma_invariant": True, "omega_h_invariant": True}
        r = kappa0_identities(HALF, d, cap=6)
        assert r["passed"] and r["nu1_terms"] > 0 and r["nu2_terms"] > 0

    def test_flat_half_fixed_projects_to_zero(self):
        # (1/hbar)[A, y^a] = -dx^a is constant in y, so the normalized projection kills nu_1
        r = kappa0_identities(HALF, FedosovData.flat(2), cap=6)
        assert r["constant_slot_images"] == 4 and r["nu1_terms"] == 0 and r["passed"]

    def test_restriction_to_fixed_space(self):
        a = BundleSection(FedosovData.flat(2).space, {((0, 0, 1, 0), 0, (0, 0, 0, 0), (0, 2)): 1})
        assert restrict_section(a, [[0, 0, 1, 0], [0, 0, 0, 1]]) == {}
        b = BundleSection(FedosovData.flat(2).space, {((0, 0, 1, 2), 0, (1, 0, 0, 0), (2, 3)): 3})
        assert restrict_section(b, [[0, 0, 1, 0], [0, 0, 0, 1]]) == {((1, 2), (0, 1)): {(0, (1, 0, 0, 0)): 3}}


class TestData:
    def test_json_round_trip(self):
        d = data(LINEAR_GAMMA, OMEGA_H)
        e = FedosovData.from_json(d.to_json())
        assert e.gamma == d.gamma and e.omega_h == d.omega_h and e.weight_cap == d.weight_cap

    def test_asymmetric_gamma_rejected(self):
        with pytest.raises(SchemaError):
            data({(0, 0, 1): {(0, 0): 1}})

    def test_open_two_form_rejected(self):
        with pytest.raises(NotClosedError):
            FedosovData(FedosovData.flat(2).omega, None, {(1, (0, 1)): {(0, 0, 1, 0): 1}})

    def test_two_form_must_carry_hbar(self):
        with pytest.raises(SchemaError):
            data(None, {(0, (0, 1)): {(0, 0): 1}})

    @pytest.mark.parametrize("omega", [[[0, 1], [1, 0]], [[0, 0], [0, 0]], [[1]]])
    def test_bad_forms(self, omega):
        with pytest.raises(SchemaError):
            FedosovData(omega)
