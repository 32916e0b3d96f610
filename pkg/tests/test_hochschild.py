from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiquant.exact import QQ, SchemaError
from orbiquant.hochschild import (
    Bimodule,
    HochschildComplex,
    MixedResolution,
    ResourceCapError,
    TwistedGroupAlgebra,
    UnsupportedError,
    algebra_from_json,
    bar_hochschild,
    bidegree,
    decomposition_check,
    differential_suite,
    hkr_cocycle_defect,
    homotopy_suite,
    koszul_ext,
    random_polynomial,
    standard_algebra,
    symmetrizer_morita,
)

from . import oracles

CONFIGS = [(k, g) for k in ("C", "C2", "dual") for g in ("Z2", "Z3", "S3")]


def hh_oracle(A, qmax):
    return oracles.bar_homology_dims(A.mul_basis, A.dim, qmax)


class TestBarComplex:
    @pytest.mark.parametrize("kind,expected", [("C2", [2, 0]), ("M2", [1, 0, 0]), ("dual", [2, 1, 1])])
    def test_small_algebras(self, kind, expected):
        A = standard_algebra(kind)
        dims = [bar_hochschild(A, q=q) for q in range(len(expected))]
        assert dims == expected
        assert hh_oracle(A, len(expected) - 1) == expected

    def test_normalized_equals_unnormalized(self):
        A = standard_algebra("dual")
        for q in range(3):
            assert bar_hochschild(A, q=q, normalized=False) == bar_hochschild(A, q=q)

    def test_twisted_group_algebra_against_oracle(self):
        AG = TwistedGroupAlgebra(standard_algebra("dual", "Z2"))
        got = [bar_hochschild(AG, q=q) for q in range(3)]
        assert got == hh_oracle(AG, 2)

    def test_boundary_squares_to_zero(self, rng):
        A = standard_algebra("M2")
        C = HochschildComplex(A, Bimodule.regular(A))
        for _ in range(20):
            q = rng.randint(2, 4)
            chain = {(rng.randrange(4), tuple(rng.choice(C.slots) for _ in range(q))): QQ(rng.randint(-3, 3))}
            assert C.boundary(C.boundary(chain)) == {}

    @pytest.mark.parametrize("kind,group", [("dual", "Z2"), ("dual", "S3"), ("C2", "Z2")])
    def test_group_action_on_chains(self, kind, group, rng):
        A = standard_algebra(kind, group)
        C = HochschildComplex(A, Bimodule.regular(A))
        G = A.group
        for _ in range(10):
            q = rng.randint(1, 3)
            chain = {(rng.randrange(A.dim), tuple(rng.choice(C.slots) for _ in range(q))): QQ(rng.randint(1, 5))}
            g = rng.randrange(G.order)
            assert C.alpha(g, C.boundary(chain)) == C.boundary(C.alpha(g, chain))
            assert C.alpha(G.inv[g], C.alpha(g, chain)) == chain
            assert C.alpha(G.identity, chain) == chain

    def test_resource_cap(self):
        A = standard_algebra("M2")
        with pytest.raises(ResourceCapError):
            bar_hochschild(A, q=6, max_cells=100)

    def test_cohomology_center(self):
        # HH^0 is the centre
        assert bar_hochschild(standard_algebra("M2"), q=0, variant="cohomology") == 1
        assert bar_hochschild(standard_algebra("dual"), q=0, variant="cohomology") == 2


class TestDecomposition:
    def test_group_algebra_of_z2(self):
        r = decomposition_check(standard_algebra("C", "Z2"), 0)
        assert r["lhs_dim"] == r["rhs_dim"] == 2

    @pytest.mark.parametrize("q", [0, 1, 2])
    def test_dual_numbers(self, q):
        r = decomposition_check(standard_algebra("dual", "Z2"), q)
        assert r["equal"]
        assert r["lhs_dim"] == hh_oracle(TwistedGroupAlgebra(standard_algebra("dual", "Z2")), q)[q]

    def test_trivial_group(self):
        A = standard_algebra("dual", "1")
        for q in range(3):
            r = decomposition_check(A, q)
            assert r["lhs_dim"] == r["rhs_dim"] == bar_hochschild(A, q=q)

    @pytest.mark.parametrize("kind,group", [("C2", "Z2"), ("dual", "Z3"), ("C2", "S3")])
    def test_other_configurations(self, kind, group):
        for q in range(2):
            assert decomposition_check(standard_algebra(kind, group), q)["equal"]

    def test_cohomology_variant(self):
        assert decomposition_check(standard_algebra("dual", "Z2"), 1, variant="cohomology")["equal"]


class TestMixedResolution:
    def test_degree_zero_is_multiplication(self):
        A = standard_algebra("dual", "Z2")
        R = MixedResolution(A)
        for s in range(R.AG.dim):
            for t in range(R.AG.dim):
                expected = {(k,): v for k, v in R.AG.mul_basis(s, t).items()}
                assert R.beta({(s, (), t, ()): QQ(1)}) == expected

    def test_homotopy_on_augmentation(self):
        R = MixedResolution(standard_algebra("C2", "Z2"))
        for s in range(R.AG.dim):
            unit = R.AG.unit
            assert R.chi({(s,): QQ(1)}) == {(u, (), s, ()): c for u, c in unit.items()}

    @pytest.mark.parametrize("kind,group", CONFIGS)
    def test_homotopy_identity(self, kind, group):
        assert homotopy_suite(standard_algebra(kind, group), trials=60, seed=5)["passed"]

    @pytest.mark.parametrize("kind,group", CONFIGS)
    def test_differentials(self, kind, group):
        assert all(c["passed"] for c in differential_suite(standard_algebra(kind, group), trials=30, seed=2))

    @given(st.integers(0, 10**6))
    def test_homotopy_property(self, seed):
        R = MixedResolution(standard_algebra("dual", "S3"))
        rng = random.Random(seed)
        chain = R.random_chain(rng, rng.randint(-1, 3), rng.randint(0, 3))
        assert R.homotopy_defect(chain) == {}

    def test_bidegree(self):
        assert bidegree((0, (1, 2), 3, (0,))) == (2, 1)
        assert bidegree((4,)) is None


class TestMorita:
    def test_idempotent_for_s3(self):
        assert symmetrizer_morita(standard_algebra("C", "S3"))["idempotent"]

    def test_swap_on_c2(self):
        r = symmetrizer_morita(standard_algebra("C2", "Z2"))
        assert r["hh0_invariants"] == r["hh0_twisted"] == 1 and r["hh0_equal"]

    def test_trivial_group(self):
        r = symmetrizer_morita(standard_algebra("dual", "1"))
        assert r["invariant_dim"] == 2 and r["corner_isomorphic_to_invariants"]


class TestKoszul:
    def test_one_variable(self):
        assert koszul_ext(1, 4) == {0: [0] * 5, 1: [1] * 5}

    def test_two_variables(self):
        ext = koszul_ext(2, 2)
        assert ext[1] == [0, 0, 0] and ext[2] == [1, 2, 3]

    @pytest.mark.parametrize("d,cap", [(1, 4), (2, 4), (3, 3)])
    def test_only_top_degree_survives(self, d, cap):
        ext = koszul_ext(d, cap)
        assert ext[d] == [comb(t + d - 1, d - 1) for t in range(cap + 1)]
        assert all(not any(v) for i, v in ext.items() if i != d)

    def test_unsupported(self):
        with pytest.raises(UnsupportedError):
            koszul_ext(4, 1)

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_hkr_lands_in_cocycles(self, d, rng):
        for _ in range(5):
            f = random_polynomial(rng, d)
            args = [random_polynomial(rng, d) for _ in range(d + 1)]
            assert hkr_cocycle_defect(f, args, d) == {}


class TestAlgebraInput:
    def test_json_table(self):
        obj = {"dim": 2, "table": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]], "unit": ["1", "0"],
               "group": {"type": "cyclic", "order": 2},
               "action": {"0": [["1", "0"], ["0", "1"]], "1": [["1", "0"], ["0", "-1"]]}}
        A = algebra_from_json(obj)
        assert bar_hochschild(A, q=1) == 1
        assert decomposition_check(A, 1)["equal"]

    @pytest.mark.parametrize("obj", [[], {"dim": 2}, {"dim": 1, "table": [[["1"]]], "unit": ["1", "0"]}])
    def test_bad_input(self, obj):
        with pytest.raises(SchemaError):
            algebra_from_json(obj)

    def test_non_associative_rejected(self):
        obj = {"dim": 2, "table": [[["1", "0"], ["0", "1"]], [["0", "1"], ["1", "0"]]], "unit": ["0", "1"]}
        with pytest.raises(ValueError):
            algebra_from_json(obj)
