from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiquant.exact import SchemaError
from orbiquant.groups import cyclic_sl2, minus_identity, plane_swap, symmetric_double
from orbiquant.groups.standard import trivial_symplectic
from orbiquant.orbifold import (
    Component,
    FixedLocusDatum,
    IncompleteInputError,
    general_orbifold_cohomology,
    linear_fixed_locus_data,
    linear_orbifold_cohomology,
    loci_from_json,
    sra_param_dim,
    unobstructedness_check,
)


def reflection_classes(G) -> int:
    # oracle: classes whose fixed space has codimension exactly 2
    count = 0
    for cls in G.conjugacy_classes():
        g = G.elements[cls[0]]
        n = g.rows
        moved = n - len(G.splitting(cls[0]).fixed)
        count += moved == 2
    return count


@pytest.mark.parametrize(
    "G,poincare",
    [
        (trivial_symplectic(1), {0: 1}),
        (minus_identity(1), {0: 1, 2: 1}),
        (plane_swap(), {0: 1, 2: 1}),
        (minus_identity(2), {0: 1, 4: 1}),
        (symmetric_double(3), {0: 1, 2: 1, 4: 1}),
    ],
    ids=["trivial", "z2", "swap", "-id4", "s3"],
)
def test_linear_quotients(G, poincare):
    spectrum = linear_orbifold_cohomology(G)
    assert spectrum.poincare == poincare
    assert sra_param_dim(G) == reflection_classes(G) == poincare.get(2, 0)


@pytest.mark.parametrize("N", range(2, 7))
def test_cyclic_sl2(N):
    G = cyclic_sl2(N)
    assert linear_orbifold_cohomology(G).poincare == {0: 1, 2: N - 1}
    assert sra_param_dim(G) == N - 1 == reflection_classes(G)


def test_total_counts_classes():
    G = symmetric_double(3)
    assert linear_orbifold_cohomology(G).total() == len(G.conjugacy_classes())


def test_class_records():
    classes = linear_orbifold_cohomology(minus_identity(1)).classes
    assert [c["codim"] for c in classes] == [0, 2]
    assert [c["symplectic_reflection"] for c in classes] == [False, True]


class TestGeneric:
    def test_single_point(self):
        data = [FixedLocusDatum("e", (Component(0, (1,)),))]
        assert general_orbifold_cohomology(data).poincare == {0: 1}

    def test_reproduces_linear_case(self):
        data = linear_fixed_locus_data(minus_identity(1))
        assert general_orbifold_cohomology(data).poincare == linear_orbifold_cohomology(minus_identity(1)).poincare

    def test_additivity(self):
        base = [FixedLocusDatum("e", (Component(0, (1,)),))]
        extra = FixedLocusDatum("g", (Component(2, (1,)), Component(2, (1,))))
        assert general_orbifold_cohomology(base + [extra]).poincare == {0: 1, 2: 2}

    def test_shift_of_betti_numbers(self):
        data = [FixedLocusDatum("e", (Component(0, (1, 0, 3)),)), FixedLocusDatum("g", (Component(2, (1, 2)),))]
        assert general_orbifold_cohomology(data).poincare == {0: 1, 2: 4, 3: 2}

    @given(st.lists(st.tuples(st.integers(0, 3).map(lambda k: 2 * k), st.lists(st.integers(0, 3), min_size=1, max_size=3)),
                    min_size=1, max_size=4))
    def test_total_is_sum_of_betti(self, comps):
        data = [FixedLocusDatum(str(i), (Component(c, tuple(b)),)) for i, (c, b) in enumerate(comps)]
        assert general_orbifold_cohomology(data).total() == sum(sum(b) for _, b in comps)

    @pytest.mark.parametrize("comp", [Component(1, (1,)), Component(2, (1, -1)), Component(2, (1, 1), permuted=True)])
    def test_invalid_components(self, comp):
        with pytest.raises(ValueError):
            general_orbifold_cohomology([FixedLocusDatum("g", (comp,))])


class TestUnobstructed:
    def test_linear_quotient(self):
        data = linear_fixed_locus_data(cyclic_sl2(3))
        assert unobstructedness_check(data, 0)["hypotheses_met"]

    def test_h1_flag(self):
        data = [FixedLocusDatum("g", (Component(2, (1,), h1_invariant=1),))]
        r = unobstructedness_check(data, 0)
        assert not r["hypotheses_met"] and r["failing"][0]["value"] == 1

    def test_h3_flag(self):
        assert not unobstructedness_check([], 2)["hypotheses_met"]

    def test_missing_data(self):
        data = [FixedLocusDatum("g", (Component(2, (1,)),))]
        with pytest.raises(IncompleteInputError) as err:
            unobstructedness_check(data, None)
        assert "h3_invariant" in err.value.missing and len(err.value.missing) == 2


def test_loci_json():
    obj = {"h3_invariant": 0, "classes": [{"representative": "e", "components": [{"codim": 0, "betti": [1]}]},
                                          {"components": [{"codim": 2, "betti": [1, 0], "h1_invariant": 0}]}]}
    data, h3 = loci_from_json(obj)
    assert h3 == 0 and general_orbifold_cohomology(data).poincare == {0: 1, 2: 1}
    with pytest.raises(SchemaError):
        loci_from_json({"classes": [{"components": [{}]}]})
