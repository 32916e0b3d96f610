from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiquant.exact import Cyc, ExactMatrix, SchemaError
from orbiquant.groups import (
    GroupExplosionError,
    close_group,
    cyclic_group,
    cyclic_sl2,
    diag_reflection_c4,
    group_from_json,
    group_to_json,
    is_symplectic_reflection,
    minus_identity,
    plane_swap,
    symmetric_double,
    symmetric_group,
    trivial_group,
)
from orbiquant.groups.standard import rotation_z4, trivial_symplectic
from orbiquant.weyl import NotSymplecticError, SymplecticSpace

from . import oracles

C2 = SymplecticSpace.darboux(1)



class TestClosure:
    def test_minus_identity_order(self):
        assert minus_identity(1).order == 2

    def test_cyclic_sl2_order_three(self):
        G = cyclic_sl2(3)
        assert G.order == 3
        # oracle: powers of the generator until the identity
        g = ExactMatrix([[Cyc.zeta(3), 0], [0, Cyc.zeta(3, 2)]])
        power, steps = g, 1
        while not power.is_identity():
            power, steps = power @ g, steps + 1
        assert steps == 3

    def test_block_swap(self):
        assert plane_swap().order == 2

    @pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
    def test_cyclic_orders(self, N):
        assert cyclic_sl2(N).order == N

    def test_rejects_non_symplectic(self):
        with pytest.raises(NotSymplecticError):
            close_group([ExactMatrix([[2, 0], [0, 1]])], C2)

    def test_explosion_guard(self):
        with pytest.raises(GroupExplosionError):
            close_group(rotation_z4().elements[1:2], C2, bound=3)

    def test_closed_under_products(self):
        G = symmetric_double(3)
        mats = set(G.elements)
        assert all(a @ b in mats for a in G.elements for b in G.elements)


class TestClasses:
    def test_abelian_singletons(self):
        assert all(len(c) == 1 for c in rotation_z4().conjugacy_classes())

    def test_s3_double(self):
        G = symmetric_double(3)
        sizes = sorted(len(c) for c in G.conjugacy_classes())
        idx = {g: i for i, g in enumerate(G.elements)}
        inverse = {i: idx[next(h for h in G.elements if (g @ h).is_identity())] for i, g in enumerate(G.elements)}
        oracle = oracles.conjugacy_class_sizes(
            G.elements, lambda a, b: idx[G.elements[a] @ G.elements[b]], lambda a: inverse[a]
        )
        assert sizes == oracle == [1, 2, 3]

    def test_cyclic_three_classes(self):
        assert len(cyclic_sl2(3).conjugacy_classes()) == 3

    @pytest.mark.parametrize("G", [symmetric_double(3), cyclic_sl2(4), plane_swap()], ids=["s3", "z4", "swap"])
    def test_class_equation(self, G):
        assert sum(G.order // G.centralizer_order(r) for r in G.class_representatives()) == G.order


class TestReflections:
    def test_minus_identity_on_plane(self):
        assert is_symplectic_reflection(ExactMatrix([[-1, 0], [0, -1]]))

    def test_identity_is_not(self):
        assert not is_symplectic_reflection(ExactMatrix.identity(2))

    def test_half_reflection(self):
        g = ExactMatrix([[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        assert is_symplectic_reflection(g)
        assert diag_reflection_c4().order == 2

    def test_minus_identity_on_c4_is_not(self):
        assert not is_symplectic_reflection(minus_identity(2).elements[1])


class TestAbstract:
    @pytest.mark.parametrize("G,order,classes", [
        (trivial_group(), 1, 1), (cyclic_group(5), 5, 5), (symmetric_group(3), 6, 3), (symmetric_group(4), 24, 5),
    ])
    def test_orders_and_classes(self, G, order, classes):
        assert G.order == order and len(G.conjugacy_classes()) == classes
        assert G.is_associative()

    @given(st.integers(1, 9))
    def test_inverse_law(self, n):
        G = cyclic_group(n)
        assert all(G.mul[g][G.inv[g]] == G.identity for g in G.elements())


class TestJson:
    @pytest.mark.parametrize("G", [minus_identity(1), cyclic_sl2(5), symmetric_double(3)], ids=["z2", "z5", "s3"])
    def test_round_trip(self, G):
        H = group_from_json(group_to_json(G))
        assert set(H.elements) == set(G.elements) and H.space == G.space

    def test_trivial_from_identity_generator(self):
        H = group_from_json(group_to_json(trivial_symplectic(1)))
        assert H.order == 1

    @pytest.mark.parametrize("obj", [[], {"dim": 2}, {"generators": []}, {"dim": 2, "generators": [], "zeta_order": 0}])
    def test_schema_errors(self, obj):
        with pytest.raises(SchemaError):
            group_from_json(obj)
