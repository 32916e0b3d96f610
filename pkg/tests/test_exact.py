from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiquant.exact import (
    QQ,
    Cyc,
    ExactMatrix,
    HSeries,
    IncompatibleFieldError,
    SchemaError,
    cyclotomic_polynomial,
    inverse,
    kernel_basis,
    rank,
    scalar_from_json,
    scalar_to_json,
    solve,
    totient,
)
from orbiquant.exact.serialize import matrix_from_json, matrix_to_json, series_from_json, series_to_json

orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12])
small = st.integers(-6, 6)


def cyc_strategy(order):
    return st.lists(small, min_size=1, max_size=order).map(lambda cs: Cyc(order, cs))


class TestCyclotomic:
    def test_zeta4_squared(self):
        assert Cyc.zeta(4) * Cyc.zeta(4) == -1

    def test_hand_reduction_order3(self):
        one = Cyc(3, [1])
        assert (one + Cyc.zeta(3)) * (one + Cyc.zeta(3, 2)) == 1

    @pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (6, 2), (8, 4), (12, 4), (9, 6)])
    def test_totient(self, n, expected):
        assert totient(n) == expected
        assert len(cyclotomic_polynomial(n)) == expected + 1

    @pytest.mark.parametrize("n", [3, 5, 7, 8, 12])
    def test_zeta_powers_sum_to_mobius(self, n):
        total = sum((Cyc.zeta(n, k) for k in range(n)), Cyc(n, [0]))
        assert total == 0

    @given(st.data())
    def test_field_axioms(self, data):
        n = data.draw(orders)
        a, b, c = (data.draw(cyc_strategy(n)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * 1 == a
        if a != 0:
            assert a * a.inverse() == 1

    @given(st.data())
    def test_matches_complex_evaluation(self, data):
        n = data.draw(orders)
        a, b = data.draw(cyc_strategy(n)), data.draw(cyc_strategy(n))
        assert abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-9
        assert abs((a + b).to_complex() - a.to_complex() - b.to_complex()) < 1e-9

    def test_mixed_orders_embed(self):
        assert Cyc.zeta(2) + Cyc.zeta(4, 2) == -2
        assert Cyc.zeta(6, 3) == Cyc.zeta(2)

    def test_json_round_trip(self):
        z = Cyc(5, [QQ(1, 2), -3, 0, 4])
        assert scalar_from_json(scalar_to_json(z)) == z


class TestSeries:
    def test_inverse_hbar(self):
        assert HSeries.monomial(-1) * HSeries.monomial(1) == HSeries.constant(1)

    @pytest.mark.parametrize("cap", [1, 3, 6, 10])
    def test_geometric_series(self, cap):
        geo = HSeries({k: (-1) ** k for k in range(cap)}, cap=cap)
        prod = HSeries({0: 1, 1: 1}) * geo
        assert prod.agrees_with(HSeries.constant(1), cap)
        assert prod.cap == cap

    def test_add_cap_min_rule(self):
        s = HSeries({0: 1}, cap=5) + HSeries({1: 2}, cap=3)
        assert s.cap == 3

    def test_invert_unit(self):
        u = HSeries({0: 2, 1: 1, 3: QQ(1, 3)}, cap=6)
        assert (u * u.invert_unit()).agrees_with(HSeries.constant(1), 6)

    def test_coefficient_beyond_cap_is_unknown(self):
        with pytest.raises(IndexError):
            HSeries({0: 1}, cap=2)[2]

    @given(st.dictionaries(st.integers(-2, 4), small, max_size=5), st.dictionaries(st.integers(-2, 4), small, max_size=5))
    def test_product_commutative(self, a, b):
        x, y = HSeries(a, cap=6), HSeries(b, cap=6)
        assert x * y == y * x

    def test_json(self):
        s = HSeries({-1: QQ(2, 3), 2: 5}, cap=4)
        assert series_from_json(series_to_json(s)) == s


def fraction_kernel_dim(rows):
    # oracle: plain Gaussian elimination over Fraction
    M = [[Fraction(x) for x in r] for r in rows]
    ncols = len(M[0]) if M else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return ncols - r


class TestLinalg:
    def test_identity_kernel_empty(self):
        assert kernel_basis(ExactMatrix.identity(3)) == []

    def test_zero_matrix_kernel(self):
        assert len(kernel_basis(ExactMatrix.zeros(2, 3))) == 3

    def test_hand_elimination(self):
        (v,) = kernel_basis(ExactMatrix([[1, 1], [1, 1]]))
        assert v[0] == -v[1] and v[0] != 0

    @given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
    def test_kernel_against_fraction_oracle(self, rows):
        M = ExactMatrix(rows)
        ker = kernel_basis(M)
        assert len(ker) == fraction_kernel_dim(rows)
        assert rank(M) + len(ker) == 4
        for v in ker:
            assert all(sum(QQ(a) * x for a, x in zip(r, v)) == 0 for r in rows)

    def test_inverse_and_solve(self):
        M = ExactMatrix([[2, 1], [1, 1]])
        assert (M @ inverse(M)).is_identity()
        assert solve(M, [3, 2]) == [1, 1]
        assert solve(ExactMatrix([[1, 1], [1, 1]]), [1, 2]) is None

    def test_cyclotomic_entries(self):
        z = Cyc.zeta(3)
        M = ExactMatrix([[z, 1], [1, z.inverse()]])
        assert rank(M) == 1

    def test_matrix_json(self):
        M = ExactMatrix([[QQ(1, 2), 0], [Cyc.zeta(4), -1]])
        assert matrix_from_json(matrix_to_json(M)) == M

    @pytest.mark.parametrize("bad", [{"nope": 1}, [1, 2], "1/0", "x"])
    def test_bad_scalar_json(self, bad):
        with pytest.raises((SchemaError, ValueError, ZeroDivisionError)):
            scalar_from_json(bad)


def test_incompatible_field_error_is_value_error():
    assert issubclass(IncompatibleFieldError, ValueError)
