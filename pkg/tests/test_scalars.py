"""Exact scalar, polynomial, rational-function, and expansion behavior."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algmult import (
    GaussianRational,
    INFINITE,
    Poly,
    QQ,
    QQI,
    RationalFunction,
    laurent_expand,
    mult_via_gcd,
    ord_at,
    pole_order,
    poly_gcd,
)
from algmult.scalars import ExtendedNat

from helpers import geometric_series_coeffs

LAM = Poly.variable(QQ)


def poly_q(*coeffs):
    return Poly(QQ, coeffs)


class TestOrdAt:
    def test_factored_input(self):
        p = Poly.from_roots(QQ, [1, 1, 1, -2])
        assert ord_at(p, 1) == 3

    def test_zero_polynomial_is_infinite(self):
        assert ord_at(Poly.zero(QQ), 5).is_infinite

    def test_gaussian_root_of_lam_squared_plus_one(self):
        # oracle: synthetic division; (lam - i) divides once, not twice
        p = Poly(QQI, [1, 0, 1])
        i = GaussianRational(0, 1)
        shift = Poly(QQI, [-i, 1])
        q, r = divmod(p, shift)
        assert r.is_zero
        _, r2 = divmod(q, shift)
        assert not r2.is_zero
        assert ord_at(p, i) == 1

    def test_non_root(self):
        assert ord_at(poly_q(-2, 3, 1), 7) == 0


class TestMultViaGcd:
    def test_double_root(self):
        assert mult_via_gcd(poly_q(0, 0, 1), 0) == 2

    def test_non_root(self):
        assert mult_via_gcd(Poly.from_roots(QQ, [1, 2]), 3) == 0

    def test_quartic_root(self):
        p = Poly.from_roots(QQ, [-1, -1, -1, -1, 1])
        assert mult_via_gcd(p, -1) == ord_at(p, -1) == 4

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            mult_via_gcd(Poly.zero(QQ), 0)

    def test_agrees_with_ord_at_on_random_products(self):
        rng = random.Random(7)
        for _ in range(40):
            roots = [rng.randint(-3, 3) for _ in range(rng.randint(1, 5))]
            p = Poly.from_roots(QQ, roots) * poly_q(rng.randint(1, 3))
            at = rng.randint(-3, 3)
            assert mult_via_gcd(p, at) == ord_at(p, at)


class TestLaurentExpand:
    def test_pure_double_pole(self):
        f = RationalFunction(Poly.one(QQ), poly_q(0, 0, 1))
        le = laurent_expand(f, 0, 1)
        assert le.lowest_exponent == -2
        assert [le.coefficient(k) for k in range(-2, 2)] == [1, 0, 0, 0]

    def test_geometric_series_tail(self):
        # f = lam/(lam-1); oracle: 1/(lam-1) = -(1 + lam + ...) so the
        # coefficients of f are 0, then -1 forever
        f = RationalFunction(LAM, poly_q(-1, 1))
        le = laurent_expand(f, 0, 2)
        tail = geometric_series_coeffs(2)
        assert [le.coefficient(k) for k in range(0, 3)] == [0] + tail

    def test_simple_zero_recentred(self):
        f = RationalFunction(poly_q(-2, 1))
        le = laurent_expand(f, 2, 3)
        assert le.lowest_exponent == 1
        assert le.coefficient(1) == 1
        assert [le.coefficient(k) for k in (0, 2, 3)] == [0, 0, 0]

    def test_zero_function(self):
        le = laurent_expand(RationalFunction.zero(QQ), 3, 4)
        assert le.is_zero
        assert le.coefficient(0) == 0

    def test_truncation_consistency(self):
        rng = random.Random(3)
        for _ in range(25):
            num = poly_q(*[rng.randint(-3, 3) for _ in range(4)])
            den = poly_q(*[rng.randint(-2, 2) for _ in range(3)])
            if num.is_zero or den.is_zero:
                continue
            f = RationalFunction(num, den)
            if f.is_zero:
                continue
            lam0 = rng.randint(-2, 2)
            low = ord_at(f.num, lam0).value - ord_at(f.den, lam0).value
            hi = low + 5
            assert laurent_expand(f, lam0, hi).truncate(low + 2) == laurent_expand(
                f, lam0, low + 2
            )

    def test_order_below_leading_exponent_rejected(self):
        f = RationalFunction(poly_q(0, 0, 1))
        with pytest.raises(ValueError):
            laurent_expand(f, 0, 1)


class TestPoleOrder:
    def test_double_pole(self):
        f = RationalFunction(Poly.one(QQ), poly_q(0, 0, 1))
        assert pole_order(f, 0) == 2

    def test_reduction_kills_matched_factor(self):
        f = RationalFunction(poly_q(-1, 1), poly_q(-1, 1) * poly_q(-1, 1))
        assert pole_order(f, 1) == 1

    def test_zero_order_when_numerator_dominates(self):
        f = RationalFunction(poly_q(0, 0, 0, 1), poly_q(-4, 1))
        le = laurent_expand(f, 0, 4)
        assert le.lowest_exponent == 3
        assert pole_order(f, 0) == 0

    def test_rejects_zero_function(self):
        with pytest.raises(ValueError):
            pole_order(RationalFunction.zero(QQ), 0)


class TestExtendedNat:
    def test_absorbing_addition(self):
        assert (INFINITE + 5).is_infinite
        assert (ExtendedNat(2) + INFINITE).is_infinite
        assert ExtendedNat(2) + ExtendedNat(3) == 5

    def test_total_order(self):
        assert ExtendedNat(3) < INFINITE
        assert not (INFINITE < ExtendedNat(3))
        assert ExtendedNat(1) < ExtendedNat(2) < INFINITE
        assert INFINITE == INFINITE  # noqa: PLR0124 (identity of the sentinel)

    def test_no_integer_value_for_infinite(self):
        with pytest.raises(ValueError):
            INFINITE.value


class TestOrdAdditivity:
    def test_product_orders_add(self):
        rng = random.Random(11)
        for _ in range(30):
            p = Poly(QQ, [rng.randint(-2, 2) for _ in range(4)])
            q = Poly(QQ, [rng.randint(-2, 2) for _ in range(4)])
            lam0 = rng.randint(-2, 2)
            lhs = ord_at(p * q, lam0)
            rhs = ord_at(p, lam0) + ord_at(q, lam0)
            assert lhs == rhs


small_fraction = st.fractions(
    min_value=-4, max_value=4, max_denominator=8
)


def gaussian(draw_re, draw_im):
    return GaussianRational(draw_re, draw_im)


small_gaussian = st.builds(gaussian, small_fraction, small_fraction)


class TestFieldAxioms:
    @settings(max_examples=60, deadline=None)
    @given(small_fraction, small_fraction, small_fraction)
    def test_rational_field(self, a, b, c):
        a, b, c = QQ.coerce(a), QQ.coerce(b), QQ.coerce(c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if a:
            inv = QQ.one() / a
            assert a * inv == QQ.one()

    @settings(max_examples=60, deadline=None)
    @given(small_gaussian, small_gaussian, small_gaussian)
    def test_gaussian_field(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if a:
            inv = GaussianRational(1) / a
            assert a * inv == GaussianRational(1)

    def test_canonical_equality(self):
        assert GaussianRational(Fraction(2, 4), 0) == GaussianRational(Fraction(1, 2))
        assert hash(GaussianRational(3, 0)) == hash(Fraction(3))


class TestPolyStructure:
    def test_zero_degree_is_minus_infinity(self):
        assert Poly.zero(QQ).degree == float("-inf")

    def test_product_degree_adds(self):
        p, q = poly_q(1, 2, 1), poly_q(0, 3)
        assert (p * q).degree == p.degree + q.degree

    def test_divmod_reconstructs(self):
        rng = random.Random(5)
        for _ in range(30):
            a = Poly(QQ, [rng.randint(-3, 3) for _ in range(5)])
            b = Poly(QQ, [rng.randint(-3, 3) for _ in range(3)])
            if b.is_zero:
                continue
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.is_zero or r.degree < b.degree

    def test_gcd_divides_both(self):
        a = Poly.from_roots(QQ, [1, 1, 2])
        b = Poly.from_roots(QQ, [1, 3])
        g = poly_gcd(a, b)
        assert g == Poly.from_roots(QQ, [1])
        assert (a % g).is_zero and (b % g).is_zero

    def test_gcd_recovers_planted_common_factor(self):
        rng = random.Random(8)
        for _ in range(25):
            common = Poly(QQ, [rng.randint(-3, 3) for _ in range(rng.randint(1, 6))] + [1])
            a = common * Poly(QQ, [rng.randint(-3, 3) for _ in range(12)] + [1])
            b = common * Poly(QQ, [rng.randint(-3, 3) for _ in range(15)] + [2])
            g = poly_gcd(a, b)
            assert (a % g).is_zero and (b % g).is_zero
            assert (g % poly_gcd(g, common)).is_zero
            assert g.degree >= common.degree

    def test_gcd_of_coprime_high_degree_is_one(self):
        rng = random.Random(9)
        a = Poly(QQ, [rng.randint(-50, 50) for _ in range(40)] + [1])
        b = Poly(QQ, [rng.randint(-50, 50) for _ in range(48)] + [1])
        g = poly_gcd(a, b)
        assert (a % g).is_zero and (b % g).is_zero

    def test_gcd_gaussian_field(self):
        i = GaussianRational(0, 1)
        common = Poly(QQI, [-i, 1])
        a = common * Poly(QQI, [1, i, 1])
        b = common * Poly(QQI, [2, 1])
        g = poly_gcd(a, b)
        assert g == common.monic()

    def test_shift_inverts(self):
        p = poly_q(2, -1, 0, 5)
        assert p.shift(3).shift(-3) == p
        assert p.shift(2).evaluate(0) == p.evaluate(2)

    def test_to_string(self):
        assert poly_q(-2, 0, 1).to_string() == "λ^2 - 2"
