"""Tests for polynomials, monomial orders, and the tensor polynomial T."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sunflower_lab import setfam
from sunflower_lab.errors import ArityError, CapExceededError, ZeroPolynomialError
from sunflower_lab.polyalg import (
    ModP,
    Polynomial,
    PrimeField,
    RATIONALS,
    TermOrder,
    build_T,
    deglex_order,
    dump_poly,
    leading_monomial,
    lex_order,
    mono_mul,
    parse_poly,
    t_factor,
    t_value,
)

monomials3 = st.tuples(*[st.integers(0, 5)] * 3)


class TestTermOrder:
    def test_paper_lex_formula_makes_x1_largest(self):
        order = lex_order(2, "paper")
        assert order.compare((0, 1), (1, 0)) == -1  # x2 < x1

    def test_deglex_degree_first(self):
        order = deglex_order(3)
        x1x2 = (1, 1, 0)
        x3 = (0, 0, 1)
        assert order.compare(x3, x1x2) == -1

    def test_equal_iff_identical(self):
        order = deglex_order(3)
        assert order.compare((1, 2, 0), (1, 2, 0)) == 0
        assert order.compare((1, 2, 0), (2, 1, 0)) != 0

    def test_reversed_ranking_flips(self):
        order = lex_order(2, "reversed")
        assert order.compare((0, 1), (1, 0)) == 1  # x2 > x1

    def test_mismatched_arity(self):
        with pytest.raises(ArityError):
            deglex_order(2).compare((1, 0, 0), (0, 1))

    def test_bad_ranking_rejected(self):
        with pytest.raises(ValueError):
            TermOrder("deglex", (1, 1))
        with pytest.raises(ValueError):
            TermOrder("grevlex", (1, 2))

    @given(a=monomials3, b=monomials3, m=monomials3)
    @settings(max_examples=200)
    def test_multiplicative_and_one_minimal(self, a, b, m):
        for order in (deglex_order(3), lex_order(3), deglex_order(3, "reversed")):
            ka, kb = order.sort_key(a), order.sort_key(b)
            assert (ka < kb) == (order.compare(a, b) == -1)
            if ka < kb:
                assert order.compare(mono_mul(a, m), mono_mul(b, m)) == -1
            if a != (0, 0, 0):
                assert order.compare((0, 0, 0), a) == -1

    @given(a=monomials3, b=monomials3, c=monomials3)
    @settings(max_examples=100)
    def test_total_order(self, a, b, c):
        order = deglex_order(3)
        assert order.compare(a, b) == -order.compare(b, a)
        if order.compare(a, b) <= 0 and order.compare(b, c) <= 0:
            assert order.compare(a, c) <= 0


class TestLeadingMonomial:
    def test_linear_tie_broken_by_ranking(self):
        # deglex with x2 ranked above x1
        order = deglex_order(2, "reversed")
        f = parse_poly("1*x1 + 1*x2 - 1", 2)
        assert leading_monomial(f, order) == ((0, 1), 1)

    def test_constant(self):
        f = Polynomial.constant(2, Fraction(5))
        assert leading_monomial(f, deglex_order(2)) == ((0, 0), 5)

    def test_t_factor_n1(self):
        # 2 - (x + y + z) with ranking z < y < x
        f = t_factor(1, 1)
        assert leading_monomial(f, deglex_order(3)) == ((1, 0, 0), -1)

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            leading_monomial(Polynomial.zero(2), deglex_order(2))


class TestArithmetic:
    def test_cancellation(self):
        f = parse_poly("1*x1 + 1", 2)
        g = parse_poly("-1*x1", 2)
        assert f + g == Polynomial.constant(2, Fraction(1))

    def test_difference_of_squares(self):
        f = parse_poly("1*x1 - 1", 1)
        g = parse_poly("1*x1 + 1", 1)
        assert f * g == parse_poly("1*x1^2 - 1", 1)

    def test_scale_by_zero(self):
        f = parse_poly("1*x1*x2", 2)
        assert f.scale(Fraction(0)).is_zero

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            parse_poly("1*x1", 1) + parse_poly("1*x1", 2)

    def test_evaluate_examples(self):
        f = parse_poly("1*x1 + 1*x2 - 1", 2)
        assert f.evaluate((1, 0)) == 0
        assert parse_poly("1*x1*x2", 2).evaluate((1, 1)) == 1
        assert t_factor(1, 1).evaluate((1, 1, 1)) == -1

    @given(st.data())
    @settings(max_examples=60)
    def test_evaluate_is_ring_homomorphism(self, data):
        def rand_poly():
            terms = {}
            for _ in range(data.draw(st.integers(0, 4))):
                m = data.draw(st.tuples(*[st.integers(0, 2)] * 3))
                terms[m] = Fraction(data.draw(st.integers(-4, 4)))
            return Polynomial(3, terms)

        f, g = rand_poly(), rand_poly()
        pt = data.draw(st.tuples(*[st.integers(-2, 2)] * 3))
        assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
        assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)


class TestBuildT:
    def test_n1_expansion(self):
        assert build_T(1) == parse_poly("2 - 1*x1 - 1*x2 - 1*x3", 3)

    def test_n1_diagonal(self):
        assert build_T(1).evaluate((1, 1, 1)) == -1

    def test_n2_at_weight1_diagonal(self):
        v = (1, 0)
        assert build_T(2).evaluate(v + v + v) == -2  # (-1)^1 * 2^(2-1)

    def test_matches_direct_product_exhaustively(self):
        for n, k in [(2, 1), (3, 1), (3, 2), (4, 2)]:
            T = build_T(n)
            pts = [setfam.char_vector(m, n) for m in setfam.complete_family(n, k).members]
            for a, b, c in itertools.product(pts, repeat=3):
                assert T.evaluate(a + b + c) == t_value(a, b, c)

    def test_diagonal_closed_form(self):
        for n in range(1, 7):
            for k in range(n + 1):
                for m in setfam.complete_family(n, k).members:
                    v = setfam.char_vector(m, n)
                    assert t_value(v, v, v) == (-1) ** k * 2 ** (n - k)

    def test_expansion_cap(self):
        with pytest.raises(CapExceededError):
            build_T(9)


class TestTextFormat:
    def test_round_trips(self):
        for text in ["0", "3/2*x1^2*x3 - 1*x2 - 2", "1*x1", "-7"]:
            f = parse_poly(text, 3)
            assert parse_poly(dump_poly(f), 3) == f

    def test_rejects_unknown_variable(self):
        with pytest.raises(ValueError):
            parse_poly("1*x5", 3)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            parse_poly("  ", 2)


class TestPrimeField:
    def test_basic_arithmetic(self):
        gf = PrimeField(7)
        a = gf.of(3)
        assert a + 5 == ModP(1, 7)
        assert a * a == 2
        assert (a / gf.of(5)) * gf.of(5) == a
        assert -a == 4
        assert bool(gf.of(0)) is False

    def test_validation(self):
        with pytest.raises(ValueError):
            PrimeField(3)
        with pytest.raises(ValueError):
            PrimeField(9)
        with pytest.raises(ValueError):
            ModP(1, 5) + ModP(1, 7)

    def test_polynomials_over_gf(self):
        gf = PrimeField(5)
        f = Polynomial(1, {(1,): gf.of(2), (0,): gf.of(3)})
        g = f * f
        assert g.coefficient((2,)) == 4
        pt = (gf.of(1),)
        assert g.evaluate(pt) == f.evaluate(pt) * f.evaluate(pt)

    def test_build_t_over_gf(self):
        gf = PrimeField(7)
        T = build_T(2, field=gf)
        v = (1, 0)
        assert T.evaluate(v + v + v) == gf.of(-2)
