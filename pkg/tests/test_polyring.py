from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pluecker.polyring import (
    FormalPolynomial,
    add,
    d,
    equals_expansion,
    evaluate,
    mul,
    neg,
    product,
    render,
    render_factored,
    scale,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(fractions, max_size=5).map(FormalPolynomial)


def test_zero_has_degree_minus_one():
    assert FormalPolynomial().degree == -1
    assert FormalPolynomial([0, 0, 0]).degree == -1
    assert FormalPolynomial([1, 0, 0]).degree == 0


def test_trailing_zeros_are_canonicalised():
    assert FormalPolynomial([1, 2, 0, 0]) == FormalPolynomial([1, 2])
    assert hash(FormalPolynomial([1, 2, 0])) == hash(FormalPolynomial([1, 2]))


def test_symbol_and_constants():
    assert d.coeffs == (0, 1)
    assert FormalPolynomial.constant(Fraction(3, 4)).coeffs == (Fraction(3, 4),)


def test_arithmetic_examples():
    assert (d + 1) * (d - 1) == d**2 - 1
    assert d * (d - 2) == d**2 - 2 * d
    assert (d**4 - 2 * d**3 - 9 * d**2 + 18 * d) / 2 == FormalPolynomial([0, 9, Fraction(-9, 2), -1, Fraction(1, 2)])
    assert 3 - d == FormalPolynomial([3, -1])


def test_module_functions_match_operators():
    p, q = d**2 + 3, 2 * d - 1
    assert add(p, q) == p + q
    assert mul(p, q) == p * q
    assert neg(p) == -p
    assert scale(p, Fraction(1, 3)) == p / 3


def test_evaluate_is_exact():
    p = (d**4 - 2 * d**3 - 9 * d**2 + 18 * d) / 2
    assert evaluate(p, 4) == 28
    assert p(5) == 120
    assert isinstance(p(4), Fraction)
    assert evaluate(d / 3, 1) == Fraction(1, 3)


def test_division_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        d / 0


def test_coefficients_never_float():
    with pytest.raises(TypeError):
        FormalPolynomial([0.5])


def test_equals_expansion():
    expanded = d**4 - 2 * d**3 - 9 * d**2 + 18 * d
    assert equals_expansion([d, d - 2, d - 3, d + 3], expanded)
    assert not equals_expansion([d, d - 2, d - 3, d - 3], expanded)
    assert product([]) == FormalPolynomial.constant(1)


def test_render():
    assert render((d**4 - 2 * d**3 - 9 * d**2 + 18 * d) / 2) == "1/2*d^4 - d^3 - 9/2*d^2 + 9*d"
    assert render(3 * d**2 - 6 * d) == "3*d^2 - 6*d"
    assert render(FormalPolynomial()) == "0"
    assert render(FormalPolynomial.constant(-1)) == "-1"
    assert render_factored([d, d - 2, d - 3, d + 3]) == "d(d-2)(d-3)(d+3)"


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == FormalPolynomial()


@given(polys, polys, fractions)
def test_evaluation_is_a_ring_homomorphism(p, q, x):
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)


@given(polys, polys)
def test_degree_of_product(p, q):
    if p.is_zero() or q.is_zero():
        assert (p * q).degree == -1
    else:
        assert (p * q).degree == p.degree + q.degree
