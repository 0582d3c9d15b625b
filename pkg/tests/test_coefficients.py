import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qplane.coefficients import (BASE_PARAMETERS, ONE, ZERO, C, Coefficient, P, cross_equal,
                                 random_coefficient)
from qplane.errors import DivisionByZero, ParseError, SingularSubstitution, UnknownParameter

from strategies import coefficients, nonzero_coefficients

p, q, qp, qb, k = (P(n) for n in BASE_PARAMETERS)
SYMBOLS = {n: sympy.Symbol(n.replace("'", "p_")) for n in BASE_PARAMETERS}


def as_sympy(c: Coefficient) -> sympy.Expr:
    """Rebuild a coefficient as a sympy expression from its printed monomials."""
    def poly(monomials):
        return sum((m.coeff * sympy.Mul(*(SYMBOLS[n] ** e for n, e in m.exponents))
                    for m in monomials), sympy.Integer(0))
    return poly(c.numerator_monomials()) / poly(c.denominator_monomials())


def same(expr_a, expr_b) -> bool:
    return sympy.cancel(expr_a - expr_b) == 0


# worked examples ------------------------------------------------------------


def test_add_examples():
    assert (p + (-p)).is_zero()
    assert p + qp.inv() == (p * qp + 1) / qp
    assert (q - p.inv()) + p.inv() == q


def test_mul_examples():
    assert (q * q.inv()).is_one()
    assert (qb / p) * (qb * q / (qp * p)) * (p / 1) == q * qb ** 2 / (qp * p)
    assert (p - qp.inv()) * qp == p * qp - 1


def test_inv_examples():
    assert p.inv() == 1 / p
    assert ((p * qp - 1) / qp).inv() == qp / (p * qp - 1)
    with pytest.raises(DivisionByZero):
        ZERO.inv()
    with pytest.raises(ZeroDivisionError):
        p / 0


def test_substitute_examples():
    assert (p - qp.inv()).substitute({"p": q, "q'": q}) == q - q.inv()
    assert (qb / p).substitute({"qbar": p}).is_one()
    with pytest.raises(SingularSubstitution):
        (qp / (p * qp - 1)).substitute({"p": qp.inv()})


def test_is_zero_examples():
    assert (q * qb - qb * q).is_zero()
    assert not (p - q).is_zero()
    assert ((p * qp - 1) / qp - p + qp.inv()).is_zero()


def test_rendering():
    assert str(p - qp.inv()) == "p - q'^{-1}"
    assert str(qp / (p * qp - 1)) == "q' / (p q' - 1)"
    assert str(q - q.inv()) == "q - q^{-1}"
    assert str(ZERO) == "0"
    assert str(C(Fraction(-3, 4))) == "-3 / 4"
    assert str(p ** 2 * qp.inv() ** 3) == "p^2 q'^{-3}"


def test_canonical_sign_is_positive_leading_denominator():
    a = (p - 1) / (-q)
    assert a == (1 - p) / q
    assert a.denominator_monomials()[0].coeff > 0


def test_parse_aliases_and_forms():
    assert Coefficient.parse("q′") == qp
    assert Coefficient.parse("q̄ − 1") == qb - 1
    assert Coefficient.parse("p^-1") == Coefficient.parse("p^{-1}") == Coefficient.parse("1/p")
    assert Coefficient.parse("(p q' - 1)/q'") == p - qp.inv()
    assert Coefficient.parse("2 p q") == 2 * p * q


def test_parse_errors():
    with pytest.raises(UnknownParameter):
        Coefficient.parse("z + 1")
    with pytest.raises(ParseError):
        Coefficient.parse("p +")
    with pytest.raises(UnknownParameter):
        P("qprime")


def test_immutable():
    with pytest.raises(AttributeError):
        p._f = None


def test_parameters_and_monomial():
    assert (p / qp + k).parameters() == {"p", "q'", "k"}
    assert (p / qp).is_monomial()
    assert not (p + 1).is_monomial()


def test_random_coefficient_is_deterministic_and_nonzero():
    a = [random_coefficient(random.Random(3)) for _ in range(5)]
    b = [random_coefficient(random.Random(3)) for _ in range(5)]
    assert a == b
    assert all(not c.is_zero() for c in a)


# properties -----------------------------------------------------------------


@given(coefficients(), coefficients(), coefficients())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert (a - a).is_zero()


@given(nonzero_coefficients)
def test_inverse(a):
    assert (a * a.inv()).is_one()
    assert a.inv().inv() == a


@given(coefficients())
def test_canonical_form_idempotent(a):
    assert Coefficient(a._f) == a
    assert Coefficient.parse(str(a)) == a


@given(coefficients(), coefficients(), nonzero_coefficients)
def test_cross_multiplication_oracle(a, b, c):
    assert cross_equal(a, b) == (a == b)
    assert cross_equal(a, a * c / c)


@given(coefficients(), coefficients())
def test_arithmetic_matches_sympy(a, b):
    sa, sb = as_sympy(a), as_sympy(b)
    assert same(as_sympy(a + b), sa + sb)
    assert same(as_sympy(a * b), sa * sb)
    assert same(as_sympy(a - b), sa - sb)


@given(coefficients(), coefficients(), st.sampled_from(BASE_PARAMETERS),
       coefficients(names=("p", "q")))
def test_substitution_is_a_homomorphism(a, b, name, image):
    bind = {name: image}
    try:
        left_mul, left_add = (a * b).substitute(bind), (a + b).substitute(bind)
        sa, sb = a.substitute(bind), b.substitute(bind)
    except SingularSubstitution:
        return
    assert left_mul == sa * sb
    assert left_add == sa + sb


@given(coefficients(), coefficients(names=("q", "k")))
def test_substitution_matches_sympy(a, image):
    try:
        got = a.substitute({"p": image})
    except SingularSubstitution:
        return
    want = as_sympy(a).subs(SYMBOLS["p"], as_sympy(image))
    assert same(as_sympy(got), want)


def test_unit_constants():
    assert ONE.is_one() and ZERO.is_zero()
    assert C(2) + C(Fraction(1, 2)) == C(Fraction(5, 2))
