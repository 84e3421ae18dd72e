from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quatcohom import GaussianRational, ParamExpr, parse_coefficient, parse_rational
from quatcohom.errors import CoefficientParseError, DivisionByZero, PoleAtBinding

fractions = st.fractions(
    min_value=-100, max_value=100, max_denominator=12)
scalars = st.builds(GaussianRational, fractions, fractions)


@given(scalars, scalars, scalars)
def test_ring_laws(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + GaussianRational() == x
    assert x * GaussianRational(1) == x


@given(scalars)
def test_conjugation_and_norm(x):
    norm = x * x.conjugate()
    assert norm.is_real()
    assert norm.re >= 0
    assert x.conjugate().conjugate() == x


@given(scalars)
def test_field_inverse(x):
    if x.is_zero():
        with pytest.raises(DivisionByZero):
            x.inverse()
    else:
        assert x * x.inverse() == GaussianRational(1)


@given(scalars)
def test_print_parse_round_trip(x):
    assert parse_rational(str(x)) == x


def test_parse_forms():
    assert parse_rational("3/4") == GaussianRational(Fraction(3, 4))
    assert parse_rational("-i") == GaussianRational(0, -1)
    assert parse_rational("2*i") == GaussianRational(0, 2)
    assert parse_rational("1/2 - 3*i") == GaussianRational(
        Fraction(1, 2), Fraction(-3))
    assert parse_rational("(1+i)*(1-i)") == GaussianRational(2)


def test_parse_rejects_garbage():
    for text in ("", "1//2", "t", "1 +", "2**3", "i i"):
        with pytest.raises(CoefficientParseError):
            parse_rational(text)


def test_param_expr_evaluation():
    expr = parse_coefficient("t/(1-t)", ["t"])
    assert expr.evaluate({"t": Fraction(1, 2)}) == GaussianRational(1)
    assert expr.evaluate({"t": Fraction(1, 3)}) == GaussianRational(
        Fraction(1, 2))
    with pytest.raises(PoleAtBinding):
        expr.evaluate({"t": Fraction(1)})


def test_param_expr_round_trip():
    for text in ("t", "(t-1)/t", "1/t", "-t", "t*t - 2"):
        expr = parse_coefficient(text, ["t"])
        again = parse_coefficient(str(expr), ["t"])
        for value in (Fraction(2), Fraction(-1, 3), Fraction(5, 7)):
            assert expr.evaluate({"t": value}) == again.evaluate({"t": value})


def test_imaginary_unit_reserved_as_parameter():
    with pytest.raises(CoefficientParseError):
        parse_coefficient("i + t", ["i", "t"])


@given(fractions, fractions)
def test_real_fast_path_matches_general_product(a, b):
    x = GaussianRational(a)
    y = GaussianRational(b)
    assert x * y == GaussianRational(a * b)
    assert (x * GaussianRational(0, 1)) * (y * GaussianRational(0, 1)) == \
        GaussianRational(-a * b)
