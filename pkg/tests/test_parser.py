import random

import pytest

from conftest import random_rational
from wzforms import (DivisionByZero, ParseError, RationalFunction,
                     parse_expression, parse_polynomial)
from wzforms.parser import latex_polynomial, latex_rational

V = ("x", "y", "z")


def test_parse_linear_denominator():
    f = parse_expression("1/(4*x+6*y+5*z)", V)
    assert str(f) == "1/(4*x + 6*y + 5*z)"


def test_parse_canonicalizes():
    assert str(parse_expression("(x^2-1)/(x-1)", V)) == "x + 1"
    assert parse_expression("2/4", V) == RationalFunction.constant(
        __import__("fractions").Fraction(1, 2), V)


def test_parse_zero_denominator():
    with pytest.raises(DivisionByZero):
        parse_expression("1/(x-x)", V)


def test_parse_undeclared_identifier_has_position():
    with pytest.raises(ParseError) as err:
        parse_expression("1/(4*x + 6*q)", V)
    assert err.value.line == 1 and err.value.column == 12


def test_parse_syntax_error_has_position():
    with pytest.raises(ParseError) as err:
        parse_expression("x +\n* y", V)
    assert err.value.line == 2 and err.value.column == 1


def test_parse_trailing_garbage():
    with pytest.raises(ParseError):
        parse_expression("x + 1)", V)


def test_precedence_and_associativity():
    xv = parse_expression("x", V)
    assert parse_expression("-x^2", V) == -(xv**2)
    assert parse_expression("2^3^2", V) == 512
    assert parse_expression("6/3/2", V) == 1
    assert parse_expression("1 - 2 - 3", V) == -4
    assert parse_expression("x^-2", V) == xv**-2


def test_exponent_must_be_integer():
    with pytest.raises(ParseError):
        parse_expression("x^y", V)
    with pytest.raises(ParseError):
        parse_expression("x^(1/2)", V)


def test_parse_print_round_trip_random():
    rng = random.Random(79)
    for _ in range(60):
        f = random_rational(rng, V)
        assert parse_expression(str(f), V) == f


def test_parse_polynomial_rejects_fractions():
    assert parse_polynomial("x^2 + 1/2", V) is not None
    with pytest.raises(Exception):
        parse_polynomial("1/x", V)


def test_latex_forms():
    p = parse_polynomial("4*x + 6*y + 5*z - 3", V)
    assert latex_polynomial(p) == "4 x + 6 y + 5 z - 3"
    f = parse_expression("(x+1)/(2*y-1)", V)
    assert latex_rational(f) == r"\frac{x + 1}{2 y - 1}"
    assert latex_polynomial(parse_polynomial("x^2*y - 1/2", V)) == \
        r"x^{2} y - \tfrac{1}{2}"
