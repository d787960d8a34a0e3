from fractions import Fraction

import pytest

from adedefect.errors import ParseError
from adedefect.grammar import identifiers, parse_polynomial
from adedefect.poly import MultiPoly

V = ("x", "y", "z", "w")


def test_precedence_and_literals():
    p = parse_polynomial("x^2 + 3/2*y - (z - w)^2", V)
    assert p.terms[(2, 0, 0, 0)] == 1
    assert p.terms[(0, 1, 0, 0)] == Fraction(3, 2)
    assert p.terms[(0, 0, 1, 1)] == 2
    assert parse_polynomial("-x^2", V).terms == {(2, 0, 0, 0): -1}


def test_division_by_integer_in_term():
    assert parse_polynomial("x/4", V) == MultiPoly(V, {(1, 0, 0, 0): Fraction(1, 4)})


def test_whitespace_insignificant():
    a = parse_polynomial("x^2+y^2+z^2+w^4", V)
    b = parse_polynomial("  x ^ 2 +\n y^2 + z^2 +   w^4 ", V)
    assert a == b


@pytest.mark.parametrize("text, col", [
    ("x^-2", 4), ("x +", 4), ("x + q", 5), ("(x + y", 7), ("x $ y", 3),
    ("x / y", 5), ("", 1),
])
def test_errors_carry_position(text, col):
    with pytest.raises(ParseError) as err:
        parse_polynomial(text, V)
    assert err.value.line == 1 and err.value.column == col


def test_error_on_second_line():
    with pytest.raises(ParseError) as err:
        parse_polynomial("x +\n  y +* z", V)
    assert (err.value.line, err.value.column) == (2, 6)


def test_laurent_exponents():
    p = parse_polynomial("t1^-1 + 2*t2^-3*t3", ("t1", "t2", "t3"), laurent=True)
    assert p.terms == {(-1, 0, 0): 1, (0, -3, 1): 2}
    with pytest.raises(ParseError):
        parse_polynomial("(t1 + t2)^-1", ("t1", "t2"), laurent=True)


def test_identifiers_in_order():
    assert identifiers("b*a + c^2 + a") == ["b", "a", "c"]


def test_round_trip_through_str():
    p = parse_polynomial("3/7*x^3*y - y^2 + 5 - 2*w", V)
    assert parse_polynomial(str(p), V) == p
