from fractions import Fraction

import pytest
from hypothesis import given, settings

from residue_forge.errors import ParseError
from residue_forge.parse import parse_poly, parse_var_names
from residue_forge.poly import MultiPoly, VarSet

from test_poly import poly_strategy

VS = VarSet(("x", "y"))
X = MultiPoly.variable(VS, "x")
Y = MultiPoly.variable(VS, "y")

ACCEPT = [
    ("x", X),
    ("  x  +  y ", X + Y),
    ("2*x", 2 * X),
    ("3/2*x^2*y - 1", Fraction(3, 2) * X ** 2 * Y - 1),
    ("-x", -X),
    ("-x + y", Y - X),
    ("x - y - y", X - 2 * Y),
    ("(x+y)^3", (X + Y) ** 3),
    ("-(x+y)*x", -(X + Y) * X),
    ("1/2", MultiPoly.const(VS, Fraction(1, 2))),
    ("x^0", MultiPoly.const(VS, 1)),
    ("0", MultiPoly.zero(VS)),
    ("x^2*x", X ** 3),
    ("2*3", MultiPoly.const(VS, 6)),
]


@pytest.mark.parametrize("text,expected", ACCEPT, ids=[t for t, _ in ACCEPT])
def test_accepted(text, expected):
    assert parse_poly(text, VS) == expected


REJECT = [
    "x^(2)",      # exponent must be a literal
    "x^-1",
    "x^1/2",
    "2x",         # no implicit multiplication
    "x y",
    "",
    "   ",
    "()",
    "x +",
    "* x",
    "x - -y",     # unary minus only at expression head
    "x & y",
    "1/0",
    "x^",
    "(x",
    "x)",
]


@pytest.mark.parametrize("text", REJECT)
def test_rejected(text):
    with pytest.raises(ParseError):
        parse_poly(text, VS)


def test_unknown_identifier_lists_choices():
    with pytest.raises(ParseError) as exc:
        parse_poly("x + q", VS)
    assert "q" in str(exc.value)
    assert exc.value.position == 4
    assert "x" in exc.value.expected and "y" in exc.value.expected


def test_exponent_error_position():
    with pytest.raises(ParseError) as exc:
        parse_poly("x^(2)", VS)
    assert exc.value.position == 2
    assert "integer" in exc.value.expected


def test_rational_coefficients_exact():
    p = parse_poly("1/3*x + 2/3*x", VS)
    assert p == X


@settings(max_examples=60, deadline=None)
@given(poly_strategy())
def test_printer_round_trip(p):
    assert parse_poly(str(p), VS) == p


def test_parameters_parse_too():
    big = VarSet(("x",), parameters=("z",))
    p = parse_poly("z*x + z^2", big)
    z = MultiPoly.variable(big, "z")
    x = MultiPoly.variable(big, "x")
    assert p == z * x + z ** 2


class TestVarNames:
    def test_basic(self):
        assert parse_var_names("x,y") == ("x", "y")
        assert parse_var_names(" x ,  y ") == ("x", "y")
        assert parse_var_names("x_1,x_2") == ("x_1", "x_2")

    def test_duplicates_rejected(self):
        with pytest.raises(ParseError):
            parse_var_names("x,x")

    def test_bad_tokens_rejected(self):
        for bad in ("", ",", "x,", "1x", "x y"):
            with pytest.raises(ParseError):
                parse_var_names(bad)
