import pytest

from hypersing.errors import ParseError
from hypersing.forms import PForm
from hypersing.parsing import parse_components, parse_form, parse_poly, parse_variables
from hypersing.poly import Poly, RingSpec

R = RingSpec(("x", "y"))
R3 = RingSpec(("x", "y", "z"))


def test_grammar():
    assert parse_poly("2/4*x^2 - (y - 1)", R) == Poly.monomial(R, (2, 0), "1/2") - Poly.var(R, "y") + 1
    assert parse_poly("-(x)^3", R) == -Poly.var(R, 0) ** 3


@pytest.mark.parametrize("text, column", [("x^^2", 3), ("x y", 3), ("x + z", 5), ("x/y", 2), ("(x", 3),
                                          ("x^2^3", 4)])
def test_errors_carry_position(text, column):
    with pytest.raises(ParseError) as info:
        parse_poly(text, R)
    assert info.value.column == column
    assert "column" in str(info.value)


def test_forms():
    a = parse_form("(x*y) dx^dy + (1/2) dy^dz", R3)
    assert a.degree == 2
    assert a.coefficient((0, 1)) == parse_poly("x*y", R3)
    assert parse_form("- dz^dx", R3) == PForm(R3, 2, {(0, 2): Poly.one(R3)})
    assert parse_form("dx^dx", R3) == PForm.zero(R3, 2)


def test_form_degree_mismatch():
    with pytest.raises(ParseError):
        parse_form("dx + dx^dy", R)


def test_components():
    comps = parse_components("x + y^2, y", R)
    assert comps[1] == Poly.var(R, 1)
    with pytest.raises(ParseError):
        parse_components("x", R)


def test_variables():
    assert parse_variables("x, y ,z") == ("x", "y", "z")
    with pytest.raises(ParseError):
        parse_variables("x, 2y")
