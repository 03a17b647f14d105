import pytest
from hypothesis import given, strategies as st

from singzeta.expr import ParseError, format_polynomial, parse
from singzeta.poly import Polynomial, variable

z1, z2, z3 = (variable(i, 3) for i in (1, 2, 3))

G0_TEXT = "z1^2*(z1+z2-2*z3)*(z1+3*z2-4*z3)+z2^5+z3^5"


def test_golden_germ_expands():
    g = parse(G0_TEXT)
    assert g == z1 ** 2 * (z1 + z2 - 2 * z3) * (z1 + 3 * z2 - 4 * z3) + z2 ** 5 + z3 ** 5
    assert len(g) <= 13


def test_aliases():
    assert parse("x^2+y^2+z^2") == z1 ** 2 + z2 ** 2 + z3 ** 2


def test_implicit_multiplication():
    assert parse("z1^2(z1+z2)") == z1 ** 2 * (z1 + z2)
    assert parse("2z1 z2") == 2 * z1 * z2
    assert parse("xy") == z1 * z2
    assert parse("z1z2z3") == z1 * z2 * z3


def test_rational_literals_and_unary_minus():
    assert parse("3/2*z1 - -z2") == z1 * 3 / 2 + z2
    assert parse("-z1^2") == -(z1 ** 2)
    assert parse("(z1+z2)/4") == (z1 + z2) / 4


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("z1^-1", 1, 4),
        ("z1 + w", 1, 6),
        ("z1 +", 1, 5),
        ("(z1 + z2", 1, 9),
        ("z1^z2", 1, 4),
        ("z1 / z2", 1, 4),
        ("z1 +\n  z4", 2, 3),
        ("1.5*z1", 1, 2),
        ("z1 ^ 2/3", 1, 7),
        ("", 1, 1),
    ],
)
def test_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_custom_names():
    v2, v3 = variable(1, 2), variable(2, 2)
    assert parse("v2^2 + v3^2", names=("v2", "v3")) == v2 ** 2 + v3 ** 2
    with pytest.raises(ParseError):
        parse("x", names=("v2", "v3"))


coef = st.fractions(min_value=-20, max_value=20, max_denominator=7)
mono3 = st.tuples(*[st.integers(0, 6)] * 3)


@given(st.dictionaries(mono3, coef, max_size=8))
def test_round_trip(terms):
    p = Polynomial(terms, 3)
    assert parse(format_polynomial(p)) == p
