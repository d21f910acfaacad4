import pytest
from hypothesis import given

from diffreps.coeffs import LAURENT, LAURENT_Q, RATIONAL, SERIES
from diffreps.diffop import DiffOp
from diffreps.errors import NonCommutativeDivision, ParseError, TooManyParameters
from diffreps.parse import parse_coeff, parse_op, parse_scalar, render
from diffreps.scalar import Scalar

from conftest import ops, rationals, scalars

CORPUS = [
    "-z^2*d + 2*c*z",
    "(1/4)*d^2",
    "d*z",
    "z*d - c",
    "-d",
    "0",
    "1",
    "i",
    "(3/4 + 1/2*i)*z^-2 + c*z",
    "z^3*d^3 + z^2*d^2",
    "(a + z)*d^2 - c*(c+1)/(a + z)",
    "1/(1 - z)*d + 1/z",
    "d^3 - 3*c*d^2 + c^2",
    "(z^2 + 1)/(z^3 - 2*z)",
    "(1 + i)*d^2 + (2 - 3*i)*z*d",
    "z*d^2 + 2*b*d",
    "lam^2 - lam - c*(c + 1)",
    "(2*c + 1)^2",
    "d*d*z*z",
    "z d",
    "2 z^2 d",
    "(z*d)^3",
    "(d + z)^2",
    "z^-3*d - 4/z",
    "-(z - 1)^2*d",
    "c/(c + 1)*z",
    "1/(4*c^2 + 4*c + 1)",
    "alpha*z^4*d^2 - beta*z",
    "(1/2)*z*d + 1/4",
    "d^5",
]


def test_literal_operator():
    P = parse_op("-z^2*d + 2*c*z")
    z = RATIONAL.gen()
    c = Scalar.param("c")
    assert P == DiffOp({1: -z * z, 0: 2 * c * z}, RATIONAL)


def test_quarter_d_squared():
    assert parse_op("(1/4)*d^2") == DiffOp.d(RATIONAL, 2).scale(RATIONAL.from_scalar(Scalar.coerce(1) / 4))


def test_normal_ordering_on_parse():
    assert render(parse_op("d*z")) == "z*d + 1"


def test_implicit_multiplication():
    assert parse_op("2 z d") == parse_op("2*z*d")


@pytest.mark.parametrize("text", CORPUS)
def test_roundtrip_corpus(text):
    P = parse_op(text)
    assert parse_op(render(P)) == P
    assert render(parse_op(render(P))) == render(P)


def test_zero_renders():
    assert render(DiffOp.zero()) == "0"
    assert render(RATIONAL.zero()) == "0"


def test_series_tail():
    s = SERIES.coerce("1/(1-z)")
    text = render(s)
    assert text.endswith("+ O(z^24)")
    assert parse_coeff(text, SERIES) == s


def test_explicit_big_o_sets_precision():
    s = parse_coeff("1 + z + O(z^5)", SERIES)
    assert s.prec == 5


def test_q_ring():
    P = parse_op("q^3*dq^2 + 2*c*q^2*dq", LAURENT_Q)
    assert P.order == 2
    assert render(P) == "q^3*dq^2 + 2*c*q^2*dq"


def test_division_by_operator():
    with pytest.raises(NonCommutativeDivision):
        parse_op("1/d")
    with pytest.raises(NonCommutativeDivision):
        parse_op("z/(d + 1)")


def test_negative_power_of_operator():
    with pytest.raises(ParseError):
        parse_op("d^-1")


@pytest.mark.parametrize("bad", ["d*", "(z + 1", "z +* 2", "2 $ z", "z^c", "z^^2"])
def test_syntax_errors_carry_position(bad):
    with pytest.raises(ParseError) as info:
        parse_op(bad)
    assert "position" in info.value.details


def test_reserved_variables_by_ring():
    with pytest.raises(ParseError):
        parse_op("dq", RATIONAL)
    with pytest.raises(ParseError):
        parse_op("z", LAURENT_Q)


def test_parameter_cap():
    text = " + ".join(f"p{k}" for k in range(9))
    with pytest.raises(TooManyParameters):
        parse_scalar(text)
    assert parse_scalar(text, max_params=9) is not None


def test_laurent_parse():
    f = parse_coeff("z^-2 + 3*z", LAURENT)
    assert f.membership("C[z,z^-1]")
    assert render(f) == "z^-2 + 3*z"


@given(scalars())
def test_scalar_roundtrip(s):
    assert parse_scalar(render(s)) == s


@given(rationals(params=True))
def test_rational_roundtrip(f):
    assert parse_coeff(render(f)) == f


@given(ops(max_order=3, max_deg=3))
def test_operator_roundtrip(P):
    assert parse_op(render(P)) == P


@given(ops(LAURENT, max_order=2, max_deg=2, low=-2))
def test_laurent_operator_roundtrip(P):
    assert parse_op(render(P), LAURENT) == P
