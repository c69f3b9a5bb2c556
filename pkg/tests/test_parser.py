import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from offsetdeg.errors import ValidationError
from offsetdeg.parser import (
    CommonFactor,
    ExprSource,
    ParseError,
    UnknownVariable,
    ZeroDenominator,
    parse_parametrization,
    parse_polynomial,
    scan_names,
    tokenize,
)
from offsetdeg.polyring import Ring

from strategies import CURVE_RING, polys

y1, y2 = CURVE_RING.gens("y1", "y2")


@pytest.mark.parametrize("text, expected", [
    ("y1^2+y2^2-1", y1**2 + y2**2 - 1),
    ("y1^3 + y2^3 - 3*y1*y2", y1**3 + y2**3 - 3 * y1 * y2),
    ("(y1-1)*(y1^2+y2^2)+y1^2", (y1 - 1) * (y1**2 + y2**2) + y1**2),
    ("-y1^2", -(y1**2)),
    ("--y1", y1),
    ("-y1^2 + 2", 2 - y1**2),
    ("(y1^2+y2^2)^2 - 2*(y1^2-y2^2)", (y1**2 + y2**2) ** 2 - 2 * (y1**2 - y2**2)),
    ("y1^2/4 + y2^2/9 - 1", 9 * y1**2 + 4 * y2**2 - 36),
    ("y1^0", CURVE_RING.one()),
    ("0", CURVE_RING.zero()),
])
def test_golden(text, expected):
    assert parse_polynomial(text) == expected


def test_unary_minus_binds_looser_than_power():
    assert parse_polynomial("-y1^2") == -parse_polynomial("y1^2")


def test_parameters_join_the_ring_in_order():
    p = parse_polynomial("y1^2 + y2^2 - r^2 + a*y1")
    assert p.ring.names[8:] == ("r", "a")


@pytest.mark.parametrize("text, pos", [
    ("y1 +", 4),
    ("y1 ** 2", 4),
    ("(y1 + y2", 8),
    ("y1^y2", 3),
    ("y1 $ y2", 3),
    ("", 0),
    ("y1^-2", 3),
])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text)
    assert info.value.position == pos
    assert isinstance(info.value, ValidationError)


def test_division_needs_nonzero_constant():
    with pytest.raises(ParseError, match="constant"):
        parse_polynomial("y1/y2")
    with pytest.raises(ParseError, match="zero"):
        parse_polynomial("y1/(2-2)")


def test_unknown_and_reserved_variables():
    with pytest.raises(UnknownVariable):
        parse_polynomial("y1 + x1")
    with pytest.raises(UnknownVariable):
        parse_polynomial("y1 + z", allowed_vars={"y1", "y2"})
    with pytest.raises(UnknownVariable):
        parse_polynomial(ExprSource("t + y1", "param-numerator-x"))


def test_degree_cap():
    with pytest.raises(ParseError, match="exceeds"):
        parse_polynomial("y1^40000")


def test_tokens_and_names():
    assert [t[1] for t in tokenize("3*y1y2")] == ["3", "*", "y1y2", ""]
    assert scan_names("b*y1 + a - b") == ["b", "y1", "a"]


@settings(max_examples=200, deadline=None)
@given(polys(ring=CURVE_RING, max_deg=4, max_terms=6, coeff=50, nvars=2))
def test_round_trip(p):
    assert parse_polynomial(str(p), ring=CURVE_RING) == p


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="y12t+-*/^() 03abz", max_size=25))
def test_fuzz_never_crashes_unexpectedly(text):
    try:
        parse_polynomial(text)
    except ValidationError:
        pass


def test_parametrization_shares_one_ring():
    p = parse_parametrization("a*(1-t^2)", "2*b*t", "1+t^2")
    assert p.X.ring is p.Y.ring is p.W.ring
    assert p.ring.names[8:] == ("a", "b")
    t = p.ring.gen("t")
    # (N1, N2) is the rotated tangent: N1 = -(W Y' - W' Y), N2 = W X' - W' X
    assert p.N2 == (1 + t**2) * p.ring.gen("a") * (-2 * t) - 2 * t * p.X


def test_parametrization_errors():
    with pytest.raises(ZeroDenominator):
        parse_parametrization("t", "t^2", "0")
    with pytest.raises(CommonFactor):
        parse_parametrization("t", "t", "t")
    reduced = parse_parametrization("t^2", "t^3", "t", reduce=True)
    assert reduced.W == reduced.ring.one()


def test_expr_source_role_is_checked():
    with pytest.raises(ValueError):
        ExprSource("y1", "bogus")
