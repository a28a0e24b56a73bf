import math

import pytest
from hypothesis import given, strategies as st

from macint.errors import ParseError, UnknownIdentifierError
from macint.expr import (
    FUNCTIONS, Add, Call, Constant, Div, Mul, NamedConstant, Neg, Pow, Sub, X,
    evaluate, format_expr, parse,
)


def test_parse_constant():
    assert parse("1") == Constant(1)


def test_parse_rational_integrand():
    assert parse("x^5/(x^7+1)") == Div(Pow(X, Constant(5)), Add(Pow(X, Constant(7)), Constant(1)))


def test_parse_call():
    assert parse("sin(x^2)") == Call("sin", Pow(X, Constant(2)))


def test_power_is_right_associative():
    assert parse("2^3^2") == Pow(Constant(2), Pow(Constant(3), Constant(2)))


def test_power_binds_tighter_than_unary_minus():
    assert parse("-x^2") == Neg(Pow(X, Constant(2)))
    assert parse("x^-2") == Pow(X, Neg(Constant(2)))


def test_precedence():
    assert evaluate(parse("2+3*4"), 0.0) == 14
    assert evaluate(parse("2-3-4"), 0.0) == -5
    assert evaluate(parse("8/4/2"), 0.0) == 1
    assert evaluate(parse("2^3^2"), 0.0) == 512


def test_whitespace_insensitive():
    assert parse("  x ^ 5 /( x^7 + 1 ) ") == parse("x^5/(x^7+1)")


def test_integer_exponent_stored_as_int():
    node = parse("x^2.0")
    assert isinstance(node.exponent.value, int)
    assert isinstance(parse("x^2.5").exponent.value, float)


def test_named_constants():
    assert parse("pi") == NamedConstant("pi")
    assert evaluate(parse("e"), 0.0) == math.e
    assert evaluate(parse("euler_gamma"), 0.0) == pytest.approx(0.5772156649015329, abs=1e-12)


@pytest.mark.parametrize("text, offset", [("x+", 2), ("(x", 2), ("x $ 1", 2), ("2x", 1), ("sin x", 4),
                                          ("", 0), ("x)", 1)])
def test_syntax_errors_carry_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset
    assert info.value.expected


def test_byte_offset_counts_utf8_bytes():
    with pytest.raises(ParseError) as info:
        parse("x+é")
    assert info.value.offset == 2
    with pytest.raises(ParseError) as info:
        parse("é")
    assert info.value.offset == 0
    # A no-break space is whitespace but two bytes long in UTF-8.
    with pytest.raises(ParseError) as info:
        parse("x\u00a0)")
    assert info.value.offset == 3


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as info:
        parse("1 + foo(x)")
    assert info.value.offset == 4
    with pytest.raises(UnknownIdentifierError):
        parse("y")


def test_eval_examples():
    assert evaluate(parse("x^5/(x^7+1)"), 1.0) == 0.5
    assert evaluate(parse("sin(x)/x"), 1.0) == pytest.approx(math.sin(1.0), rel=1e-15)
    assert evaluate(parse("ln(x)"), 1.0) == 0.0


@pytest.mark.parametrize("text, x", [("1/(x-1)", 1.0), ("ln(x)", 0.0), ("ln(x)", -1.0),
                                     ("sqrt(x)", -1.0), ("x^0.5", -2.0), ("exp(exp(x))", 10.0),
                                     ("gamma(x)", -0.5), ("x^-1", 0.0)])
def test_domain_violation_is_nan(text, x):
    assert math.isnan(evaluate(parse(text), x))


def test_gamma_evaluates_via_weierstrass():
    assert evaluate(parse("gamma(x)"), 1.0) == pytest.approx(1.0, abs=1e-4)


def test_eval_deterministic():
    f = parse("exp(x^2)*sin(x)/(x+1)")
    assert evaluate(f, 0.7) == evaluate(f, 0.7)


def test_format_examples():
    assert format_expr(Constant(1)) == "1"
    assert format_expr(parse("x^5/(x^7+1)")) == "x^5/(x^7+1)"
    assert format_expr(Neg(X)) == "-x"
    assert format_expr(parse("(2^3)^2")) == "(2^3)^2"
    assert format_expr(parse("x-(x-x)")) == "x-(x-x)"
    assert format_expr(parse("(-x)^2")) == "(-x)^2"
    assert str(parse("sin(x)/x")) == "sin(x)/x"


# Random expression trees for the round-trip property.
_leaves = st.one_of(
    st.just(X),
    st.integers(min_value=0, max_value=1000).map(Constant),
    st.floats(min_value=0, max_value=1e6, allow_nan=False, allow_infinity=False).map(Constant),
    st.sampled_from(["pi", "e", "euler_gamma"]).map(NamedConstant),
)


def _extend(children):
    binary = st.sampled_from([Add, Sub, Mul, Div, Pow])
    return st.one_of(
        children.map(Neg),
        st.builds(lambda op, a, b: op(a, b), binary, children, children),
        st.builds(Call, st.sampled_from(FUNCTIONS), children),
    )


exprs = st.recursive(_leaves, _extend, max_leaves=12)


@given(exprs)
def test_format_parse_round_trip(tree):
    # Integer-valued float exponents come back as ints, which compare equal.
    assert parse(format_expr(tree)) == tree


@given(exprs)
def test_parse_of_formatted_text_is_stable(tree):
    once = parse(format_expr(tree))
    assert parse(format_expr(once)) == once


@given(exprs, st.floats(min_value=0.05, max_value=1.95))
def test_round_trip_preserves_value(tree, x):
    v1 = evaluate(tree, x)
    v2 = evaluate(parse(format_expr(tree)), x)
    assert (math.isnan(v1) and math.isnan(v2)) or v1 == v2
