import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mono, polynomials
from qdisc.qpoly import (
    MAX_EXPONENT,
    Z,
    ZSTAR,
    AntiNormalPolynomial,
    NormalPolynomial,
    ParseError,
    anti_to_normal,
    format_poly,
    involution,
    multiply,
    normal_order_word,
    parse,
    parse_anti_normal,
    parse_normal,
    word_to_normal,
)
from qdisc.scalars import QContext

words = st.lists(st.sampled_from([Z, ZSTAR]), max_size=10).map(tuple)


def relation1(ctx):
    q2 = ctx.pow(2)
    return NormalPolynomial({(1, 1): q2, (0, 0): 1 - q2})


def test_normal_order_word_examples(ctx):
    q2, q4 = ctx.pow(2), ctx.pow(4)
    assert normal_order_word(ctx, [ZSTAR, Z]) == relation1(ctx)
    assert normal_order_word(ctx, [Z, ZSTAR]) == mono(1, 1)
    # z* z z = (q^2 z z* + 1 - q^2) z = q^2 z (q^2 z z* + 1 - q^2) + (1 - q^2) z
    assert normal_order_word(ctx, [ZSTAR, Z, Z]) == NormalPolynomial(
        {(2, 1): q4, (1, 0): 1 - q4})
    assert normal_order_word(ctx, []) == NormalPolynomial.one()


def test_multiply_examples(ctx):
    q2 = ctx.pow(2)
    assert multiply(ctx, mono(1, 0), mono(0, 1)) == mono(1, 1)
    assert multiply(ctx, mono(0, 1), mono(1, 0)) == relation1(ctx)
    # z (z* z) z* expanded with the relation once
    assert multiply(ctx, mono(1, 1), mono(1, 1)) == NormalPolynomial(
        {(2, 2): q2, (1, 1): 1 - q2})


def test_involution_examples(ctx):
    assert involution(mono(2, 1)) == mono(1, 2)
    assert involution(NormalPolynomial.one()) == NormalPolynomial.one()
    # (z* z)* is z* z again; the normal form must be a fixed point
    zsz = normal_order_word(ctx, [ZSTAR, Z])
    assert involution(zsz) == zsz


def test_anti_to_normal_examples(ctx):
    q2, q4 = ctx.pow(2), ctx.pow(4)
    assert anti_to_normal(ctx, AntiNormalPolynomial({(0, 1): 1})) == mono(1, 0)
    assert anti_to_normal(ctx, AntiNormalPolynomial({(1, 1): 1})) == relation1(ctx)
    assert anti_to_normal(ctx, AntiNormalPolynomial({(1, 2): 1})) == NormalPolynomial(
        {(2, 1): q4, (1, 0): 1 - q4})


@settings(max_examples=100)
@given(words, st.integers(min_value=0, max_value=10 ** 6))
def test_rewriting_is_confluent(word, seed):
    ctx = QContext("2/3")
    ref = normal_order_word(ctx, word)
    assert normal_order_word(ctx, word, random.Random(seed)) == ref
    assert word_to_normal(ctx, word) == ref


@settings(max_examples=40, deadline=None)
@given(polynomials(4), polynomials(4), polynomials(4))
def test_multiply_is_associative(f, g, h):
    ctx = QContext("1/2")
    assert multiply(ctx, multiply(ctx, f, g), h) == multiply(ctx, f, multiply(ctx, g, h))


@settings(max_examples=60, deadline=None)
@given(polynomials(4), polynomials(4))
def test_involution_is_an_anti_automorphism(f, g):
    ctx = QContext("2/3")
    assert involution(multiply(ctx, f, g)) == multiply(ctx, involution(g), involution(f))
    assert involution(involution(f)) == f


@settings(max_examples=60, deadline=None)
@given(polynomials(4), polynomials(4))
def test_degree_law(f, g):
    fg = multiply(QContext("1/2"), f, g)
    assert fg.degree_z <= f.degree_z + g.degree_z
    assert fg.degree_zstar <= f.degree_zstar + g.degree_zstar


def test_unit(ctx):
    f = NormalPolynomial({(2, 1): 3, (0, 2): Fraction(-1, 2)})
    one = NormalPolynomial.one()
    assert multiply(ctx, one, f) == f == multiply(ctx, f, one)


def test_parse_examples():
    assert parse("z* z") == [(1, (ZSTAR, Z))]
    assert parse("2/3 z^2 z*") == [(Fraction(2, 3), (Z, Z, ZSTAR))]
    assert parse("zs z") == parse("z* z")
    assert parse("z^0") == [(1, ())]


def test_parse_distributes_parentheses():
    got = dict((w, c) for c, w in parse("(z + z*)^2 - 2 (z z*)"))
    assert got == {(Z, Z): 1, (Z, ZSTAR): -1, (ZSTAR, Z): 1, (ZSTAR, ZSTAR): 1}


def test_parse_constant_and_sign():
    assert parse("1") == [(1, ())]
    assert parse("-3/4 z") == [(Fraction(-3, 4), (Z,))]
    assert parse("z - z") == []


def test_print_examples(half):
    assert format_poly(normal_order_word(half, parse("z* z")[0][1])) == "1/4 z z* + 3/4"
    assert format_poly(parse_normal(half, "z* z^2")) == "1/16 z^2 z* + 15/16 z"
    assert format_poly(NormalPolynomial.zero()) == "0"
    assert format_poly(NormalPolynomial({(0, 1): -1, (0, 0): 2})) == "-z* + 2"


@pytest.mark.parametrize("text, column", [
    ("z + * 2", 5),
    ("z^", 3),
    ("(z + z*", 8),
    ("3/0 z", 3),
    ("z q", 3),
    ("", 1),
])
def test_parse_errors_report_position(text, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.column == column
    assert info.value.line == 1


def test_parse_error_line_numbers():
    with pytest.raises(ParseError) as info:
        parse("z +\n  z ^ x")
    assert (info.value.line, info.value.column) == (2, 7)


def test_exponent_overflow():
    with pytest.raises(ParseError, match="exceeds"):
        parse(f"z^{MAX_EXPONENT + 1}")


@settings(max_examples=80, deadline=None)
@given(polynomials(5, 6))
def test_print_parse_round_trip(f):
    ctx = QContext("2/3")
    assert parse_normal(ctx, format_poly(f)) == f


def test_parse_anti_normal():
    assert parse_anti_normal("z*^2 z + 3 z") == AntiNormalPolynomial({(2, 1): 1, (0, 1): 3})
    with pytest.raises(ValueError, match="anti-normal"):
        parse_anti_normal("z z*")
