"""Text grammar for polynomials and algebra elements."""

from __future__ import annotations

import pytest

from gwpa.errors import ParseError
from gwpa.gallery import gr_usl2, p2n
from gwpa.parser import parse_element, parse_polynomial
from gwpa.poly import PolyRing, render_polynomial


@pytest.fixture
def ring():
    return PolyRing(["C", "H"])


def test_round_trip_canonical(ring):
    text = "-2*H^2 + 1/3*C - 1"
    poly = parse_polynomial(text, ring)
    assert render_polynomial(poly) == text


def test_whitespace_and_implicit_star(ring):
    H = ring.var("H")
    C = ring.var("C")
    assert parse_polynomial("2H^2", ring) == 2 * H ** 2
    assert parse_polynomial("  2 * H ^ 2 ", ring) == 2 * H ** 2
    assert parse_polynomial("3C H", ring) == 3 * C * H
    assert parse_polynomial("H H", ring) == H ** 2
    assert parse_polynomial("-H", ring) == -H
    assert parse_polynomial("+H", ring) == H
    assert parse_polynomial("H - H", ring).is_zero
    with pytest.raises(ParseError):
        parse_polynomial("H - -H", ring)


def test_rationals(ring):
    H = ring.var("H")
    assert parse_polynomial("1/2*H", ring) == H / 2
    assert parse_polynomial("4/2", ring) == ring.const(2)
    assert parse_polynomial("0", ring).is_zero


def test_repeated_variables_multiply(ring):
    H = ring.var("H")
    assert parse_polynomial("H^2*H", ring) == H ** 3


def test_errors_carry_positions(ring):
    with pytest.raises(ParseError) as err:
        parse_polynomial("H + ", ring)
    assert err.value.position == 4
    with pytest.raises(ParseError) as err:
        parse_polynomial("H + Q", ring)
    assert err.value.position == 4
    with pytest.raises(ParseError):
        parse_polynomial("", ring)
    with pytest.raises(ParseError):
        parse_polynomial("H ^ x", ring)
    with pytest.raises(ParseError):
        parse_polynomial("1/0", ring)


def test_parse_element_normalizes():
    A = p2n(1)
    H = A.base_ring.var("H1")
    u = parse_element("X1*Y1 + 2*H1", A)
    assert u == A.scalar(3 * H)
    v = parse_element("Y1^2*X1", A)
    assert v == A.element({(-1,): H})
    assert parse_element("5", A) == A.scalar(5)


def test_parse_element_respects_written_order():
    A = gr_usl2()
    ring = A.base_ring
    xy = parse_element("X1*Y1", A)
    assert xy == A.scalar(ring.var("C") - ring.var("H") ** 2)
    assert parse_element("X1^2*Y1", A) == A.element(
        {(1,): ring.var("C") - ring.var("H") ** 2}
    )


def test_parse_element_unknown_generator():
    A = p2n(1)
    with pytest.raises(ParseError):
        parse_element("X2", A)
    with pytest.raises(ParseError):
        parse_element("X1^-1", A)
