from fractions import Fraction

import pytest
from hypothesis import given

from rotorlab.exact_arith import ONE, Q, ZERO, EisensteinRational, as_eis, format_eis, parse_eis

from conftest import eis, nonzero_eis


def test_cube_root_of_unity():
    assert Q ** 3 == ONE
    assert ONE + Q + Q * Q == ZERO
    assert Q != ONE and Q * Q != ONE
    assert Q.inverse() == Q * Q


def test_q_as_complex():
    z = Q.to_complex()
    assert abs(z - complex(-0.5, 3 ** 0.5 / 2)) < 1e-12


@given(eis, eis, eis)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(nonzero_eis)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert ONE / a == a.inverse()


@given(eis, eis)
def test_norm_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()
    assert a * a.conjugate() == as_eis(a.norm())


@given(eis)
def test_format_parse_roundtrip(a):
    assert parse_eis(format_eis(a)) == a
    assert parse_eis(str(a)) == a


@pytest.mark.parametrize("text, value", [
    ("0", ZERO),
    ("q", Q),
    ("-q", -Q),
    ("1/2-3/4*q", EisensteinRational(Fraction(1, 2), Fraction(-3, 4))),
    ("7", as_eis(7)),
])
def test_parse_examples(text, value):
    assert parse_eis(text) == value


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_hash_matches_rationals():
    assert hash(as_eis(3)) == hash(EisensteinRational(3, 0))
    assert len({as_eis(Fraction(1, 2)), EisensteinRational(Fraction(2, 4), 0)}) == 1
