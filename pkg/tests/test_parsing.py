from fractions import Fraction

import pytest

from utility.errors import InvalidSequenceError, ParseError
from utility.parsing import (parse_ideal, parse_index_sequence, parse_monomial, parse_sequence,
                             parse_sequences, parse_weight)


def test_parse_weight():
    assert parse_weight("0, 1/2, 3/2") == (0, Fraction(1, 2), Fraction(3, 2))
    with pytest.raises(ParseError):
        parse_weight("0,x")
    with pytest.raises(ParseError):
        parse_weight("1/0")


def test_parse_sequence():
    assert parse_sequence("0,2,6,7,9").a == (0, 2, 6, 7, 9)
    assert [s.a for s in parse_sequences("0,4,6,7;0,2")] == [(0, 4, 6, 7), (0, 2)]
    with pytest.raises(InvalidSequenceError):
        parse_sequence("0,1/2")
    with pytest.raises(InvalidSequenceError):
        parse_sequence("1,2")


def test_parse_index_sequence():
    assert parse_index_sequence("0,3,4,6") == (0, 3, 4, 6)
    with pytest.raises(ParseError):
        parse_index_sequence("0,a")


def test_parse_monomial():
    assert parse_monomial("t0^2*t3", 4) == (2, 0, 0, 1, 0)
    assert parse_monomial("t1*t1", 2) == (0, 2, 0)
    assert parse_monomial("1", 1) == (0, 0)
    assert parse_monomial("[1,0,1]", 2) == (1, 0, 1)
    with pytest.raises(ParseError):
        parse_monomial("t3", 2)
    with pytest.raises(ParseError):
        parse_monomial("x^2", 2)
    with pytest.raises(ParseError):
        parse_monomial("[1,0]", 2)


def test_monomial_and_ideal_share_the_ring_argument():
    I = parse_ideal("t0^2*t3;t4", 4)
    assert set(I.gens) == {parse_monomial("t0^2*t3", 4), parse_monomial("t4", 4)}


def test_parse_ideal():
    I = parse_ideal("t1*t3;t0*t3;t0*t2", 3)
    assert I.nvars == 4
    assert set(I.gens) == {(0, 1, 0, 1), (1, 0, 0, 1), (1, 0, 1, 0)}
    assert parse_ideal("", 2).gens == ()
