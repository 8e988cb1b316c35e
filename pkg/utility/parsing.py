"""
Text forms used on the command line.

- sequences and weights: comma-separated integers or rationals, "0,1/2,3/2,3/2"
- lists of sequences: semicolon-separated, "0,4,6,7;0,2"
- monomials: "t0*t2", "t1^2", "t0^2*t3", "1", or an exponent vector "[1,0,1,0]"
- ideals: semicolon-separated monomials, "t1*t3;t0*t3;t0*t2"
"""

import re
from fractions import Fraction
from typing import List, Tuple

from components.tpoly import Exponent, MonomialIdealT
from components.xy_ideals import ASequence
from utility.errors import InvalidSequenceError, ParseError

FACTOR_PATTERN = re.compile(r'^t(\d+)(?:\^(\d+))?$')
VECTOR_PATTERN = re.compile(r'^\[\s*\d+(?:\s*,\s*\d+)*\s*\]$')


def parse_weight(text: str) -> Tuple[Fraction, ...]:
    try:
        values = tuple(Fraction(part.strip()) for part in text.split(','))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Error parsing weight: {text!r}. {str(e)}")
    if not values:
        raise ParseError(f"Empty weight: {text!r}")
    return values


def parse_sequence(text: str) -> ASequence:
    values = parse_weight(text)
    if any(v.denominator != 1 for v in values):
        raise InvalidSequenceError(f"Sequence entries must be integers: {text!r}")
    return ASequence(tuple(int(v) for v in values))


def parse_sequences(text: str) -> List[ASequence]:
    return [parse_sequence(part) for part in text.split(';') if part.strip()]


def parse_index_sequence(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part.strip()) for part in text.split(','))
    except ValueError as e:
        raise ParseError(f"Error parsing index sequence: {text!r}. {str(e)}")


def parse_monomial(text: str, d: int) -> Exponent:
    """Exponent vector over t0..td."""
    nvars = d + 1
    text = text.strip()
    if VECTOR_PATTERN.match(text):
        e = tuple(int(v) for v in text.strip('[] ').split(','))
        if len(e) != nvars:
            raise ParseError(f"Exponent vector {text} should have {nvars} entries")
        return e
    e = [0] * nvars
    if text == '1':
        return tuple(e)
    for factor in text.split('*'):
        match = FACTOR_PATTERN.match(factor.strip())
        if not match:
            raise ParseError(f"Cannot parse factor {factor!r} of monomial {text!r}")
        index = int(match.group(1))
        power = int(match.group(2) or 1)
        if index >= nvars:
            raise ParseError(f"Variable t{index} does not exist for d={d}")
        e[index] += power
    return tuple(e)


def parse_ideal(text: str, d: int) -> MonomialIdealT:
    parts = [p for p in text.split(';') if p.strip()]
    return MonomialIdealT(d + 1, tuple(parse_monomial(p, d) for p in parts))
