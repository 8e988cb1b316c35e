from fractions import Fraction

import pytest

from components import fan
from components.xy_ideals import (ASequence, colength, deviation, deviation_breakdown, h_polynomial,
                                  has_monomial_reduction, hilbert_h1, hilbert_h1_bruteforce,
                                  hull_cone_candidates, is_gr_cm, is_integrally_closed_pattern,
                                  minplus_power, minplus_product, newton_multiplicity, normalize,
                                  zariski_product_cm)
from utility.errors import InvalidSequenceError, NegativeWeightError


def test_sequence_invariants():
    a = ASequence((0, 2, 6, 7, 9))
    assert a.d == 4
    assert a.b == (2, 4, 1, 2)
    assert a.is_lex_segment
    assert not ASequence((0, 2, 2, 3)).is_lex_segment
    with pytest.raises(InvalidSequenceError):
        ASequence((1, 2))
    with pytest.raises(InvalidSequenceError):
        ASequence((0, 2, 1))


@pytest.mark.parametrize('w, expected', [
    ((0, 1, 2), (0, 1, 2)),
    ((1, 1, 1), (0, 1, 2)),
    ((0, Fraction(1, 2), Fraction(3, 2), Fraction(3, 2)), (0, 2, 5, 6)),
])
def test_normalize(w, expected):
    assert normalize(w).a == expected


def test_normalize_rejects_negative_entries():
    with pytest.raises(NegativeWeightError):
        normalize((0, -1, 2))


def test_normalize_preserves_cone_membership():
    w = (0, Fraction(1, 2), Fraction(3, 2), Fraction(3, 2))
    a = normalize(w)
    for i in fan.cm_sequences(3):
        system = fan.cone_system(i, closed=True)
        assert system.contains(w) == system.contains(a)


def test_minplus_product():
    assert minplus_product((0, 1), (0, 1)).a == (0, 1, 2)
    assert minplus_product((0, 4, 6, 7), (0, 2)).a == (0, 2, 6, 7, 9)
    assert minplus_product((0, 4, 6, 7), (0,)).a == (0, 4, 6, 7)


def test_minplus_power():
    assert minplus_power((0, 1), 0).a == (0,)
    assert minplus_power((0, 1), 2).a == (0, 1, 2)
    assert minplus_power((0, 4, 6, 7), 2).a == (0, 4, 6, 7, 11, 13, 14)


def test_hilbert_h1():
    assert hilbert_h1((0, 1), 0) == 1
    assert hilbert_h1((0, 1), 1) == 3
    assert hilbert_h1((0, 4, 6, 7), 1) == 55
    assert hilbert_h1((0, 2, 6, 7, 9), 1) == 81
    assert colength((0, 4, 6, 7)) == 17


@pytest.mark.parametrize('a', [(0, 1, 3), (0, 2, 2, 3), (0, 4, 6, 7), (0, 1, 5, 6, 10)])
def test_hilbert_h1_matches_bruteforce(a):
    for k in range(3):
        assert hilbert_h1(a, k) == hilbert_h1_bruteforce(a, k)


def test_h_polynomial_of_a_power_of_the_maximal_ideal():
    report = h_polynomial((0, 1, 2, 3))
    assert report.h == (6, 3)
    assert report.e == (9, 3, 0)
    assert report.colength == 6
    assert sum(report.h) == report.e[0]


def test_h_polynomial_reproduces_hilbert_function():
    a = (0, 2, 6, 7, 9)
    report = h_polynomial(a)
    assert report.h[0] == 24
    for k in range(len(report.h), len(report.h) + 4):
        assert report.hilbert_polynomial(k) == hilbert_h1(a, k)


def test_newton_multiplicity():
    assert newton_multiplicity((0, 2, 6, 7, 9)) == ((0, 1, 4), 35)
    assert newton_multiplicity((0, 4, 6, 7)) == ((0, 3), 21)
    assert newton_multiplicity((0, 1, 2, 3)) == ((0, 3), 9)


def test_newton_multiplicity_agrees_with_h_polynomial():
    for a in [(0, 2, 6, 7, 9), (0, 4, 6, 7), (0, 1, 5, 6, 10), (0, 2, 2, 3)]:
        assert newton_multiplicity(a)[1] == h_polynomial(a).e[0]


def test_deviation():
    assert deviation((0, 2, 6, 7, 9)) == 2
    assert deviation((0, 4, 6, 7)) == 0
    assert deviation((0, 2, 2, 3)) == 1
    assert is_gr_cm((0, 4, 6, 7))
    assert not is_gr_cm((0, 2, 6, 7, 9))


def test_deviation_breakdown():
    report = deviation_breakdown((0, 2, 6, 7, 9))
    assert report['vertices'] == [0, 1, 4]
    assert report['alpha'] == [0, 2, 4, 7, 9, 11, 14, 16, 18]
    assert [b - a for a, b in zip(report['alpha'], report['beta'])] == [0, 0, 0, 1, 0, 0, 1, 0, 0]
    assert report['deviation'] == 2


def test_zariski_products():
    assert zariski_product_cm([(0, 4, 6, 7), (0, 2)])
    assert not zariski_product_cm([(0, 2, 6, 7, 9), (0, 1)])
    with pytest.raises(InvalidSequenceError):
        zariski_product_cm([(0, 0, 1)])


def test_cm_closed_under_powers():
    for a in [(0, 4, 6, 7), (0, 1, 3), (0, 2, 3, 5)]:
        if is_gr_cm(a):
            assert is_gr_cm(minplus_power(a, 2))


def test_hull_cone_candidates():
    assert hull_cone_candidates((0, 4, 6, 7)) == [(0, 3)]
    assert hull_cone_candidates((0, 1, 2, 3)) == [(0, 1, 2, 3), (0, 1, 3), (0, 2, 3), (0, 3)]
    for a in [(0, 4, 6, 7), (0, 1, 2, 3), (0, 1, 3, 6)]:
        assert is_gr_cm(a)
        assert set(hull_cone_candidates(a)) <= set(fan.cones_containing(a, closed=True))


def test_special_patterns():
    assert is_integrally_closed_pattern((0, 1, 3, 6))
    assert not is_integrally_closed_pattern((0, 4, 6, 7))
    assert has_monomial_reduction((0, 4, 6, 7))
    assert not has_monomial_reduction((0, 1, 3, 6))


@pytest.mark.parametrize('a, b, c', [
    ((0, 1, 3), (0, 2), (0, 2, 2, 5)),
    ((0, 4, 6, 7), (0, 1, 5), (0, 3)),
])
def test_minplus_product_is_associative_and_commutative(a, b, c):
    assert minplus_product(a, b).a == minplus_product(b, a).a
    left = minplus_product(minplus_product(a, b), c)
    right = minplus_product(a, minplus_product(b, c))
    assert left.a == right.a
    assert left.d == len(a) + len(b) + len(c) - 3


def test_products_of_complete_intersections_have_no_deviation():
    for factors in [[(0, 2), (0, 3)], [(0, 1), (0, 4), (0, 4)], [(0, 5), (0, 2), (0, 7), (0, 3)]]:
        product = (0,)
        for f in factors:
            product = minplus_product(product, f).a
        assert deviation(product) == 0
        assert is_gr_cm(product)


@pytest.mark.parametrize('k', [1, 2, 5])
def test_deviation_ignores_the_lineality_shift(k):
    for d in (2, 3, 4):
        for a in fan.random_weights(d, 15, seed=100 + d):
            shifted = tuple(v + k * j for j, v in enumerate(a.a))
            assert deviation(shifted) == deviation(a)
