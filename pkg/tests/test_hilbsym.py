import pytest

from components.groebner import cm_reduced_gb
from components.hilbsym import (LinearForm, compare_invariants, e0_from_radical, evaluate_h1, form,
                                radical_support_sequence, symbolic_h, symbolic_invariants)
from components.xy_ideals import h_polynomial, hilbert_h1
from utility.errors import DimensionMismatchError
from utility.parsing import parse_ideal
from utility.selftest import D3_TABLE, D4_I, D4_I_FORMS, D4_J, D4_J_FORMS


def trimmed(values):
    values = list(values)
    while len(values) > 1 and values[-1] == 0:
        values.pop()
    return tuple(values)


def test_linear_form_arithmetic():
    f, g = form((1, 1, 0, 0)), form((0, 1, -1, 0))
    assert (f + g).coeffs == (1, 2, -1, 0)
    assert (f - g).coeffs == (1, 0, 1, 0)
    assert (2 * f).coeffs == (2, 2, 0, 0)
    assert (-g).coeffs == (0, -1, 1, 0)
    assert LinearForm.zero(3).is_zero()
    assert f.evaluate((0, 1, 3, 7)) == 1
    assert str(f) == "A0 + A1"
    with pytest.raises(DimensionMismatchError):
        f + form((1, 1))


@pytest.mark.parametrize('label', sorted(D3_TABLE))
def test_d3_h_forms(label):
    ideal_text, _, h_rows = D3_TABLE[label]
    data = symbolic_h(parse_ideal(ideal_text, 3))
    assert [f.coeffs for f in data.h] == [tuple(r) for r in h_rows]
    assert data.e0 == sum(data.h, LinearForm.zero(3))


def test_symbolic_data_evaluates_to_the_hilbert_function(d3_cells):
    for cell in d3_cells:
        data = symbolic_h(cell.initial_ideal)
        a = cell.interior_weight
        report = h_polynomial(a)
        assert trimmed(data.h_at(a)) == report.h
        assert tuple(f.evaluate(a) for f in data.e) == report.e
        for k in (6, 9):
            assert data.q1_at(a, k) == hilbert_h1(a, k)
            assert data.q_at(a, k) == hilbert_h1(a, k) - hilbert_h1(a, k - 1)


def test_evaluate_h1(d3_cells):
    for cell in d3_cells:
        a = cell.interior_weight
        for k in range(4):
            assert evaluate_h1(cell.initial_ideal, a, k) == hilbert_h1(a, k)


def test_e0_from_radical(d4_cells):
    for cell in d4_cells:
        assert symbolic_h(cell.initial_ideal).e0 == e0_from_radical(cell.initial_ideal)


def test_radical_support_of_the_lex_cell():
    I = parse_ideal("t1*t3;t0*t3;t0*t2", 3)
    assert radical_support_sequence(I) == (0, 1, 2, 3)
    assert e0_from_radical(I).coeffs == (1, 2, 2, 1)


def test_d4_pair_invariants():
    for text, forms in ((D4_I, D4_I_FORMS), (D4_J, D4_J_FORMS)):
        found = symbolic_invariants(parse_ideal(text, 4))
        assert {key: f.coeffs for key, f in found.items()} == forms


def test_d4_pair_comparison():
    report = compare_invariants(parse_ideal(D4_I, 4), parse_ideal(D4_J, 4))
    assert not report.ideal_equal
    assert report.e0_equal and report.e1_equal and not report.e2_equal
    assert report.Q_equal
    assert not report.Q1_equal
    assert not report.sat_equal
    assert report.top_equal
    assert report.toppo_consistent


def test_compare_with_itself():
    I = parse_ideal(D4_I, 4)
    assert all(compare_invariants(I, I).to_json().values())


def test_compare_requires_same_ring():
    with pytest.raises(DimensionMismatchError):
        compare_invariants(parse_ideal("t1^2", 2), parse_ideal("t1^2", 3))


def test_q_is_derived_from_q1():
    data = symbolic_h(cm_reduced_gb((0, 2, 3)).leads_ideal())
    assert data.q == (data.q1[1] - data.q1[2], data.q1[2])
    assert data.q1[2] == data.e0


@pytest.mark.slow
def test_invariants_determine_ideal_pieces_at_d4(d4_cells):
    ideals = [c.initial_ideal for c in d4_cells]
    for I in ideals:
        for J in ideals:
            r = compare_invariants(I, J)
            assert r.h_equal == r.ideal_equal
            assert r.e0_equal == r.radical_equal
            assert r.Q1_equal == r.sat_equal
            assert r.toppo_consistent
