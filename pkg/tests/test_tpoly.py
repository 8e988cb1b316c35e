from itertools import combinations

import networkx as nx
import pytest

from components.fan import cm_sequences
from components.groebner import cm_reduced_gb
from components.tpoly import (MonomialIdealT, PureBinomial, RecognitionFailure, StructureData,
                              colon_by_variable_power, exp_add, graph_ideal, ideal_components, igphi_build,
                              igphi_recognize, intersect, intersect_all, irreducible_decomposition,
                              line_tree_structure, radical, rnc_generators, saturation, standard_monomials,
                              unit_vector)
from utility.errors import FiberViolationError, InternalInconsistencyError, NonTreeError
from utility.parsing import parse_ideal


def test_rnc_generators():
    assert rnc_generators(2) == [PureBinomial((1, 0, 1), (0, 2, 0))]
    for d in range(1, 7):
        assert len(rnc_generators(d)) == d * (d - 1) // 2


def test_binomials_must_be_bihomogeneous():
    with pytest.raises(InternalInconsistencyError):
        PureBinomial((2, 0, 0), (0, 0, 2))
    assert str(PureBinomial((0, 2, 0), (1, 0, 1))) == "t1^2 - t0*t2"


def test_ideal_generators_are_minimal_and_ordered():
    I = MonomialIdealT(3, ((3, 0, 0), (2, 0, 0), (1, 1, 0)))
    assert I.gens == ((2, 0, 0), (1, 1, 0))
    assert str(parse_ideal("t0*t2;t1^2", 2)) == "(t1^2, t0*t2)"
    assert I.contains((2, 1, 0))
    assert not I.contains((1, 0, 5))


def test_standard_monomials_of_an_initial_ideal():
    I = parse_ideal("t1^2", 2)
    layer, msum = standard_monomials(I, 1)
    assert len(layer) == 3
    assert msum == (1, 1, 1)
    layer, msum = standard_monomials(I, 3)
    assert len(layer) == 7


def test_standard_monomials_fiber_violation():
    with pytest.raises(FiberViolationError):
        standard_monomials(parse_ideal("t0*t2;t1^2", 2), 2)


def test_radical_colon_and_intersection():
    I = parse_ideal("t0^2*t1;t2^3", 2)
    assert radical(I) == parse_ideal("t0*t1;t2", 2)
    assert colon_by_variable_power(I, 0) == parse_ideal("t1;t2^3", 2)
    assert intersect(parse_ideal("t0", 2), parse_ideal("t1", 2)) == parse_ideal("t0*t1", 2)


def test_irreducible_decomposition():
    I = parse_ideal("t0*t1", 2)
    assert set(irreducible_decomposition(I)) == {parse_ideal("t0", 2), parse_ideal("t1", 2)}


def test_saturation_and_top_component():
    I = parse_ideal("t1*t3;t1*t2;t0*t2;t3^3;t1^2*t4;t1^3;t2*t4;t2*t3;t2^2", 4)
    parts = ideal_components(I)
    assert parts.saturation == parse_ideal("t2;t1*t3;t1^2*t4;t3^3;t1^3", 4)
    assert parts.top == parse_ideal("t1*t3;t2;t3^3;t1^2", 4)
    assert saturation(parts.saturation) == parts.saturation


def test_graph_ideal():
    path = nx.path_graph(3)
    assert graph_ideal(3, path) == [(1, 0, 1)]
    triangle = nx.complete_graph(3)
    assert graph_ideal(3, triangle) == [(1, 1, 1)]


def test_line_tree_builds_the_cm_initial_ideal():
    for i in [(0, 3, 4, 6), (0, 1, 2, 3), (0, 2, 5), (0, 4)]:
        assert igphi_build(line_tree_structure(i)) == cm_reduced_gb(i).leads_ideal()


def test_recognize_cm_initial_ideal():
    I = cm_reduced_gb((0, 3, 4, 6)).leads_ideal()
    s = igphi_recognize(I)
    assert isinstance(s, StructureData)
    assert s.V == (0, 3, 4, 6)
    assert s.phi_map[1] == (0, 3)
    assert igphi_build(s) == I


@pytest.mark.parametrize('text, d, reason', [
    ("t0^3", 2, 'not-quadratic'),
    ("t1^2", 3, 'graph-not-tree'),
    ("t1^2;t0*t3", 3, 'phi-undefined'),
])
def test_recognition_failures(text, d, reason):
    result = igphi_recognize(parse_ideal(text, d))
    assert isinstance(result, RecognitionFailure)
    assert not result
    assert result.reason == reason


def test_build_rejects_non_trees():
    s = StructureData(3, (0, 1, 2), (), ((0, 1), (1, 2), (0, 2)), ())
    with pytest.raises(NonTreeError):
        igphi_build(s)


def test_build_tree_with_five_squares():
    # V = t0..t3 on the tree t0-t1, t0-t2, t2-t3; Q = t4..t8
    e1, e2, e3 = (0, 1), (0, 2), (2, 3)
    s = StructureData(9, (0, 1, 2, 3), (4, 5, 6, 7, 8), (e1, e2, e3),
                      ((4, e2), (5, e1), (6, e1), (7, e3), (8, e2)))
    squares = [exp_add(unit_vector(9, q), unit_vector(9, r)) for q in range(4, 9) for r in range(q, 9)]
    J = parse_ideal("t0*t3;t1*t2;t1*t3", 8)
    H = parse_ideal("t1*t4;t3*t4;t2*t5;t3*t5;t2*t6;t3*t6;t0*t7;t1*t7;t1*t8;t3*t8", 8)
    expected = MonomialIdealT(9, J.gens + H.gens + tuple(squares))
    I = igphi_build(s)
    assert I == expected
    assert igphi_recognize(I) == s


def test_recognizer_rejects_a_square_with_three_free_neighbours():
    result = igphi_recognize(parse_ideal("t3^2;t2*t3;t1*t3;t0*t4;t0*t3;t1^2", 4))
    assert isinstance(result, RecognitionFailure)
    assert result.reason == 'phi-undefined'


@pytest.mark.parametrize('d', [2, 3, 4, 5, 6])
def test_every_catalog_ideal_is_recognized(d):
    for i in cm_sequences(d):
        I = cm_reduced_gb(i, verify=False).leads_ideal()
        s = igphi_recognize(I)
        assert isinstance(s, StructureData), (i, s)
        assert s.V == i


def test_recognizer_matches_depth_on_the_fan(d3_cells, d4_cells):
    for cell in d3_cells + d4_cells:
        recognized = isinstance(igphi_recognize(cell.initial_ideal), StructureData)
        assert recognized == (cell.depth == 2), cell.initial_ideal


def test_quadratic_initial_ideals_contain_the_outer_product(d3_cells, d4_cells):
    for cell in d3_cells + d4_cells:
        I = cell.initial_ideal
        if not I.is_quadratic:
            continue
        n = I.nvars
        free = [j for j in range(n) if not I.contains(unit_vector(n, j, 2))]
        for i, _, k in combinations(free, 3):
            assert I.contains(exp_add(unit_vector(n, i), unit_vector(n, k))), (I, i, k)


def test_irreducible_components_recompose_the_ideal(d4_cells):
    for cell in d4_cells:
        I = cell.initial_ideal
        parts = ideal_components(I)
        assert intersect_all(list(parts.irreducible)) == I
        assert parts.saturation.contains_ideal(I)
        assert parts.top.contains_ideal(parts.saturation)
        assert parts.dim == 2


def test_radical_and_dimension_of_a_non_saturated_ideal():
    parts = ideal_components(parse_ideal("t1*t3;t1*t2;t0*t2;t3^3;t1^2*t4;t1^3;t2*t4;t2*t3;t2^2", 4))
    assert parts.radical == parse_ideal("t1;t2;t3", 4)
    assert parts.dim == 2
