"""
Acceptance suite behind `rnc selftest`.

Each check recomputes a known table, census or closed-form cone description
and returns a row {name, passed, detail}; timings go to the log only. Checks
marked slow (the d=5 and d=6 catalogs and the exhaustive d=4 pair comparison)
are skipped with quick=True.
"""

import logging
import time
from typing import Callable, List, Tuple

import numpy as np
from sympy import fibonacci

from components import fan, groebner, hilbsym, tpoly, xy_ideals
from utility.parsing import parse_ideal
from utility.settings import get_settings

logger = logging.getLogger(__name__)

# d = 3 cells: ideal, b-inequalities (c_1, c_2, c_3 with sum c_j b_j >= 0), h-forms
D3_TABLE = {
    'a': ("t1*t3;t0*t3;t0*t2", [(-1, 1, 0), (0, -1, 1)], [(1, 1, 1, 1), (0, 1, 1, 0)]),
    'b': ("t1*t3;t0*t3;t1^2", [(1, -1, 0), (-1, 0, 1)], [(1, 1, 1, 1), (1, -1, 2, 0)]),
    'c': ("t2^2;t0*t3;t0*t2", [(-1, 0, 1), (0, 1, -1)], [(1, 1, 1, 1), (0, 2, -1, 1)]),
    'd': ("t2^2;t1*t2;t1^2", [(0, 1, -1), (1, -1, 0)], [(1, 1, 1, 1), (2, -1, -1, 2)]),
    'e': ("t2^2;t1*t2;t0*t2;t0^2*t3", [(1, 0, -1), (-2, 1, 1)],
          [(1, 1, 1, 1), (1, 1, -2, 2), (-1, 1, 1, -1)]),
    'f': ("t1*t3;t1*t2;t1^2;t0*t3^2", [(0, -1, 1), (1, 0, -1), (-1, -1, 2)],
          [(1, 1, 1, 1), (2, -2, 1, 1), (-1, 1, 1, -1)]),
    'g': ("t1*t3;t1*t2;t1^2;t2^3", [(0, -1, 1), (1, 0, -1), (1, 1, -2)],
          [(1, 1, 1, 1), (2, -2, 1, 1), (0, 1, -2, 1)]),
    'h': ("t2^2;t1*t2;t0*t2;t1^3", [(-1, 1, 0), (1, 0, -1), (2, -1, -1)],
          [(1, 1, 1, 1), (1, 1, -2, 2), (1, -2, 1, 0)]),
}

D6_WEIGHT = (0, 3, 5, 6, 10, 16, 21)
D6_SEQUENCE = (0, 3, 4, 6)
D6_GB = [
    ("t1^2", "t0*t2"), ("t1*t2", "t0*t3"), ("t2^2", "t1*t3"), ("t0*t4", "t1*t3"),
    ("t0*t5", "t2*t3"), ("t1*t4", "t2*t3"), ("t0*t6", "t3^2"), ("t1*t5", "t3^2"),
    ("t2*t4", "t3^2"), ("t1*t6", "t3*t4"), ("t2*t5", "t3*t4"), ("t2*t6", "t4^2"),
    ("t3*t5", "t4^2"), ("t3*t6", "t4*t5"), ("t5^2", "t4*t6"),
]
# 2a1 > a0+a2, 2a2 > a1+a3, a0+a4 > a1+a3, a3+a6 > a4+a5, 2a5 > a4+a6
D6_STARRED = [
    (-1, 2, -1, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0),
    (1, -1, 0, -1, 1, 0, 0),
    (0, 0, 0, 1, -1, -1, 1),
    (0, 0, 0, 0, -1, 2, -1),
]
D6_PERMUTATION = (3, 2, 1, 4, 6, 5)

D4_I = "t1*t3;t1*t2;t0*t2;t3^3;t1^2*t4;t1^3;t2*t4;t2*t3;t2^2"
D4_J = "t1*t3;t1*t2;t1^2;t3^3;t2*t4;t2*t3;t2^2"
D4_I_FORMS = {'e0': (4, 0, 0, 0, 4), 'e1': (3, -1, 0, -3, 4), 'e2': (-1, 2, 0, -2, 1)}
D4_J_FORMS = {'e0': (4, 0, 0, 0, 4), 'e1': (3, -1, 0, -3, 4), 'e2': (0, 0, 1, -2, 1)}
D4_I_SAT = "t2;t1*t3;t1^2*t4;t3^3;t1^3"
D4_TOP = "t1*t3;t2;t3^3;t1^2"

FAN_COUNTS = {2: 2, 3: 8, 4: 42}
CENSUS = {3: {1: 4, 2: 4}, 4: {0: 10, 1: 24, 2: 8}}


def check_fan_censuses() -> str:
    for d, count in FAN_COUNTS.items():
        cells = fan.traverse_fan(d)
        assert len(cells) == count, f"d={d}: {len(cells)} cells"
        if d in CENSUS:
            census = fan.depth_census(d, cells)
            assert census == CENSUS[d], f"d={d}: census {census}"
        if d == 3:
            expected = {parse_ideal(row[0], 3) for row in D3_TABLE.values()}
            assert {c.initial_ideal for c in cells} == expected, "d=3 ideals differ from the tables"
    return "2, 8 and 42 cells; censuses match"


def check_catalog(max_d: int) -> Callable[[], str]:
    def run() -> str:
        settings = get_settings()
        for d in range(2, max_d + 1):
            if d <= min(5, settings.max_traversal_d):
                report = fan.catalog_check(d, cells=fan.traverse_fan(d))
            else:
                report = fan.catalog_check(d, samples=settings.fan_sample_size, seed=settings.seed)
            assert report['equal'], f"d={d}: {report}"
            assert report['catalog_size'] == 2 ** (d - 1)
        return f"catalog agrees for d=2..{max_d}"
    return run


def check_d6_gb() -> str:
    gb = groebner.buchberger(6, groebner.TermOrder(D6_WEIGHT, 'lex'))
    text = sorted((tpoly.monomial_str(g.lead), tpoly.monomial_str(g.tail)) for g in gb.elements)
    assert text == sorted(D6_GB), f"unexpected basis {text}"
    assert set(groebner.cm_reduced_gb(D6_SEQUENCE).elements) == set(gb.elements)
    cone = fan.groebner_cone(gb)
    facets = {tuple(n) for n in cone.facets.normals}
    assert facets == {tuple(n) for n in D6_STARRED}, f"facets {facets}"
    assert cone.equivalent(fan.permutation_cone(D6_PERMUTATION))
    assert fan.canonical(D6_SEQUENCE) == D6_PERMUTATION
    return "15 elements, 5 facets, permutation cone (3,2,1,4,6,5)"


def check_d3_tables() -> str:
    cells = {c.initial_ideal: c for c in fan.traverse_fan(3)}
    for label, (ideal_text, b_rows, h_rows) in D3_TABLE.items():
        I = parse_ideal(ideal_text, 3)
        data = hilbsym.symbolic_h(I)
        assert [f.coeffs for f in data.h] == [tuple(r) for r in h_rows], f"({label}) h = {data.h}"
        assert I in cells, f"({label}) {I} is not a cell"
        known = fan.ConeSystem.from_b_rows(3, b_rows)
        assert cells[I].cone.equivalent(known), f"({label}) cone differs"
    return "8 ideals, h-forms and cones"


def check_d4_pair() -> str:
    I, J = parse_ideal(D4_I, 4), parse_ideal(D4_J, 4)
    for ideal, forms in ((I, D4_I_FORMS), (J, D4_J_FORMS)):
        found = hilbsym.symbolic_invariants(ideal)
        for key, coeffs in forms.items():
            assert found[key].coeffs == coeffs, f"{key} of {ideal}: {found[key]}"
    cI, cJ = tpoly.ideal_components(I), tpoly.ideal_components(J)
    assert cI.saturation == parse_ideal(D4_I_SAT, 4)
    assert cJ.saturation == J
    assert cI.top == cJ.top == parse_ideal(D4_TOP, 4)
    report = hilbsym.compare_invariants(I, J)
    assert report.Q_equal and not report.Q1_equal and report.toppo_consistent
    return "e-forms, saturations, top components, Q equal and Q1 different"


def check_deviation_cones() -> str:
    settings = get_settings()
    rng = np.random.default_rng(settings.seed)
    n = settings.sample_count('deviation', 500)
    cm = 0
    for _ in range(n):
        d = int(rng.integers(1, 7))
        a = fan.random_weights(d, 1, int(rng.integers(0, 2 ** 31)))[0]
        zero = xy_ideals.deviation(a) == 0
        assert zero == bool(fan.cones_containing(a, closed=True)), f"disagreement at {a}"
        cm += zero
    return f"{n} samples, {cm} Cohen-Macaulay"


def check_oracles() -> str:
    settings = get_settings()
    rng = np.random.default_rng(settings.seed + 1)
    n = settings.sample_count('oracle', 100)
    for _ in range(n):
        d = int(rng.integers(1, 5))
        k = int(rng.integers(0, 4))
        a = fan.random_weights(d, 1, int(rng.integers(0, 2 ** 31)))[0]
        dp = xy_ideals.hilbert_h1(a, k)
        assert dp == xy_ideals.hilbert_h1_bruteforce(a, k), f"DP differs at {a}, k={k}"
        I = groebner.buchberger(d, groebner.TermOrder(a.a, 'lex')).leads_ideal()
        assert dp == hilbsym.evaluate_h1(I, a, k), f"standard monomials differ at {a}, k={k}"
    return f"{n} samples"


def check_big_cone() -> str:
    for d in range(3, 11):
        assert fan.big_cone(d).sequence_count == int(fibonacci(d + 1))
    for d in range(3, 6):
        report = fan.verify_big_cone(d)
        assert report['ok'], f"d={d}: {report}"
    return "Fibonacci counts d=3..10, closures and samples d<=5"


def check_permutations() -> str:
    for d in range(1, 8):
        assert fan.avoider_count(d) == 2 ** (d - 1)
        assert set(fan.avoiders(d)) == {fan.canonical(i) for i in fan.cm_sequences(d)}
        assert len(fan.bigcone_perms(d)) == fan.bigcone_perm_count(d)
    assert fan.catalan_product((0, 2, 3, 5, 7, 9, 10, 12, 14)) == 10
    return "avoiders, big-cone permutations, Catalan product 10"


def check_products() -> str:
    c = xy_ideals.minplus_product((0, 4, 6, 7), (0, 2))
    assert c.a == (0, 2, 6, 7, 9)
    assert xy_ideals.deviation(c) == 2
    assert xy_ideals.zariski_product_cm([(0, 4, 6, 7), (0, 2)])
    return "(0,4,6,7)*(0,2) = (0,2,6,7,9), deviation 2"


def check_invariant_pairs() -> str:
    cells = fan.traverse_fan(4)
    ideals = [c.initial_ideal for c in cells]
    inconsistent = 0
    for I in ideals:
        for J in ideals:
            r = hilbsym.compare_invariants(I, J)
            assert r.h_equal == r.ideal_equal
            assert r.e0_equal == r.radical_equal
            assert r.Q1_equal == r.sat_equal
            inconsistent += not r.toppo_consistent
    return f"{len(ideals) ** 2} pairs, Q and top component disagree on {inconsistent}"


def acceptance_checks(quick: bool = False) -> List[Tuple[str, Callable[[], str]]]:
    checks = [
        ('fan-censuses', check_fan_censuses),
        ('cm-catalog', check_catalog(4 if quick else 6)),
        ('d6-golden-gb', check_d6_gb),
        ('d3-tables', check_d3_tables),
        ('d4-pair', check_d4_pair),
        ('deviation-cones', check_deviation_cones),
        ('oracles', check_oracles),
        ('big-cone', check_big_cone),
        ('permutations', check_permutations),
        ('products', check_products),
    ]
    if not quick:
        checks.append(('invariant-pairs-d4', check_invariant_pairs))
    return checks


def run_selftest(quick: bool = False) -> List[dict]:
    results = []
    for name, check in acceptance_checks(quick):
        start = time.perf_counter()
        try:
            detail = check()
            passed = True
        except AssertionError as e:
            detail = str(e) or "assertion failed"
            passed = False
        seconds = round(time.perf_counter() - start, 3)
        logger.info(f"selftest {name}: {'ok' if passed else 'FAILED'} in {seconds}s")
        results.append({'name': name, 'passed': passed, 'detail': detail})
    return results
