"""
The Groebner fan of P and its Cohen-Macaulay part.

Weights a = (a_0, ..., a_d) are compared through homogeneous integer
inequalities n . a >= 0 (or > 0). Every normal n is orthogonal to (1,...,1) and
to (0,1,...,d), the lineality space of the fan, so inequalities can equally be
written in the b-coordinates b_j = a_j - a_(j-1).

Contents:
- cm_sequences, cone_system, cones_containing: the 2^(d-1) cones C(i)
- permutation tools: canonical permutations, layered permutations, permutation cones
- groebner_cone: facets and an interior point of the cone of a reduced Groebner basis
- traverse_fan: all maximal cells by flipping across facets
- depth_census, catalog_check, special_orders
- big_cone, verify_big_cone: the convex Cohen-Macaulay cone b_j <= b_(j+2)
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from math import comb, gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import catalan, fibonacci

from components.groebner import (ReducedGB, TermOrder, buchberger, canonical_permutation, check_hilbert_function,
                                 cm_reduced_gb, cm_sequence, quadric_pairs)
from components.tpoly import MonomialIdealT, canonical_key, ideal_components
from components.xy_ideals import ASequence, as_sequence, deviation, lift_weight
from utility import exact_lp
from utility.errors import (DegenerateConeError, FlipFailureError, InternalInconsistencyError,
                            TraversalCapError)
from utility.settings import get_settings

logger = logging.getLogger(__name__)

Normal = Tuple[int, ...]


def cm_sequences(d: int) -> List[Tuple[int, ...]]:
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    found = []
    inner = range(1, d)
    for r in range(d):
        for subset in combinations(inner, r):
            found.append((0,) + subset + (d,))
    return sorted(found)


def primitive(n: Sequence[int]) -> Normal:
    g = 0
    for v in n:
        g = gcd(g, int(v))
    return tuple(int(v) // g for v in n) if g else tuple(int(v) for v in n)


def _render(coeffs: Sequence[int], names: Sequence[str], strict: bool) -> str:
    def side(terms):
        parts = [name if c == 1 else f"{c}*{name}" for c, name in terms]
        return " + ".join(parts) if parts else "0"
    lhs = [(c, name) for c, name in zip(coeffs, names) if c > 0]
    rhs = [(-c, name) for c, name in zip(coeffs, names) if c < 0]
    return f"{side(lhs)} {'>' if strict else '>='} {side(rhs)}"


@dataclass(frozen=True)
class ConeSystem:
    """Inequalities n . a >= 0, strict where flagged, on weights (a_0, ..., a_d)."""
    d: int
    rows: Tuple[Tuple[Normal, bool], ...]

    def __post_init__(self):
        rows = tuple((tuple(int(v) for v in n), bool(strict)) for n, strict in self.rows)
        object.__setattr__(self, 'rows', rows)
        for n, _ in rows:
            if len(n) != self.d + 1:
                raise InternalInconsistencyError(f"Normal {n} does not have {self.d + 1} entries")
            if sum(n) != 0 or sum(i * v for i, v in enumerate(n)) != 0:
                raise InternalInconsistencyError(f"Normal {n} is not orthogonal to the lineality space")

    @classmethod
    def from_normals(cls, d: int, normals: Sequence[Sequence[int]], strict: bool = True) -> 'ConeSystem':
        return cls(d, tuple((tuple(n), strict) for n in normals))

    @classmethod
    def from_b_rows(cls, d: int, rows: Sequence[Sequence[int]], strict: bool = True) -> 'ConeSystem':
        """Rows c = (c_1, ..., c_d) meaning sum c_j b_j >= 0; the c_j must add up to 0."""
        normals = []
        for c in rows:
            c = list(c) + [0]
            normals.append(tuple([-c[0]] + [c[i - 1] - c[i] for i in range(1, d + 1)]))
        return cls.from_normals(d, normals, strict)

    @property
    def normals(self) -> List[Normal]:
        return [n for n, _ in self.rows]

    def closed(self) -> 'ConeSystem':
        return ConeSystem(self.d, tuple((n, False) for n, _ in self.rows))

    def to_b_rows(self) -> List[Tuple[int, ...]]:
        return [tuple(sum(n[j:]) for j in range(1, self.d + 1)) for n in self.normals]

    def contains(self, a, closed: bool = True) -> bool:
        w = a.a if isinstance(a, ASequence) else tuple(Fraction(v) for v in a)
        if len(w) != self.d + 1:
            return False
        for n, strict in self.rows:
            value = sum(x * y for x, y in zip(n, w))
            if value < 0 or (value == 0 and strict and not closed):
                return False
        return True

    def implies(self, other: 'ConeSystem') -> bool:
        """Closed version of self lies inside the closed version of other."""
        return all(exact_lp.cone_implies(self.normals, n, self.d + 1) for n in other.normals)

    def implies_fm(self, other: 'ConeSystem') -> bool:
        return all(exact_lp.cone_implies_fm(self.normals, n, self.d + 1) for n in other.normals)

    def equivalent(self, other: 'ConeSystem') -> bool:
        return self.implies(other) and other.implies(self)

    def deduplicated(self) -> 'ConeSystem':
        seen = {}
        for n, strict in self.rows:
            p = primitive(n)
            if any(p):
                seen[p] = seen.get(p, False) or strict
        return ConeSystem(self.d, tuple(sorted(seen.items())))

    @cached_property
    def facets(self) -> 'ConeSystem':
        reduced = self.deduplicated()
        keep = exact_lp.facet_indices(reduced.normals, self.d + 1)
        return ConeSystem(self.d, tuple(reduced.rows[j] for j in keep))

    @cached_property
    def interior_point(self) -> Tuple[Fraction, ...]:
        point, slack = exact_lp.interior_point(self.normals, self.d + 1)
        if point is None or slack <= 0:
            raise DegenerateConeError(f"Cone with {len(self.rows)} inequalities has empty interior")
        return point

    def is_full_dimensional(self) -> bool:
        return exact_lp.cone_strictly_feasible(self.normals, self.d + 1)

    def describe(self, coordinates: str = 'b') -> List[str]:
        if coordinates == 'b':
            names = [f"b{j}" for j in range(1, self.d + 1)]
            return [_render(c, names, s) for c, (_, s) in zip(self.to_b_rows(), self.rows)]
        names = [f"a{j}" for j in range(self.d + 1)]
        return [_render(n, names, s) for n, s in self.rows]

    def to_json(self) -> List[dict]:
        return [{'normal': list(n), 'strict': s, 'b': list(c)}
                for (n, s), c in zip(self.rows, self.to_b_rows())]


def cone_system(i: Sequence[int], closed: bool = False) -> ConeSystem:
    """a_s + a_r > a_p + a_q for every non-standard t_s t_r with standard partner t_p t_q."""
    i = cm_sequence(i)
    d = i[-1]
    n = d + 1
    rows = []
    for (s, r), (p, q) in quadric_pairs(i):
        normal = [0] * n
        normal[s] += 1
        normal[r] += 1
        normal[p] -= 1
        normal[q] -= 1
        rows.append((tuple(normal), not closed))
    return ConeSystem(d, tuple(rows))


def cones_containing(a, d: Optional[int] = None, closed: bool = True) -> List[Tuple[int, ...]]:
    w = a.a if isinstance(a, ASequence) else tuple(a)
    d = d if d is not None else len(w) - 1
    return [i for i in cm_sequences(d) if cone_system(i, closed=closed).contains(w, closed=closed)]


# permutations

def canonical(i: Sequence[int]) -> Tuple[int, ...]:
    return canonical_permutation(i)


def contains_pattern(sigma: Sequence[int], pattern: Sequence[int]) -> bool:
    k = len(pattern)
    for positions in combinations(range(len(sigma)), k):
        values = [sigma[p] for p in positions]
        ranks = sorted(values)
        if all(ranks.index(v) + 1 == pattern[j] for j, v in enumerate(values)):
            return True
    return False


def avoiders(d: int) -> List[Tuple[int, ...]]:
    """Permutations of 1..d avoiding 231 and 312."""
    return [s for s in permutations(range(1, d + 1))
            if not contains_pattern(s, (2, 3, 1)) and not contains_pattern(s, (3, 1, 2))]


def avoider_count(d: int) -> int:
    count = len(avoiders(d))
    if count != 2 ** (d - 1):
        raise InternalInconsistencyError(f"Found {count} layered permutations of {d}, expected {2 ** (d - 1)}")
    return count


def bigcone_perms(d: int) -> List[Tuple[int, ...]]:
    return [s for s in permutations(range(1, d + 1)) if all(s[j] < s[j + 2] for j in range(d - 2))]


def bigcone_perm_count(d: int) -> int:
    return comb(d, d // 2)


def step_two_runs(values: Sequence[int]) -> List[List[int]]:
    """Maximal runs {x, x+2, x+4, ...} partitioning values."""
    pool = set(values)
    runs = []
    for x in sorted(pool):
        if x - 2 not in pool:
            run = [x]
            while run[-1] + 2 in pool:
                run.append(run[-1] + 2)
            runs.append(run)
    return runs


def catalan_product(i: Sequence[int]) -> int:
    i = cm_sequence(i)
    missing = [j for j in range(1, i[-1] + 1) if j not in i]
    result = 1
    for run in step_two_runs(missing):
        result *= int(catalan(len(run)))
    return result


def catalan_product_bruteforce(i: Sequence[int]) -> int:
    """Counts sigma with sigma(j) < sigma(j+2) and a descent at j exactly when j is not in i."""
    i = cm_sequence(i)
    d = i[-1]
    return sum(1 for s in bigcone_perms(d)
               if all((s[j - 1] > s[j]) == (j not in i) for j in range(1, d)))


def permutation_cone(sigma: Sequence[int]) -> ConeSystem:
    """b_(sigma^-1(1)) < b_(sigma^-1(2)) < ... < b_(sigma^-1(d))."""
    d = len(sigma)
    inverse = [0] * (d + 1)
    for position, value in enumerate(sigma, start=1):
        inverse[value] = position
    rows = []
    for j in range(1, d):
        c = [0] * d
        c[inverse[j + 1] - 1] += 1
        c[inverse[j] - 1] -= 1
        rows.append(c)
    return ConeSystem.from_b_rows(d, rows)


def permutation_tools(d: int, i: Optional[Sequence[int]] = None) -> dict:
    report = {
        'avoider_count': avoider_count(d),
        'bigcone_perm_count': bigcone_perm_count(d),
    }
    if i is not None:
        report['canonical'] = canonical(i)
        report['catalan_product'] = catalan_product(i)
    return report


# Groebner cones and the fan

def groebner_cone(gb: ReducedGB) -> ConeSystem:
    """{(lead - tail) . a > 0}; facets and interior point are available on the result."""
    cone = ConeSystem.from_normals(gb.d, [primitive(n) for n in gb.normals]).deduplicated()
    if cone.rows and not cone.is_full_dimensional():
        raise DegenerateConeError("Groebner cone has empty interior; basis is not reduced for a generic weight")
    return cone


@dataclass(frozen=True)
class FanCell:
    gb: ReducedGB
    cone: ConeSystem
    interior_weight: ASequence
    initial_ideal: MonomialIdealT
    depth: int
    sequence: Optional[Tuple[int, ...]] = None

    @property
    def facets(self) -> ConeSystem:
        return self.cone.facets

    def to_json(self) -> dict:
        return {
            'sequence': list(self.sequence) if self.sequence else None,
            'initial_ideal': self.initial_ideal.to_json(),
            'facets': self.facets.to_json(),
            'interior_weight': self.interior_weight.to_json(),
            'depth': self.depth,
        }


def cell_sort_key(I: MonomialIdealT):
    return (len(I.gens), [canonical_key(g) for g in I.gens])


def cell_depth(I: MonomialIdealT, weight: ASequence) -> int:
    """0 if I is not saturated, 2 if the weight has deviation 0, else 1."""
    if ideal_components(I).saturation != I:
        return 0
    return 2 if deviation(weight) == 0 else 1


def make_cell(gb: ReducedGB, catalog: Optional[Dict[MonomialIdealT, Tuple[int, ...]]] = None) -> FanCell:
    cone = groebner_cone(gb)
    point = cone.interior_point if cone.rows else tuple(range(gb.d + 1))
    weight = lift_weight(point)
    I = gb.leads_ideal()
    depth = cell_depth(I, weight)
    sequence = catalog.get(I) if catalog else None
    return FanCell(gb, cone, weight, I, depth, sequence)


def cm_catalog(d: int) -> Dict[MonomialIdealT, Tuple[int, ...]]:
    return {cm_reduced_gb(i, verify=False).leads_ideal(): i for i in cm_sequences(d)}


def flip(cell: FanCell, facet: Normal, tiebreak: str) -> ReducedGB:
    """Reduced Groebner basis of the neighbouring cell across facet."""
    d = cell.gb.d
    facet = primitive(facet)
    others = [n for n in cell.facets.normals if primitive(n) != facet]
    w_f, slack = exact_lp.interior_point(others, d + 1, equalities=[facet])
    if w_f is None or slack <= 0:
        raise FlipFailureError(f"No relative interior point on facet {facet} of {cell.initial_ideal}")
    bound = 1 + max((abs(sum(x * y for x, y in zip(g, facet))) for g in others), default=0)
    eps = slack / (2 * bound)
    for _ in range(get_settings().flip_max_halvings + 1):
        w = tuple(x - eps * y for x, y in zip(w_f, facet))
        gb = buchberger(d, TermOrder(w, tiebreak), verify=False)
        if all(sum(x * y for x, y in zip(n, w_f)) >= 0 for n in gb.normals) and gb.leads_ideal() != cell.initial_ideal:
            return gb
        eps /= 2
    raise FlipFailureError(f"Could not cross facet {facet} of {cell.initial_ideal}")


def traverse_fan(d: int, tiebreak: str = None, workers: Optional[int] = None,
                 max_d: Optional[int] = None) -> List[FanCell]:
    """Breadth-first flip traversal from the cell of (0, 1, 3, 6, ...); sorted output."""
    settings = get_settings()
    cap = max_d if max_d is not None else settings.max_traversal_d
    if d > cap:
        raise TraversalCapError(f"Traversal for d={d} exceeds the cap {cap}; raise RNC_MAX_D to override")
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    tiebreak = tiebreak or settings.default_tiebreak
    workers = workers or settings.workers
    catalog = cm_catalog(d)

    start = buchberger(d, TermOrder(tuple(j * (j + 1) // 2 for j in range(d + 1)), tiebreak), verify=False)
    check_degree = settings.hilbert_check_degree(d)
    seen: Dict[MonomialIdealT, FanCell] = {}
    lock = threading.Lock()

    def register(gb: ReducedGB) -> Optional[FanCell]:
        key = gb.leads_ideal()
        with lock:
            if key in seen:
                return None
            seen[key] = None
        check_hilbert_function(key, check_degree)
        cell = make_cell(gb, catalog)
        with lock:
            seen[key] = cell
        return cell

    frontier = [register(start)]
    level = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        while frontier:
            tasks = [(cell, facet) for cell in frontier for facet in cell.facets.normals]
            neighbours = list(pool.map(lambda task: flip(task[0], task[1], tiebreak), tasks))
            frontier = [c for c in (register(gb) for gb in neighbours) if c is not None]
            level += 1
            logger.info(f"Fan d={d}: level {level}, {len(seen)} cells, {len(frontier)} new")
    cells = sorted(seen.values(), key=lambda c: cell_sort_key(c.initial_ideal))
    logger.info(f"Fan d={d}: {len(cells)} maximal cells")
    return cells


def depth_census(d: int, cells: Optional[List[FanCell]] = None) -> Dict[int, int]:
    cells = cells if cells is not None else traverse_fan(d)
    census: Dict[int, int] = {}
    for cell in cells:
        census[cell.depth] = census.get(cell.depth, 0) + 1
    return dict(sorted(census.items()))


def random_weights(d: int, n: int, seed: int, max_entry: Optional[int] = None) -> List[ASequence]:
    """Strictly increasing integer sequences with entries up to max_entry."""
    rng = np.random.default_rng(seed)
    top = max(max_entry or get_settings().max_entry, d)
    samples = []
    while len(samples) < n:
        inner = sorted(rng.choice(np.arange(1, top + 1), size=d, replace=False).tolist())
        samples.append(ASequence((0,) + tuple(int(v) for v in inner)))
    return samples


def sample_initial_ideals(d: int, n: int, seed: int, tiebreak: str = None) -> Dict[MonomialIdealT, ASequence]:
    tiebreak = tiebreak or get_settings().default_tiebreak
    found: Dict[MonomialIdealT, ASequence] = {}
    for a in random_weights(d, n, seed):
        I = buchberger(d, TermOrder(a.a, tiebreak)).leads_ideal()
        found.setdefault(I, a)
    return found


def sample_generic_initial_ideals(d: int, n: int, seed: int,
                                  tiebreak: str = None) -> Tuple[Dict[MonomialIdealT, ASequence], int]:
    """Like sample_initial_ideals, but drops weights on a wall of their Groebner cone."""
    tiebreak = tiebreak or get_settings().default_tiebreak
    found: Dict[MonomialIdealT, ASequence] = {}
    on_walls = 0
    for a in random_weights(d, n, seed):
        gb = buchberger(d, TermOrder(a.a, tiebreak))
        if any(sum(x * y for x, y in zip(normal, a.a)) <= 0 for normal in gb.normals):
            on_walls += 1
            continue
        found.setdefault(gb.leads_ideal(), a)
    return found, on_walls


def check_traversal_complete(cells: List[FanCell], samples: Dict[MonomialIdealT, ASequence]) -> List[ASequence]:
    """Sample weights whose initial ideal is missing from cells."""
    known = {c.initial_ideal for c in cells}
    return [a for I, a in samples.items() if I not in known]


def catalog_check(d: int, cells: Optional[List[FanCell]] = None, samples: Optional[int] = None,
                  seed: Optional[int] = None) -> dict:
    """
    Compares the Cohen-Macaulay cells with the closed-form catalog. Without cells,
    and above the traversal cap, only sampled weights are checked.
    """
    settings = get_settings()
    catalog = cm_catalog(d)
    if cells is None and d <= settings.max_traversal_d and samples is None:
        cells = traverse_fan(d)
    if cells is not None:
        cm_cells = {c.initial_ideal for c in cells if c.depth == 2}
        return {
            'mode': 'traversal',
            'catalog_size': len(catalog),
            'cm_cells': len(cm_cells),
            'equal': cm_cells == set(catalog),
        }
    n = samples if samples is not None else settings.fan_sample_size
    found, on_walls = sample_generic_initial_ideals(d, n, seed if seed is not None else settings.seed)
    in_open_cone = {I: bool(cones_containing(a, d, closed=False)) for I, a in found.items()}
    outside = [a for I, a in found.items() if in_open_cone[I] and I not in catalog]
    wrongly_inside = [a for I, a in found.items() if not in_open_cone[I] and I in catalog]
    return {
        'mode': 'sampling',
        'catalog_size': len(catalog),
        'sampled_ideals': len(found),
        'skipped_on_walls': on_walls,
        'sampled_cm': sum(1 for I in found if I in catalog),
        'equal': not outside and not wrongly_inside,
    }


def special_orders(d: int) -> Dict[str, bool]:
    """Lex realises the cell of (0,1,...,d), revlex the cell of (0,d)."""
    zero = tuple([0] * (d + 1))
    lex = buchberger(d, TermOrder(zero, 'lex')).leads_ideal()
    revlex = buchberger(d, TermOrder(zero, 'revlex')).leads_ideal()
    return {
        'lex': lex == cm_reduced_gb(tuple(range(d + 1)), verify=False).leads_ideal(),
        'revlex': revlex == cm_reduced_gb((0, d), verify=False).leads_ideal(),
    }


# the big cone

def gap_two_sequences(d: int) -> List[Tuple[int, ...]]:
    return [i for i in cm_sequences(d) if all(y - x <= 2 for x, y in zip(i, i[1:]))]


@dataclass(frozen=True)
class BigCone:
    d: int
    system: ConeSystem
    sequences: Tuple[Tuple[int, ...], ...]

    @property
    def sequence_count(self) -> int:
        return len(self.sequences)

    def member(self, a) -> bool:
        return self.system.contains(as_sequence(a), closed=True)

    def to_json(self) -> dict:
        return {
            'd': self.d,
            'system': self.system.to_json(),
            'inequalities': self.system.describe('b'),
            'sequence_count': self.sequence_count,
            'fibonacci': int(fibonacci(self.d + 1)),
        }


def big_cone(d: int) -> BigCone:
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    n = d + 1
    normals = []
    for j in range(1, d - 1):
        normal = [0] * n
        normal[j - 1] += 1
        normal[j + 2] += 1
        normal[j] -= 1
        normal[j + 1] -= 1
        normals.append(tuple(normal))
    cone = BigCone(d, ConeSystem.from_normals(d, normals, strict=False), tuple(gap_two_sequences(d)))
    expected = int(fibonacci(d + 1))
    if cone.sequence_count != expected:
        raise InternalInconsistencyError(f"{cone.sequence_count} gap-two sequences for d={d}, expected {expected}")
    return cone


def random_big_cone_members(d: int, n: int, seed: int) -> List[ASequence]:
    """b with b_j <= b_(j+2): odd and even positions are independent sorted draws; ties allowed."""
    rng = np.random.default_rng(seed)
    members = []
    odd = (d + 1) // 2
    even = d // 2
    for _ in range(n):
        top = int(rng.integers(1, 8))
        odd_b = np.sort(rng.integers(1, top + 1, size=odd))
        even_b = np.sort(rng.integers(1, top + 1, size=even))
        b = [0] * d
        b[0::2] = odd_b.tolist()
        b[1::2] = even_b.tolist()
        members.append(ASequence(tuple(np.concatenate([[0], np.cumsum(b)]).tolist())))
    return members


def verify_big_cone(d: int, samples: Optional[int] = None, seed: Optional[int] = None) -> dict:
    settings = get_settings()
    cone = big_cone(d)
    closures_inside = all(cone_system(i, closed=True).implies(cone.system) for i in cone.sequences)
    fm_agrees = True
    if d <= 4:
        fm_agrees = all(cone_system(i, closed=True).implies_fm(cone.system) for i in cone.sequences)
    members = random_big_cone_members(d, samples if samples is not None else settings.sample_count('bigcone', 200),
                                      seed if seed is not None else settings.seed)
    systems = [cone_system(i, closed=True) for i in cone.sequences]
    uncovered = [a for a in members if not any(s.contains(a) for s in systems)]
    return {
        'd': d,
        'sequence_count': cone.sequence_count,
        'closures_inside': closures_inside,
        'fourier_motzkin_agrees': fm_agrees,
        'samples': len(members),
        'uncovered': [list(a.a) for a in uncovered],
        'ok': closures_inside and fm_agrees and not uncovered,
    }
