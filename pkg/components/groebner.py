"""
Weight-order Buchberger algorithm for the ideal P of the rational normal curve.

Every element of every Groebner basis of P is a pure difference t^alpha - t^beta,
so a binomial is stored as two exponent vectors and a reduction step by
t^gamma - t^delta just translates an exponent by delta - gamma. No coefficient
arithmetic is needed.

Also here: the closed-form reduced Groebner bases of the 2^(d-1) Cohen-Macaulay
initial ideals, indexed by sequences 0 = i_0 < i_1 < ... < i_k = d.
"""

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from components.tpoly import (Exponent, MonomialIdealT, PureBinomial, canonical_key, divides,
                              exp_add, exp_lcm, exp_sub, monomial_str, rnc_generators,
                              standard_monomial_layers, unit_vector)
from utility.errors import InternalInconsistencyError, InvalidSequenceError
from utility.settings import get_settings

logger = logging.getLogger(__name__)

TIEBREAKS = ('lex', 'revlex')


@dataclass(frozen=True)
class TermOrder:
    """Weight first, ties broken by lex (t_0 > ... > t_d) or revlex."""
    weight: Tuple[Fraction, ...]
    tiebreak: str = 'lex'

    def __post_init__(self):
        object.__setattr__(self, 'weight', tuple(Fraction(v) for v in self.weight))
        if self.tiebreak not in TIEBREAKS:
            raise ValueError(f"Unknown tiebreak {self.tiebreak!r}; expected one of {TIEBREAKS}")

    @property
    def d(self) -> int:
        return len(self.weight) - 1

    def weigh(self, e: Exponent) -> Fraction:
        return sum((w * v for w, v in zip(self.weight, e)), Fraction(0))

    def key(self, e: Exponent):
        if self.tiebreak == 'lex':
            return (self.weigh(e), e)
        return (self.weigh(e), tuple(-v for v in reversed(e)))

    def orient(self, m1: Exponent, m2: Exponent) -> PureBinomial:
        if self.key(m1) > self.key(m2):
            return PureBinomial(m1, m2)
        return PureBinomial(m2, m1)

    def to_json(self) -> dict:
        return {'weight': [str(w) for w in self.weight], 'tiebreak': self.tiebreak}


@dataclass(frozen=True)
class ReducedGB:
    elements: Tuple[PureBinomial, ...]
    order: Optional[TermOrder] = None

    @property
    def nvars(self) -> int:
        return self.elements[0].nvars if self.elements else (self.order.d + 1 if self.order else 0)

    @property
    def d(self) -> int:
        return self.nvars - 1

    @property
    def leads(self) -> Tuple[Exponent, ...]:
        return tuple(g.lead for g in self.elements)

    @property
    def normals(self) -> List[Tuple[int, ...]]:
        return [g.normal for g in self.elements]

    def leads_ideal(self) -> MonomialIdealT:
        return MonomialIdealT(self.nvars, self.leads)

    def __str__(self) -> str:
        return "\n".join(str(g) for g in self.elements)

    def to_json(self) -> List[dict]:
        return [g.to_json() for g in self.elements]


def leads_ideal(gb: ReducedGB) -> MonomialIdealT:
    return gb.leads_ideal()


def _sorted_elements(elements) -> Tuple[PureBinomial, ...]:
    return tuple(sorted(elements, key=lambda g: canonical_key(g.lead)))


def _top_reduce(lead: Exponent, tail: Exponent, basis: List[PureBinomial], order: TermOrder):
    """Rewrite the leading monomial until no lead of basis divides it; None if it vanishes."""
    while True:
        for g in basis:
            if divides(g.lead, lead):
                lead = exp_add(exp_sub(lead, g.lead), g.tail)
                break
        else:
            return order.orient(lead, tail)
        if lead == tail:
            return None
        if order.key(lead) < order.key(tail):
            lead, tail = tail, lead


def _reduce_monomial(m: Exponent, basis: List[PureBinomial]) -> Exponent:
    changed = True
    while changed:
        changed = False
        for g in basis:
            if divides(g.lead, m):
                m = exp_add(exp_sub(m, g.lead), g.tail)
                changed = True
                break
    return m


def spoly(f: PureBinomial, g: PureBinomial) -> Tuple[Exponent, Exponent]:
    L = exp_lcm(f.lead, g.lead)
    return exp_add(exp_sub(L, g.lead), g.tail), exp_add(exp_sub(L, f.lead), f.tail)


def minimalize(G: List[PureBinomial], order: TermOrder) -> List[PureBinomial]:
    Gmin: List[PureBinomial] = []
    for f in sorted(G, key=lambda h: (sum(h.lead), order.key(h.lead))):
        if all(not divides(g.lead, f.lead) for g in Gmin):
            Gmin.append(f)
    return Gmin


def interreduce(G: List[PureBinomial]) -> List[PureBinomial]:
    reduced = []
    for f in G:
        others = [g for g in G if g is not f]
        tail = _reduce_monomial(f.tail, others)
        if tail == f.lead:
            raise InternalInconsistencyError(f"Tail of {f} reduces to its lead")
        reduced.append(PureBinomial(f.lead, tail))
    return reduced


def buchberger(d: int, order: TermOrder, verify: bool = True) -> ReducedGB:
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    if order.d != d:
        raise InvalidSequenceError(f"Weight {order.weight} has {order.d + 1} entries, expected {d + 1}")
    G: List[PureBinomial] = []
    for g in rnc_generators(d):
        h = order.orient(g.lead, g.tail)
        h = _top_reduce(h.lead, h.tail, G, order)
        if h is not None:
            G.append(h)

    queue = []

    def push_pairs(j):
        for i in range(j):
            L = exp_lcm(G[i].lead, G[j].lead)
            heapq.heappush(queue, (sum(L), order.key(L), i, j))

    for j in range(1, len(G)):
        push_pairs(j)
    steps = 0
    while queue:
        _, _, i, j = heapq.heappop(queue)
        f, g = G[i], G[j]
        if exp_lcm(f.lead, g.lead) == exp_add(f.lead, g.lead):
            continue
        m1, m2 = spoly(f, g)
        steps += 1
        if m1 == m2:
            continue
        h = order.orient(m1, m2)
        h = _top_reduce(h.lead, h.tail, G, order)
        if h is not None:
            logger.debug(f"S-pair ({i}, {j}) adds {h}")
            G.append(h)
            push_pairs(len(G) - 1)

    elements = interreduce(minimalize(G, order))
    gb = ReducedGB(_sorted_elements(elements), order)
    logger.debug(f"Buchberger d={d} {order.tiebreak} weight={[str(w) for w in order.weight]}: "
                 f"{len(gb.elements)} elements after {steps} S-pairs")
    if verify:
        check_hilbert_function(gb.leads_ideal(), get_settings().hilbert_check_degree(d))
    return gb


def check_hilbert_function(I: MonomialIdealT, top_degree: int) -> None:
    """Raises FiberViolationError unless every degree k has exactly dk+1 standard monomials."""
    for _ in standard_monomial_layers(I, top_degree):
        pass


@dataclass(frozen=True)
class InitialForms:
    generators: Tuple[object, ...]  # Exponent for monomial forms, PureBinomial when tied
    is_monomial: bool

    def __str__(self) -> str:
        return "(" + ", ".join(monomial_str(g) if isinstance(g, tuple) else str(g) for g in self.generators) + ")"

    def to_json(self) -> dict:
        return {
            'generators': [list(g) if isinstance(g, tuple) else g.to_json() for g in self.generators],
            'monomial': self.is_monomial,
        }


def initial_forms(d: int, w: Sequence, tiebreak: str = None) -> InitialForms:
    """Generators of in_w(P), read off the reduced Groebner basis for the refined order."""
    order = TermOrder(tuple(w), tiebreak or get_settings().default_tiebreak)
    gb = buchberger(d, order)
    generators = []
    for g in gb.elements:
        if order.weigh(g.lead) > order.weigh(g.tail):
            generators.append(g.lead)
        else:
            generators.append(g)
    return InitialForms(tuple(generators), all(isinstance(g, tuple) for g in generators))


# closed forms for the Cohen-Macaulay cells

def cm_sequence(i: Sequence[int]) -> Tuple[int, ...]:
    """Validates 0 = i_0 < i_1 < ... < i_k = d with d >= 1."""
    try:
        i = tuple(int(v) for v in i)
    except (TypeError, ValueError):
        raise InvalidSequenceError(f"Not an integer sequence: {i!r}")
    if len(i) < 2 or i[0] != 0 or any(x >= y for x, y in zip(i, i[1:])):
        raise InvalidSequenceError(f"Expected 0 = i_0 < ... < i_k = d with d >= 1, got {i}")
    return i


def standard_quadric(i: Tuple[int, ...], m: int) -> Tuple[int, int]:
    """The unique standard quadric t_p t_q (p <= q, p + q = m) of the cell of i."""
    for lo, hi in zip(i, i[1:]):
        if 2 * lo <= m <= lo + hi:
            p, q = lo, m - lo
            return (min(p, q), max(p, q))
        if lo + hi <= m <= 2 * hi:
            p, q = hi, m - hi
            return (min(p, q), max(p, q))
    raise InvalidSequenceError(f"Second degree {m} out of range for {i}")


def quadric_pairs(i: Tuple[int, ...]) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """[((s, r), (p, q))] for every non-standard t_s t_r with its standard partner t_p t_q."""
    d = i[-1]
    pairs = []
    for s in range(d + 1):
        for r in range(s, d + 1):
            p, q = standard_quadric(i, s + r)
            if (s, r) != (p, q):
                pairs.append(((s, r), (p, q)))
    return pairs


def canonical_permutation(i: Sequence[int]) -> Tuple[int, ...]:
    """Concatenation of the descending runs (i_j, i_j - 1, ..., i_(j-1) + 1)."""
    i = cm_sequence(i)
    sigma = []
    for lo, hi in zip(i, i[1:]):
        sigma.extend(range(hi, lo, -1))
    return tuple(sigma)


def canonical_weight(i: Sequence[int]) -> Tuple[int, ...]:
    """a_0 = 0, a_j = sigma_1 + ... + sigma_j; its b-sequence is the canonical permutation."""
    a = [0]
    for s in canonical_permutation(i):
        a.append(a[-1] + s)
    return tuple(a)


def cm_reduced_gb(i: Sequence[int], tiebreak: str = None, verify: Optional[bool] = None) -> ReducedGB:
    i = cm_sequence(i)
    d = i[-1]
    n = d + 1

    def quadric(p, q):
        return exp_add(unit_vector(n, p), unit_vector(n, q))

    elements = [PureBinomial(quadric(s, r), quadric(p, q)) for (s, r), (p, q) in quadric_pairs(i)]
    order = TermOrder(canonical_weight(i), tiebreak or get_settings().default_tiebreak)
    gb = ReducedGB(_sorted_elements(elements), order)
    if verify is None:
        verify = get_settings().verify_closed_forms
    if verify:
        computed = buchberger(d, order)
        if set(computed.elements) != set(gb.elements):
            logger.error(f"Closed form for {i} differs from Buchberger:\n{gb}\nvs\n{computed}")
            raise InternalInconsistencyError(f"Closed-form Groebner basis of {i} does not match Buchberger")
    return gb
