"""
Monomial ideals of K[x,y] encoded as integer sequences.

An m-primary monomial ideal of order d is recorded by its column heights
a = (a_0, ..., a_d), a_0 = 0, weakly increasing: the ideal is generated by the
monomials x^(d-i) y^(a_i). The sequence is a lex-segment exactly when it is
strictly increasing. Products of ideals become min-plus products of sequences,
so every Hilbert-function computation below is integer dynamic programming.

Main entry points:
- normalize(w): move a rational weight into a strictly increasing integer sequence
- minplus_product(a, a2), minplus_power(a, k)
- hilbert_h1(a, k): dim R/I^(k+1)
- h_polynomial(a): local h-polynomial and Hilbert coefficients e0, e1, e2
- newton_multiplicity(a): Newton hull vertices and e0
- deviation(a), is_gr_cm(a): Cohen-Macaulay test of the associated graded ring
- zariski_product_cm(factors): products of lex-segment ideals in independent directions
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from utility.errors import (InternalInconsistencyError, InvalidSequenceError,
                            NegativeWeightError, WindowTooSmallError)
from utility.settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ASequence:
    a: Tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(v) for v in self.a)
        object.__setattr__(self, 'a', a)
        if not a:
            raise InvalidSequenceError("A sequence needs at least one entry")
        if a[0] != 0:
            raise InvalidSequenceError(f"Sequence must start with 0, got {a}")
        if any(x > y for x, y in zip(a, a[1:])):
            raise InvalidSequenceError(f"Sequence must be weakly increasing, got {a}")

    @property
    def d(self) -> int:
        return len(self.a) - 1

    @property
    def b(self) -> Tuple[int, ...]:
        return tuple(y - x for x, y in zip(self.a, self.a[1:]))

    @property
    def is_lex_segment(self) -> bool:
        return all(v > 0 for v in self.b)

    def shifted(self, k: int = 1) -> 'ASequence':
        """a + k(0,1,...,d); leaves every fan cone of P unchanged."""
        return ASequence(tuple(v + k * i for i, v in enumerate(self.a)))

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.a)

    def to_json(self) -> List[int]:
        return list(self.a)


@dataclass(frozen=True)
class HilbertReport:
    h: Tuple[int, ...]
    e: Tuple[int, int, int]
    colength: int
    series_window: Tuple[int, ...] = field(repr=False)

    def hilbert_polynomial(self, k: int) -> int:
        """P(k) = e0 C(k+2,2) - e1 C(k+1,1) + e2; equals H1(k) for k >= deg h - 2."""
        e0, e1, e2 = self.e
        return e0 * comb(k + 2, 2) - e1 * (k + 1) + e2

    def to_json(self) -> dict:
        return {
            'h': list(self.h),
            'e': list(self.e),
            'colength': self.colength,
            'series_window': list(self.series_window),
        }


def as_sequence(a) -> ASequence:
    return a if isinstance(a, ASequence) else ASequence(tuple(a))


def lift_weight(w: Sequence) -> ASequence:
    """
    Subtract w_0, clear denominators and add the least k(0,1,...,d), k >= 0, that
    makes the entries strictly increasing. Entries may be negative.
    """
    w = [Fraction(v) for v in w]
    if not w:
        raise InvalidSequenceError("Empty weight vector")
    w = [v - w[0] for v in w]
    scale = lcm(*(v.denominator for v in w))
    ints = [int(v * scale) for v in w]
    k = max([0] + [ints[i - 1] - ints[i] + 1 for i in range(1, len(ints))])
    return ASequence(tuple(v + k * i for i, v in enumerate(ints)))


def normalize(w: Sequence) -> ASequence:
    """Strictly increasing integer representative of a non-negative rational weight."""
    w = [Fraction(v) for v in w]
    negative = [v for v in w if v < 0]
    if negative:
        raise NegativeWeightError(f"Weights must be non-negative, got {negative[0]} in {tuple(str(v) for v in w)}")
    return lift_weight(w)


def _minplus(x: Sequence[int], y: Sequence[int]) -> List[int]:
    out = [None] * (len(x) + len(y) - 1)
    for j, xj in enumerate(x):
        for k, yk in enumerate(y):
            s = xj + yk
            if out[j + k] is None or s < out[j + k]:
                out[j + k] = s
    return out


def minplus_product(a, a2) -> ASequence:
    """c_i = min{a_j + a2_k : j + k = i}; the sequence of the product ideal."""
    a, a2 = as_sequence(a), as_sequence(a2)
    return ASequence(tuple(_minplus(a.a, a2.a)))


def minplus_power(a, k: int) -> ASequence:
    a = as_sequence(a)
    if k < 0:
        raise ValueError(f"Power must be non-negative, got {k}")
    result = [0]
    for _ in range(k):
        result = _minplus(result, a.a)
    return ASequence(tuple(result))


def colength(a) -> int:
    return sum(as_sequence(a).a)


def _h1_series(a: ASequence, K: int) -> List[int]:
    """[H1(a,0), ..., H1(a,K)], reusing each convolution for the next degree."""
    values = []
    power = list(a.a)
    for k in range(K + 1):
        if k:
            power = _minplus(power, a.a)
        values.append(sum(power))
    return values


def hilbert_h1(a, k: int) -> int:
    """dim R/I^(k+1), i.e. the sum of the (k+1)-fold min-plus power of a."""
    if k < 0:
        raise ValueError(f"Degree must be non-negative, got {k}")
    return _h1_series(as_sequence(a), k)[-1]


def hilbert_h1_bruteforce(a, k: int) -> int:
    """Same value by minimising over every index tuple; exponential, for checks only."""
    a = as_sequence(a)
    d = a.d
    best = {}
    for combo in _tuples(d, k + 1):
        i = sum(combo)
        s = sum(a.a[j] for j in combo)
        if i not in best or s < best[i]:
            best[i] = s
    return sum(best[i] for i in range((k + 1) * d + 1))


def _tuples(d: int, length: int) -> Iterable[Tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for head in range(d + 1):
        for tail in _tuples(d, length - 1):
            yield (head,) + tail


def third_difference(series) -> np.ndarray:
    """Coefficients of (1-z)^3 times the series, truncated at the series length."""
    values = np.asarray(list(series), dtype=object)
    padded = np.concatenate([np.zeros((3,) + values.shape[1:], dtype=object), values])
    return np.diff(padded, n=3, axis=0)


def hilbert_coefficients(h: Sequence, zero=0) -> Tuple:
    """e_i = sum_j C(j,i) h_j for i = 0, 1, 2."""
    return tuple(sum((comb(j, i) * hj for j, hj in enumerate(h)), zero) for i in range(3))


def h_polynomial(a, window: int = None) -> HilbertReport:
    a = as_sequence(a)
    settings = get_settings()
    K = window if window is not None else 2 * a.d + settings.window_offset
    for attempt in range(settings.max_doublings + 1):
        series = _h1_series(a, K)
        product = third_difference(series)
        if all(v == 0 for v in product[-4:]):
            h = [int(v) for v in product]
            while len(h) > 1 and h[-1] == 0:
                h.pop()
            e = tuple(int(v) for v in hilbert_coefficients(h))
            report = HilbertReport(tuple(h), e, series[0], tuple(series))
            if report.h[0] != report.colength:
                raise InternalInconsistencyError(f"h(0)={report.h[0]} differs from colength {report.colength} for {a}")
            return report
        logger.info(f"h-polynomial of {a} not stable at K={K}, doubling")
        K *= 2
    raise WindowTooSmallError(f"Hilbert series of {a} did not stabilise by K={K // 2}")


def newton_vertices(a: Sequence[int]) -> List[int]:
    """Vertex indices of the lower Newton boundary; ties go to the largest j."""
    d = len(a) - 1
    vertices = [0]
    current = 0
    while current < d:
        best_ratio, best_j = None, None
        for j in range(current + 1, d + 1):
            ratio = Fraction(a[j] - a[current], j - current)
            if best_ratio is None or ratio <= best_ratio:
                best_ratio, best_j = ratio, j
        vertices.append(best_j)
        current = best_j
    return vertices


def _e0_from_vertices(a: Sequence[int], vertices: Sequence[int]) -> int:
    if len(vertices) == 1:
        return 0
    e0 = a[vertices[0]] * (vertices[1] - vertices[0])
    for t in range(1, len(vertices) - 1):
        e0 += a[vertices[t]] * (vertices[t + 1] - vertices[t - 1])
    e0 += a[vertices[-1]] * (vertices[-1] - vertices[-2])
    return e0


def newton_multiplicity(a) -> Tuple[Tuple[int, ...], int]:
    """
    Vertices of the lower boundary of the Newton hull and e0 = twice the area
    under it. Sequences that are not lex-segment are shifted by (0,1,...,d) first;
    the shift keeps the vertices and adds exactly d^2 to e0.
    """
    a = as_sequence(a)
    if a.is_lex_segment:
        vertices = newton_vertices(a.a)
        return tuple(vertices), _e0_from_vertices(a.a, vertices)
    shifted = a.shifted()
    vertices = newton_vertices(shifted.a)
    return tuple(vertices), _e0_from_vertices(shifted.a, vertices) - a.d * a.d


def deviation(a) -> int:
    """V = e0 - dim R/I^2 + 2 dim R/I."""
    a = as_sequence(a)
    _, e0 = newton_multiplicity(a)
    series = _h1_series(a, 1)
    value = e0 - series[1] + 2 * series[0]
    if value < 0:
        logger.error(f"Negative deviation {value} for {a}")
        raise InternalInconsistencyError(f"Deviation of {a} is negative ({value})")
    return value


def is_gr_cm(a) -> bool:
    return deviation(a) == 0


def zariski_product_cm(factors: Sequence) -> bool:
    """
    Cohen-Macaulay test for L_1 ... L_s with the L_i lex-segment ideals in pairwise
    independent directions: each factor must be Cohen-Macaulay on its own.
    """
    factors = [as_sequence(f) for f in factors]
    for f in factors:
        if not f.is_lex_segment:
            raise InvalidSequenceError(f"Factor {f} is not a lex-segment sequence")
    return all(is_gr_cm(f) for f in factors)


def deviation_breakdown(a) -> dict:
    """
    Compares alpha_j = min{a_s + a_r : s + r = j} with the value beta_j read off the
    Newton vertices; the differences are non-negative and add up to the deviation.
    """
    a = as_sequence(a)
    if not a.is_lex_segment:
        raise InvalidSequenceError(f"{a} is not a lex-segment sequence")
    seq = a.a
    vertices = newton_vertices(seq)
    alpha = _minplus(seq, seq)
    beta = [None] * (2 * a.d + 1)
    for lo, hi in zip(vertices, vertices[1:]):
        for j in range(2 * lo, lo + hi + 1):
            beta[j] = seq[lo] + seq[j - lo]
        for j in range(lo + hi, 2 * hi + 1):
            beta[j] = seq[hi] + seq[j - hi]
    if a.d == 0:
        beta = [0]
    return {
        'vertices': list(vertices),
        'alpha': alpha,
        'beta': beta,
        'deviation': sum(b - al for b, al in zip(beta, alpha)),
    }


def boundary_indices(a) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """(vertex indices, indices of every point on the lower boundary)."""
    a = as_sequence(a)
    seq = a.a if a.is_lex_segment else a.shifted().a
    vertices = newton_vertices(seq)
    on_boundary = set(vertices)
    for lo, hi in zip(vertices, vertices[1:]):
        for j in range(lo + 1, hi):
            if (seq[j] - seq[lo]) * (hi - lo) == (seq[hi] - seq[lo]) * (j - lo):
                on_boundary.add(j)
    return tuple(vertices), tuple(sorted(on_boundary))


def hull_cone_candidates(a) -> List[Tuple[int, ...]]:
    """Every sequence i with vertices <= i <= boundary points, sorted."""
    vertices, boundary = boundary_indices(a)
    optional = [j for j in boundary if j not in vertices]
    found = []
    for r in range(len(optional) + 1):
        for extra in combinations(optional, r):
            found.append(tuple(sorted(set(vertices) | set(extra))))
    return sorted(found)


def is_integrally_closed_pattern(a) -> bool:
    """b weakly increasing: a product of complete-intersection patterns (0, u)."""
    b = as_sequence(a).b
    return all(x <= y for x, y in zip(b, b[1:]))


def has_monomial_reduction(a) -> bool:
    """a in the closed cone of i = (0, d): L^2 = (x^d, y^(a_d)) L."""
    a = as_sequence(a)
    d = a.d
    seq = a.a
    return all(seq[s] + seq[r] >= seq[0] + seq[s + r] if s + r <= d else seq[s] + seq[r] >= seq[d] + seq[s + r - d]
               for s in range(1, d) for r in range(s, d))
