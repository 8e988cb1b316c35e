"""
Symbolic Hilbert data of a cell of the Groebner fan of P.

For a monomial initial ideal I of P and any lex-segment ideal L whose sequence a
lies in the cell of I, dim R/L^k = a . (sum of the standard monomials of I in
degree k). Replacing a by symbols A_0, ..., A_d turns every Hilbert invariant
of L into a linear form in A that depends on I only:

- h: the local h-polynomial, as a list of forms
- e0, e1, e2: the Hilbert coefficients
- Q1: the Hilbert polynomial of k -> dim R/L^(k+1), stored in the Newton basis
  c0 + c1 C(k,1) + c2 C(k,2)
- Q: the Hilbert polynomial of k -> dim L^k / L^(k+1), as q0 + q1 C(k,1)
"""

import logging
from dataclasses import asdict, dataclass
from functools import lru_cache
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from components.tpoly import MonomialIdealT, ideal_components, standard_monomial_layers, unit_vector
from components.xy_ideals import as_sequence, hilbert_coefficients, third_difference
from utility.errors import DimensionMismatchError, InternalInconsistencyError, WindowTooSmallError
from utility.settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearForm:
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, d: int) -> 'LinearForm':
        return cls(tuple([0] * (d + 1)))

    @property
    def d(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other: 'LinearForm') -> None:
        if len(other.coeffs) != len(self.coeffs):
            raise DimensionMismatchError(f"Forms in {len(self.coeffs)} and {len(other.coeffs)} variables")

    def __add__(self, other: 'LinearForm') -> 'LinearForm':
        self._check(other)
        return LinearForm(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: 'LinearForm') -> 'LinearForm':
        self._check(other)
        return LinearForm(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> 'LinearForm':
        return LinearForm(tuple(-x for x in self.coeffs))

    def __mul__(self, k: int) -> 'LinearForm':
        return LinearForm(tuple(k * x for x in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def evaluate(self, a) -> int:
        a = a.a if hasattr(a, 'a') else tuple(a)
        if len(a) != len(self.coeffs):
            raise DimensionMismatchError(f"Cannot evaluate a form in {len(self.coeffs)} variables at {a}")
        return sum(c * v for c, v in zip(self.coeffs, a))

    def to_sympy(self) -> sympy.Expr:
        symbols = sympy.symbols(f"A0:{len(self.coeffs)}")
        return sympy.Add(*[c * s for c, s in zip(self.coeffs, symbols)])

    def __str__(self) -> str:
        return sympy.sstr(self.to_sympy())

    def to_json(self) -> List[int]:
        return list(self.coeffs)


def form(coeffs: Sequence[int]) -> LinearForm:
    return LinearForm(tuple(coeffs))


@dataclass(frozen=True)
class SymbolicHilbert:
    d: int
    h: Tuple[LinearForm, ...]
    e: Tuple[LinearForm, LinearForm, LinearForm]
    q1: Tuple[LinearForm, LinearForm, LinearForm]
    q: Tuple[LinearForm, LinearForm]
    stabilized_at: int
    window: int

    @property
    def e0(self) -> LinearForm:
        return self.e[0]

    @property
    def e1(self) -> LinearForm:
        return self.e[1]

    @property
    def e2(self) -> LinearForm:
        return self.e[2]

    def h_at(self, a) -> Tuple[int, ...]:
        return tuple(f.evaluate(a) for f in self.h)

    def q1_at(self, a, k: int) -> int:
        c0, c1, c2 = (f.evaluate(a) for f in self.q1)
        return c0 + c1 * k + c2 * comb(k, 2)

    def q_at(self, a, k: int) -> int:
        q0, q1 = (f.evaluate(a) for f in self.q)
        return q0 + q1 * k

    def to_json(self) -> dict:
        return {
            'd': self.d,
            'h': [f.to_json() for f in self.h],
            'e': [f.to_json() for f in self.e],
            'q1': [f.to_json() for f in self.q1],
            'q': [f.to_json() for f in self.q],
            'stabilized_at': self.stabilized_at,
            'rendered': {
                'h': [str(f) for f in self.h],
                'e': [str(f) for f in self.e],
            },
        }


def msum_series(I: MonomialIdealT, top_degree: int) -> List[Tuple[int, ...]]:
    """[sum M_1(I), ..., sum M_(top_degree+1)(I)], i.e. the vector coefficients C_k of h/(1-z)^3."""
    return [msum for k, _, msum in standard_monomial_layers(I, top_degree + 1) if k >= 1]


def _newton_fit(values: Sequence[Tuple[int, ...]], k0: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Newton coefficients at 0 of the quadratic through (k0, v0), (k0+1, v1), (k0+2, v2)."""
    v0, v1, v2 = (np.asarray(v, dtype=object) for v in values)
    delta1 = v1 - v0
    delta2 = v2 - 2 * v1 + v0

    def at(k):
        x = k - k0
        return v0 + delta1 * x + delta2 * (x * (x - 1) // 2)

    p0, p1, p2 = at(0), at(1), at(2)
    return p0, p1 - p0, p2 - 2 * p1 + p0


def radical_support_sequence(I: MonomialIdealT) -> Tuple[int, ...]:
    """Indices j such that no power of t_j lies in I."""
    return tuple(j for j in range(I.nvars)
                 if not any(g == unit_vector(I.nvars, j, g[j]) for g in I.gens if g[j]))


def e0_from_radical(I: MonomialIdealT) -> LinearForm:
    i = radical_support_sequence(I)
    coeffs = [0] * I.nvars
    if len(i) < 2:
        return LinearForm(tuple(coeffs))
    coeffs[i[0]] += i[1] - i[0]
    for t in range(1, len(i) - 1):
        coeffs[i[t]] += i[t + 1] - i[t - 1]
    coeffs[i[-1]] += i[-1] - i[-2]
    return LinearForm(tuple(coeffs))


@lru_cache(maxsize=1024)
def symbolic_h(I: MonomialIdealT, window: Optional[int] = None) -> SymbolicHilbert:
    settings = get_settings()
    d = I.d
    extra = settings.q1_extra_degrees
    K = window if window is not None else 2 * d + settings.window_offset
    for _ in range(settings.max_doublings + 1):
        series = msum_series(I, K + extra)
        product = third_difference(series[:K + 1])
        if all(v == 0 for row in product[-4:] for v in row):
            break
        logger.info(f"Symbolic h of {I} not stable at K={K}, doubling")
        K *= 2
    else:
        raise WindowTooSmallError(f"Symbolic Hilbert series of {I} did not stabilise by K={K // 2}")

    rows = [tuple(int(v) for v in row) for row in product]
    while len(rows) > 1 and not any(rows[-1]):
        rows.pop()
    h = tuple(LinearForm(r) for r in rows)
    e = hilbert_coefficients(h, LinearForm.zero(d))

    c0, c1, c2 = _newton_fit(series[K - 2:K + 1], K - 2)
    for k in range(K + 1, K + extra + 1):
        predicted = c0 + c1 * k + c2 * comb(k, 2)
        if tuple(int(v) for v in predicted) != tuple(series[k]):
            raise WindowTooSmallError(f"Hilbert polynomial of {I} fitted at K={K} fails at degree {k}")
    q1 = tuple(LinearForm(tuple(int(v) for v in c)) for c in (c0, c1, c2))
    # Q1(k) = e0 C(k+2,2) - e1 (k+1) + e2 in the same basis
    expected = (e[0] - e[1] + e[2], 2 * e[0] - e[1], e[0])
    if q1 != expected:
        raise InternalInconsistencyError(f"Fitted Hilbert polynomial of {I} disagrees with its h-polynomial")
    q = (q1[1] - q1[2], q1[2])

    radical_e0 = e0_from_radical(I)
    if e[0] != radical_e0:
        logger.error(f"e0 of {I}: {e[0]} from h, {radical_e0} from the radical")
        raise InternalInconsistencyError(f"Multiplicity form of {I} does not match its radical")
    return SymbolicHilbert(d, h, e, q1, q, max(0, len(h) - 3), K)


def symbolic_invariants(I: MonomialIdealT) -> dict:
    data = symbolic_h(I)
    return {'e0': data.e0, 'e1': data.e1, 'e2': data.e2}


def evaluate_h1(I: MonomialIdealT, a, k: int) -> int:
    """a . sum M_(k+1)(I); equals dim R/L^(k+1) when a lies in the closed cell of I."""
    a = as_sequence(a)
    return sum(x * y for x, y in zip(a.a, msum_series(I, k)[k]))


@dataclass(frozen=True)
class InvariantComparison:
    ideal_equal: bool
    e0_equal: bool
    e1_equal: bool
    e2_equal: bool
    h_equal: bool
    Q_equal: bool
    Q1_equal: bool
    radical_equal: bool
    sat_equal: bool
    top_equal: bool
    toppo_consistent: bool

    def to_json(self) -> dict:
        return asdict(self)


def compare_invariants(I: MonomialIdealT, J: MonomialIdealT) -> InvariantComparison:
    if I.nvars != J.nvars:
        raise DimensionMismatchError(f"Ideals live in {I.nvars} and {J.nvars} variables")
    sI, sJ = symbolic_h(I), symbolic_h(J)
    cI, cJ = ideal_components(I), ideal_components(J)
    Q_equal = sI.q == sJ.q
    top_equal = cI.top == cJ.top
    return InvariantComparison(
        ideal_equal=I == J,
        e0_equal=sI.e0 == sJ.e0,
        e1_equal=sI.e1 == sJ.e1,
        e2_equal=sI.e2 == sJ.e2,
        h_equal=sI.h == sJ.h,
        Q_equal=Q_equal,
        Q1_equal=sI.q1 == sJ.q1,
        radical_equal=cI.radical == cJ.radical,
        sat_equal=cI.saturation == cJ.saturation,
        top_equal=top_equal,
        toppo_consistent=Q_equal == top_equal,
    )
