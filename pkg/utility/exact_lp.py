"""
Exact rational linear programming for the polyhedral side of rnc-fan.

All numbers are fractions.Fraction; no tolerances are used anywhere. The module
provides

- SimplexTableau: a dense two-phase simplex tableau driven by Bland's rule
- solve_lp(): maximise c.x over {x free, or x >= 0 : rows} where every row is
  (coefficients, sense, rhs) with sense one of '>=', '<=', '=='
- fm_feasible(): Fourier-Motzkin elimination, used as an independent check
- cone helpers: strict feasibility, implication of a homogeneous inequality,
  facet tests and interior points of cones {a : n_i . a >= 0}

Cones here always contain the lineality space spanned by (1,...,1) and
(0,1,...,d); LPs pin a_0 = a_1 = 0 to remove it.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Row = Tuple[Sequence, str, object]


@dataclass
class LPResult:
    status: str  # 'optimal', 'infeasible' or 'unbounded'
    value: Optional[Fraction] = None
    point: Optional[Tuple[Fraction, ...]] = None


class SimplexTableau:
    """Tableau over columns x (all >= 0); the basis holds one column per row."""

    def __init__(self, A: List[List[Fraction]], b: List[Fraction], basis: List[int]):
        self.A = A
        self.b = b
        self.basis = basis
        self.m = len(A)
        self.n = len(A[0]) if A else 0

    def pivot(self, i: int, j: int) -> None:
        piv = self.A[i][j]
        self.A[i] = [v / piv for v in self.A[i]]
        self.b[i] /= piv
        for k in range(self.m):
            if k != i and self.A[k][j] != 0:
                f = self.A[k][j]
                row_i = self.A[i]
                self.A[k] = [v - f * w for v, w in zip(self.A[k], row_i)]
                self.b[k] -= f * self.b[i]
        self.basis[i] = j

    def reduced_costs(self, c: List[Fraction]) -> List[Fraction]:
        costs = list(c)
        for i, bv in enumerate(self.basis):
            cb = c[bv]
            if cb != 0:
                row = self.A[i]
                costs = [r - cb * v for r, v in zip(costs, row)]
        return costs

    def bland_primal_step(self, c: List[Fraction], allowed: Sequence[bool]) -> str:
        costs = self.reduced_costs(c)
        entering = [j for j in range(self.n) if allowed[j] and costs[j] > 0]
        if not entering:
            return 'optimal'
        j = entering[0]
        candidates = [(self.b[i] / self.A[i][j], self.basis[i], i)
                      for i in range(self.m) if self.A[i][j] > 0]
        if not candidates:
            return 'unbounded'
        _, _, i = min(candidates)
        self.pivot(i, j)
        return 'go_on'

    def bland_primal(self, c: List[Fraction], allowed: Sequence[bool]) -> str:
        while True:
            status = self.bland_primal_step(c, allowed)
            if status in ('optimal', 'unbounded'):
                return status

    def objective(self, c: List[Fraction]) -> Fraction:
        return sum((c[bv] * self.b[i] for i, bv in enumerate(self.basis)), Fraction(0))

    def column_values(self) -> List[Fraction]:
        values = [Fraction(0)] * self.n
        for i, bv in enumerate(self.basis):
            values[bv] = self.b[i]
        return values


def solve_lp(objective: Sequence, rows: Sequence[Row], nvars: int, nonnegative: bool = False) -> LPResult:
    """Maximise objective . x subject to rows; variables are free unless nonnegative."""
    # columns: x+ (nvars), x- (nvars, only for free variables), then slack/surplus, then artificials
    std_rows = []
    for coeffs, sense, rhs in rows:
        coeffs = [Fraction(v) for v in coeffs]
        rhs = Fraction(rhs)
        if len(coeffs) != nvars:
            raise ValueError(f"Row has {len(coeffs)} coefficients, expected {nvars}")
        if rhs < 0:
            coeffs = [-v for v in coeffs]
            rhs = -rhs
            sense = {'>=': '<=', '<=': '>=', '==': '=='}[sense]
        std_rows.append((coeffs, sense, rhs))

    m = len(std_rows)
    n_slack = sum(1 for _, sense, _ in std_rows if sense != '==')
    n_art = sum(1 for _, sense, _ in std_rows if sense != '<=')
    n_neg = 0 if nonnegative else nvars
    width = nvars + n_neg + n_slack + n_art
    A: List[List[Fraction]] = []
    b: List[Fraction] = []
    basis: List[int] = []
    slack_col = nvars + n_neg
    art_col = nvars + n_neg + n_slack
    artificial = [False] * width
    for coeffs, sense, rhs in std_rows:
        row = [Fraction(0)] * width
        row[:nvars] = coeffs
        if n_neg:
            row[nvars:2 * nvars] = [-v for v in coeffs]
        if sense == '<=':
            row[slack_col] = Fraction(1)
            basis.append(slack_col)
            slack_col += 1
        else:
            if sense == '>=':
                row[slack_col] = Fraction(-1)
                slack_col += 1
            row[art_col] = Fraction(1)
            artificial[art_col] = True
            basis.append(art_col)
            art_col += 1
        A.append(row)
        b.append(rhs)

    tableau = SimplexTableau(A, b, basis)
    everything = [True] * width
    if n_art:
        phase_one = [Fraction(-1) if artificial[j] else Fraction(0) for j in range(width)]
        tableau.bland_primal(phase_one, everything)
        if tableau.objective(phase_one) < 0:
            return LPResult('infeasible')
        _drive_out_artificials(tableau, artificial)

    allowed = [not artificial[j] for j in range(width)]
    c = [Fraction(0)] * width
    for j, v in enumerate(objective):
        c[j] = Fraction(v)
        if n_neg:
            c[nvars + j] = -Fraction(v)
    status = tableau.bland_primal(c, allowed)
    if status == 'unbounded':
        return LPResult('unbounded')
    values = tableau.column_values()
    point = tuple(values[j] - (values[nvars + j] if n_neg else 0) for j in range(nvars))
    return LPResult('optimal', tableau.objective(c), point)


def _drive_out_artificials(tableau: SimplexTableau, artificial: List[bool]) -> None:
    i = 0
    while i < tableau.m:
        if artificial[tableau.basis[i]]:
            for j in range(tableau.n):
                if not artificial[j] and tableau.A[i][j] != 0:
                    tableau.pivot(i, j)
                    break
            else:
                # redundant row
                del tableau.A[i]
                del tableau.b[i]
                del tableau.basis[i]
                tableau.m -= 1
                continue
        i += 1


def is_feasible(rows: Sequence[Row], nvars: int, nonnegative: bool = False) -> bool:
    return solve_lp([0] * nvars, rows, nvars, nonnegative).status != 'infeasible'


def fm_feasible(rows: Sequence[Tuple[Sequence, object, bool]], nvars: int) -> bool:
    """
    Fourier-Motzkin feasibility of {x : coeffs . x >= rhs (or > rhs if strict)}.
    """
    system = [([Fraction(v) for v in coeffs], Fraction(rhs), bool(strict))
              for coeffs, rhs, strict in rows]
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for coeffs, rhs, strict in system:
            if coeffs[var] > 0:
                pos.append((coeffs, rhs, strict))
            elif coeffs[var] < 0:
                neg.append((coeffs, rhs, strict))
            else:
                rest.append((coeffs, rhs, strict))
        for pc, pr, ps in pos:
            for nc, nr, ns in neg:
                lp, ln = -nc[var], pc[var]
                coeffs = [lp * x + ln * y for x, y in zip(pc, nc)]
                rest.append((coeffs, lp * pr + ln * nr, ps or ns))
        system = _dedupe_rows(rest)
        logger.debug(f"Fourier-Motzkin: eliminated x{var}, {len(system)} rows remain")
    for _, rhs, strict in system:
        if (strict and not 0 > rhs) or (not strict and not 0 >= rhs):
            return False
    return True


def _dedupe_rows(rows):
    seen = {}
    for coeffs, rhs, strict in rows:
        scale = max((abs(v) for v in coeffs), default=Fraction(0))
        if scale == 0:
            key = (tuple(coeffs), rhs, strict)
        else:
            key = (tuple(v / scale for v in coeffs), rhs / scale, strict)
        seen.setdefault(key, (coeffs, rhs, strict))
    return list(seen.values())


# Cone helpers. A cone is a list of normals n with n . a >= 0, over d+1 coordinates.

def _pinned(nvars: int) -> List[Row]:
    rows = []
    for j in range(min(2, nvars)):
        e = [0] * nvars
        e[j] = 1
        rows.append((e, '==', 0))
    return rows


def cone_strictly_feasible(normals: Sequence[Sequence[int]], nvars: int) -> bool:
    rows = [(list(n), '>=', 1) for n in normals] + _pinned(nvars)
    return is_feasible(rows, nvars)


def cone_implies(normals: Sequence[Sequence[int]], target: Sequence[int], nvars: int) -> bool:
    """
    True when n_i . a >= 0 for all i forces target . a >= 0.

    Decided on the Farkas side: target is a nonnegative combination of the
    normals on the unpinned coordinates.
    """
    free = range(min(2, nvars), nvars)
    rows = [([n[k] for n in normals], '==', target[k]) for k in free]
    if not rows:
        return True
    return is_feasible(rows, len(normals), nonnegative=True)


def cone_implies_fm(normals: Sequence[Sequence[int]], target: Sequence[int], nvars: int) -> bool:
    rows = [(list(n), 0, False) for n in normals]
    rows.append(([-v for v in target], 0, True))
    rows.extend(_fm_pins(nvars))
    return not fm_feasible(rows, nvars)


def _fm_pins(nvars: int):
    pins = []
    for j in range(min(2, nvars)):
        e = [0] * nvars
        e[j] = 1
        pins.append((e, 0, False))
        pins.append(([-v for v in e], 0, False))
    return pins


def facet_indices(normals: Sequence[Sequence[int]], nvars: int) -> List[int]:
    """Indices of inequalities that cannot be dropped; normals must be pairwise non-parallel."""
    facets = []
    for j, n in enumerate(normals):
        others = [m for i, m in enumerate(normals) if i != j]
        if not cone_implies(others, n, nvars):
            facets.append(j)
    return facets


def interior_point(normals: Sequence[Sequence[int]], nvars: int,
                   equalities: Sequence[Sequence[int]] = ()) -> Tuple[Optional[Tuple[Fraction, ...]], Fraction]:
    """
    Maximise the minimum slack t <= 1 of n . a >= t over the cone (optionally
    restricted to hyperplanes e . a = 0). Returns (point, t); t <= 0 means no
    strictly interior point exists.
    """
    width = nvars + 1
    rows: List[Row] = []
    for n in normals:
        rows.append((list(n) + [-1], '>=', 0))
    for e in equalities:
        rows.append((list(e) + [0], '==', 0))
    rows.append(([0] * nvars + [1], '<=', 1))
    for coeffs, sense, rhs in _pinned(nvars):
        rows.append((list(coeffs) + [0], sense, rhs))
    result = solve_lp([0] * nvars + [1], rows, width)
    if result.status != 'optimal':
        return None, Fraction(0)
    return result.point[:nvars], result.point[nvars]
