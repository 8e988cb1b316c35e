"""
Monomials, pure binomials and monomial ideals in S = K[t_0, ..., t_d].

Exponent vectors are plain tuples of non-negative integers. Two gradings are
used throughout: the total degree |e| and the second degree (0,1,...,d).e. The
ideal P of the rational normal curve is homogeneous for both.

This module also holds the structure theory of the ideals I(G, phi): a tree G on
the variables whose squares are not in the ideal, and a map phi sending every
other variable to an edge of G.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from utility.errors import (DimensionMismatchError, FiberViolationError,
                            InternalInconsistencyError, NonTreeError)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def unit_vector(nvars: int, i: int, power: int = 1) -> Exponent:
    return tuple(power if j == i else 0 for j in range(nvars))


def degree(e: Exponent) -> int:
    return sum(e)


def second_degree(e: Exponent) -> int:
    return sum(i * v for i, v in enumerate(e))


def divides(m: Exponent, n: Exponent) -> bool:
    return all(x <= y for x, y in zip(m, n))


def exp_lcm(m: Exponent, n: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(m, n))


def exp_add(m: Exponent, n: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(m, n))


def exp_sub(m: Exponent, n: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(m, n))


def support(e: Exponent) -> Tuple[int, ...]:
    return tuple(i for i, v in enumerate(e) if v)


def monomial_str(e: Exponent) -> str:
    parts = []
    for i, v in enumerate(e):
        if v == 1:
            parts.append(f"t{i}")
        elif v > 1:
            parts.append(f"t{i}^{v}")
    return "*".join(parts) if parts else "1"


def canonical_key(e: Exponent):
    return (degree(e), tuple(reversed(e)))


@dataclass(frozen=True)
class PureBinomial:
    lead: Exponent
    tail: Exponent

    def __post_init__(self):
        lead, tail = tuple(self.lead), tuple(self.tail)
        object.__setattr__(self, 'lead', lead)
        object.__setattr__(self, 'tail', tail)
        if len(lead) != len(tail):
            raise DimensionMismatchError(f"Binomial sides live in different rings: {lead} vs {tail}")
        if lead == tail:
            raise InternalInconsistencyError(f"Degenerate binomial {monomial_str(lead)} - {monomial_str(tail)}")
        if degree(lead) != degree(tail) or second_degree(lead) != second_degree(tail):
            raise InternalInconsistencyError(
                f"Binomial {monomial_str(lead)} - {monomial_str(tail)} is not bihomogeneous")

    @property
    def nvars(self) -> int:
        return len(self.lead)

    @property
    def normal(self) -> Tuple[int, ...]:
        """lead - tail; a weight is compatible with the marking iff normal . w >= 0."""
        return exp_sub(self.lead, self.tail)

    def __str__(self) -> str:
        return f"{monomial_str(self.lead)} - {monomial_str(self.tail)}"

    def to_json(self) -> dict:
        return {'lead': list(self.lead), 'tail': list(self.tail)}


def rnc_generators(d: int) -> List[PureBinomial]:
    """The 2-minors t_(v-1) t_r - t_v t_(r-1), 1 <= v < r <= d, of the Hankel matrix of P."""
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    n = d + 1
    gens = []
    for v in range(1, d + 1):
        for r in range(v + 1, d + 1):
            lead = exp_add(unit_vector(n, v - 1), unit_vector(n, r))
            tail = exp_add(unit_vector(n, v), unit_vector(n, r - 1))
            gens.append(PureBinomial(lead, tail))
    return gens


def minimalize(gens: Sequence[Exponent]) -> Tuple[Exponent, ...]:
    unique = sorted(set(tuple(g) for g in gens), key=canonical_key)
    kept: List[Exponent] = []
    for g in unique:
        if not any(divides(k, g) for k in kept):
            kept.append(g)
    return tuple(kept)


@dataclass(frozen=True)
class MonomialIdealT:
    """Monomial ideal given by its minimal generators, in canonical order."""
    nvars: int
    gens: Tuple[Exponent, ...] = ()

    def __post_init__(self):
        gens = tuple(tuple(int(v) for v in g) for g in self.gens)
        for g in gens:
            if len(g) != self.nvars:
                raise DimensionMismatchError(f"Generator {g} does not have {self.nvars} entries")
            if any(v < 0 for v in g):
                raise ValueError(f"Negative exponent in {g}")
        object.__setattr__(self, 'gens', minimalize(gens))

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence[int]], nvars: Optional[int] = None) -> 'MonomialIdealT':
        gens = [tuple(g) for g in gens]
        if nvars is None:
            if not gens:
                raise ValueError("Cannot infer the number of variables of an empty generator list")
            nvars = len(gens[0])
        return cls(nvars, tuple(gens))

    @property
    def d(self) -> int:
        return self.nvars - 1

    def contains(self, m: Exponent) -> bool:
        return any(divides(g, m) for g in self.gens)

    def contains_ideal(self, other: 'MonomialIdealT') -> bool:
        return all(self.contains(g) for g in other.gens)

    @property
    def is_quadratic(self) -> bool:
        return all(degree(g) == 2 for g in self.gens)

    def __str__(self) -> str:
        return "(" + ", ".join(monomial_str(g) for g in self.gens) + ")"

    def to_json(self) -> List[List[int]]:
        return [list(g) for g in self.gens]


# standard monomials

def standard_monomial_layers(I: MonomialIdealT, top_degree: int,
                             check_fiber: bool = True) -> Iterator[Tuple[int, List[Exponent], Exponent]]:
    """
    Yields (k, M_k(I), sum of M_k(I)) for k = 0..top_degree. Each layer is built from
    the previous one since standard monomials are closed under division.
    """
    n = I.nvars
    layer = [tuple([0] * n)]
    for k in range(top_degree + 1):
        if k:
            grown = {exp_add(m, unit_vector(n, i)) for m in layer for i in range(n)}
            layer = sorted((m for m in grown if not I.contains(m)), key=lambda m: (second_degree(m), m))
        if check_fiber:
            _check_fiber(I, k, layer)
        msum = tuple(sum(m[i] for m in layer) for i in range(n))
        yield k, layer, msum


def _check_fiber(I: MonomialIdealT, k: int, layer: List[Exponent]) -> None:
    d = I.d
    seen: Dict[int, int] = {}
    for m in layer:
        seen[second_degree(m)] = seen.get(second_degree(m), 0) + 1
    bad = [v for v in range(k * d + 1) if seen.get(v, 0) != 1]
    if bad or len(layer) != k * d + 1:
        v = bad[0] if bad else None
        count = seen.get(v, 0) if v is not None else len(layer)
        raise FiberViolationError(
            f"{I} has {count} standard monomials of degree {k} in second degree {v}; not an initial ideal of P")


def standard_monomials(I: MonomialIdealT, k: int, check_fiber: bool = True) -> Tuple[List[Exponent], Exponent]:
    if k < 0:
        raise ValueError(f"Degree must be non-negative, got {k}")
    for degree_k, layer, msum in standard_monomial_layers(I, k, check_fiber):
        if degree_k == k:
            return layer, msum


# decompositions

def radical(I: MonomialIdealT) -> MonomialIdealT:
    return MonomialIdealT(I.nvars, tuple(tuple(1 if v else 0 for v in g) for g in I.gens))


def colon_by_variable_power(I: MonomialIdealT, j: int) -> MonomialIdealT:
    """I : t_j^infinity."""
    return MonomialIdealT(I.nvars, tuple(g[:j] + (0,) + g[j + 1:] for g in I.gens))


def intersect(I: MonomialIdealT, J: MonomialIdealT) -> MonomialIdealT:
    if I.nvars != J.nvars:
        raise DimensionMismatchError(f"Cannot intersect ideals in {I.nvars} and {J.nvars} variables")
    return MonomialIdealT(I.nvars, tuple(exp_lcm(g, h) for g in I.gens for h in J.gens))


def intersect_all(ideals: Sequence[MonomialIdealT]) -> MonomialIdealT:
    result = ideals[0]
    for J in ideals[1:]:
        result = intersect(result, J)
    return result


def saturation(I: MonomialIdealT) -> MonomialIdealT:
    return intersect_all([colon_by_variable_power(I, j) for j in range(I.nvars)])


@lru_cache(maxsize=4096)
def _split(nvars: int, gens: Tuple[Exponent, ...]) -> Tuple[Tuple[Exponent, ...], ...]:
    for g in gens:
        supp = support(g)
        if len(supp) > 1:
            i = supp[0]
            power = unit_vector(nvars, i, g[i])
            rest = g[:i] + (0,) + g[i + 1:]
            left = MonomialIdealT(nvars, gens + (power,))
            right = MonomialIdealT(nvars, gens + (rest,))
            return _split(nvars, left.gens) + _split(nvars, right.gens)
    return (gens,)


def irreducible_decomposition(I: MonomialIdealT) -> List[MonomialIdealT]:
    """Irredundant irreducible components (ideals generated by pure powers)."""
    if not I.gens:
        return [I]
    components = {MonomialIdealT(I.nvars, gens) for gens in _split(I.nvars, I.gens)}
    minimal = [C for C in components
               if not any(D != C and C.contains_ideal(D) for D in components)]
    return sorted(minimal, key=lambda C: (len(C.gens), [canonical_key(g) for g in C.gens]))


def component_dimension(C: MonomialIdealT) -> int:
    """Dimension of an irreducible component: variables without a pure power."""
    return C.nvars - len({support(g)[0] for g in C.gens})


def krull_dimension(I: MonomialIdealT) -> int:
    """Largest coordinate subset that contains the support of no generator."""
    supports = [set(support(g)) for g in I.gens]
    for size in range(I.nvars, -1, -1):
        for subset in combinations(range(I.nvars), size):
            chosen = set(subset)
            if not any(s <= chosen for s in supports):
                return size
    return -1


def top_component(I: MonomialIdealT, components: Optional[List[MonomialIdealT]] = None) -> MonomialIdealT:
    components = components if components is not None else irreducible_decomposition(I)
    top = max(component_dimension(C) for C in components)
    return intersect_all([C for C in components if component_dimension(C) == top])


@dataclass(frozen=True)
class IdealComponents:
    radical: MonomialIdealT
    saturation: MonomialIdealT
    top: MonomialIdealT
    dim: int
    irreducible: Tuple[MonomialIdealT, ...]

    def to_json(self) -> dict:
        return {
            'radical': self.radical.to_json(),
            'saturation': self.saturation.to_json(),
            'top': self.top.to_json(),
            'dim': self.dim,
            'irreducible': [C.to_json() for C in self.irreducible],
        }


def ideal_components(I: MonomialIdealT) -> IdealComponents:
    irreducible = irreducible_decomposition(I)
    return IdealComponents(
        radical=radical(I),
        saturation=saturation(I),
        top=top_component(I, irreducible),
        dim=krull_dimension(I),
        irreducible=tuple(irreducible),
    )


# I(G, phi)

Edge = Tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class StructureData:
    nvars: int
    V: Tuple[int, ...]
    Q: Tuple[int, ...]
    edges: Tuple[Edge, ...]
    phi: Tuple[Tuple[int, Edge], ...]

    def __post_init__(self):
        object.__setattr__(self, 'V', tuple(sorted(self.V)))
        object.__setattr__(self, 'Q', tuple(sorted(self.Q)))
        object.__setattr__(self, 'edges', tuple(sorted(_edge(*e) for e in self.edges)))
        object.__setattr__(self, 'phi', tuple(sorted((q, _edge(*e)) for q, e in self.phi)))

    @property
    def phi_map(self) -> Dict[int, Edge]:
        return dict(self.phi)

    def graph(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.V)
        G.add_edges_from(self.edges)
        return G

    def to_json(self) -> dict:
        return {
            'V': list(self.V),
            'Q': list(self.Q),
            'edges': [list(e) for e in self.edges],
            'phi': {str(q): list(e) for q, e in self.phi},
        }


@dataclass(frozen=True)
class RecognitionFailure:
    reason: str  # not-quadratic, graph-not-tree, phi-undefined, reconstruction-mismatch
    detail: str = ""

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {'failure': self.reason, 'detail': self.detail}


def graph_ideal(nvars: int, G: nx.Graph) -> List[Exponent]:
    """Non-edges of G plus the squarefree cubics of its triangles."""
    gens = []
    for u, v in combinations(sorted(G.nodes), 2):
        if not G.has_edge(u, v):
            gens.append(exp_add(unit_vector(nvars, u), unit_vector(nvars, v)))
    for clique in nx.enumerate_all_cliques(G):
        if len(clique) == 3:
            gens.append(tuple(1 if i in clique else 0 for i in range(nvars)))
        elif len(clique) > 3:
            break
    return gens


def igphi_build(s: StructureData) -> MonomialIdealT:
    n = s.nvars
    G = s.graph()
    if not s.V or not nx.is_tree(G):
        raise NonTreeError(f"Edges {list(s.edges)} do not form a tree on {list(s.V)}")
    phi = s.phi_map
    missing = [q for q in s.Q if q not in phi]
    if missing:
        raise ValueError(f"phi is not defined on {missing}")
    for q, e in phi.items():
        if not G.has_edge(*e):
            raise ValueError(f"phi({q}) = {e} is not an edge of the tree")
    gens = graph_ideal(n, G)
    for q, r in combinations(s.Q, 2):
        gens.append(exp_add(unit_vector(n, q), unit_vector(n, r)))
    for q in s.Q:
        gens.append(unit_vector(n, q, 2))
        for y in s.V:
            if y not in phi[q]:
                gens.append(exp_add(unit_vector(n, q), unit_vector(n, y)))
    return MonomialIdealT(n, tuple(gens))


def igphi_recognize(I: MonomialIdealT):
    """StructureData with I = I(G, phi), or a RecognitionFailure explaining why not."""
    n = I.nvars
    if not I.is_quadratic:
        return RecognitionFailure('not-quadratic', f"{I} is not generated in degree 2")

    def product(u, v):
        return exp_add(unit_vector(n, u), unit_vector(n, v))

    Q = [j for j in range(n) if I.contains(unit_vector(n, j, 2))]
    V = [j for j in range(n) if j not in Q]
    G = nx.Graph()
    G.add_nodes_from(V)
    G.add_edges_from((u, v) for u, v in combinations(V, 2) if not I.contains(product(u, v)))
    if not V or not nx.is_tree(G):
        return RecognitionFailure('graph-not-tree', f"graph on {V} has edges {sorted(G.edges)}")
    phi = []
    for q in Q:
        free = [y for y in V if not I.contains(product(q, y))]
        if len(free) != 2 or not G.has_edge(*free):
            return RecognitionFailure('phi-undefined', f"t{q} has non-neighbours {free} in V")
        phi.append((q, tuple(free)))
    s = StructureData(n, tuple(V), tuple(Q), tuple(G.edges), tuple(phi))
    if igphi_build(s) != I:
        return RecognitionFailure('reconstruction-mismatch', f"I(G, phi) differs from {I}")
    logger.debug(f"Recognised {I} as I(G, phi) with edges {s.edges}")
    return s


def line_tree_structure(i: Sequence[int]) -> StructureData:
    """The path t_(i_0) - ... - t_(i_k) with phi(t_s) = {t_(i_j), t_(i_(j+1))} for i_j < s < i_(j+1)."""
    i = tuple(i)
    d = i[-1]
    edges = tuple(zip(i, i[1:]))
    phi = tuple((s, (lo, hi)) for lo, hi in edges for s in range(lo + 1, hi))
    Q = tuple(s for s in range(d + 1) if s not in i)
    return StructureData(d + 1, i, Q, edges, phi)
