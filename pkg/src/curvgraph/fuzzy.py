"""Fuzzy-graph analog: memberships, completeness, strong arcs, domination,
the antisymmetric triple-value function, and the membership-reducing union.

Memberships are exact rationals so the constructed values 1, 1/3 and 1/9
compare exactly, with no tolerance anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .graphana import Edge, Graph, RiemannGraphSpec, Vertex, INDEX_LETTERS

ONE = Fraction(1)
THIRD = Fraction(1, 3)


def _pair(u, v) -> frozenset:
    if u == v:
        raise ValueError("edge memberships are defined on distinct vertices")
    return frozenset((u, v))


@dataclass(frozen=True)
class FuzzyGraph:
    """Vertex memberships ``sigma``, edge memberships ``mu`` on unordered
    pairs, and loop memberships kept separately so the pair bound stays a
    statement about proper edges.

    The bound mu(u,v) <= min(sigma(u), sigma(v)) is checked by
    ``respects_bound`` rather than enforced on construction: the
    membership-reducing union deliberately lowers one vertex membership
    while leaving edges untouched.
    """

    sigma: dict
    mu: dict = field(default_factory=dict)
    loops: dict = field(default_factory=dict)

    def __post_init__(self):
        sigma = {v: Fraction(m) for v, m in self.sigma.items()}
        mu = {}
        for key, m in self.mu.items():
            u, v = tuple(key)
            if u not in sigma or v not in sigma:
                raise ValueError(f"edge {set(key)} references unknown vertices")
            mu[_pair(u, v)] = Fraction(m)
        loops = {v: Fraction(m) for v, m in self.loops.items()}
        for values, what in ((sigma.values(), "vertex"), (mu.values(), "edge"), (loops.values(), "loop")):
            for m in values:
                if not 0 <= m <= 1:
                    raise ValueError(f"{what} membership {m} outside [0, 1]")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "loops", loops)

    @property
    def vertices(self):
        return tuple(self.sigma)

    def mu_of(self, u, v) -> Fraction:
        return self.mu.get(_pair(u, v), Fraction(0))

    def respects_bound(self) -> bool:
        return all(
            m <= min(self.sigma[u], self.sigma[v])
            for key, m in self.mu.items()
            for u, v in (tuple(key),)
        )


def fuzzy_riemann_graph(spec: RiemannGraphSpec) -> FuzzyGraph:
    """Fuzzy analog of a graph spec.

    The fixed vertex is certain (membership 1); each permuting vertex is one
    of three equally likely occupants (membership 1/3). Every edge carries
    the minimum of its endpoint memberships: the bridge edge plus the
    complete triangle.
    """
    f = spec.fixed_vertex
    bridge = spec.permuting[0]
    sigma = {f: ONE}
    sigma.update({p: THIRD for p in spec.permuting})
    mu = {_pair(f, bridge): min(sigma[f], sigma[bridge])}
    p1, p2, p3 = spec.permuting
    for u, v in ((p1, p2), (p2, p3), (p3, p1)):
        mu[_pair(u, v)] = min(sigma[u], sigma[v])
    return FuzzyGraph(sigma, mu)


def is_complete(g: FuzzyGraph, on: Optional[Iterable] = None) -> bool:
    """True when every pair in the subset attains mu = min of its sigmas."""
    verts = tuple(g.sigma) if on is None else tuple(on)
    for v in verts:
        if v not in g.sigma:
            raise ValueError(f"vertex {v!r} not in graph")
    return all(
        g.mu_of(u, v) == min(g.sigma[u], g.sigma[v])
        for i, u in enumerate(verts)
        for v in verts[i + 1:]
    )


def strong_arcs(g: FuzzyGraph) -> set:
    """All arcs attaining the endpoint-membership minimum, with mu > 0."""
    out = set()
    for key, m in g.mu.items():
        u, v = tuple(key)
        if m > 0 and m == min(g.sigma[u], g.sigma[v]):
            out.add(key)
    return out


def domination_set(g: FuzzyGraph, fixed) -> set:
    """Vertices adjacent to the fixed vertex and to every other non-fixed
    vertex. For a spec-built graph this is the single bridge vertex."""
    if fixed not in g.sigma:
        raise ValueError(f"vertex {fixed!r} not in graph")
    others = [v for v in g.sigma if v != fixed]
    out = set()
    for v in others:
        if g.mu_of(v, fixed) <= 0:
            continue
        if all(g.mu_of(v, w) > 0 for w in others if w != v):
            out.add(v)
    return out


def cycle_sign(m: int) -> int:
    """(-1)**m for m traversed cycles."""
    if m < 0:
        raise ValueError("cycle count must be >= 0")
    return -1 if m % 2 else 1


_EVEN_ROTATIONS = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


def levi_civita(i, x, y, reference=(1, 2, 3)) -> int:
    """Antisymmetric triple value: +1 on the reference cyclic rotations, -1 on
    the reversed ones, 0 whenever two arguments coincide.

    The coincidence rule fires before membership in the reference cycle is
    checked, so loop-shaped arguments evaluate to 0 for any vertex ids.
    """
    if i == x or x == y or y == i:
        return 0
    ref = tuple(reference)
    if len(ref) != 3 or len(set(ref)) != 3:
        raise ValueError("reference cycle must list 3 distinct vertices")
    try:
        positions = (ref.index(i), ref.index(x), ref.index(y))
    except ValueError:
        raise ValueError(f"({i!r}, {x!r}, {y!r}) not drawn from reference {ref!r}") from None
    return 1 if positions in _EVEN_ROTATIONS else -1


@dataclass(frozen=True)
class EpsilonLoop:
    """A loop-shaped triple value epsilon(fixed, vertex, vertex); its value is
    identically 0, but its placement marks where the union attaches a loop."""

    fixed: int
    vertex: int

    @property
    def value(self) -> int:
        return 0


def epsilon_loop(fixed, vertex) -> EpsilonLoop:
    return EpsilonLoop(fixed, vertex)


class BridgeMismatch(ValueError):
    """The loop vertex of the union is not the graph's bridge vertex."""


def _find_bridge(g: FuzzyGraph):
    fixed = [v for v, s in g.sigma.items() if s == 1]
    if len(fixed) != 1:
        raise BridgeMismatch("graph has no unique fixed vertex (sigma == 1)")
    neighbours = [v for v in g.sigma if v != fixed[0] and g.mu_of(v, fixed[0]) > 0]
    if len(neighbours) != 1:
        raise BridgeMismatch("fixed vertex is not connected to exactly one vertex")
    return fixed[0], neighbours[0]


def fuzzy_union(eps: EpsilonLoop, g: FuzzyGraph, alpha: int) -> FuzzyGraph:
    """Union with a loop-shaped triple at the bridge vertex.

    The bridge membership is divided by the number of permuting vertices and
    the loop is recorded with that reduced membership; every other membership
    is left untouched.
    """
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    fixed, bridge = _find_bridge(g)
    if eps.vertex != bridge:
        raise BridgeMismatch(
            f"loop vertex {eps.vertex!r} is not the bridge vertex {bridge!r}"
        )
    if eps.fixed != fixed:
        raise BridgeMismatch(
            f"loop is anchored at {eps.fixed!r}, but the fixed vertex is {fixed!r}"
        )
    sigma = dict(g.sigma)
    sigma[bridge] = sigma[bridge] / alpha
    loops = dict(g.loops)
    loops[bridge] = sigma[bridge]
    return FuzzyGraph(sigma, dict(g.mu), loops)


#: The three loop-shaped triples whose values make up the fuzzy B-trace.
TRACE_B_TRIPLES = ((0, 1, 1), (0, 2, 2), (0, 3, 3))


def fuzzy_trace_b_terms() -> tuple[Fraction, ...]:
    return tuple(Fraction(levi_civita(*t)) for t in TRACE_B_TRIPLES)


def fuzzy_trace_b() -> Fraction:
    """Sum of the three loop-shaped terms; each vanishes by the coincidence
    rule, so the trace is exactly zero."""
    return sum(fuzzy_trace_b_terms(), Fraction(0))


def fuzzy_to_graph(g: FuzzyGraph, name: str = "fuzzy") -> Graph:
    """Exportable view with memberships as vertex/edge attributes."""

    def label(v):
        return INDEX_LETTERS[v] if isinstance(v, int) and 0 <= v < 4 else str(v)

    vertices = tuple(Vertex(v, label=label(v), membership=m) for v, m in g.sigma.items())
    edges = [Edge(u, v, membership=m) for key, m in g.mu.items() for u, v in (sorted(key, key=str),)]
    edges += [Edge(v, v, membership=m) for v, m in g.loops.items()]
    return Graph(vertices, tuple(edges), name=name)
