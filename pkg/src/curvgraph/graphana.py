"""Crisp graph analogs of the curvature component algebra.

Variant enumeration with orientation signs, the edge and vertex counting
theorems, the complete K6 structure carried by the 6x6 pair matrix, and DOT
plus structured-text export for every graph this package produces.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .symcore import RiemannComponents, basis_pairs, check_index

#: Rendered labels for vertex ids 0..3; ids stay integers everywhere else.
INDEX_LETTERS = "iklm"


class Orientation(Enum):
    CW = "cw"
    CCW = "ccw"

    def flipped(self) -> "Orientation":
        return Orientation.CW if self is Orientation.CCW else Orientation.CCW

    @property
    def sign(self) -> int:
        # counter-clockwise cycles carry the positive sign
        return 1 if self is Orientation.CCW else -1


@dataclass(frozen=True)
class RiemannGraphSpec:
    """One fixed vertex plus an ordered triple of permuting vertices.

    The first permuting vertex is the bridge: the only one adjacent to the
    fixed vertex. ``orientation`` is the cycle direction in which the
    permuting triple is listed.
    """

    fixed_vertex: int = 0
    permuting: tuple[int, int, int] = (1, 2, 3)
    orientation: Orientation = Orientation.CCW

    def __post_init__(self):
        verts = (self.fixed_vertex, *self.permuting)
        for v in verts:
            check_index(v)
        if len(set(verts)) != 4:
            raise ValueError("spec needs 4 distinct vertices")
        object.__setattr__(self, "permuting", tuple(self.permuting))


STANDARD_SPEC = RiemannGraphSpec()


@dataclass(frozen=True)
class GraphVariant:
    label: str
    quad: tuple[int, int, int, int]
    sign: int
    orientation: Orientation


def enumerate_variants(spec: RiemannGraphSpec) -> tuple[GraphVariant, ...]:
    """The six labelled variants of a graph spec.

    Odd labels keep the spec's listed cyclic order; even labels reverse it,
    which flips the orientation and therefore the sign: G1 = -G2, G3 = -G4,
    G5 = -G6.
    """
    f = spec.fixed_vertex
    p1, p2, p3 = spec.permuting
    layout = (
        ("G1", (f, p1, p2, p3), False),
        ("G2", (f, p1, p3, p2), True),
        ("G3", (f, p2, p3, p1), False),
        ("G4", (f, p2, p1, p3), True),
        ("G5", (f, p3, p1, p2), False),
        ("G6", (f, p3, p2, p1), True),
    )
    variants = []
    for label, quad, reversed_cycle in layout:
        orientation = spec.orientation.flipped() if reversed_cycle else spec.orientation
        variants.append(GraphVariant(label, quad, orientation.sign, orientation))
    return tuple(variants)


def edge_count(alpha: int) -> int:
    """Edges of a one-fixed-vertex graph with alpha permuting vertices."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    return 1 + alpha * (alpha - 1) // 2


class OddParityError(ValueError):
    """(r+1) is odd, so the pair-vertex count is undefined."""


def pair_vertex_count(r: int) -> int:
    """C(r+1, 2) pair vertices for r permuting indices; needs (r+1) even."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if (r + 1) % 2 != 0:
        raise OddParityError(f"(r+1) = {r + 1} is not divisible by 2")
    return math.comb(r + 1, 2)


@dataclass(frozen=True)
class GeneralizedGraphSpec:
    """One fixed vertex plus r >= 2 cyclically permuting vertices.

    The four-vertex case specialises to ``RiemannGraphSpec``; this form only
    feeds the counting results, so vertex ids are unrestricted ints.
    """

    fixed_vertex: int
    permuting: tuple[int, ...]

    def __post_init__(self):
        if len(self.permuting) < 2:
            raise ValueError("need at least 2 permuting vertices")
        verts = (self.fixed_vertex, *self.permuting)
        if len(set(verts)) != len(verts):
            raise ValueError("vertices must be distinct")
        object.__setattr__(self, "permuting", tuple(self.permuting))

    @property
    def alpha(self) -> int:
        return len(self.permuting)

    def edge_count(self) -> int:
        return edge_count(self.alpha)

    def pair_vertex_count(self) -> int:
        return pair_vertex_count(self.alpha)


# --- graph container and export --------------------------------------------

Membership = Union[Fraction, None]


@dataclass(frozen=True)
class Vertex:
    id: Union[int, str]
    label: Optional[str] = None
    membership: Membership = None


@dataclass(frozen=True)
class Edge:
    u: Union[int, str]
    v: Union[int, str]
    weight: Optional[float] = None
    membership: Membership = None
    directed: bool = False

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class Graph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    name: str = "G"


def variant_graph(spec: RiemannGraphSpec, variant: GraphVariant) -> Graph:
    """Drawable form of one variant: the fixed edge plus the oriented triangle."""
    f, b, c, d = variant.quad
    vertices = tuple(Vertex(v, label=INDEX_LETTERS[v]) for v in (f, b, c, d))
    edges = (
        Edge(f, b),
        Edge(b, c, directed=True),
        Edge(c, d, directed=True),
        Edge(d, b, directed=True),
    )
    return Graph(vertices, edges, name=variant.label)


def k6_structure(R: RiemannComponents) -> Graph:
    """Complete graph on the six pair-slot vertices, edges weighted by the
    off-diagonal pair components. 15 edges; the principal diagonal is not part
    of the structure."""
    pairs = basis_pairs(R.basis)
    vertices = tuple(
        Vertex(f"u{s + 1}", label="".join(str(i) for i in pairs[s])) for s in range(6)
    )
    edges = tuple(
        Edge(f"u{s + 1}", f"u{t + 1}", weight=float(R.matrix[s, t]))
        for s in range(6)
        for t in range(s + 1, 6)
    )
    return Graph(vertices, edges, name="K6")


def export_dot(g: Graph) -> str:
    """Graph in DOT syntax; oriented cycle edges get arrowheads, loops render
    as self-edges."""
    lines = [f'graph "{g.name}" {{']
    for v in g.vertices:
        attrs = []
        if v.label is not None:
            attrs.append(f'label="{v.label}"')
        if v.membership is not None:
            attrs.append(f'sigma="{v.membership}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{v.id}"{suffix};')
    for e in g.edges:
        attrs = []
        if e.directed:
            attrs.append("dir=forward")
        if e.weight is not None:
            attrs.append(f'weight="{e.weight!r}"')
        if e.membership is not None:
            attrs.append(f'mu="{e.membership}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{e.u}" -- "{e.v}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _membership_str(m: Membership):
    return None if m is None else str(m)


def _membership_from(s):
    return None if s is None else Fraction(s)


def export_structured(g: Graph) -> str:
    """Graph as a structured document, mirroring the component-file style."""
    doc = {
        "name": g.name,
        "vertices": [
            {
                k: v
                for k, v in (
                    ("id", vx.id),
                    ("label", vx.label),
                    ("membership", _membership_str(vx.membership)),
                )
                if v is not None
            }
            for vx in g.vertices
        ],
        "edges": [
            {
                k: v
                for k, v in (
                    ("u", e.u),
                    ("v", e.v),
                    ("weight", e.weight),
                    ("membership", _membership_str(e.membership)),
                    ("directed", e.directed or None),
                )
                if v is not None
            }
            for e in g.edges
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_structured(text: str) -> Graph:
    doc = json.loads(text)
    vertices = tuple(
        Vertex(v["id"], v.get("label"), _membership_from(v.get("membership")))
        for v in doc.get("vertices", ())
    )
    edges = tuple(
        Edge(
            e["u"],
            e["v"],
            e.get("weight"),
            _membership_from(e.get("membership")),
            bool(e.get("directed", False)),
        )
        for e in doc.get("edges", ())
    )
    return Graph(vertices, edges, name=doc.get("name", "G"))


def export_graph(g: Graph, format: str = "dot") -> str:
    fmt = format.lower()
    if fmt == "dot":
        return export_dot(g)
    if fmt == "structured":
        return export_structured(g)
    raise ValueError(f"unknown export format {format!r}")
