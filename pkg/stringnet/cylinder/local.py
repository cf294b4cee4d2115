"""Evaluation inside a rectangle of the chart and the null relations it generates.

A rectangle R = [s1, s2] x [t1, t2] is admissible for a net when no strand
meets its vertical sides and no coupon or seam node lies on its horizontal
sides. The part of the net inside R is then a progressive graph in the strip
[t1, t2] whose boundary points are where strands cross the horizontal sides.
A linear combination of nets that agree outside R and whose inside values sum
to zero is a null relation.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from pydantic import BaseModel, Field

from stringnet.core import exact
from stringnet.core.backend import CategoryBackend
from stringnet.core.errors import ValidationError
from stringnet.core.morphism import Morphism
from stringnet.core.objects import ObjectWord
from stringnet.cylinder.net import CylinderStringNet
from stringnet.progressive.evaluate import Coloring, evaluate
from stringnet.progressive.geometry import PlanarEmbedding, Point, clip, fraction_str, segments, segments_intersect
from stringnet.progressive.graph import AbstractGraph, Edge, Node, NodeKind


@dataclass(frozen=True)
class EvaluationRectangle:
    s1: Fraction
    s2: Fraction
    t1: Fraction
    t2: Fraction

    def __post_init__(self):
        if not (0 < self.s1 < self.s2 < 1 and 0 <= self.t1 < self.t2 <= 1):
            raise ValidationError(f"{self} is not a rectangle inside the chart away from the seam.")

    def __str__(self) -> str:
        return f"[{fraction_str(self.s1)}, {fraction_str(self.s2)}] x [{fraction_str(self.t1)}, {fraction_str(self.t2)}]"

    def contains(self, p: Point) -> bool:
        return self.s1 < p[0] < self.s2 and self.t1 <= p[1] <= self.t2

    def vertical_sides(self) -> List[Tuple[Point, Point]]:
        return [((s, self.t1), (s, self.t2)) for s in (self.s1, self.s2)]


@dataclass(frozen=True)
class LocalPiece:
    """The inside of a rectangle as a colored progressive graph, with its value."""

    graph: AbstractGraph
    embedding: PlanarEmbedding
    coloring: Coloring
    # (x, color) where strands cross the bottom and top sides
    bottom: Tuple[Tuple[Fraction, ObjectWord], ...]
    top: Tuple[Tuple[Fraction, ObjectWord], ...]
    value: Morphism
    # canonical keys of everything outside the rectangle
    outside: Tuple[str, ...]


class NullRelationReport(BaseModel):
    null: bool = Field(description="True iff every condition holds.")
    same_boundary: bool = Field(description="The terms cross the rectangle sides at the same points with the same colors.")
    same_type: bool = Field(description="The inside values have one domain and one codomain.")
    same_outside: bool = Field(description="The terms agree outside the rectangle.")
    vanishes: bool = Field(description="The weighted sum of the inside values is zero.")


def _strand_meets_sides(line: Sequence[Point], rect: EvaluationRectangle) -> bool:
    inside = clip(line, rect.t1, rect.t2)
    for a, b in segments(inside):
        for c, d in rect.vertical_sides():
            if segments_intersect(a, b, c, d):
                return True
    return False


def _point_key(p: Point) -> str:
    return f"({fraction_str(p[0])},{fraction_str(p[1])})"


def _matrix_key(f: Morphism) -> str:
    return f"{f.dom}->{f.codom}:" + ";".join(",".join(row) for row in exact.render(f.matrix))


def _line_key(points: Sequence[Point], color: ObjectWord) -> str:
    return "edge " + " ".join(_point_key(p) for p in points) + f" {color}"


def local_piece(net: CylinderStringNet, rect: EvaluationRectangle, backend: CategoryBackend) -> LocalPiece:
    """Cuts the net along the rectangle and evaluates the inside.

    Raises:
        ValidationError: If the rectangle is not admissible for the net.
    """
    graph, embedding, coloring = net.graph, net.embedding, net.coloring
    for node in graph.nodes:
        at = embedding.position(node.id)
        if node.kind != NodeKind.BOUNDARY and at[1] in (rect.t1, rect.t2) and rect.s1 <= at[0] <= rect.s2:
            raise ValidationError(f"Node {node.id} lies on a horizontal side of {rect}.")
    inside_nodes = {
        n.id for n in graph.nodes if n.kind == NodeKind.INNER and rect.contains(embedding.position(n.id))
    }

    nodes: List[Node] = [graph.node(v) for v in sorted(inside_nodes)]
    edges: List[Edge] = []
    positions: Dict[str, Point] = {v: embedding.position(v) for v in inside_nodes}
    bends: Dict[str, Tuple[Point, ...]] = {}
    colors: Dict[str, ObjectWord] = {}
    bottom, top = [], []
    outside: List[str] = [f"winding {net.winding}", f"inner {net.inner}", f"outer {net.outer}"]
    outside += [f"seam {fraction_str(s.radius)} {s.direction.value}" for s in net.sorted_seams()]

    for edge in graph.edges:
        line = embedding.polyline(edge)
        color = coloring.color(edge.id)
        if _strand_meets_sides(line, rect):
            raise ValidationError(f"Edge {edge.id} meets a vertical side of {rect}.")
        inside = clip(line, rect.t1, rect.t2)
        if len(inside) < 2 or not rect.s1 < inside[0][0] < rect.s2:
            outside.append(_line_key(line, color))
            continue
        source, target = edge.source, edge.target
        if source not in inside_nodes:
            source = f"{edge.id}@in"
            nodes.append(Node(source, NodeKind.BOUNDARY))
            positions[source] = inside[0]
            bottom.append((inside[0][0], color))
        if target not in inside_nodes:
            target = f"{edge.id}@out"
            nodes.append(Node(target, NodeKind.BOUNDARY))
            positions[target] = inside[-1]
            top.append((inside[-1][0], color))
        edges.append(Edge(edge.id, source, target))
        bends[edge.id] = inside[1:-1]
        colors[edge.id] = color
        below = clip(line, line[0][1], rect.t1)
        above = clip(line, rect.t2, line[-1][1])
        if len(below) > 1:
            outside.append(_line_key(below, color))
        if len(above) > 1:
            outside.append(_line_key(above, color))

    for node in graph.nodes:
        if node.id in inside_nodes:
            continue
        key = f"{node.kind.value} {_point_key(embedding.position(node.id))}"
        if node.kind == NodeKind.INNER:
            key += " " + _matrix_key(coloring.morphism(node.id))
        outside.append(key)

    piece_graph = AbstractGraph(tuple(nodes), tuple(edges))
    piece_embedding = PlanarEmbedding(rect.t1, rect.t2, positions, bends)
    piece_coloring = Coloring(colors, {v: coloring.morphism(v) for v in inside_nodes})
    value = evaluate(piece_graph, piece_embedding, piece_coloring, backend)
    return LocalPiece(
        piece_graph,
        piece_embedding,
        piece_coloring,
        tuple(sorted(bottom, key=lambda t: t[0])),
        tuple(sorted(top, key=lambda t: t[0])),
        value,
        tuple(sorted(outside)),
    )


def local_evaluate(net: CylinderStringNet, rect: EvaluationRectangle, backend: CategoryBackend) -> Morphism:
    """ν_R(Γ), the value of the part of the net inside the rectangle."""
    return local_piece(net, rect, backend).value


def null_relation_check(
    terms: Sequence[Tuple[object, CylinderStringNet]], rect: EvaluationRectangle, backend: CategoryBackend
) -> NullRelationReport:
    """Whether sum λ_i Γ_i is a null relation with respect to the rectangle.

    Raises:
        ValidationError: If there are no terms or the rectangle is not admissible for one of them.
    """
    if not terms:
        raise ValidationError("A null relation needs at least one term.")
    K = backend.field
    pieces = [local_piece(net, rect, backend) for _, net in terms]
    first = pieces[0]
    same_boundary = all(p.bottom == first.bottom and p.top == first.top for p in pieces)
    same_type = all(p.value.dom == first.value.dom and p.value.codom == first.value.codom for p in pieces)
    same_outside = all(Counter(p.outside) == Counter(first.outside) for p in pieces)
    vanishes = False
    if same_type:
        total = exact.zeros(first.value.matrix.shape, K)
        for (weight, _), piece in zip(terms, pieces):
            total = exact.add(total, exact.scale(exact.scalar(K, weight), piece.value.matrix))
        vanishes = exact.is_zero(total)
    return NullRelationReport(
        null=same_boundary and same_type and same_outside and vanishes,
        same_boundary=same_boundary,
        same_type=same_type,
        same_outside=same_outside,
        vanishes=vanishes,
    )
