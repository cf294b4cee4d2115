"""Colored progressive diagrams and the ways to build them from each other."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from stringnet.core.backend import CategoryBackend
from stringnet.core.errors import ColoringError, ValidationError
from stringnet.core.morphism import Morphism
from stringnet.core.objects import ObjectWord
from stringnet.progressive.evaluate import Coloring, evaluate
from stringnet.progressive.geometry import PlanarEmbedding, Point, segments
from stringnet.progressive.graph import AbstractGraph, Edge, Node, NodeKind
from stringnet.progressive.polarize import boundary_order
from stringnet.progressive.slicing import admissible_levels
from stringnet.progressive.validate import ValidationReport, validate_progressive


@dataclass(frozen=True)
class ProgressiveDiagram:
    graph: AbstractGraph
    embedding: PlanarEmbedding
    coloring: Coloring

    def validate(self) -> ValidationReport:
        return validate_progressive(self.graph, self.embedding)

    def evaluate(self, backend: CategoryBackend, levels: Optional[Sequence[Fraction]] = None) -> Morphism:
        return evaluate(self.graph, self.embedding, self.coloring, backend, levels)

    def inputs(self) -> Tuple[str, ...]:
        return boundary_order(self.graph, self.embedding, at_top=False)

    def outputs(self) -> Tuple[str, ...]:
        return boundary_order(self.graph, self.embedding, at_top=True)

    def with_morphisms(self, morphisms: Dict[str, Morphism]) -> "ProgressiveDiagram":
        return ProgressiveDiagram(
            self.graph, self.embedding, Coloring(self.coloring.edge_colors, {**self.coloring.node_morphisms, **morphisms})
        )

    def renamed(self, prefix: str) -> "ProgressiveDiagram":
        return ProgressiveDiagram(
            self.graph.renamed(prefix), self.embedding.renamed(prefix), self.coloring.renamed(prefix)
        )

    def reshaped(self, fn) -> "ProgressiveDiagram":
        return ProgressiveDiagram(self.graph, self.embedding.mapped(fn), self.coloring)


def letters_of(word: ObjectWord) -> List[ObjectWord]:
    return [ObjectWord((letter,), word.backend_id) for letter in word.letters]


def _spread(count: int) -> List[Fraction]:
    return [Fraction(2 * i - (count - 1), 2) for i in range(count)]


def identity_diagram(word: ObjectWord) -> ProgressiveDiagram:
    """Vertical strands, one per letter, in the strip [-1, 1]."""
    nodes, edges, positions, colors = [], [], {}, {}
    for i, (x, letter) in enumerate(zip(_spread(len(word)), letters_of(word))):
        nodes += [Node(f"in{i}", NodeKind.BOUNDARY), Node(f"out{i}", NodeKind.BOUNDARY)]
        edges.append(Edge(f"s{i}", f"in{i}", f"out{i}"))
        positions[f"in{i}"] = (x, Fraction(-1))
        positions[f"out{i}"] = (x, Fraction(1))
        colors[f"s{i}"] = letter
    graph = AbstractGraph(tuple(nodes), tuple(edges))
    return ProgressiveDiagram(graph, PlanarEmbedding(Fraction(-1), Fraction(1), positions), Coloring(colors))


def single_coupon(f: Morphism, label: str = "f") -> ProgressiveDiagram:
    """One coupon at the origin with a strand for every letter of its domain and codomain.

    Raises:
        ColoringError: If the morphism is not between words.
    """
    if not isinstance(f.dom, ObjectWord) or not isinstance(f.codom, ObjectWord):
        raise ColoringError(label, "a morphism between words", f"{f.dom} -> {f.codom}")
    nodes = [Node(label, NodeKind.INNER, label)]
    edges, colors = [], {}
    positions: Dict[str, Point] = {label: (Fraction(0), Fraction(0))}
    for i, (x, letter) in enumerate(zip(_spread(len(f.dom)), letters_of(f.dom))):
        nodes.append(Node(f"in{i}", NodeKind.BOUNDARY))
        edges.append(Edge(f"x{i}", f"in{i}", label))
        positions[f"in{i}"] = (x, Fraction(-1))
        colors[f"x{i}"] = letter
    for i, (x, letter) in enumerate(zip(_spread(len(f.codom)), letters_of(f.codom))):
        nodes.append(Node(f"out{i}", NodeKind.BOUNDARY))
        edges.append(Edge(f"y{i}", label, f"out{i}"))
        positions[f"out{i}"] = (x, Fraction(1))
        colors[f"y{i}"] = letter
    graph = AbstractGraph(tuple(nodes), tuple(edges))
    embedding = PlanarEmbedding(Fraction(-1), Fraction(1), positions)
    return ProgressiveDiagram(graph, embedding, Coloring(colors, {label: f}))


def _fit_strip(diagram: ProgressiveDiagram, bottom: Fraction, top: Fraction) -> ProgressiveDiagram:
    a, b = diagram.embedding.bottom, diagram.embedding.top
    scale = (top - bottom) / (b - a)
    return diagram.reshaped(lambda p: (p[0], bottom + (p[1] - a) * scale))


def juxtapose(left: ProgressiveDiagram, right: ProgressiveDiagram) -> ProgressiveDiagram:
    """Places ``right`` to the right of ``left``; evaluates to f_left (x) f_right."""
    left = left.renamed("l.")
    right = _fit_strip(right.renamed("r."), left.embedding.bottom, left.embedding.top)
    shift = left.embedding.x_extent()[1] - right.embedding.x_extent()[0] + 1
    right = right.reshaped(lambda p: (p[0] + shift, p[1]))
    graph = AbstractGraph(left.graph.nodes + right.graph.nodes, left.graph.edges + right.graph.edges)
    embedding = left.embedding.with_points(
        {**left.embedding.positions, **right.embedding.positions},
        {**left.embedding.bends, **right.embedding.bends},
    )
    return ProgressiveDiagram(graph, embedding, left.coloring.merged(right.coloring))


def stack_diagrams(top: ProgressiveDiagram, bottom: ProgressiveDiagram) -> ProgressiveDiagram:
    """Glues the bottom boundary of ``top`` onto the top boundary of ``bottom``; evaluates to f_top o f_bottom.

    Raises:
        ColoringError: If the boundary words do not agree.
    """
    bottom = bottom.renamed("b.")
    top = top.renamed("t.")
    lift = bottom.embedding.top + 1 - top.embedding.bottom
    top = top.reshaped(lambda p: (p[0], p[1] + lift))
    lower_ends = bottom.outputs()
    upper_starts = top.inputs()
    lower_word = [bottom.coloring.color(e) for e in lower_ends]
    upper_word = [top.coloring.color(e) for e in upper_starts]
    if lower_word != upper_word:
        raise ColoringError("stack", [str(w) for w in lower_word], [str(w) for w in upper_word])

    dropped = set()
    joined: Dict[str, Edge] = {}
    bends: Dict[str, Tuple[Point, ...]] = {**bottom.embedding.bends, **top.embedding.bends}
    for e_id, f_id in zip(lower_ends, upper_starts):
        e, f = bottom.graph.edge(e_id), top.graph.edge(f_id)
        dropped |= {e.target, f.source}
        joined[e_id] = Edge(e_id, e.source, f.target)
        bends[e_id] = (
            tuple(bottom.embedding.bends.get(e_id, ()))
            + (bottom.embedding.position(e.target), top.embedding.position(f.source))
            + tuple(top.embedding.bends.get(f_id, ()))
        )
        bends.pop(f_id, None)
    skip = set(upper_starts)
    nodes = tuple(n for n in bottom.graph.nodes + top.graph.nodes if n.id not in dropped)
    edges = tuple(joined.get(e.id, e) for e in bottom.graph.edges) + tuple(
        e for e in top.graph.edges if e.id not in skip
    )
    positions = {k: p for k, p in {**bottom.embedding.positions, **top.embedding.positions}.items() if k not in dropped}
    embedding = PlanarEmbedding(bottom.embedding.bottom, top.embedding.top, positions, bends)
    coloring = Coloring(
        {k: v for k, v in {**bottom.coloring.edge_colors, **top.coloring.edge_colors}.items() if k not in skip},
        {**bottom.coloring.node_morphisms, **top.coloring.node_morphisms},
    )
    return ProgressiveDiagram(AbstractGraph(nodes, edges), embedding, coloring)


def random_levels(diagram: ProgressiveDiagram, rng: np.random.Generator) -> Tuple[Fraction, ...]:
    return admissible_levels(diagram.graph, diagram.embedding, rng)


def _distance_squared(p: Point, a: Point, b: Point) -> Fraction:
    dx, dy = b[0] - a[0], b[1] - a[1]
    length = dx * dx + dy * dy
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / length
    if t <= 0:
        q = a
    elif t >= 1:
        q = b
    else:
        q = (a[0] + t * dx, a[1] + t * dy)
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2


def _separation(diagram: ProgressiveDiagram) -> Fraction:
    """A lower bound on how far every point is from everything it does not touch."""
    lines = [diagram.embedding.polyline(e) for e in diagram.graph.edges]
    points = list(diagram.embedding.all_points())
    gaps: List[Fraction] = []
    inner = [diagram.embedding.position(n.id) for n in diagram.graph.inner_nodes()]
    gaps.extend(min(p[1] - diagram.embedding.bottom, diagram.embedding.top - p[1]) ** 2 for p in inner)
    for line in lines:
        gaps.extend((q[1] - p[1]) ** 2 for p, q in segments(line))
    for p in points:
        for line in lines:
            for a, b in segments(line):
                if p not in (a, b):
                    gaps.append(_distance_squared(p, a, b))
        gaps.extend((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 for q in points if q != p)
    return min(gaps) if gaps else Fraction(1)


def jitter(diagram: ProgressiveDiagram, rng: np.random.Generator) -> ProgressiveDiagram:
    """A random small isotopy of the drawing.

    The drawing is sheared and stretched horizontally, then every inner node
    and bend moves by less than an eighth of the separation bound; boundary
    nodes move only along their boundary line.

    Raises:
        ValidationError: If the jittered drawing is not progressive.
    """
    stretch = 1 + Fraction(int(rng.integers(0, 8)), 8)
    shear = Fraction(int(rng.integers(-4, 5)), 8)
    sheared = diagram.reshaped(lambda p: (stretch * p[0] + shear * p[1], p[1]))

    bound = _separation(sheared)
    if bound == 0:
        raise ValidationError("Drawing has touching features; it cannot be jittered.")
    eps = Fraction(1)
    while 64 * eps * eps >= bound:
        eps /= 2

    def nudge() -> Fraction:
        return eps * Fraction(int(rng.integers(-7, 8)), 8)

    embedding = sheared.embedding
    boundary = {n.id for n in sheared.graph.nodes if n.kind != NodeKind.INNER}
    positions = {}
    for node_id, (x, y) in sorted(embedding.positions.items()):
        positions[node_id] = (x + nudge(), y) if node_id in boundary else (x + nudge(), y + nudge())
    bends = {
        edge_id: tuple((x + nudge(), y + nudge()) for x, y in points) for edge_id, points in sorted(embedding.bends.items())
    }
    moved = ProgressiveDiagram(sheared.graph, embedding.with_points(positions, bends), sheared.coloring)
    report = moved.validate()
    if not report.accepted:
        raise ValidationError("Jitter left the progressive class: " + "; ".join(v.message for v in report.violations))
    return moved
