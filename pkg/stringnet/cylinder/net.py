"""String-nets on the framed cylinder C_n, drawn in a cut chart.

The cylinder is cut along the distinguished radial line. The chart is the
unit square with x the angle and y the radius: the inner circle is y = 0 and
the outer circle y = 1. The boundary points p1 = (1/2, 0) and p2 = (1/2, 1)
carry the boundary value (x, y). A strand crossing the cut appears as a pair
of seam nodes at equal radius on the two chart sides. Following the strand
from the left side to the right side applies the double dual n - 2 times to
its color.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from stringnet.core.backend import CategoryBackend
from stringnet.core.objects import ObjectWord
from stringnet.monad.twisting import Twisting, twisting
from stringnet.progressive.evaluate import Coloring
from stringnet.progressive.geometry import PlanarEmbedding, Point
from stringnet.progressive.graph import AbstractGraph, NodeKind
from stringnet.progressive.validate import ValidationReport, validate_progressive

CHART_SIDES = (Fraction(0), Fraction(1))
INNER_POINT: Point = (Fraction(1, 2), Fraction(0))
OUTER_POINT: Point = (Fraction(1, 2), Fraction(1))


class Direction(str, Enum):
    # the strand reaches the left side and continues from the right side
    LEFTWARD = "leftward"
    RIGHTWARD = "rightward"


@dataclass(frozen=True)
class SeamCrossing:
    radius: Fraction
    left: str
    right: str
    direction: Direction = Direction.LEFTWARD


@dataclass(frozen=True)
class FramedCylinder:
    winding: int

    @property
    def twisting(self) -> Twisting:
        return twisting(self.winding)


@dataclass(frozen=True)
class CylinderStringNet:
    """A colored graph in the cut chart with its seam identifications and boundary value."""

    graph: AbstractGraph
    embedding: PlanarEmbedding
    coloring: Coloring
    winding: int
    inner: ObjectWord
    outer: ObjectWord
    seams: Tuple[SeamCrossing, ...] = field(default_factory=tuple)

    @property
    def cylinder(self) -> FramedCylinder:
        return FramedCylinder(self.winding)

    def boundary_edge(self, outer: bool) -> Optional[str]:
        """The edge ending at p2 (outer) or starting at p1 (inner), if the boundary word is not the unit."""
        at = OUTER_POINT if outer else INNER_POINT
        for node in self.graph.nodes_of_kind(NodeKind.BOUNDARY):
            if self.embedding.position(node.id) == at:
                edges = self.graph.incoming(node.id) if outer else self.graph.outgoing(node.id)
                return edges[0].id if edges else None
        return None

    def seam_edge(self, node_id: str) -> str:
        edges = self.graph.incoming(node_id) + self.graph.outgoing(node_id)
        return edges[0].id

    def sorted_seams(self) -> List[SeamCrossing]:
        return sorted(self.seams, key=lambda s: s.radius)


def _boundary_checks(net: CylinderStringNet, report: ValidationReport) -> None:
    places: Dict[Point, List[str]] = {}
    for node in net.graph.nodes_of_kind(NodeKind.BOUNDARY):
        at = net.embedding.position(node.id)
        if at not in (INNER_POINT, OUTER_POINT):
            report.add("boundary-marking", [node.id], f"Boundary node {node.id} at {at} is not a marked point.")
        places.setdefault(at, []).append(node.id)
    for at, ids in sorted(places.items()):
        if len(ids) > 1:
            report.add("boundary-marking", sorted(ids), f"Several boundary nodes at {at}.")
    for outer, word in ((False, net.inner), (True, net.outer)):
        edge = net.boundary_edge(outer)
        side = "outer" if outer else "inner"
        if edge is None:
            if not word.is_unit():
                report.add("boundary-value", [], f"The {side} boundary value {word} has no strand.")
            continue
        color = net.coloring.edge_colors.get(edge)
        if color != word:
            report.add("boundary-value", [edge], f"The {side} strand {edge} is colored {color}, expected {word}.")


def _seam_checks(net: CylinderStringNet, report: ValidationReport, backend: Optional[CategoryBackend]) -> None:
    graph, embedding = net.graph, net.embedding
    seam_nodes = {n.id for n in graph.nodes_of_kind(NodeKind.SEAM)}
    used: Dict[str, int] = {}
    radii = [s.radius for s in net.seams]
    if len(set(radii)) != len(radii):
        report.add("seam", [], "Two seam crossings share a radius.")
    shift = twisting(net.winding).seam_shift
    for crossing in net.seams:
        for node_id in (crossing.left, crossing.right):
            used[node_id] = used.get(node_id, 0) + 1
        if crossing.left not in seam_nodes or crossing.right not in seam_nodes:
            report.add("seam", [crossing.left, crossing.right], "A seam crossing names a node that is not a seam node.")
            continue
        if embedding.position(crossing.left) != (CHART_SIDES[0], crossing.radius) or embedding.position(
            crossing.right
        ) != (CHART_SIDES[1], crossing.radius):
            report.add(
                "seam",
                [crossing.left, crossing.right],
                f"Seam nodes {crossing.left}, {crossing.right} are not at radius {crossing.radius} on the left and right sides.",
            )
            continue
        arriving, leaving = (
            (crossing.left, crossing.right) if crossing.direction == Direction.LEFTWARD else (crossing.right, crossing.left)
        )
        if not graph.incoming(arriving) or not graph.outgoing(leaving):
            report.add(
                "seam-direction",
                [crossing.left, crossing.right],
                f"The strand at radius {crossing.radius} does not run {crossing.direction.value}.",
            )
            continue
        left_color = net.coloring.edge_colors.get(net.seam_edge(crossing.left))
        right_color = net.coloring.edge_colors.get(net.seam_edge(crossing.right))
        if left_color is None or right_color is None:
            continue
        if backend is not None:
            expected = backend.double_dual_power(left_color, shift)
            if right_color != expected:
                report.add(
                    "seam-color",
                    [crossing.left, crossing.right],
                    f"Right side of the crossing at radius {crossing.radius} is {right_color}, expected {expected}.",
                )
        elif [l.label for l in left_color.letters] != [l.label for l in right_color.letters]:
            report.add("seam-color", [crossing.left, crossing.right], f"Crossing at radius {crossing.radius} changes labels.")
    for node_id in sorted(seam_nodes):
        if used.get(node_id, 0) != 1:
            report.add("seam", [node_id], f"Seam node {node_id} belongs to {used.get(node_id, 0)} crossings, expected 1.")


def validate_locally_progressive(net: CylinderStringNet, backend: Optional[CategoryBackend] = None) -> ValidationReport:
    """Chart progressivity plus seam matching and the marked boundary.

    Seam colors are compared through the double dual of ``backend`` when one
    is given, and by generator labels otherwise.
    """
    report = validate_progressive(net.graph, net.embedding, CHART_SIDES)
    if net.embedding.bottom != 0 or net.embedding.top != 1:
        report.add("strip", [], f"A cut chart spans radii [0, 1], not [{net.embedding.bottom}, {net.embedding.top}].")
    if not report.accepted:
        return report
    _boundary_checks(net, report)
    _seam_checks(net, report, backend)
    return report
