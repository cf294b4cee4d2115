from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from stringnet.progressive.geometry import (
    PlanarEmbedding,
    collinear_overlap,
    edge_polylines,
    on_segment,
    segments,
    segments_intersect,
)
from stringnet.progressive.graph import AbstractGraph, NodeKind


class Violation(BaseModel):
    kind: str = Field(description="Which condition failed, e.g. monotonicity or crossing.")
    ids: List[str] = Field(description="The node and edge ids involved.")
    message: str = Field(description="Human readable detail.")


class ValidationReport(BaseModel):
    accepted: bool = Field(description="True iff no violation was found.")
    violations: List[Violation] = Field(default_factory=list, description="Every violation, in a deterministic order.")

    def add(self, kind: str, ids: List[str], message: str) -> None:
        self.violations.append(Violation(kind=kind, ids=ids, message=message))
        self.accepted = False

    def kinds(self) -> List[str]:
        return sorted({v.kind for v in self.violations})


def validate_progressive(
    graph: AbstractGraph,
    embedding: PlanarEmbedding,
    chart_sides: Optional[Tuple[Fraction, Fraction]] = None,
) -> ValidationReport:
    """Checks that an embedded graph is progressive in the strip [bottom, top].

    With ``chart_sides = (left, right)`` the strip is a cut chart: seam nodes
    must sit on the two sides and everything else strictly between them.
    """
    report = ValidationReport(accepted=True)
    a, b = embedding.bottom, embedding.top

    for item in graph.duplicate_ids():
        report.add("reference", [item], f"Id {item} is used more than once.")
    for edge_id, node_id in graph.dangling_references():
        report.add("reference", [edge_id, node_id], f"Edge {edge_id} names missing node {node_id}.")
    for node in graph.nodes:
        if node.id not in embedding.positions:
            report.add("reference", [node.id], f"Node {node.id} has no position.")
    if not report.accepted:
        return report
    if a >= b:
        report.add("strip", [], f"Strip bounds {a} >= {b}.")
        return report

    for node in graph.nodes:
        x, y = embedding.position(node.id)
        degree = graph.degree(node.id)
        if node.kind == NodeKind.BOUNDARY:
            if degree != 1:
                report.add("boundary-degree", [node.id], f"Boundary node {node.id} has {degree} edges, expected 1.")
            if y not in (a, b):
                report.add("boundary-placement", [node.id], f"Boundary node {node.id} is at y={y}, not on y={a} or y={b}.")
        elif node.kind == NodeKind.SEAM:
            if chart_sides is None:
                report.add("seam-node", [node.id], f"Seam node {node.id} outside a cylinder chart.")
                continue
            if degree != 1:
                report.add("boundary-degree", [node.id], f"Seam node {node.id} has {degree} edges, expected 1.")
            if x not in chart_sides or not a < y < b:
                report.add("chart-placement", [node.id], f"Seam node {node.id} at ({x}, {y}) is not on a chart side.")
        else:
            if not a < y < b:
                report.add("inner-placement", [node.id], f"Inner node {node.id} at y={y} is not strictly inside ({a}, {b}).")
        if chart_sides is not None and node.kind != NodeKind.SEAM and not chart_sides[0] < x < chart_sides[1]:
            report.add("chart-placement", [node.id], f"Node {node.id} at x={x} touches the chart sides.")

    for p, q in combinations(sorted(graph.nodes, key=lambda n: n.id), 2):
        if embedding.position(p.id) == embedding.position(q.id):
            report.add("coincident-nodes", [p.id, q.id], f"Nodes {p.id} and {q.id} share a position.")

    polylines = edge_polylines(graph, embedding)
    for edge in graph.edges:
        line = polylines[edge.id]
        for (x0, y0), (x1, y1) in segments(line):
            if not y1 > y0:
                report.add(
                    "monotonicity",
                    [edge.id],
                    f"Edge {edge.id} is not strictly increasing in y between ({x0}, {y0}) and ({x1}, {y1}).",
                )
                break
        if chart_sides is not None:
            for x, y in line[1:-1]:
                if not chart_sides[0] < x < chart_sides[1]:
                    report.add("chart-placement", [edge.id], f"Edge {edge.id} bends onto a chart side at ({x}, {y}).")

    for node in graph.nodes:
        at = embedding.position(node.id)
        for edge in graph.edges:
            if node.id in (edge.source, edge.target):
                continue
            if any(on_segment(at, s, t) for s, t in segments(polylines[edge.id])):
                report.add("node-on-edge", [node.id, edge.id], f"Node {node.id} lies on edge {edge.id}.")

    for e, f in combinations(graph.edges, 2):
        shared = {e.source, e.target} & {f.source, f.target}
        shared_points = {embedding.position(v) for v in shared}
        crossing = False
        for s0, s1 in segments(polylines[e.id]):
            for t0, t1 in segments(polylines[f.id]):
                if not segments_intersect(s0, s1, t0, t1):
                    continue
                touching = {s0, s1} & {t0, t1} & shared_points
                if touching and not collinear_overlap(s0, s1, t0, t1) and _meet_only_at(s0, s1, t0, t1, touching):
                    continue
                crossing = True
                break
            if crossing:
                break
        if crossing:
            report.add("crossing", [e.id, f.id], f"Edges {e.id} and {f.id} intersect away from a shared node.")

    return report


def _meet_only_at(s0, s1, t0, t1, touching) -> bool:
    """Two segments sharing an endpoint meet nowhere else unless they overlap."""
    common = next(iter(touching))
    others_s = [p for p in (s0, s1) if p != common]
    others_t = [p for p in (t0, t1) if p != common]
    if not others_s or not others_t:
        return False
    return not on_segment(others_s[0], t0, t1) and not on_segment(others_t[0], s0, s1)
