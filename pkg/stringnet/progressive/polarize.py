from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from stringnet.progressive.geometry import PlanarEmbedding, x_at
from stringnet.progressive.graph import AbstractGraph, Edge, NodeKind


@dataclass(frozen=True)
class Polarization:
    """Left-to-right orders of the incoming and outgoing edges of every inner node."""

    incoming: Mapping[str, Tuple[str, ...]]
    outgoing: Mapping[str, Tuple[str, ...]]


def probe_bounds(graph: AbstractGraph, embedding: PlanarEmbedding, node_id: str) -> Tuple[Fraction, Fraction]:
    """Largest admissible probe offsets below and above a node.

    A probe level y - d (or y + d) is admissible when it meets every incident
    edge on the segment adjacent to the node.
    """
    y = embedding.position(node_id)[1]
    below = [y - embedding.polyline(e)[-2][1] for e in graph.incoming(node_id)]
    above = [embedding.polyline(e)[1][1] - y for e in graph.outgoing(node_id)]
    return (min(below) if below else Fraction(1), min(above) if above else Fraction(1))


def _order(edges: List[Edge], embedding: PlanarEmbedding, level: Fraction) -> Tuple[str, ...]:
    keyed = [(x_at(embedding.polyline(e), level), e.id) for e in edges]
    return tuple(edge_id for _, edge_id in sorted(keyed))


def polarize(
    graph: AbstractGraph,
    embedding: PlanarEmbedding,
    probes: Optional[Mapping[str, Tuple[Fraction, Fraction]]] = None,
) -> Polarization:
    """Orders in(v) and out(v) by the x-coordinates where they meet probe levels just below and above v.

    ``probes`` maps a node id to the offsets (below, above) to use; by default
    each offset is half of its admissible bound.

    Raises:
        ValueError: If a requested probe offset is not admissible.
    """
    incoming: Dict[str, Tuple[str, ...]] = {}
    outgoing: Dict[str, Tuple[str, ...]] = {}
    for node in graph.nodes:
        if node.kind != NodeKind.INNER:
            continue
        y = embedding.position(node.id)[1]
        max_below, max_above = probe_bounds(graph, embedding, node.id)
        below, above = (probes or {}).get(node.id, (max_below / 2, max_above / 2))
        if graph.incoming(node.id) and not 0 < below < max_below:
            raise ValueError(f"Probe offset {below} below {node.id} is not in (0, {max_below}).")
        if graph.outgoing(node.id) and not 0 < above < max_above:
            raise ValueError(f"Probe offset {above} above {node.id} is not in (0, {max_above}).")
        incoming[node.id] = _order(graph.incoming(node.id), embedding, y - below)
        outgoing[node.id] = _order(graph.outgoing(node.id), embedding, y + above)
    return Polarization(incoming, outgoing)


def boundary_order(graph: AbstractGraph, embedding: PlanarEmbedding, at_top: bool) -> Tuple[str, ...]:
    """Edges meeting the bottom (or top) boundary, left to right."""
    level = embedding.top if at_top else embedding.bottom
    nodes = [
        n for n in graph.nodes_of_kind(NodeKind.BOUNDARY) if embedding.position(n.id)[1] == level
    ]
    nodes.sort(key=lambda n: (embedding.position(n.id)[0], n.id))
    result = []
    for n in nodes:
        edges = graph.incoming(n.id) if at_top else graph.outgoing(n.id)
        result.extend(e.id for e in edges)
    return tuple(result)
