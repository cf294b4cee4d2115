from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple


class NodeKind(str, Enum):
    INNER = "inner"
    BOUNDARY = "boundary"
    # Seam nodes only occur in cut charts of cylinders: a strand leaving or
    # entering the chart through its left or right side.
    SEAM = "seam"


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    # Coupon label of an inner node, used to look up its morphism.
    label: Optional[str] = None

    @property
    def is_inner(self) -> bool:
        return self.kind == NodeKind.INNER


@dataclass(frozen=True)
class Edge:
    """An oriented edge; progressive edges run from source (below) to target (above)."""

    id: str
    source: str
    target: str


@dataclass(frozen=True)
class AbstractGraph:
    nodes: Tuple[Node, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "_nodes", {n.id: n for n in self.nodes})
        object.__setattr__(self, "_edges", {e.id: e for e in self.edges})

    def node(self, node_id: str) -> Node:
        return self._nodes[node_id]

    def edge(self, edge_id: str) -> Edge:
        return self._edges[edge_id]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._nodes

    def incoming(self, node_id: str) -> List[Edge]:
        return [e for e in self.edges if e.target == node_id]

    def outgoing(self, node_id: str) -> List[Edge]:
        return [e for e in self.edges if e.source == node_id]

    def degree(self, node_id: str) -> int:
        return sum((e.source == node_id) + (e.target == node_id) for e in self.edges)

    def inner_nodes(self) -> List[Node]:
        return [n for n in self.nodes if n.is_inner]

    def nodes_of_kind(self, kind: NodeKind) -> List[Node]:
        return [n for n in self.nodes if n.kind == kind]

    def dangling_references(self) -> List[Tuple[str, str]]:
        """(edge id, node id) pairs where an edge names a missing node."""
        return [(e.id, v) for e in self.edges for v in (e.source, e.target) if v not in self._nodes]

    def duplicate_ids(self) -> List[str]:
        seen: Dict[str, int] = {}
        for item in list(self.nodes) + list(self.edges):
            seen[item.id] = seen.get(item.id, 0) + 1
        return sorted(i for i, count in seen.items() if count > 1)

    def renamed(self, prefix: str) -> "AbstractGraph":
        return AbstractGraph(
            tuple(Node(prefix + n.id, n.kind, n.label) for n in self.nodes),
            tuple(Edge(prefix + e.id, prefix + e.source, prefix + e.target) for e in self.edges),
        )
