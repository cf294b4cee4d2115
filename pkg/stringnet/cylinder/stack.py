from fractions import Fraction
from typing import Dict, Tuple

from stringnet.core.errors import ColoringError, ValidationError
from stringnet.cylinder.net import CylinderStringNet, SeamCrossing
from stringnet.progressive.evaluate import Coloring
from stringnet.progressive.geometry import PlanarEmbedding, Point
from stringnet.progressive.graph import AbstractGraph, Edge


def _squeeze(net: CylinderStringNet, prefix: str, low: Fraction) -> Tuple[PlanarEmbedding, Tuple[SeamCrossing, ...]]:
    """Renames with ``prefix`` and maps radii [0, 1] onto [low, low + 1/2]."""
    half = Fraction(1, 2)
    embedding = net.embedding.renamed(prefix).mapped(lambda p: (p[0], low + p[1] * half))
    seams = tuple(
        SeamCrossing(low + s.radius * half, prefix + s.left, prefix + s.right, s.direction) for s in net.seams
    )
    return embedding, seams


def stack(top: CylinderStringNet, bottom: CylinderStringNet) -> CylinderStringNet:
    """Glues the inner circle of ``top`` onto the outer circle of ``bottom``.

    The bottom net is squeezed into radii [0, 1/2] and the top net into
    [1/2, 1]; the strand reaching p2 of the bottom net continues into the
    strand leaving p1 of the top net through a bend at (1/2, 1/2). Reducing
    the result gives the Kleisli composite of the two normal forms.

    Raises:
        ValidationError: If the windings differ.
        ColoringError: If the outer value of ``bottom`` is not the inner value of ``top``.
    """
    if top.winding != bottom.winding:
        raise ValidationError(f"Cannot stack C_{top.winding} on C_{bottom.winding}.")
    if bottom.outer != top.inner:
        raise ColoringError("stack", str(bottom.outer), str(top.inner))
    lower_edge = bottom.boundary_edge(outer=True)
    upper_edge = top.boundary_edge(outer=False)
    lower, lower_seams = _squeeze(bottom, "b.", Fraction(0))
    upper, upper_seams = _squeeze(top, "t.", Fraction(1, 2))
    b_graph, t_graph = bottom.graph.renamed("b."), top.graph.renamed("t.")
    b_colors, t_colors = bottom.coloring.renamed("b."), top.coloring.renamed("t.")

    dropped = set()
    joined: Dict[str, Edge] = {}
    bends: Dict[str, Tuple[Point, ...]] = {**lower.bends, **upper.bends}
    skip = set()
    if lower_edge is not None and upper_edge is not None:
        e, f = b_graph.edge("b." + lower_edge), t_graph.edge("t." + upper_edge)
        dropped |= {e.target, f.source}
        joined[e.id] = Edge(e.id, e.source, f.target)
        bends[e.id] = tuple(lower.bends.get(e.id, ())) + (lower.position(e.target),) + tuple(upper.bends.get(f.id, ()))
        bends.pop(f.id, None)
        skip.add(f.id)
    nodes = tuple(n for n in b_graph.nodes + t_graph.nodes if n.id not in dropped)
    edges = tuple(joined.get(e.id, e) for e in b_graph.edges) + tuple(e for e in t_graph.edges if e.id not in skip)
    positions = {k: p for k, p in {**lower.positions, **upper.positions}.items() if k not in dropped}
    coloring = Coloring(
        {k: v for k, v in {**b_colors.edge_colors, **t_colors.edge_colors}.items() if k not in skip},
        {**b_colors.node_morphisms, **t_colors.node_morphisms},
    )
    return CylinderStringNet(
        AbstractGraph(nodes, edges),
        PlanarEmbedding(Fraction(0), Fraction(1), positions, bends),
        coloring,
        top.winding,
        bottom.inner,
        top.outer,
        lower_seams + upper_seams,
    )
