"""Reduction of cylinder string-nets to normal form and back.

A rightward seam crossing is first turned around: a coev coupon just below
the left seam node and an ev coupon just above the right one reverse the
strand there, so it crosses leftward colored by its left dual.

Every leftward seam crossing is then unrolled: the strand arriving at the
left side is continued up and to the left to a new top boundary point, and
the strand leaving the right side is started from a new bottom boundary
point further right. The unrolled graph is progressive in the strip and
evaluates to Φ: x (x) W_R -> W_L (x) y. Bending W_R back up on the right gives

    h = (Φ (x) id) o (id_x (x) coev~_{W_R}): x -> F(c) (x) y (x) G(vc),

with F(c) = W_L, so the net is the normal form (c, h) and its value is ι_c o h.
"""

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Set, Tuple

from loguru import logger

import constants
from stringnet.core.backend import CategoryBackend
from stringnet.core.errors import ColoringError, ReductionNotSupported, ValidationError
from stringnet.core.morphism import Morphism, compose
from stringnet.core.objects import ObjectWord
from stringnet.cylinder.net import (
    CHART_SIDES,
    INNER_POINT,
    OUTER_POINT,
    CylinderStringNet,
    Direction,
    SeamCrossing,
    validate_locally_progressive,
)
from stringnet.monad.kleisli import KleisliMorphism
from stringnet.monad.monad import Monad
from stringnet.monad.twisting import twisting
from stringnet.progressive.evaluate import Coloring, evaluate
from stringnet.progressive.geometry import PlanarEmbedding, Point
from stringnet.progressive.graph import AbstractGraph, Edge, Node, NodeKind


@dataclass(frozen=True)
class NormalFormNet:
    """The net with one coupon h: x -> F(c) (x) y (x) G(vc) and one closed wrap colored c."""

    c: ObjectWord
    h: Morphism
    winding: int
    x: ObjectWord
    y: ObjectWord

    def value(self, monad: Monad) -> Morphism:
        """ι_c o h: x -> T_n(y)."""
        iota = monad.iota(self.c, self.y)
        return compose(iota, self.h.retyped(self.x, iota.dom))

    def kleisli(self, monad: Monad) -> KleisliMorphism:
        return KleisliMorphism(self.x, self.y, self.value(monad))


def _check(net: CylinderStringNet, backend: CategoryBackend) -> None:
    report = validate_locally_progressive(net, backend)
    if not report.accepted:
        raise ValidationError("; ".join(v.message for v in report.violations))


def _fresh(taken: Set[str], base: str) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def _turned_around(
    net: CylinderStringNet, backend: CategoryBackend, crossing: SeamCrossing, offset: Fraction
) -> CylinderStringNet:
    """Replaces one rightward crossing by a leftward one through the left dual.

    The strand leaving the left seam node now leaves coev_l: 1 -> vl (x) l,
    placed ``offset`` below and to the right of it, whose vl output runs back
    into the seam node. The strand reaching the right seam node now ends in
    ev_r: r (x) vr -> 1, placed ``offset`` above and to the left, fed by vr
    from the seam node.
    """
    graph, coloring = net.graph, net.coloring
    leaving = graph.outgoing(crossing.left)[0]
    arriving = graph.incoming(crossing.right)[0]
    l, r = coloring.color(leaving.id), coloring.color(arriving.id)
    taken = {n.id for n in graph.nodes} | {e.id for e in graph.edges}
    cup, cap = _fresh(taken, f"{crossing.left}.coev"), _fresh(taken, f"{crossing.right}.ev")
    into_left, out_of_right = _fresh(taken, f"{crossing.left}.back"), _fresh(taken, f"{crossing.right}.back")

    edges: List[Edge] = []
    for edge in graph.edges:
        if edge.id == leaving.id:
            edge = Edge(edge.id, cup, edge.target)
        elif edge.id == arriving.id:
            edge = Edge(edge.id, edge.source, cap)
        edges.append(edge)
    edges += [Edge(into_left, cup, crossing.left), Edge(out_of_right, crossing.right, cap)]
    nodes = graph.nodes + (Node(cup, NodeKind.INNER, "coev"), Node(cap, NodeKind.INNER, "ev"))

    positions: Dict[str, Point] = dict(net.embedding.positions)
    positions[cup] = (CHART_SIDES[0] + offset, crossing.radius - offset)
    positions[cap] = (CHART_SIDES[1] - offset, crossing.radius + offset)
    coloring = Coloring(
        {**coloring.edge_colors, into_left: backend.left_dual(l), out_of_right: backend.left_dual(r)},
        {**coloring.node_morphisms, cup: backend.coev_left(l), cap: backend.ev_left(r)},
    )
    seams = tuple(
        dataclasses.replace(s, direction=Direction.LEFTWARD) if s == crossing else s for s in net.seams
    )
    return dataclasses.replace(
        net,
        graph=AbstractGraph(nodes, tuple(edges)),
        embedding=net.embedding.with_points(positions, net.embedding.bends),
        coloring=coloring,
        seams=seams,
    )


def turned_leftward(net: CylinderStringNet, backend: CategoryBackend) -> CylinderStringNet:
    """An isotopic net whose seam crossings all run leftward.

    Each rightward crossing gets a coev/ev pair next to the chart sides. The
    offset starts at a quarter of the smallest gap between seam radii and is
    halved until the rewritten chart is locally progressive again.

    Raises:
        ReductionNotSupported: If no offset keeps the chart progressive.
    """
    radii = sorted({CHART_SIDES[0], CHART_SIDES[1]} | {s.radius for s in net.seams})
    start = min(b - a for a, b in zip(radii, radii[1:])) / 4
    for crossing in net.sorted_seams():
        if crossing.direction == Direction.LEFTWARD:
            continue
        offset = start
        for _ in range(constants.TURNAROUND_ATTEMPTS):
            candidate = _turned_around(net, backend, crossing, offset)
            if validate_locally_progressive(candidate, backend).accepted:
                net = candidate
                break
            offset /= 2
        else:
            raise ReductionNotSupported(f"The rightward crossing at radius {crossing.radius} could not be turned around.")
        logger.debug(f"Turned the crossing at radius {crossing.radius} around with offset {offset}.")
    return net


def unrolled(net: CylinderStringNet) -> Tuple[AbstractGraph, PlanarEmbedding, List[SeamCrossing]]:
    """The progressive graph in the strip obtained by cutting every seam crossing open.

    Raises:
        ReductionNotSupported: If a crossing runs rightward; see turned_leftward.
    """
    crossings = net.sorted_seams()
    rightward = [c for c in crossings if c.direction != Direction.LEFTWARD]
    if rightward:
        raise ReductionNotSupported(
            f"Rightward seam crossings at radii {[str(c.radius) for c in rightward]} must be turned around first."
        )
    k = len(crossings)
    kinds = {}
    positions: Dict[str, Point] = dict(net.embedding.positions)
    bends: Dict[str, Tuple[Point, ...]] = {e: tuple(b) for e, b in net.embedding.bends.items()}
    for j, crossing in enumerate(crossings):
        left_edge = net.graph.incoming(crossing.left)[0]
        right_edge = net.graph.outgoing(crossing.right)[0]
        positions[crossing.left] = (Fraction(j - k), Fraction(1))
        positions[crossing.right] = (Fraction(j + 2), Fraction(0))
        bends[left_edge.id] = bends.get(left_edge.id, ()) + ((Fraction(0), crossing.radius),)
        bends[right_edge.id] = ((Fraction(1), crossing.radius),) + bends.get(right_edge.id, ())
        kinds[crossing.left] = kinds[crossing.right] = NodeKind.BOUNDARY
    nodes = tuple(Node(n.id, kinds.get(n.id, n.kind), n.label) for n in net.graph.nodes)
    graph = AbstractGraph(nodes, net.graph.edges)
    return graph, net.embedding.with_points(positions, bends), crossings


def reduce_to_normal_form(net: CylinderStringNet, backend: CategoryBackend, validate: bool = True) -> NormalFormNet:
    """The normal form (c, h) of a net; rightward crossings are turned around first.

    Raises:
        ValidationError: If the net is not locally progressive.
        ReductionNotSupported: If a rightward crossing cannot be turned around.
        ColoringError: If a coupon does not fit its edges.
    """
    if validate:
        _check(net, backend)
    net = turned_leftward(net, backend)
    graph, embedding, crossings = unrolled(net)
    phi = evaluate(graph, embedding, net.coloring, backend)
    colors = net.coloring
    w_left = backend.tensor_all(*(colors.color(net.seam_edge(c.left)) for c in crossings))
    w_right = backend.tensor_all(*(colors.color(net.seam_edge(c.right)) for c in crossings))
    x, y = net.inner, net.outer
    if phi.dom != backend.tensor_objects(x, w_right) or phi.codom != backend.tensor_objects(w_left, y):
        raise ColoringError("unrolled net", f"{x} (x) {w_right} -> {w_left} (x) {y}", f"{phi.dom} -> {phi.codom}")
    closed = compose(
        backend.tensor_morphisms(phi, backend.identity(backend.right_dual(w_right))),
        backend.tensor_morphisms(backend.identity(x), backend.coev_right(w_right)),
    )
    twist = twisting(net.winding)
    c = backend.double_dual_power(w_left, -twist.f_power)
    expected = backend.tensor_all(twist.F(backend, c), y, twist.cowrap(backend, c))
    if closed.codom != expected:
        raise ColoringError("closed net", expected, closed.codom)
    logger.debug(f"Reduced a net with {len(crossings)} seam crossings to the wrap {c}.")
    return NormalFormNet(c, closed.retyped(x, expected), net.winding, x, y)


def net_value(net: CylinderStringNet, monad: Monad) -> Morphism:
    """ν(Γ) = ι_c o h for the normal form of Γ.

    Raises:
        ValidationError: If the net winding is not the monad winding.
    """
    if net.winding != monad.winding:
        raise ValidationError(f"A net on C_{net.winding} has no value in T_{monad.winding}.")
    return reduce_to_normal_form(net, monad.backend).value(monad)


# ---------------------------------
# Standard drawings.
# ---------------------------------


def standard_form_net(normal: NormalFormNet, backend: CategoryBackend) -> CylinderStringNet:
    """Draws (c, h): a coupon h, one wrap strand through the seam, and the cap ev~ closing it.

    Raises:
        ColoringError: If h does not have the normal form type for c.
    """
    twist = twisting(normal.winding)
    c, x, y = normal.c, normal.x, normal.y
    wrap = twist.F(backend, c)
    cowrap = twist.cowrap(backend, c)
    expected = backend.tensor_all(wrap, y, cowrap)
    if normal.h.dom != x or normal.h.codom != expected:
        raise ColoringError("h", f"{x} -> {expected}", f"{normal.h.dom} -> {normal.h.codom}")

    half = Fraction(1, 2)
    nodes: List[Node] = [Node("h", NodeKind.INNER, "h")]
    edges: List[Edge] = []
    positions: Dict[str, Point] = {"h": (half, Fraction(1, 4))}
    edge_colors: Dict[str, ObjectWord] = {}
    morphisms = {"h": normal.h}
    seams: Tuple[SeamCrossing, ...] = ()
    if not x.is_unit():
        nodes.append(Node("p1", NodeKind.BOUNDARY))
        edges.append(Edge("x", "p1", "h"))
        positions["p1"] = INNER_POINT
        edge_colors["x"] = x
    if not y.is_unit():
        nodes.append(Node("p2", NodeKind.BOUNDARY))
        edges.append(Edge("y", "h", "p2"))
        positions["p2"] = OUTER_POINT
        edge_colors["y"] = y
    if not c.is_unit():
        unwrap = backend.double_dual_power(wrap, twist.seam_shift)
        cap = backend.ev_right(unwrap)
        nodes += [Node("L0", NodeKind.SEAM), Node("R0", NodeKind.SEAM), Node("kappa", NodeKind.INNER, "ev")]
        edges += [Edge("wrap", "h", "L0"), Edge("unwrap", "R0", "kappa"), Edge("cowrap", "h", "kappa")]
        positions.update({"L0": (Fraction(0), half), "R0": (Fraction(1), half), "kappa": (Fraction(3, 4), Fraction(3, 4))})
        edge_colors.update({"wrap": wrap, "unwrap": unwrap, "cowrap": cowrap})
        if cap.dom != backend.tensor_objects(cowrap, unwrap):
            raise ColoringError("kappa", backend.tensor_objects(cowrap, unwrap), cap.dom)
        morphisms["kappa"] = cap
        seams = (SeamCrossing(half, "L0", "R0", Direction.LEFTWARD),)
    graph = AbstractGraph(tuple(nodes), tuple(edges))
    embedding = PlanarEmbedding(Fraction(0), Fraction(1), positions)
    return CylinderStringNet(graph, embedding, Coloring(edge_colors, morphisms), normal.winding, x, y, seams)


def identity_net(x: ObjectWord, winding: int) -> CylinderStringNet:
    """One radial strand colored x; its value is η_x."""
    if x.is_unit():
        graph = AbstractGraph((), ())
        return CylinderStringNet(
            graph, PlanarEmbedding(Fraction(0), Fraction(1), {}), Coloring({}), winding, x, x
        )
    graph = AbstractGraph((Node("p1", NodeKind.BOUNDARY), Node("p2", NodeKind.BOUNDARY)), (Edge("x", "p1", "p2"),))
    embedding = PlanarEmbedding(Fraction(0), Fraction(1), {"p1": INNER_POINT, "p2": OUTER_POINT})
    return CylinderStringNet(graph, embedding, Coloring({"x": x}), winding, x, x)
