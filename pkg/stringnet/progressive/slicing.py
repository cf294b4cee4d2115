"""Regular level lines and tensor decomposition.

A slicing cuts the strip into horizontal bands by level lines that avoid the
inner nodes. Inside a band every edge either passes straight through (an
identity block) or meets exactly one node of the band (a coupon block), so the
band evaluates to a tensor product of blocks.

Inner nodes at equal heights are ordered by id, as if tilted by an
infinitesimal amount; a level line may then run through such a tie and the
edge orders on it are read just above or below the tied nodes.
"""

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from stringnet.core.errors import ValidationError
from stringnet.progressive.geometry import PlanarEmbedding, slope_above, slope_below, x_at
from stringnet.progressive.graph import AbstractGraph, Edge
from stringnet.progressive.polarize import Polarization, polarize


@dataclass(frozen=True)
class Block:
    """Either an identity strand (``kind == "strand"``, ``id`` an edge) or one coupon."""

    kind: str
    id: str
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]


@dataclass(frozen=True)
class Band:
    lower: Fraction
    upper: Fraction
    blocks: Tuple[Block, ...]

    @property
    def nodes(self) -> Tuple[str, ...]:
        return tuple(b.id for b in self.blocks if b.kind == "node")

    @property
    def inputs(self) -> Tuple[str, ...]:
        return tuple(e for b in self.blocks for e in b.inputs)

    @property
    def outputs(self) -> Tuple[str, ...]:
        return tuple(e for b in self.blocks for e in b.outputs)


@dataclass(frozen=True)
class SliceIR:
    levels: Tuple[Fraction, ...]
    bands: Tuple[Band, ...]
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]


def _sorted_inner(graph: AbstractGraph, embedding: PlanarEmbedding) -> List[str]:
    return sorted((n.id for n in graph.inner_nodes()), key=lambda v: (embedding.position(v)[1], v))


def _linked(graph: AbstractGraph, node_id: str, band: Set[str]) -> bool:
    return any(e.source in band for e in graph.incoming(node_id)) or any(
        e.target in band for e in graph.outgoing(node_id)
    )


def greedy_bands(graph: AbstractGraph, embedding: PlanarEmbedding) -> List[List[str]]:
    """Bottom-up bands: a node joins the current band unless an edge links it to a node already there."""
    bands: List[List[str]] = []
    current: List[str] = []
    for v in _sorted_inner(graph, embedding):
        if current and _linked(graph, v, set(current)):
            bands.append(current)
            current = []
        current.append(v)
    if current:
        bands.append(current)
    return bands


def _midpoint_levels(embedding: PlanarEmbedding, bands: List[List[str]]) -> List[Fraction]:
    levels = [embedding.bottom]
    for lower, upper in zip(bands, bands[1:]):
        top_of_lower = max(embedding.position(v)[1] for v in lower)
        bottom_of_upper = min(embedding.position(v)[1] for v in upper)
        levels.append((top_of_lower + bottom_of_upper) / 2)
    levels.append(embedding.top)
    return levels


def bands_from_levels(graph: AbstractGraph, embedding: PlanarEmbedding, levels: Sequence[Fraction]) -> List[List[str]]:
    """Partitions the inner nodes by explicit interior level values.

    Raises:
        ValidationError: If a level leaves the strip, meets an inner node, or
            leaves two linked nodes in one band.
    """
    cuts = sorted(set(levels))
    for t in cuts:
        if not embedding.bottom < t < embedding.top:
            raise ValidationError(f"Level {t} is not inside ({embedding.bottom}, {embedding.top}).")
    heights = {v: embedding.position(v)[1] for v in _sorted_inner(graph, embedding)}
    for v, y in heights.items():
        if y in cuts:
            raise ValidationError(f"Level {y} passes through inner node {v}.")
    bounds = [embedding.bottom] + cuts + [embedding.top]
    bands: List[List[str]] = [[] for _ in range(len(bounds) - 1)]
    for v, y in heights.items():
        for i in range(len(bands)):
            if bounds[i] < y < bounds[i + 1]:
                bands[i].append(v)
                break
    for band in bands:
        members = set(band)
        for v in band:
            if _linked(graph, v, members):
                raise ValidationError(f"Levels {cuts} leave node {v} linked to another node of its band.")
    return bands


def admissible_levels(graph: AbstractGraph, embedding: PlanarEmbedding, rng: np.random.Generator) -> Tuple[Fraction, ...]:
    """A random regular choice of interior levels.

    Every gap between consecutive distinct node heights is cut with
    probability one half, and additionally wherever an edge between two inner
    nodes would otherwise stay inside one band. Each cut is placed at a random
    rational point of its gap.
    """
    heights = sorted({embedding.position(v)[1] for v in _sorted_inner(graph, embedding)})
    index = {y: i for i, y in enumerate(heights)}
    chosen = {i for i in range(len(heights) - 1) if rng.integers(0, 2)}
    inner = {n.id for n in graph.inner_nodes()}
    links = sorted(
        (
            (index[embedding.position(e.source)[1]], index[embedding.position(e.target)[1]])
            for e in graph.edges
            if e.source in inner and e.target in inner
        ),
        key=lambda pair: pair[1],
    )
    for lo, hi in links:
        if not any(lo <= g < hi for g in chosen):
            chosen.add(hi - 1)
    levels = []
    for g in sorted(chosen):
        step = int(rng.integers(1, 16))
        levels.append(heights[g] + (heights[g + 1] - heights[g]) * Fraction(step, 16))
    return tuple(levels)


def _sort_key(edge: Edge, embedding: PlanarEmbedding, level: Fraction):
    line = embedding.polyline(edge)
    x = x_at(line, level)
    if line[0][1] == level:
        tilt = slope_above(line, level)
    elif line[-1][1] == level:
        tilt = -slope_below(line, level)
    else:
        tilt = Fraction(0)
    return (x, tilt, edge.id)


def crossing_order(graph: AbstractGraph, embedding: PlanarEmbedding, below: Set[str], level: Fraction) -> Tuple[str, ...]:
    """Edges cut by the level line separating the nodes in ``below`` from the rest, left to right."""
    inner = {n.id for n in graph.inner_nodes()}

    def starts_below(v: str) -> bool:
        return v in below if v in inner else embedding.position(v)[1] == embedding.bottom

    def ends_above(v: str) -> bool:
        return v not in below if v in inner else embedding.position(v)[1] == embedding.top

    alive = [e for e in graph.edges if starts_below(e.source) and ends_above(e.target)]
    alive.sort(key=lambda e: _sort_key(e, embedding, level))
    return tuple(e.id for e in alive)


def _band_blocks(
    graph: AbstractGraph,
    embedding: PlanarEmbedding,
    polarization: Polarization,
    nodes: List[str],
    bottom: Tuple[str, ...],
    top: Tuple[str, ...],
    lower: Fraction,
    upper: Fraction,
) -> Tuple[Block, ...]:
    owner: Dict[str, str] = {}
    for v in nodes:
        for e in polarization.incoming[v] + polarization.outgoing[v]:
            owner[e] = v
    strands = [e for e in bottom if e in set(top)]

    def item_sequence(order: Tuple[str, ...]) -> List[str]:
        items: List[str] = []
        for e in order:
            item = owner.get(e, e)
            if items and items[-1] == item:
                continue
            if item in items:
                raise ValidationError(f"The edges of {item} are not contiguous on the level line.")
            items.append(item)
        return items

    sequences = [item_sequence(bottom), item_sequence(top)]
    for v in nodes:
        if tuple(e for e in bottom if owner.get(e) == v) != polarization.incoming[v]:
            raise ValidationError(f"Inputs of {v} cross the level line out of order.")
        if tuple(e for e in top if owner.get(e) == v) != polarization.outgoing[v]:
            raise ValidationError(f"Outputs of {v} cross the level line out of order.")

    items = strands + list(nodes)
    after: Dict[str, Set[str]] = {item: set() for item in items}
    indegree: Dict[str, int] = {item: 0 for item in items}

    def precede(a: str, b: str) -> None:
        if b not in after[a]:
            after[a].add(b)
            indegree[b] += 1

    for sequence in sequences:
        for a, b in zip(sequence, sequence[1:]):
            precede(a, b)
    for v in nodes:
        if polarization.incoming[v] or polarization.outgoing[v]:
            continue
        xv, yv = embedding.position(v)
        for e in strands:
            xe = x_at(embedding.polyline(graph.edge(e)), yv)
            precede(e, v) if xe < xv else precede(v, e)

    middle = (lower + upper) / 2

    def representative(item: str):
        if item in nodes:
            return (embedding.position(item)[0], item)
        return (x_at(embedding.polyline(graph.edge(item)), middle), item)

    ready = [(representative(i), i) for i in items if indegree[i] == 0]
    heapq.heapify(ready)
    ordered: List[str] = []
    while ready:
        _, item = heapq.heappop(ready)
        ordered.append(item)
        for nxt in sorted(after[item]):
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                heapq.heappush(ready, (representative(nxt), nxt))
    if len(ordered) != len(items):
        raise ValidationError("Left-to-right order of the band is inconsistent; the drawing is not planar.")

    blocks = []
    for item in ordered:
        if item in nodes:
            blocks.append(Block("node", item, polarization.incoming[item], polarization.outgoing[item]))
        else:
            blocks.append(Block("strand", item, (item,), (item,)))
    return tuple(blocks)


def slice_diagram(
    graph: AbstractGraph,
    embedding: PlanarEmbedding,
    levels: Optional[Sequence[Fraction]] = None,
    polarization: Optional[Polarization] = None,
) -> SliceIR:
    """Slices a validated progressive graph into bands of blocks.

    Without explicit ``levels`` the bands are chosen greedily bottom-up and cut
    at the midpoints between neighbouring bands.
    """
    polarization = polarization or polarize(graph, embedding)
    if levels is None:
        partition = greedy_bands(graph, embedding)
        cuts = _midpoint_levels(embedding, partition)
    else:
        partition = bands_from_levels(graph, embedding, levels)
        cuts = [embedding.bottom] + sorted(set(levels)) + [embedding.top]
    if not partition:
        partition = [[]]
        cuts = [embedding.bottom, embedding.top]

    orders = []
    below: Set[str] = set()
    for k, t in enumerate(cuts):
        orders.append(crossing_order(graph, embedding, below, t))
        if k < len(partition):
            below |= set(partition[k])

    bands = []
    for k, nodes in enumerate(partition):
        blocks = _band_blocks(graph, embedding, polarization, nodes, orders[k], orders[k + 1], cuts[k], cuts[k + 1])
        bands.append(Band(cuts[k], cuts[k + 1], blocks))
    return SliceIR(tuple(cuts), tuple(bands), orders[0], orders[-1])
