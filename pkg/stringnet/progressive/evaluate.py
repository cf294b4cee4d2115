"""Evaluation of colored progressive graphs.

A band of a slicing evaluates to the tensor product of its blocks, and the
graph evaluates to the composite of its bands from bottom to top. The result
does not depend on the slicing; ``tests/progressive`` checks this for random
levels and random jitters of the drawing.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from loguru import logger

from stringnet.core.backend import CategoryBackend
from stringnet.core.errors import ColoringError, ValidationError
from stringnet.core.morphism import Morphism, compose
from stringnet.core.objects import ObjectWord
from stringnet.progressive.geometry import PlanarEmbedding
from stringnet.progressive.graph import AbstractGraph
from stringnet.progressive.polarize import Polarization, polarize
from stringnet.progressive.slicing import Band, SliceIR, slice_diagram
from stringnet.progressive.validate import validate_progressive


@dataclass(frozen=True)
class Coloring:
    """Objects on edges and morphisms on inner nodes."""

    edge_colors: Mapping[str, ObjectWord]
    node_morphisms: Mapping[str, Morphism] = field(default_factory=dict)

    def color(self, edge_id: str) -> ObjectWord:
        try:
            return self.edge_colors[edge_id]
        except KeyError:
            raise ColoringError(edge_id, "an object", "no color")

    def morphism(self, node_id: str) -> Morphism:
        try:
            return self.node_morphisms[node_id]
        except KeyError:
            raise ColoringError(node_id, "a morphism", "no coupon")

    def word(self, backend: CategoryBackend, edge_ids: Sequence[str]) -> ObjectWord:
        return backend.tensor_all(*(self.color(e) for e in edge_ids))

    def renamed(self, prefix: str) -> "Coloring":
        return Coloring(
            {prefix + k: v for k, v in self.edge_colors.items()},
            {prefix + k: v for k, v in self.node_morphisms.items()},
        )

    def merged(self, other: "Coloring") -> "Coloring":
        return Coloring({**self.edge_colors, **other.edge_colors}, {**self.node_morphisms, **other.node_morphisms})


def check_coloring(
    graph: AbstractGraph,
    coloring: Coloring,
    backend: CategoryBackend,
    polarization: Polarization,
) -> None:
    """Checks every coupon against the words of its polarized edges.

    Raises:
        ColoringError: Naming the first node (in id order) whose morphism has
            the wrong domain or codomain, or is not a morphism of the backend.
    """
    for edge in graph.edges:
        color = coloring.color(edge.id)
        if color.backend_id != backend.backend_id:
            raise ColoringError(edge.id, backend.backend_id, color.backend_id)
    for node in sorted(graph.inner_nodes(), key=lambda n: n.id):
        f = coloring.morphism(node.id)
        dom = coloring.word(backend, polarization.incoming[node.id])
        codom = coloring.word(backend, polarization.outgoing[node.id])
        if f.dom != dom or f.codom != codom:
            raise ColoringError(node.id, f"{dom} -> {codom}", f"{f.dom} -> {f.codom}")
        if not backend.is_morphism(f):
            raise ColoringError(node.id, "a module map", "a matrix that does not intertwine the actions")


def evaluate_band(band: Band, coloring: Coloring, backend: CategoryBackend) -> Morphism:
    pieces = []
    for block in band.blocks:
        if block.kind == "strand":
            pieces.append(backend.identity(coloring.color(block.id)))
        else:
            pieces.append(coloring.morphism(block.id))
    return backend.tensor_all_morphisms(*pieces)


def evaluate_slices(ir: SliceIR, coloring: Coloring, backend: CategoryBackend) -> Morphism:
    """Composes the band morphisms bottom to top."""
    result = backend.identity(coloring.word(backend, ir.inputs))
    for band in ir.bands:
        result = compose(evaluate_band(band, coloring, backend), result)
    return result


def evaluate(
    graph: AbstractGraph,
    embedding: PlanarEmbedding,
    coloring: Coloring,
    backend: CategoryBackend,
    levels: Optional[Sequence[Fraction]] = None,
    validate: bool = True,
) -> Morphism:
    """The morphism f_G from the bottom word to the top word of a colored progressive graph.

    Raises:
        ValidationError: If the drawing is not progressive or ``levels`` are not regular.
        ColoringError: If a coupon does not fit its edges.
    """
    if validate:
        report = validate_progressive(graph, embedding)
        if not report.accepted:
            raise ValidationError("; ".join(v.message for v in report.violations))
    polarization = polarize(graph, embedding)
    check_coloring(graph, coloring, backend, polarization)
    ir = slice_diagram(graph, embedding, levels, polarization)
    result = evaluate_slices(ir, coloring, backend)
    logger.debug(f"Evaluated {len(graph.inner_nodes())} coupons in {len(ir.bands)} bands: {result}.")
    return result


def band_summary(ir: SliceIR) -> Tuple[Dict[str, object], ...]:
    """Plain-data view of a slicing, for reports."""
    return tuple(
        {
            "lower": str(band.lower),
            "upper": str(band.upper),
            "blocks": [[b.kind, b.id] for b in band.blocks],
        }
        for band in ir.bands
    )
