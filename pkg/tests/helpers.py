from pathlib import Path
from typing import Dict, List

import numpy as np
from rich.console import Console

import constants
from stringnet.core import exact
from stringnet.core.backend import CategoryBackend
from stringnet.core.morphism import Morphism, compose_all
from stringnet.core.objects import Obj
from stringnet.progressive.diagram import ProgressiveDiagram


def data_path(name: str) -> Path:
    return constants.DATA_DIR / name


def random_morphism(backend: CategoryBackend, x: Obj, y: Obj, rng: np.random.Generator) -> Morphism:
    """A seeded random element of Hom(x, y), built on its basis."""
    K = backend.field
    basis = backend.hom_basis(x, y)
    values = rng.integers(-constants.RANDOM_SCALAR_BOUND, constants.RANDOM_SCALAR_BOUND + 1, size=len(basis))
    matrix = exact.linear_combination([K(int(v)) for v in values], [f.matrix for f in basis], (y.dim, x.dim), K)
    return Morphism(x, y, matrix)


def recolored(diagram: ProgressiveDiagram, backend: CategoryBackend, rng: np.random.Generator) -> ProgressiveDiagram:
    """The same drawing with every coupon replaced by a random morphism of its type."""
    morphisms: Dict[str, Morphism] = {}
    for node_id, f in sorted(diagram.coloring.node_morphisms.items()):
        morphisms[node_id] = random_morphism(backend, f.dom, f.codom, rng)
    return diagram.with_morphisms(morphisms)


def five_coupon_bands(diagram: ProgressiveDiagram, backend: CategoryBackend):
    """The three bands of the bundled five coupon diagram, assembled by hand."""
    f = diagram.coloring.morphism
    color = diagram.coloring.color
    band1 = backend.tensor_all_morphisms(
        backend.identity(color("X1")), backend.identity(color("X2")), f("f4"), backend.identity(color("X4"))
    )
    band2 = backend.tensor_all_morphisms(f("f1"), f("f2"), backend.identity(color("Z2")), f("f5"))
    band3 = backend.tensor_morphisms(backend.identity(color("Y1")), f("f3"))
    return band1, band2, band3


def five_coupon_value(diagram: ProgressiveDiagram, backend: CategoryBackend) -> Morphism:
    band1, band2, band3 = five_coupon_bands(diagram, backend)
    return compose_all(band3, band2, band1)


class MockConsole:
    """
    Stands in for the stderr console of the command line.
    Captures every print output as plain text.
    """

    def __init__(self):
        self.captured: List[str] = []

    def print(self, *args, **kwargs):
        console = Console(width=1000, no_color=True)  # wide enough that tables are not wrapped
        with console.capture() as capture:
            console.print(*args, **kwargs)
        self.captured.append(capture.get())

    @property
    def text(self) -> str:
        return "".join(self.captured)
