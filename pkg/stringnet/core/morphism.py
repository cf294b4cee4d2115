from dataclasses import dataclass

from sympy.polys.matrices import DomainMatrix

from stringnet.core import exact
from stringnet.core.errors import BackendMismatchError, CompositionError
from stringnet.core.objects import Obj, ObjectWord, tensor_objects


@dataclass(frozen=True, eq=False)
class Morphism:
    """An exact matrix of shape (dim codom) x (dim dom) between two objects."""

    dom: Obj
    codom: Obj
    matrix: DomainMatrix

    def __post_init__(self):
        if self.dom.backend_id != self.codom.backend_id:
            raise BackendMismatchError(
                f"Morphism from {self.dom} ({self.dom.backend_id}) to {self.codom} ({self.codom.backend_id})."
            )
        expected = (self.codom.dim, self.dom.dim)
        if self.matrix.shape != expected:
            raise ValueError(f"Matrix shape {self.matrix.shape} does not match {expected} for {self.dom} -> {self.codom}.")

    @property
    def backend_id(self) -> str:
        return self.dom.backend_id

    @property
    def field(self):
        return self.matrix.domain

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.dom == other.dom and self.codom == other.codom and exact.equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.matrix.shape, self.backend_id))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def __add__(self, other: "Morphism") -> "Morphism":
        _check_parallel(self, other)
        return Morphism(self.dom, self.codom, exact.add(self.matrix, other.matrix))

    def __sub__(self, other: "Morphism") -> "Morphism":
        _check_parallel(self, other)
        return Morphism(self.dom, self.codom, exact.sub(self.matrix, other.matrix))

    def scaled(self, c) -> "Morphism":
        return Morphism(self.dom, self.codom, exact.scale(c, self.matrix))

    def retyped(self, dom: Obj, codom: Obj) -> "Morphism":
        return Morphism(dom, codom, self.matrix)

    def is_zero(self) -> bool:
        return exact.is_zero(self.matrix)

    def __str__(self) -> str:
        return f"{self.dom} -> {self.codom}"


def _check_parallel(f: Morphism, g: Morphism) -> None:
    if f.dom != g.dom or f.codom != g.codom:
        raise CompositionError(f"{f}", f"{g}")


def identity(x: Obj, K) -> Morphism:
    return Morphism(x, x, exact.identity(x.dim, K))


def zero(x: Obj, y: Obj, K) -> Morphism:
    return Morphism(x, y, exact.zeros((y.dim, x.dim), K))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """Returns g after f.

    Raises:
        CompositionError: If dom(g) differs from codom(f).
    """
    if g.dom != f.codom:
        raise CompositionError(g.dom, f.codom)
    return Morphism(f.dom, g.codom, exact.matmul(g.matrix, f.matrix))


def compose_all(*morphisms: Morphism) -> Morphism:
    """Composite of the morphisms, the rightmost applied first."""
    result = morphisms[-1]
    for g in reversed(morphisms[:-1]):
        result = compose(g, result)
    return result


def tensor_morphisms(f: Morphism, g: Morphism) -> Morphism:
    """f (x) g as a Kronecker product on the lexicographic tensor basis.

    Words tensor by concatenation. Realized objects tensor through the
    backend, so mixing Reps here requires ``CategoryBackend.tensor_morphisms``.
    """
    if f.backend_id != g.backend_id:
        raise BackendMismatchError(f"Cannot tensor morphisms from {f.backend_id} and {g.backend_id}.")
    if not all(isinstance(x, ObjectWord) for x in (f.dom, f.codom, g.dom, g.codom)):
        raise TypeError("tensor_morphisms on realized objects must go through the backend.")
    return Morphism(
        tensor_objects(f.dom, g.dom),
        tensor_objects(f.codom, g.codom),
        exact.kron(f.matrix, g.matrix),
    )


