from dataclasses import dataclass, field
from typing import Iterator, Sequence, Tuple, Union

from sympy.polys.matrices import DomainMatrix

from stringnet.core import exact
from stringnet.core.errors import BackendMismatchError


@dataclass(frozen=True)
class Letter:
    """A generating object of a backend.

    ``twist`` counts applications of the right double dual: twist 2k is the
    k-th power of (.)^vv, odd twists are duals. Backends with a strict double
    dual keep every letter at twist 0.
    """

    label: str
    dim: int
    twist: int = 0

    def __str__(self) -> str:
        if self.twist == 0:
            return self.label
        return f"{self.label}^{self.twist:+d}"


@dataclass(frozen=True)
class ObjectWord:
    """Tensor word of generating objects; the empty word is the monoidal unit."""

    letters: Tuple[Letter, ...]
    backend_id: str

    @property
    def dim(self) -> int:
        result = 1
        for letter in self.letters:
            result *= letter.dim
        return result

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(letter.dim for letter in self.letters)

    def is_unit(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __add__(self, other: "ObjectWord") -> "ObjectWord":
        return tensor_objects(self, other)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "(" + ",".join(str(letter) for letter in self.letters) + ")"


def tensor_objects(a: ObjectWord, b: ObjectWord) -> ObjectWord:
    """Strict monoidal product: concatenation of words.

    Raises:
        BackendMismatchError: If the words belong to different backends.
    """
    if a.backend_id != b.backend_id:
        raise BackendMismatchError(f"Cannot tensor {a} from {a.backend_id} with {b} from {b.backend_id}.")
    return ObjectWord(a.letters + b.letters, a.backend_id)


@dataclass(frozen=True, eq=False)
class Rep:
    """A realized object: a finite dimensional module over the backend's realization algebra.

    Words realize to Reps with the lexicographic tensor basis. Coend objects,
    direct sums and images of idempotents only exist as Reps.
    """

    label: str
    dim: int
    action: Tuple[DomainMatrix, ...]
    backend_id: str
    factors: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        for i, matrix in enumerate(self.action):
            if matrix.shape != (self.dim, self.dim):
                raise ValueError(f"Action matrix {i} of {self.label} has shape {matrix.shape}, expected {(self.dim, self.dim)}.")
        if not self.factors:
            object.__setattr__(self, "factors", (self.dim,))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rep):
            return NotImplemented
        return (
            self.backend_id == other.backend_id
            and self.dim == other.dim
            and len(self.action) == len(other.action)
            and all(exact.equal(a, b) for a, b in zip(self.action, other.action))
        )

    def __hash__(self) -> int:
        return hash((self.backend_id, self.dim, len(self.action)))

    def __str__(self) -> str:
        return self.label

    def relabel(self, label: str) -> "Rep":
        return Rep(label, self.dim, self.action, self.backend_id, self.factors)


Obj = Union[ObjectWord, Rep]


def backend_of(*objects: Obj) -> str:
    ids = {obj.backend_id for obj in objects}
    if len(ids) != 1:
        raise BackendMismatchError(f"Objects from several backends: {sorted(ids)}.")
    return ids.pop()


def reversal_targets(dims: Sequence[int]) -> Tuple[int, ...]:
    """For each index of the reversed tensor basis, the index of the reversed tuple in ``dims`` order.

    Entry r of the result is the position, in the basis of factors ``dims``,
    of the basis vector whose digit tuple is the reverse of digit tuple r in
    the basis of factors ``reversed(dims)``.
    """
    rdims = list(reversed(dims))
    total = 1
    for d in dims:
        total *= d
    targets = []
    for r in range(total):
        digits = []
        rest = r
        for d in reversed(rdims):
            rest, digit = divmod(rest, d)
            digits.append(digit)
        # digits now lists the reversed-basis digits from the last factor back,
        # which is exactly the digit tuple in ``dims`` order.
        index = 0
        for d, digit in zip(dims, digits):
            index = index * d + digit
        targets.append(index)
    return tuple(targets)
