import abc
import hashlib
import json
from typing import Dict, List, Tuple

from sympy.polys.matrices import DomainMatrix

from stringnet.core import exact
from stringnet.core.errors import BackendMismatchError
from stringnet.core.morphism import Morphism, compose, compose_all, identity
from stringnet.core.objects import Letter, Obj, ObjectWord, Rep, reversal_targets, tensor_objects


class CategoryBackend(abc.ABC):
    """An abstract strict rigid tensor category with computable hom spaces.

    Objects are tensor words of generators. Every object can also be realized
    as a ``Rep`` (a module with explicit action matrices), which is how direct
    sums and coend objects enter. The dual and evaluation conventions are:

    * ev_x: x (x) vx -> 1 and coev_x: 1 -> vx (x) x (left duals),
    * ev~_x: x^v (x) x -> 1 and coev~_x: 1 -> x (x) x^v (right duals),

    with dual bases in the same index order, so every structure map of a
    single factor is the identity pattern.
    """

    def __init__(self, backend_id: str, field):
        self.backend_id = backend_id
        self.field = field
        self._realized: Dict[ObjectWord, Rep] = {}

    # ---------------------------------
    # Primitives.
    # ---------------------------------

    @abc.abstractmethod
    def generators(self) -> List[ObjectWord]:
        """The generating objects, each as a one-letter word."""
        pass

    @abc.abstractmethod
    def left_dual_letter(self, letter: Letter) -> Letter:
        """vx for a generator x."""
        pass

    @abc.abstractmethod
    def right_dual_letter(self, letter: Letter) -> Letter:
        """x^v for a generator x."""
        pass

    @abc.abstractmethod
    def double_dual_letter(self, letter: Letter, k: int) -> Letter:
        """The k-th power of the right double dual on a generator."""
        pass

    @abc.abstractmethod
    def realize_letter(self, letter: Letter) -> Rep:
        """The module underlying a generator."""
        pass

    @abc.abstractmethod
    def unit_rep(self) -> Rep:
        """The realized monoidal unit."""
        pass

    @abc.abstractmethod
    def tensor_reps(self, *reps: Rep) -> Rep:
        """Tensor product of realized objects on the lexicographic basis."""
        pass

    @abc.abstractmethod
    def twist_rep(self, rep: Rep, t: int) -> Rep:
        """t = -1 left dual, t = 1 right dual, t = 2k the k-th double dual power."""
        pass

    @abc.abstractmethod
    def left_dual_rep(self, rep: Rep) -> Rep:
        pass

    @abc.abstractmethod
    def right_dual_rep(self, rep: Rep) -> Rep:
        pass

    @abc.abstractmethod
    def double_dual_rep(self, rep: Rep, k: int) -> Rep:
        pass

    @abc.abstractmethod
    def intertwiners(self, source: Rep, target: Rep) -> List[DomainMatrix]:
        """Basis of the morphism space between realized objects."""
        pass

    @abc.abstractmethod
    def fingerprint_data(self) -> dict:
        """Canonical, JSON-serializable description of the backend."""
        pass

    # ---------------------------------
    # Objects.
    # ---------------------------------

    def unit(self) -> ObjectWord:
        return ObjectWord((), self.backend_id)

    def word(self, *labels: str) -> ObjectWord:
        """The word of the named generators (untwisted)."""
        by_label = {w.letters[0].label: w.letters[0] for w in self.generators()}
        try:
            return ObjectWord(tuple(by_label[label] for label in labels), self.backend_id)
        except KeyError as e:
            raise BackendMismatchError(f"{self.backend_id} has no generator {e.args[0]!r}.")

    def _own(self, *objects: Obj) -> None:
        for x in objects:
            if x.backend_id != self.backend_id:
                raise BackendMismatchError(f"{x} belongs to {x.backend_id}, not {self.backend_id}.")

    def dim(self, x: Obj) -> int:
        return x.dim

    def realize(self, x: Obj) -> Rep:
        self._own(x)
        if isinstance(x, Rep):
            return x
        if x not in self._realized:
            if x.is_unit():
                rep = self.unit_rep()
            else:
                rep = self.tensor_reps(*(self.realize_letter(letter) for letter in x.letters))
            self._realized[x] = rep.relabel(str(x))
        return self._realized[x]

    def tensor_objects(self, a: Obj, b: Obj) -> Obj:
        self._own(a, b)
        if isinstance(a, ObjectWord) and isinstance(b, ObjectWord):
            return tensor_objects(a, b)
        return self.tensor_reps(self.realize(a), self.realize(b))

    def tensor_all(self, *objects: Obj) -> Obj:
        result: Obj = self.unit()
        for x in objects:
            result = self.tensor_objects(result, x)
        return result

    def left_dual(self, x: Obj) -> Obj:
        self._own(x)
        if isinstance(x, Rep):
            return self.left_dual_rep(x)
        return ObjectWord(tuple(self.left_dual_letter(l) for l in reversed(x.letters)), self.backend_id)

    def right_dual(self, x: Obj) -> Obj:
        self._own(x)
        if isinstance(x, Rep):
            return self.right_dual_rep(x)
        return ObjectWord(tuple(self.right_dual_letter(l) for l in reversed(x.letters)), self.backend_id)

    def double_dual_power(self, x: Obj, k: int) -> Obj:
        """Applies (.)^vv k times (vv(.) when k is negative); word order is kept."""
        self._own(x)
        if isinstance(x, Rep):
            return self.double_dual_rep(x, k)
        return ObjectWord(tuple(self.double_dual_letter(l, k) for l in x.letters), self.backend_id)

    # ---------------------------------
    # Morphisms.
    # ---------------------------------

    def identity(self, x: Obj) -> Morphism:
        self._own(x)
        return identity(x, self.field)

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        self._own(g.dom, f.dom)
        return compose(g, f)

    def tensor_morphisms(self, f: Morphism, g: Morphism) -> Morphism:
        self._own(f.dom, g.dom)
        return Morphism(
            self.tensor_objects(f.dom, g.dom),
            self.tensor_objects(f.codom, g.codom),
            exact.kron(f.matrix, g.matrix),
        )

    def tensor_all_morphisms(self, *morphisms: Morphism) -> Morphism:
        result = self.identity(self.unit())
        for f in morphisms:
            result = self.tensor_morphisms(result, f)
        return result

    def _reversed_index(self, x: Obj) -> Tuple[int, ...]:
        """For each basis index I of x, the index of the dual basis vector paired with it."""
        dims = x.dims if isinstance(x, ObjectWord) else (x.dim,)
        targets = reversal_targets(dims)
        inverse = [0] * len(targets)
        for r, i in enumerate(targets):
            inverse[i] = r
        return tuple(inverse)

    def ev_left(self, x: Obj) -> Morphism:
        """ev_x: x (x) vx -> 1."""
        pairing = self._reversed_index(x)
        d = x.dim
        matrix = exact.from_entries({(0, i * d + pairing[i]): self.field.one for i in range(d)}, (1, d * d), self.field)
        return Morphism(self.tensor_objects(x, self.left_dual(x)), self._unit_like(x), matrix)

    def coev_left(self, x: Obj) -> Morphism:
        """coev_x: 1 -> vx (x) x."""
        pairing = self._reversed_index(x)
        d = x.dim
        matrix = exact.from_entries({(pairing[i] * d + i, 0): self.field.one for i in range(d)}, (d * d, 1), self.field)
        return Morphism(self._unit_like(x), self.tensor_objects(self.left_dual(x), x), matrix)

    def ev_right(self, x: Obj) -> Morphism:
        """ev~_x: x^v (x) x -> 1."""
        pairing = self._reversed_index(x)
        d = x.dim
        matrix = exact.from_entries({(0, pairing[i] * d + i): self.field.one for i in range(d)}, (1, d * d), self.field)
        return Morphism(self.tensor_objects(self.right_dual(x), x), self._unit_like(x), matrix)

    def coev_right(self, x: Obj) -> Morphism:
        """coev~_x: 1 -> x (x) x^v."""
        pairing = self._reversed_index(x)
        d = x.dim
        matrix = exact.from_entries({(i * d + pairing[i], 0): self.field.one for i in range(d)}, (d * d, 1), self.field)
        return Morphism(self._unit_like(x), self.tensor_objects(x, self.right_dual(x)), matrix)

    def _unit_like(self, x: Obj) -> Obj:
        return self.unit() if isinstance(x, ObjectWord) else self.unit_rep()

    def left_dual_morphism(self, f: Morphism) -> Morphism:
        """For f: a -> b, vf: vb -> va = (id (x) ev_b)(id (x) f (x) id)(coev_a (x) id)."""
        a, b = f.dom, f.codom
        va, vb = self.left_dual(a), self.left_dual(b)
        return compose_all(
            self.tensor_morphisms(self.identity(va), self.ev_left(b)),
            self.tensor_all_morphisms(self.identity(va), f, self.identity(vb)),
            self.tensor_morphisms(self.coev_left(a), self.identity(vb)),
        )

    def right_dual_morphism(self, f: Morphism) -> Morphism:
        """For f: a -> b, f^v: b^v -> a^v = (ev~_b (x) id)(id (x) f (x) id)(id (x) coev~_a)."""
        a, b = f.dom, f.codom
        ar, br = self.right_dual(a), self.right_dual(b)
        return compose_all(
            self.tensor_morphisms(self.ev_right(b), self.identity(ar)),
            self.tensor_all_morphisms(self.identity(br), f, self.identity(ar)),
            self.tensor_morphisms(self.identity(br), self.coev_right(a)),
        )

    def double_dual_morphism(self, f: Morphism, k: int) -> Morphism:
        """The double dual functor is the identity on matrices."""
        return Morphism(self.double_dual_power(f.dom, k), self.double_dual_power(f.codom, k), f.matrix)

    def hom_basis(self, x: Obj, y: Obj) -> List[Morphism]:
        """Basis of Hom(x, y), ordered by the reduced echelon form of the intertwiner equations."""
        self._own(x, y)
        return [Morphism(x, y, m) for m in self.intertwiners(self.realize(x), self.realize(y))]

    def is_morphism(self, f: Morphism) -> bool:
        source, target = self.realize(f.dom), self.realize(f.codom)
        return all(
            exact.equal(exact.matmul(f.matrix, a), exact.matmul(b, f.matrix))
            for a, b in zip(source.action, target.action)
        )

    def fingerprint(self) -> str:
        payload = json.dumps(self.fingerprint_data(), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()
