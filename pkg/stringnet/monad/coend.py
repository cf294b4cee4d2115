"""Coends T(M) = coend over c of F(c) (x) M (x) G(vc), realized over a finite probe set.

Two engines realize the same universal object:

* ``HopfCoend`` works for any module backend. As a vector space
  T(M) = M (x) H*, basis (m, i), and the injection of a module V sends
  v_j (x) m (x) v^k to m (x) (h -> <v^k, h v_j>). The H-action is transported
  from the probe summand F(H) (x) M (x) G(vH) through a section of the
  injection.
* ``SemisimpleCoend`` works for Vect_G. T(M) is the direct sum over the
  simples delta_g of F(delta_g) (x) M (x) G(v delta_g), basis (g, m).

Both engines share the injection formula, so they agree up to swapping the
two basis factors.
"""

import abc
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.matrices import DomainMatrix

from stringnet.backends.realized import ModuleBackend
from stringnet.backends.vectg import VectGBackend
from stringnet.core import exact
from stringnet.core.errors import BackendMismatchError, LawViolation, UniversalityError
from stringnet.core.morphism import Morphism
from stringnet.core.objects import Obj, ObjectWord, Rep, reversal_targets
from stringnet.monad.twisting import Twisting, from_powers


class Coend(abc.ABC):
    """The family of coends T(M) for one backend and one twisting."""

    def __init__(self, backend: ModuleBackend, twist: Twisting):
        if not isinstance(backend, ModuleBackend):
            raise BackendMismatchError(f"{backend.backend_id} has no module realization; coends need one.")
        self.backend = backend
        self.twist = twist
        self.field = backend.field
        self._objects: Dict[Obj, Rep] = {}
        self._sections: Dict[Obj, List[Tuple[Rep, DomainMatrix]]] = {}

    # ---------------------------------
    # Engine specific.
    # ---------------------------------

    @abc.abstractmethod
    def probes(self) -> List[Rep]:
        """The dense set of probe objects."""
        pass

    @abc.abstractmethod
    def _coefficient_count(self) -> int:
        """Number of copies of M in T(M)."""
        pass

    @abc.abstractmethod
    def _place(self, m: int, i: int, dim_m: int) -> int:
        """Row of T(M) holding basis vector m of M in coefficient slot i."""
        pass

    @abc.abstractmethod
    def _coefficient_action(self, V: Rep, i: int) -> DomainMatrix:
        """Matrix coefficient functional i on V, as the matrix A with ι_V(v_j (x) m (x) v^k) weighted by A[k][j]."""
        pass

    @abc.abstractmethod
    def _build(self, M: Rep) -> Tuple[Rep, List[Tuple[Rep, DomainMatrix]]]:
        """T(M) with its action and sections s_a satisfying sum_a q_a s_a = id."""
        pass

    @property
    def strategy(self) -> str:
        return type(self).__name__

    # ---------------------------------
    # Objects.
    # ---------------------------------

    def F(self, x: Obj) -> Obj:
        return self.twist.F(self.backend, x)

    def G(self, x: Obj) -> Obj:
        return self.twist.G(self.backend, x)

    def cowrap(self, c: Obj) -> Obj:
        return self.twist.cowrap(self.backend, c)

    def source(self, c: Obj, M: Obj) -> Obj:
        """F(c) (x) M (x) G(vc)."""
        return self.backend.tensor_all(self.F(c), M, self.cowrap(c))

    def obj(self, M: Obj) -> Rep:
        self.backend._own(M)
        if M not in self._objects:
            rep, sections = self._build(self.backend.realize(M))
            self._objects[M] = rep.relabel(f"T{self.twist.winding}({M})")
            self._sections[M] = sections
        return self._objects[M]

    def sections(self, M: Obj) -> List[Tuple[Rep, DomainMatrix]]:
        self.obj(M)
        return self._sections[M]

    # ---------------------------------
    # Injections.
    # ---------------------------------

    def _iota_matrix(self, V: Rep, dim_m: int) -> DomainMatrix:
        K = self.field
        d = V.dim
        rows = self._coefficient_count() * dim_m
        entries: Dict[Tuple[int, int], object] = {}
        for i in range(self._coefficient_count()):
            for (k, j), value in self._coefficient_action(V, i).to_dok().items():
                for m in range(dim_m):
                    entries[self._place(m, i, dim_m), (j * dim_m + m) * d + k] = value
        return exact.from_entries(entries, (rows, d * dim_m * d), K)

    def iota(self, c: Obj, M: Obj) -> Morphism:
        """ι_c: F(c) (x) M (x) G(vc) -> T(M).

        For a word c the dual factor G(vc) is a word in reversed letter order,
        so its basis is permuted onto the dual basis of the realized c first.
        """
        V = self.backend.realize(c)
        matrix = self._iota_matrix(V, M.dim)
        if isinstance(c, ObjectWord) and len(c) > 1:
            K = self.field
            reorder = exact.kron_all(
                [exact.identity(V.dim * M.dim, K), exact.permutation(reversal_targets(c.dims), K)], K
            )
            matrix = exact.matmul(matrix, reorder)
        return Morphism(self.source(c, M), self.obj(M), matrix)

    def probe_iota(self, a: int, M: Obj) -> Morphism:
        return self.iota(self.probes()[a], M)

    # ---------------------------------
    # Checks.
    # ---------------------------------

    def dinaturality_defect(self, u: Morphism, M: Obj) -> Optional[Morphism]:
        """ι_d (F(u) (x) id (x) id) - ι_c (id (x) id (x) G(vu)) for u: c -> d, or None when it vanishes."""
        backend = self.backend
        c, d = u.dom, u.codom
        left = backend.compose(
            self.iota(d, M),
            backend.tensor_all_morphisms(
                self.twist.F_morphism(backend, u), backend.identity(M), backend.identity(self.cowrap(d))
            ),
        )
        right = backend.compose(
            self.iota(c, M),
            backend.tensor_all_morphisms(
                backend.identity(self.F(c)),
                backend.identity(M),
                self.twist.G_morphism(backend, backend.left_dual_morphism(u)),
            ),
        )
        difference = exact.sub(left.matrix, right.matrix)
        if exact.is_zero(difference):
            return None
        return Morphism(left.dom, left.codom, difference)

    def verify_dinaturality(self, M: Obj, morphisms: Optional[Sequence[Morphism]] = None) -> None:
        """Checks dinaturality on the given morphisms, by default on bases of all probe hom spaces.

        Raises:
            LawViolation: Naming the first failing morphism.
        """
        if morphisms is None:
            morphisms = [
                u for P in self.probes() for Q in self.probes() for u in self.backend.hom_basis(P, Q)
            ]
        for index, u in enumerate(morphisms):
            if self.dinaturality_defect(u, M) is not None:
                raise LawViolation("dinaturality", {"object": str(M), "morphism": index, "from": str(u.dom), "to": str(u.codom)})

    def verify_universality(self, M: Obj) -> None:
        """Checks that the probe injections present T(M) as a cokernel.

        The injections must be jointly surjective, must be module maps, and
        their joint kernel must be spanned by the dinaturality relations over
        the probe hom spaces.

        Raises:
            UniversalityError: If any of the three conditions fails.
        """
        backend = self.backend
        K = self.field
        T = self.obj(M)
        probes = self.probes()
        q = exact.hstack([self.probe_iota(a, M).matrix for a in range(len(probes))], K, nrows=T.dim)
        if exact.rank(q) != T.dim:
            raise UniversalityError(f"Probe injections into {T} are not jointly surjective.")
        for a in range(len(probes)):
            if not backend.is_morphism(self.probe_iota(a, M)):
                raise UniversalityError(f"Injection from probe {probes[a]} is not a module map.")
        sizes = [self.source(P, M).dim for P in probes]
        offsets = [sum(sizes[:a]) for a in range(len(probes))]
        total = sum(sizes)
        relations = []
        for a, P in enumerate(probes):
            for b, Q in enumerate(probes):
                for u in backend.hom_basis(P, Q):
                    F_u = backend.tensor_all_morphisms(
                        self.twist.F_morphism(backend, u), backend.identity(M), backend.identity(self.cowrap(Q))
                    )
                    G_u = backend.tensor_all_morphisms(
                        backend.identity(self.F(P)),
                        backend.identity(M),
                        self.twist.G_morphism(backend, backend.left_dual_morphism(u)),
                    )
                    entries: Dict[Tuple[int, int], object] = {}
                    for (i, j), value in F_u.matrix.to_dok().items():
                        entries[offsets[b] + i, j] = entries.get((offsets[b] + i, j), K.zero) + value
                    for (i, j), value in G_u.matrix.to_dok().items():
                        entries[offsets[a] + i, j] = entries.get((offsets[a] + i, j), K.zero) - value
                    relations.append(exact.from_entries(entries, (total, F_u.matrix.shape[1]), K))
        D = exact.hstack(relations, K, nrows=total) if relations else exact.zeros((total, 0), K)
        if not exact.is_zero(exact.matmul(q, D)):
            raise UniversalityError(f"Dinaturality relations do not vanish in {T}.")
        if exact.rank(D) != total - T.dim:
            raise UniversalityError(
                f"Relations over the probes span {exact.rank(D)} dimensions, expected {total - T.dim}; the probes are not dense."
            )
        logger.debug(f"{self.strategy}: {T} of dimension {T.dim} is universal for {len(probes)} probes.")


class HopfCoend(Coend):
    """T(M) = M (x) H* for H-mod, presented over the regular module or given probes."""

    def __init__(self, backend: ModuleBackend, twist: Twisting, probes: Optional[Sequence[Rep]] = None):
        super().__init__(backend, twist)
        self._probes = list(probes) if probes else [backend.regular_rep()]
        self._regular = probes is None

    def probes(self) -> List[Rep]:
        return self._probes

    def _coefficient_count(self) -> int:
        return self.backend.algebra.dim

    def _place(self, m: int, i: int, dim_m: int) -> int:
        return m * self.backend.algebra.dim + i

    def _coefficient_action(self, V: Rep, i: int) -> DomainMatrix:
        return V.action[i]

    def _build(self, M: Rep) -> Tuple[Rep, List[Tuple[Rep, DomainMatrix]]]:
        H = self.backend.algebra
        K = self.field
        dim_t = M.dim * H.dim
        probes = self.probes()
        sources = [self.backend.realize(self.source(P, M)) for P in probes]
        qs = [self._iota_matrix(P, M.dim) for P in probes]
        if self._regular:
            # ι_H(1 (x) m (x) b^i) = m (x) b_i*.
            s = exact.kron(H.unit_vector(), exact.identity(dim_t, K))
            sections = [(probes[0], s)]
        else:
            q = exact.hstack(qs, K, nrows=dim_t)
            solution = exact.solve(q, exact.identity(dim_t, K))
            if solution is None:
                raise UniversalityError(f"Probes {[str(P) for P in probes]} do not cover T({M}).")
            sections, row = [], 0
            for P, Q in zip(probes, sources):
                sections.append((P, exact.submatrix(solution, list(range(row, row + Q.dim)), list(range(dim_t)))))
                row += Q.dim
        action = []
        for h in range(H.dim):
            total = exact.zeros((dim_t, dim_t), K)
            for (P, s), Q, q in zip(sections, sources, qs):
                total = exact.add(total, exact.chain(q, Q.action[h], s))
            action.append(total)
        return Rep(f"T({M})", dim_t, tuple(action), self.backend.backend_id), sections


class SemisimpleCoend(Coend):
    """T(M) = direct sum over g of delta_g (x) M (x) delta_g^-1 for Vect_G, basis (g, m)."""

    def __init__(self, backend: VectGBackend, twist: Twisting):
        if not isinstance(backend, VectGBackend):
            raise BackendMismatchError(f"{backend.backend_id} is not a Vect_G backend.")
        super().__init__(backend, twist)

    def probes(self) -> List[Rep]:
        return self.backend.simple_reps()

    def _coefficient_count(self) -> int:
        return self.backend.group.order

    def _place(self, m: int, i: int, dim_m: int) -> int:
        return i * dim_m + m

    def _coefficient_action(self, V: Rep, i: int) -> DomainMatrix:
        return V.action[i]

    def _build(self, M: Rep) -> Tuple[Rep, List[Tuple[Rep, DomainMatrix]]]:
        K = self.field
        n = self.backend.group.order
        summands = [self.backend.realize(self.source(P, M)) for P in self.probes()]
        rep = self.backend.direct_sum(summands, f"T({M})")
        sections = []
        for g, P in enumerate(self.probes()):
            rows = list(range(M.dim))
            entries = {(m, g * M.dim + m): K.one for m in rows}
            sections.append((P, exact.from_entries(entries, (M.dim, n * M.dim), K)))
        return rep, sections


STRATEGIES = {"hopf": HopfCoend, "semisimple": SemisimpleCoend}


def make_coend(backend: ModuleBackend, twist: Twisting, strategy: Optional[str] = None, probes=None) -> Coend:
    """Picks the semisimple engine for Vect_G and the Hopf engine otherwise, unless ``strategy`` says otherwise."""
    if strategy is None:
        strategy = "semisimple" if isinstance(backend, VectGBackend) and probes is None else "hopf"
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown coend strategy {strategy!r}; choose from {sorted(STRATEGIES)}.")
    if strategy == "hopf":
        return HopfCoend(backend, twist, probes)
    return SemisimpleCoend(backend, twist)


@dataclass(frozen=True)
class CoendObject:
    """T(y) together with its injections."""

    coend: Coend
    source: Obj

    @property
    def obj(self) -> Rep:
        return self.coend.obj(self.source)

    def iota(self, c: Obj) -> Morphism:
        return self.coend.iota(c, self.source)

    def probes(self) -> List[Rep]:
        return self.coend.probes()


def build_coend(
    f_power: int,
    g_power: int,
    y: Obj,
    backend: ModuleBackend,
    probes: Optional[Sequence[Rep]] = None,
    strategy: Optional[str] = None,
    verify: bool = True,
) -> CoendObject:
    """Builds T(y) for the twisting (F, G) = (D^f_power, D^g_power) and checks it.

    Raises:
        UniversalityError: If the probes do not present the coend.
        LawViolation: If an injection fails dinaturality on a probe morphism.
    """
    coend = make_coend(backend, from_powers(f_power, g_power), strategy, probes)
    result = CoendObject(coend, y)
    if verify:
        coend.verify_universality(y)
        coend.verify_dinaturality(y)
    logger.info(f"Built {result.obj} of dimension {result.obj.dim} with {coend.strategy}.")
    return result
