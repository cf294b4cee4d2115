"""The twisted central monad T_n(y) = coend over c of F(c) (x) y (x) G(vc).

The multiplication is induced by the injections of tensor products of probes:
mu o ι_c o (id (x) ι_d (x) id) = ι_{c (x) d}, and the unit is η = ι_1.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from loguru import logger
from sympy.polys.matrices import DomainMatrix

from stringnet.backends.realized import ModuleBackend
from stringnet.core import exact
from stringnet.core.errors import LawViolation
from stringnet.core.morphism import Morphism
from stringnet.core.objects import Obj, Rep, reversal_targets
from stringnet.monad.coend import Coend, make_coend
from stringnet.monad.twisting import twisting


class Monad:
    """T with its multiplication and unit, cached per object."""

    def __init__(self, coend: Coend):
        self.coend = coend
        self.backend: ModuleBackend = coend.backend
        self.field = coend.field
        self._mu: Dict[Obj, Morphism] = {}

    @property
    def winding(self) -> int:
        return self.coend.twist.winding

    def T(self, M: Obj) -> Rep:
        return self.coend.obj(M)

    def iota(self, c: Obj, M: Obj) -> Morphism:
        return self.coend.iota(c, M)

    def functor(self, f: Morphism) -> Morphism:
        """T(f) = sum over probes of ι^N_P (id (x) f (x) id) s^M_P for f: M -> N."""
        K = self.field
        M, N = f.dom, f.codom
        TM, TN = self.T(M), self.T(N)
        total = exact.zeros((TN.dim, TM.dim), K)
        for P, s in self.coend.sections(M):
            middle = exact.kron_all([exact.identity(P.dim, K), f.matrix, exact.identity(P.dim, K)], K)
            total = exact.add(total, exact.chain(self.coend.iota(P, N).matrix, middle, s))
        return Morphism(TM, TN, total)

    def unit(self, M: Obj) -> Morphism:
        """η_M = ι_1, read as a map M -> T(M)."""
        return self.coend.iota(self.backend.unit(), M).retyped(M, self.T(M))

    def multiplication(self, M: Obj) -> Morphism:
        """μ_M: T(T(M)) -> T(M)."""
        if M in self._mu:
            return self._mu[M]
        K = self.field
        backend = self.backend
        TM = self.T(M)
        TTM = self.T(TM)
        inner = self.coend.sections(M)
        total = exact.zeros((TM.dim, TTM.dim), K)
        for P, outer_section in self.coend.sections(TM):
            for R, inner_section in inner:
                pair = backend.tensor_reps(P, R)
                middle = exact.kron_all([exact.identity(P.dim, K), inner_section, exact.identity(P.dim, K)], K)
                # vR (x) vP onto the dual basis of P (x) R.
                reorder = exact.kron(
                    exact.identity(P.dim * R.dim * M.dim, K), exact.permutation(reversal_targets((P.dim, R.dim)), K)
                )
                injection = self.coend._iota_matrix(pair, M.dim)
                total = exact.add(total, exact.chain(injection, reorder, middle, outer_section))
        self._mu[M] = Morphism(TTM, TM, total)
        return self._mu[M]

    # ---------------------------------
    # Laws.
    # ---------------------------------

    def law_defects(self, M: Obj) -> List[str]:
        """Names of the monad laws failing on M."""
        K = self.field
        TM = self.T(M)
        mu = self.multiplication(M)
        identity = exact.identity(TM.dim, K)
        failures = []
        if not exact.equal(exact.matmul(mu.matrix, self.unit(TM).matrix), identity):
            failures.append("left unit")
        if not exact.equal(exact.matmul(mu.matrix, self.functor(self.unit(M)).matrix), identity):
            failures.append("right unit")
        lhs = exact.matmul(mu.matrix, self.functor(mu).matrix)
        rhs = exact.matmul(mu.matrix, self.multiplication(TM).matrix)
        if not exact.equal(lhs, rhs):
            failures.append("associativity")
        return failures

    def check_laws(self, objects: Sequence[Obj]) -> None:
        """Checks μ o Tμ = μ o μT and μ o ηT = id = μ o Tη on every object.

        Raises:
            LawViolation: Naming the law and the first object it fails on.
        """
        for M in objects:
            failures = self.law_defects(M)
            if failures:
                raise LawViolation(failures[0], {"object": str(M), "winding": self.winding})
            logger.debug(f"Monad laws hold on {M} for winding {self.winding}.")

    def naturality_defect(self, f: Morphism) -> Optional[str]:
        """Checks η and μ are natural along f."""
        Tf = self.functor(f)
        if not exact.equal(
            exact.matmul(Tf.matrix, self.unit(f.dom).matrix), exact.matmul(self.unit(f.codom).matrix, f.matrix)
        ):
            return "unit naturality"
        TTf = self.functor(Tf)
        if not exact.equal(
            exact.matmul(Tf.matrix, self.multiplication(f.dom).matrix),
            exact.matmul(self.multiplication(f.codom).matrix, TTf.matrix),
        ):
            return "multiplication naturality"
        return None


def monad_structure(coend: Coend, objects: Sequence[Obj] = (), verify: bool = True) -> Monad:
    """Assembles the monad on a coend family and verifies its laws on ``objects``.

    Raises:
        LawViolation: If a law fails on one of the objects.
    """
    monad = Monad(coend)
    if verify:
        monad.check_laws(objects)
    return monad


def central_monad(backend: ModuleBackend, n: int = 1, strategy: Optional[str] = None) -> Monad:
    """T_n for the backend, without verification."""
    return Monad(make_coend(backend, twisting(n), strategy))


@dataclass(frozen=True)
class TwistingComparison:
    """Outcome of transporting T_n(y) onto T_m(y) along the shared probe injections."""

    source_winding: int
    target_winding: int
    object: str
    # θ o ι^n_P = ι^m_P has a solution
    transports: bool
    module_map: bool
    invertible: bool
    preserves_multiplication: bool

    @property
    def agree(self) -> bool:
        return self.transports and self.module_map and self.invertible and self.preserves_multiplication


def _transport(source: Monad, target: Monad, y: Obj) -> Optional[DomainMatrix]:
    K = source.field
    theta = exact.zeros((target.T(y).dim, source.T(y).dim), K)
    for P, s in source.coend.sections(y):
        theta = exact.add(theta, exact.matmul(target.iota(P, y).matrix, s))
    for P in source.coend.probes():
        if not exact.equal(exact.matmul(theta, source.iota(P, y).matrix), target.iota(P, y).matrix):
            return None
    return theta


def compare_twistings(backend: ModuleBackend, n: int, m: int, y: Obj) -> TwistingComparison:
    """Decides whether T_n(y) and T_m(y) agree as monad values.

    The probe sources of both coends share their underlying vector spaces, so
    a structure transporting map must satisfy θ ι^n_P = ι^m_P for every probe;
    this pins θ down. The twistings agree on y iff that θ exists, is an
    invertible module map, and carries μ^n to μ^m.
    """
    source = Monad(make_coend(backend, twisting(n), "hopf"))
    target = Monad(make_coend(backend, twisting(m), "hopf"))
    theta = _transport(source, target, y)
    module_map = invertible = multiplicative = False
    if theta is not None:
        Tn, Tm = source.T(y), target.T(y)
        module_map = backend.is_intertwiner(theta, Tn, Tm)
        invertible = exact.inverse(theta) is not None
        if module_map and invertible:
            transported = exact.matmul(theta, source.multiplication(y).matrix)
            lifted = exact.matmul(target.multiplication(y).matrix, target.functor(Morphism(Tn, Tm, theta)).matrix)
            lifted = exact.matmul(lifted, _theta_on_source(source, target, theta, y))
            multiplicative = exact.equal(transported, lifted)
    comparison = TwistingComparison(n, m, str(y), theta is not None, module_map, invertible, multiplicative)
    logger.info(f"T_{n}({y}) vs T_{m}({y}): {'agree' if comparison.agree else 'differ'}.")
    return comparison


def _theta_on_source(source: Monad, target: Monad, theta: DomainMatrix, y: Obj) -> DomainMatrix:
    """The map T_n(T_n y) -> T_m(T_n y) induced by the same probe transport."""
    Ty = source.T(y)
    K = source.field
    result = exact.zeros((target.T(Ty).dim, source.T(Ty).dim), K)
    for P, s in source.coend.sections(Ty):
        result = exact.add(result, exact.matmul(target.iota(P, Ty).matrix, s))
    return result
