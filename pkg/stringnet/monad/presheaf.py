"""Presheaves on the Kleisli category whose pullback along induction is representable.

A presheaf is stored by finite data: an ambient object e with an action
ρ_e: T(e) -> e, and a subspace of relations R_c in Hom(c, e) for every object
c. Its value on the Kleisli object c is Hom(c, e) / R_c and a Kleisli morphism
k: c' -> T(c) acts by φ -> ρ_e o T(φ) o k. Modules give presheaves without
relations; split coequalizers of free modules give presheaves whose values
are pointwise cokernels.
"""

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

import constants
from stringnet.core import exact
from stringnet.core.errors import UniversalityError
from stringnet.core.morphism import Morphism
from stringnet.core.objects import Obj
from stringnet.monad.kleisli import KleisliMorphism, kleisli_compose
from stringnet.monad.modules import TModule
from stringnet.monad.monad import Monad
from utilities.utils import make_rng

Relations = Callable[[Obj], List[Morphism]]


def _no_relations(c: Obj) -> List[Morphism]:
    return []


@dataclass(frozen=True)
class RepresentablePresheaf:
    probes: Tuple[Obj, ...]
    ambient: Obj
    action: Morphism
    relations: Relations = _no_relations
    # (c_F, u) with u in Hom(c_F, e) representing the pullback, when known
    representing: Optional[Tuple[Obj, Morphism]] = None
    label: str = ""

    def __str__(self) -> str:
        return self.label or f"Hom(-, {self.ambient})"


@dataclass(frozen=True)
class Representability:
    representable: bool
    obj: Optional[Obj] = None
    element: Optional[Morphism] = None
    # first probe on which the last candidate failed
    witness: Optional[str] = None


def value_dimension(monad: Monad, F: RepresentablePresheaf, c: Obj) -> int:
    """dim F(c) = dim Hom(c, e) - dim R_c."""
    return len(monad.backend.hom_basis(c, F.ambient)) - _relation_rank(F, c)


def _relation_rank(F: RepresentablePresheaf, c: Obj) -> int:
    relations = F.relations(c)
    if not relations:
        return 0
    return exact.rank(exact.hstack([exact.flatten(r.matrix) for r in relations], F.action.field))


def act(monad: Monad, F: RepresentablePresheaf, k: KleisliMorphism, phi: Morphism) -> Morphism:
    """F(k)(φ) = ρ_e o T(φ) o k for k: c' -> c in the Kleisli category and φ: c -> e."""
    return Morphism(
        k.source, F.ambient, exact.chain(F.action.matrix, monad.functor(phi).matrix, k.morphism.matrix)
    )


def equivalent(F: RepresentablePresheaf, c: Obj, a: Morphism, b: Morphism) -> bool:
    """Whether a and b agree in F(c) = Hom(c, e) / R_c."""
    return exact.in_span(exact.sub(a.matrix, b.matrix), [r.matrix for r in F.relations(c)])


def _yoneda_is_bijective(monad: Monad, F: RepresentablePresheaf, d: Obj, u: Morphism, c: Obj) -> bool:
    """Whether f -> [u o f] is a bijection Hom(c, d) -> F(c)."""
    K = monad.field
    sources = monad.backend.hom_basis(c, d)
    target_dimension = value_dimension(monad, F, c)
    if len(sources) != target_dimension:
        return False
    relations = [r.matrix for r in F.relations(c)]
    base = _relation_rank(F, c)
    images = [exact.flatten(exact.matmul(u.matrix, f.matrix)) for f in sources]
    spanning = [exact.flatten(r) for r in relations] + images
    if not spanning:
        return True
    return exact.rank(exact.hstack(spanning, K)) == base + len(sources)


def _candidates(monad: Monad, F: RepresentablePresheaf, rng: np.random.Generator):
    K = monad.field
    if F.representing is not None:
        yield F.representing
    d = F.representing[0] if F.representing is not None else F.ambient
    basis = monad.backend.hom_basis(d, F.ambient)
    for u in basis:
        yield d, u
    for _ in range(constants.REPRESENTABILITY_ATTEMPTS if basis else 0):
        coefficients = [K(int(v)) for v in rng.integers(-constants.RANDOM_SCALAR_BOUND, constants.RANDOM_SCALAR_BOUND + 1, len(basis))]
        matrix = exact.linear_combination(coefficients, [b.matrix for b in basis], (F.ambient.dim, d.dim), K)
        yield d, Morphism(d, F.ambient, matrix)


def representability_check(
    monad: Monad, F: RepresentablePresheaf, rng: Optional[np.random.Generator] = None
) -> Representability:
    """Searches for (c_F, u) with Hom(c, c_F) -> F(c), f -> [u o f], bijective on every probe."""
    rng = rng or make_rng(constants.DEFAULT_SEED)
    witness = None
    for d, u in _candidates(monad, F, rng):
        failed = next((c for c in F.probes if not _yoneda_is_bijective(monad, F, d, u, c)), None)
        if failed is None:
            logger.debug(f"{F} is represented by {d}.")
            return Representability(True, d, u)
        witness = str(failed)
    logger.debug(f"No representing element found for {F}; witness probe {witness}.")
    return Representability(False, witness=witness)


def presheaf_from_module(monad: Monad, module: TModule, probes: Sequence[Obj]) -> RepresentablePresheaf:
    """Hom_T(T(-), M) = Hom(-, d), represented by (d, id_d)."""
    d = module.obj
    return RepresentablePresheaf(
        tuple(probes), d, module.action, _no_relations, (d, monad.backend.identity(d)), f"Hom(-, {module})"
    )


def module_from_presheaf(
    monad: Monad, F: RepresentablePresheaf, rng: Optional[np.random.Generator] = None
) -> TModule:
    """The module on the representing object c_F.

    Its action is the unique ρ: T(c_F) -> c_F with [u o ρ] = F(id_{T(c_F)})(u),
    the Kleisli counit applied to the universal element.

    Raises:
        UniversalityError: If F is not representable on its probes or ρ does not exist.
    """
    K = monad.field
    found = representability_check(monad, F, rng)
    if not found.representable:
        raise UniversalityError(f"{F} is not representable; witness probe {found.witness}.")
    d, u = found.obj, found.element
    Td = monad.T(d)
    counit = KleisliMorphism(Td, d, monad.backend.identity(Td))
    target = act(monad, F, counit, u)
    basis = monad.backend.hom_basis(Td, d)
    relations = F.relations(Td)
    columns = [exact.flatten(exact.matmul(u.matrix, f.matrix)) for f in basis]
    columns += [exact.flatten(r.matrix) for r in relations]
    rows = F.ambient.dim * Td.dim
    system = exact.hstack(columns, K, nrows=rows) if columns else exact.zeros((rows, 0), K)
    solution = exact.solve(system, exact.flatten(target.matrix))
    if solution is None:
        raise UniversalityError(f"The counit of {F} does not factor through {d}.")
    coefficients = [exact.entry(solution, i, 0) for i in range(len(basis))]
    rho = exact.linear_combination(coefficients, [f.matrix for f in basis], (d.dim, Td.dim), K)
    return TModule(d, Morphism(Td, d, rho), F.label)


def split_pair_presheaf(monad: Monad, module: TModule, probes: Sequence[Obj]) -> RepresentablePresheaf:
    """The pointwise cokernel of T(ρ), μ_d: Hom(-, T²d) -> Hom(-, Td).

    The pair is split by η_d and η_Td, so the cokernel is represented by the
    coequalizer d with universal element η_d.
    """
    d = module.obj
    Td = monad.T(d)
    difference = exact.sub(monad.functor(module.action).matrix, monad.multiplication(d).matrix)

    def relations(c: Obj) -> List[Morphism]:
        return [
            Morphism(c, Td, exact.matmul(difference, psi.matrix)) for psi in monad.backend.hom_basis(c, monad.T(Td))
        ]

    return RepresentablePresheaf(
        tuple(probes), Td, monad.multiplication(d), relations, (d, monad.unit(d)), f"coker({module})"
    )


def _random_kleisli(monad: Monad, source: Obj, target: Obj, rng: np.random.Generator) -> Optional[KleisliMorphism]:
    K = monad.field
    basis = monad.backend.hom_basis(source, monad.T(target))
    if not basis:
        return None
    coefficients = [K(int(v)) for v in rng.integers(-3, 4, len(basis))]
    matrix = exact.linear_combination(coefficients, [b.matrix for b in basis], (monad.T(target).dim, source.dim), K)
    return KleisliMorphism(source, target, Morphism(source, monad.T(target), matrix))


def functoriality_defect(
    monad: Monad, F: RepresentablePresheaf, rng: np.random.Generator, samples: int = 4
) -> Optional[str]:
    """Checks F(k o k') = F(k') F(k) and that relations map to relations, on random probe triples."""
    backend = monad.backend
    probes = list(F.probes)
    for _ in range(samples):
        a, b, c = (probes[int(i)] for i in rng.integers(0, len(probes), 3))
        k = _random_kleisli(monad, b, c, rng)
        k2 = _random_kleisli(monad, a, b, rng)
        phis = backend.hom_basis(c, F.ambient)
        if k is None or k2 is None or not phis:
            continue
        composite = kleisli_compose(monad, k, k2)
        for phi in phis:
            direct = act(monad, F, composite, phi)
            staged = act(monad, F, k2, act(monad, F, k, phi))
            if not equivalent(F, a, direct, staged):
                return f"composition {a} -> {b} -> {c}"
        for r in F.relations(c):
            if not equivalent(F, b, act(monad, F, k, r), Morphism(b, F.ambient, exact.zeros((F.ambient.dim, b.dim), monad.field))):
                return f"relations from {c} to {b}"
    return None


def module_round_trip(
    monad: Monad, module: TModule, probes: Sequence[Obj], rng: Optional[np.random.Generator] = None
) -> bool:
    back = module_from_presheaf(monad, presheaf_from_module(monad, module, probes), rng)
    return back.obj == module.obj and exact.equal(back.action.matrix, module.action.matrix)
