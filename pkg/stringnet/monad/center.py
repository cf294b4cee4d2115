"""Counting simple objects of the twisted center through half-braidings.

Half-braidings are solved on the given objects and the solutions with one
dimensional endomorphisms are kept up to isomorphism. The induced objects
T(P) on the probes carry the half-braidings of the free modules; the probes
are projective, so every simple center object is a quotient of one of them.
The endomorphism algebra E of the sum of the induced objects and of the
projective solved ones, with its Hom spaces solved from the half-braiding
equations, is Morita equivalent to the center. Over QQ the count is
dim Z(E/J), J the radical of the trace form, which also counts absolutely
simple components whose centers are proper field extensions.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from stringnet.core import exact
from stringnet.core.errors import StringNetError
from stringnet.core.morphism import Morphism
from stringnet.core.objects import Obj
from stringnet.monad.halfbraiding import HalfBraiding, halfbraiding_hom_basis, module_to_halfbraiding, solve_all
from stringnet.monad.karoubi import is_retract_of
from stringnet.monad.modules import TModule, endomorphism_dimensions, free_module
from stringnet.monad.monad import Monad


@dataclass(frozen=True)
class CenterCount:
    winding: int
    # dim of the endomorphism algebra of the summands
    algebra_dimension: int
    radical_dimension: int
    simples: int
    # pairwise non-isomorphic solved half-braidings with one dimensional endomorphisms
    solved: Tuple[str, ...] = ()
    # objects whose half-braiding system was too large or had irrational points
    unsolved: Tuple[str, ...] = ()


def distinct_solutions(monad: Monad, modules: Sequence[TModule]) -> List[TModule]:
    """The modules with End = K, one per isomorphism class (maps both ways between them)."""
    dims = endomorphism_dimensions(monad, list(modules))
    kept: List[TModule] = []
    for module in modules:
        if dims[(str(module), str(module))] != 1:
            continue
        if any(dims[(str(r), str(module))] and dims[(str(module), str(r))] for r in kept):
            continue
        kept.append(module)
    return kept


def endomorphism_algebra(
    monad: Monad, summands: Sequence[HalfBraiding]
) -> Tuple[List[Tuple[int, int, Morphism]], List[DomainMatrix]]:
    """A basis (i, j, f) of End(sum of summands), f: h_i -> h_j, and the left multiplication matrices of composition."""
    K = monad.field
    homs: Dict[Tuple[int, int], List[Morphism]] = {
        (i, j): halfbraiding_hom_basis(monad, a, b) for i, a in enumerate(summands) for j, b in enumerate(summands)
    }
    offsets: Dict[Tuple[int, int], int] = {}
    basis: List[Tuple[int, int, Morphism]] = []
    for key in sorted(homs):
        offsets[key] = len(basis)
        basis += [(key[0], key[1], f) for f in homs[key]]
    spans = {key: exact.hstack([exact.flatten(f.matrix) for f in fs], K) for key, fs in homs.items() if fs}
    n = len(basis)
    left_mult = []
    for i, j, f in basis:
        entries = {}
        for column, (k, l, g) in enumerate(basis):
            if l != i or (k, j) not in spans:
                continue
            coordinates = exact.solve(spans[(k, j)], exact.flatten(exact.matmul(f.matrix, g.matrix)))
            if coordinates is None:
                raise StringNetError(f"Maps of half-braidings {k} -> {j} are not closed under composition.")
            for r in range(len(homs[(k, j)])):
                entries[(offsets[(k, j)] + r, column)] = exact.entry(coordinates, r, 0)
        left_mult.append(exact.from_entries(entries, (n, n), K))
    return basis, left_mult


def _commutator_constraints(left_mult: Sequence[DomainMatrix], K) -> List[DomainMatrix]:
    """For each j, the matrix C_j with C_j x = coordinates of x b_j - b_j x."""
    n = len(left_mult)
    constraints = []
    for j in range(n):
        right_j = exact.hstack([exact.submatrix(left_mult[i], list(range(n)), [j]) for i in range(n)], K)
        constraints.append(exact.sub(right_j, left_mult[j]))
    return constraints


def center_dimension_mod_radical(left_mult: Sequence[DomainMatrix], K) -> Tuple[int, int]:
    """(dim J, dim Z(B/J)) for the algebra with left multiplication matrices ``left_mult``."""
    n = len(left_mult)
    if n == 0:
        return 0, 0
    gram = exact.from_entries(
        {
            (i, j): exact.trace(exact.matmul(left_mult[i], left_mult[j]))
            for i in range(n)
            for j in range(n)
        },
        (n, n),
        K,
    )
    radical = exact.nullspace(gram)
    if radical:
        J = exact.hstack(radical, K)
        annihilator = exact.nullspace(exact.transpose(J))
        W = exact.transpose(exact.hstack(annihilator, K)) if annihilator else exact.zeros((0, n), K)
    else:
        W = exact.identity(n, K)
    blocks = [exact.matmul(W, C) for C in _commutator_constraints(left_mult, K)]
    central = len(exact.nullspace(exact.vstack(blocks, K, ncols=n))) if W.shape[0] else n
    return len(radical), central - len(radical)


def center_count(monad: Monad, objects: Optional[Sequence[Obj]] = None) -> CenterCount:
    """Number of simple objects of the twisted center Z_n.

    Half-braidings are solved on ``objects`` (the backend generators by
    default, which are the simples of Vect_G).

    Raises:
        StringNetError: If the field is not QQ (the solver and the trace form test need characteristic zero).
    """
    if monad.field != QQ:
        raise StringNetError("Center counts are computed over QQ only.")
    objects = list(objects) if objects is not None else monad.backend.generators()
    solutions = solve_all(monad, objects)
    unsolved = tuple(str(s.obj) for s in solutions if s.skipped or s.irrational)
    solved = distinct_solutions(monad, [m for s in solutions for m in s.modules])
    seeds = monad.coend.probes()
    summands = [module_to_halfbraiding(monad, free_module(monad, P)) for P in seeds]
    summands += [
        module_to_halfbraiding(monad, m) for m in solved if any(is_retract_of(monad, m, P) for P in seeds)
    ]
    basis, left_mult = endomorphism_algebra(monad, summands)
    radical, simples = center_dimension_mod_radical(left_mult, monad.field)
    logger.info(
        f"Z_{monad.winding}: {len(solved)} solved half-braidings, endomorphisms of dimension {len(basis)}, "
        f"radical {radical}, {simples} simples."
    )
    return CenterCount(monad.winding, len(basis), radical, simples, tuple(str(m) for m in solved), unsolved)


def circle_hom_dimension(monad: Monad, x: Obj, y: Obj) -> int:
    """dim Hom(x, T_n y), the hom space of the circle category on the n-framed cylinder."""
    return len(monad.backend.hom_basis(x, monad.T(y)))
