"""Half-braidings γ_c: F(c) (x) x -> x (x) G(c) and their exchange with T-modules.

Components are stored on the probes. A module action ρ determines the
component on any object c through

    γ_c = (ρ ι_c (x) id_G(c)) o (id_F(c) (x) id_x (x) G(coev_c)),

and the components on the probes determine ρ back through the sections of the
coend:

    ρ = sum over probes P of (id_x (x) G(ev_P)) o (γ_P (x) id) o s_P.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import sympy
from loguru import logger
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

import constants
from stringnet.core import exact
from stringnet.core.errors import LawViolation, StringNetError
from stringnet.core.morphism import Morphism
from stringnet.core.objects import Obj
from stringnet.monad.modules import TModule, check_module, module_defects
from stringnet.monad.monad import Monad


@dataclass(frozen=True)
class HalfBraiding:
    obj: Obj
    # γ on each probe, in probe order
    components: Tuple[Morphism, ...]
    label: str = ""

    def __str__(self) -> str:
        return self.label or f"({self.obj}, γ)"


def component_from_action(monad: Monad, x: Obj, rho: DomainMatrix, c: Obj) -> Morphism:
    backend = monad.backend
    coend = monad.coend
    K = monad.field
    Fc, Gc = coend.F(c), coend.G(c)
    x_dim = x.dim
    coev = backend.coev_left(c).matrix
    insert = exact.kron(exact.identity(Fc.dim * x_dim, K), coev)
    act = exact.kron(exact.matmul(rho, coend.iota(c, x).matrix), exact.identity(Gc.dim, K))
    return Morphism(backend.tensor_objects(Fc, x), backend.tensor_objects(x, Gc), exact.matmul(act, insert))


def module_to_halfbraiding(monad: Monad, module: TModule) -> HalfBraiding:
    """The half-braiding of a T-module, on every probe."""
    components = tuple(
        component_from_action(monad, module.obj, module.action.matrix, P) for P in monad.coend.probes()
    )
    return HalfBraiding(module.obj, components, module.label)


def halfbraiding_to_module(monad: Monad, hb: HalfBraiding) -> TModule:
    """The T-module of a half-braiding, assembled through the coend sections."""
    backend = monad.backend
    K = monad.field
    x = hb.obj
    Tx = monad.T(x)
    rho = exact.zeros((x.dim, Tx.dim), K)
    for (P, s), gamma in zip(monad.coend.sections(x), hb.components):
        ev = backend.ev_left(P).matrix
        contract = exact.kron(exact.identity(x.dim, K), ev)
        rho = exact.add(rho, exact.chain(contract, exact.kron(gamma.matrix, exact.identity(P.dim, K)), s))
    return TModule(x, Morphism(Tx, x, rho), hb.label)


# ---------------------------------
# Checks.
# ---------------------------------


def halfbraiding_defects(monad: Monad, hb: HalfBraiding) -> List[str]:
    """Failed conditions among invertibility, naturality on probe morphisms, and the hexagon on probe pairs."""
    backend = monad.backend
    K = monad.field
    x = hb.obj
    probes = monad.coend.probes()
    failures: List[str] = []
    for P, gamma in zip(probes, hb.components):
        if exact.inverse(gamma.matrix) is None:
            failures.append(f"invertibility at {P}")
    for a, P in enumerate(probes):
        for b, Q in enumerate(probes):
            for u in backend.hom_basis(P, Q):
                lhs = exact.matmul(hb.components[b].matrix, exact.kron(u.matrix, exact.identity(x.dim, K)))
                rhs = exact.matmul(exact.kron(exact.identity(x.dim, K), u.matrix), hb.components[a].matrix)
                if not exact.equal(lhs, rhs):
                    failures.append(f"naturality from {P} to {Q}")
    rho = halfbraiding_to_module(monad, hb).action.matrix
    for a, P in enumerate(probes):
        for b, Q in enumerate(probes):
            joint = component_from_action(monad, x, rho, backend.tensor_reps(P, Q))
            staged = exact.matmul(
                exact.kron(hb.components[a].matrix, exact.identity(Q.dim, K)),
                exact.kron(exact.identity(P.dim, K), hb.components[b].matrix),
            )
            if not exact.equal(joint.matrix, staged):
                failures.append(f"hexagon on {P}, {Q}")
    return failures


def halfbraiding_hom_basis(monad: Monad, source: HalfBraiding, target: HalfBraiding) -> List[Morphism]:
    """Basis of the maps f: x -> x' with (f (x) id) o γ_P = γ'_P o (id (x) f) on every probe P."""
    K = monad.field
    coend = monad.coend
    x, y = source.obj, target.obj
    basis = monad.backend.hom_basis(x, y)
    if not basis:
        return []
    blocks = []
    for P, gamma, delta in zip(coend.probes(), source.components, target.components):
        F_dim, G_dim = coend.F(P).dim, coend.G(P).dim
        columns = [
            exact.flatten(
                exact.sub(
                    exact.matmul(exact.kron(f.matrix, exact.identity(G_dim, K)), gamma.matrix),
                    exact.matmul(delta.matrix, exact.kron(exact.identity(F_dim, K), f.matrix)),
                )
            )
            for f in basis
        ]
        blocks.append(exact.hstack(columns, K, nrows=y.dim * G_dim * F_dim * x.dim))
    constraints = exact.vstack(blocks, K, ncols=len(basis))
    result = []
    for v in exact.nullspace(constraints):
        coefficients = [exact.entry(v, i, 0) for i in range(len(basis))]
        matrix = exact.linear_combination(coefficients, [f.matrix for f in basis], (y.dim, x.dim), K)
        result.append(Morphism(x, y, matrix))
    return result


def check_halfbraiding(monad: Monad, hb: HalfBraiding) -> None:
    """Raises:
    LawViolation: Naming the first failing condition.
    """
    failures = halfbraiding_defects(monad, hb)
    if failures:
        raise LawViolation("half-braiding", {"object": str(hb.obj), "failure": failures[0]})


# ---------------------------------
# Solving.
# ---------------------------------


@dataclass
class HalfBraidingSolutions:
    """All T-module structures on one object found by the exact solver."""

    obj: Obj
    # free parameters after the unit condition
    parameters: int
    modules: List[TModule] = field(default_factory=list)
    halfbraidings: List[HalfBraiding] = field(default_factory=list)
    # solutions with irrational coordinates, not realized over QQ
    irrational: int = 0
    # solutions that were positive dimensional families, sampled at zero
    families: int = 0
    skipped: bool = False


def _to_sympy(M: DomainMatrix) -> Dict[Tuple[int, int], sympy.Rational]:
    K = M.domain
    return {key: K.to_sympy(value) for key, value in M.to_dok().items()}


def solve_halfbraidings(monad: Monad, x: Obj, label: str = "") -> HalfBraidingSolutions:
    """Every action ρ: T(x) -> x making x a T-module, and the half-braiding of each.

    The unit law is linear and cuts the morphism space to an affine space
    ρ0 + span(N_j); associativity is quadratic in the coordinates t_j and is
    solved exactly with sympy. Spaces with more than
    ``HALFBRAIDING_SOLVE_LIMIT`` coordinates are reported as skipped.

    Raises:
        StringNetError: If the backend field is not QQ.
    """
    if monad.field != QQ:
        raise StringNetError("Half-braidings are solved over QQ only.")
    K = monad.field
    Tx = monad.T(x)
    eta = monad.unit(x).matrix
    basis = [f.matrix for f in monad.backend.hom_basis(Tx, x)]
    shape = (x.dim, Tx.dim)
    if not basis:
        return HalfBraidingSolutions(x, 0)

    # unit law: sum_i a_i B_i η = id
    unit_columns = exact.hstack([exact.flatten(exact.matmul(B, eta)) for B in basis], K)
    particular = exact.solve(unit_columns, exact.flatten(exact.identity(x.dim, K)))
    if particular is None:
        return HalfBraidingSolutions(x, 0)
    rho0 = exact.linear_combination([exact.entry(particular, i, 0) for i in range(len(basis))], basis, shape, K)
    directions = [
        exact.linear_combination([exact.entry(v, i, 0) for i in range(len(basis))], basis, shape, K)
        for v in exact.nullspace(unit_columns)
    ]
    result = HalfBraidingSolutions(x, len(directions))
    if len(directions) > constants.HALFBRAIDING_SOLVE_LIMIT:
        logger.warning(f"{len(directions)} free coordinates on {x}; not solving.")
        result.skipped = True
        return result

    mu = monad.multiplication(x).matrix

    def T(matrix: DomainMatrix) -> DomainMatrix:
        return monad.functor(Morphism(Tx, x, matrix)).matrix

    T_rho0 = T(rho0)
    T_dirs = [T(N) for N in directions]
    t = sympy.symbols(f"t0:{len(directions)}") if directions else ()
    polys: Dict[Tuple[int, int], sympy.Expr] = {}

    def accumulate(M: DomainMatrix, coefficient) -> None:
        for key, value in _to_sympy(M).items():
            polys[key] = polys.get(key, 0) + coefficient * value

    accumulate(exact.sub(exact.matmul(rho0, T_rho0), exact.matmul(rho0, mu)), 1)
    for k, N in enumerate(directions):
        linear = exact.add(exact.matmul(rho0, T_dirs[k]), exact.sub(exact.matmul(N, T_rho0), exact.matmul(N, mu)))
        accumulate(linear, t[k])
        for j, N_j in enumerate(directions):
            accumulate(exact.matmul(N_j, T_dirs[k]), t[j] * t[k])
    equations = [sympy.expand(p) for _, p in sorted(polys.items()) if sympy.expand(p) != 0]

    if not equations:
        points = [{}]
        result.families = 1 if directions else 0
    elif not directions:
        points = []
    else:
        points = sympy.solve(equations, t, dict=True)

    for point in points:
        values = []
        free = False
        for symbol in t:
            value = point.get(symbol, symbol)
            if value.free_symbols:
                free = True
                value = value.subs({s: 0 for s in value.free_symbols})
            values.append(sympy.nsimplify(value))
        if not all(v.is_rational for v in values):
            result.irrational += 1
            continue
        if free:
            result.families += 1
        coefficients = [K.from_sympy(v) for v in values]
        rho = exact.add(rho0, exact.linear_combination(coefficients, directions, shape, K)) if directions else rho0
        index = len(result.modules)
        module = TModule(x, Morphism(Tx, x, rho), f"{label or x}#{index}")
        if not check_module(monad, module):
            raise LawViolation("module", {"object": str(x), "solution": index, "failure": module_defects(monad, module)[0]})
        hb = module_to_halfbraiding(monad, module)
        if any(exact.inverse(g.matrix) is None for g in hb.components):
            continue
        result.modules.append(module)
        result.halfbraidings.append(hb)
    logger.info(
        f"{len(result.modules)} rational half-braidings on {x} from {result.parameters} coordinates"
        + (f", {result.irrational} irrational" if result.irrational else "")
        + "."
    )
    return result


def solve_all(monad: Monad, objects: Sequence[Obj]) -> List[HalfBraidingSolutions]:
    return [solve_halfbraidings(monad, x) for x in objects]
