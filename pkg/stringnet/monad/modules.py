"""Modules over the central monad (the Eilenberg-Moore category, on finite test sets)."""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from loguru import logger
from sympy.polys.matrices import DomainMatrix

from stringnet.core import exact
from stringnet.core.morphism import Morphism
from stringnet.core.objects import Obj
from stringnet.monad.monad import Monad


@dataclass(frozen=True)
class TModule:
    """An object d with an action ρ: T(d) -> d."""

    obj: Obj
    action: Morphism
    label: str = ""

    def __str__(self) -> str:
        return self.label or f"({self.obj}, ρ)"


def module_defects(monad: Monad, module: TModule) -> List[str]:
    K = monad.field
    d = module.obj
    rho = module.action.matrix
    failures = []
    if module.action.dom != monad.T(d) or module.action.codom != d:
        return ["typing"]
    if not monad.backend.is_morphism(module.action):
        failures.append("module map")
    if not exact.equal(exact.matmul(rho, monad.unit(d).matrix), exact.identity(d.dim, K)):
        failures.append("unit")
    lhs = exact.matmul(rho, monad.functor(module.action).matrix)
    rhs = exact.matmul(rho, monad.multiplication(d).matrix)
    if not exact.equal(lhs, rhs):
        failures.append("associativity")
    return failures


def check_module(monad: Monad, module: TModule) -> bool:
    """Whether ρ o T(ρ) = ρ o μ and ρ o η = id hold exactly."""
    failures = module_defects(monad, module)
    if failures:
        logger.debug(f"{module} is not a T-module: {', '.join(failures)}.")
    return not failures


def free_module(monad: Monad, c: Obj) -> TModule:
    """(T(c), μ_c)."""
    return TModule(monad.T(c), monad.multiplication(c), f"T({c})")


def module_hom_constraints(monad: Monad, source: TModule, target: TModule, basis: List[Morphism]) -> DomainMatrix:
    """Columns: f o ρ - ρ' o T(f) for each f in ``basis``, flattened."""
    K = monad.field
    columns = []
    for f in basis:
        defect = exact.sub(
            exact.matmul(f.matrix, source.action.matrix),
            exact.matmul(target.action.matrix, monad.functor(f).matrix),
        )
        columns.append(exact.flatten(defect))
    rows = target.obj.dim * monad.T(source.obj).dim
    return exact.hstack(columns, K, nrows=rows) if columns else exact.zeros((rows, 0), K)


def module_hom_basis(monad: Monad, source: TModule, target: TModule) -> List[Morphism]:
    """Basis of the T-module maps source -> target."""
    K = monad.field
    basis = monad.backend.hom_basis(source.obj, target.obj)
    if not basis:
        return []
    constraints = module_hom_constraints(monad, source, target, basis)
    result = []
    for v in exact.nullspace(constraints):
        coefficients = [exact.entry(v, i, 0) for i in range(len(basis))]
        matrix = exact.linear_combination(coefficients, [f.matrix for f in basis], (target.obj.dim, source.obj.dim), K)
        result.append(Morphism(source.obj, target.obj, matrix))
    return result


def endomorphism_dimensions(monad: Monad, modules: List[TModule]) -> Dict[Tuple[str, str], int]:
    """dim Hom_T(a, b) for every ordered pair, keyed by labels."""
    return {(str(a), str(b)): len(module_hom_basis(monad, a, b)) for a in modules for b in modules}
