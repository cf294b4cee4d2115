"""Which T-modules are retracts of free modules.

Module maps T(c) -> M are exactly ρ o T(f) for f: c -> d, so M is a retract
of a sum of copies of T(c) iff id_M lies in the span of the composites
(ρ o T(f)) o i over f in Hom(c, d) and module maps i: M -> T(c). Over a
semisimple backend every module passes; a module that fails for every c is a
witness that the Karoubi envelope of the Kleisli category misses part of the
center.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from loguru import logger

from stringnet.core import exact
from stringnet.core.objects import Obj
from stringnet.monad.halfbraiding import solve_all
from stringnet.monad.modules import TModule, free_module, module_hom_basis
from stringnet.monad.monad import Monad


@dataclass(frozen=True)
class KaroubiEntry:
    module: str
    dimension: int
    retract: bool
    # the object c of the free module T(c) it splits off, when it does
    via: Optional[str] = None


@dataclass
class KaroubiReport:
    backend_id: str
    winding: int
    entries: List[KaroubiEntry] = field(default_factory=list)

    @property
    def witnesses(self) -> List[str]:
        return [entry.module for entry in self.entries if not entry.retract]

    @property
    def all_retracts(self) -> bool:
        return not self.witnesses


def is_retract_of(monad: Monad, module: TModule, c: Obj) -> bool:
    """Whether the module splits off a finite sum of copies of T(c)."""
    K = monad.field
    d = module.obj
    inclusions = module_hom_basis(monad, module, free_module(monad, c))
    retractions = [
        exact.matmul(module.action.matrix, monad.functor(f).matrix) for f in monad.backend.hom_basis(c, d)
    ]
    composites = [exact.matmul(r, i.matrix) for r in retractions for i in inclusions]
    return exact.in_span(exact.identity(d.dim, K), composites)


def retract_source(monad: Monad, module: TModule, objects: Sequence[Obj]) -> Optional[Obj]:
    """The first c among ``objects`` and the module's own object with the module a retract of copies of T(c)."""
    for c in list(objects) + [module.obj]:
        if is_retract_of(monad, module, c):
            return c
    return None


def generated_test_set(monad: Monad, objects: Sequence[Obj]) -> List[TModule]:
    """Free modules on ``objects`` followed by every solved module structure on them."""
    modules = [free_module(monad, x) for x in objects]
    for solutions in solve_all(monad, objects):
        modules.extend(solutions.modules)
    return modules


def karoubi_compare(monad: Monad, objects: Sequence[Obj], modules: Optional[Sequence[TModule]] = None) -> KaroubiReport:
    """Classifies each module of the test set as a retract of a free module or a witness."""
    modules = list(modules) if modules is not None else generated_test_set(monad, objects)
    report = KaroubiReport(monad.backend.backend_id, monad.winding)
    for module in modules:
        c = retract_source(monad, module, objects)
        report.entries.append(KaroubiEntry(str(module), module.obj.dim, c is not None, None if c is None else str(c)))
    logger.info(
        f"{len(modules) - len(report.witnesses)} of {len(modules)} modules are retracts of free modules"
        + (f"; witnesses {report.witnesses}" if report.witnesses else "")
        + "."
    )
    return report
