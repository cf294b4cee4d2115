from typing import List

from sympy.polys.matrices import DomainMatrix

from stringnet.backends import hopf_algebra
from stringnet.backends.hopf_algebra import HopfAlgebra
from stringnet.core.backend import CategoryBackend
from stringnet.core.objects import Rep


class ModuleBackend(CategoryBackend):
    """A backend whose objects are realized as modules over a finite dimensional Hopf algebra.

    Subclasses only decide which generators exist and how duals act on them.
    """

    def __init__(self, backend_id: str, algebra: HopfAlgebra):
        super().__init__(backend_id, algebra.field)
        self.algebra = algebra

    def unit_rep(self) -> Rep:
        return hopf_algebra.unit_rep(self.algebra, self.backend_id)

    def regular_rep(self) -> Rep:
        return hopf_algebra.regular_rep(self.algebra, self.backend_id)

    def tensor_reps(self, *reps: Rep) -> Rep:
        return hopf_algebra.tensor_reps(self.algebra, *reps)

    def twist_rep(self, rep: Rep, t: int) -> Rep:
        return hopf_algebra.twist_rep(self.algebra, rep, t)

    def left_dual_rep(self, rep: Rep) -> Rep:
        return hopf_algebra.left_dual_rep(self.algebra, rep)

    def right_dual_rep(self, rep: Rep) -> Rep:
        return hopf_algebra.right_dual_rep(self.algebra, rep)

    def double_dual_rep(self, rep: Rep, k: int) -> Rep:
        return hopf_algebra.double_dual_rep(self.algebra, rep, k)

    def direct_sum(self, reps: List[Rep], label: str) -> Rep:
        return hopf_algebra.direct_sum_reps(self.algebra, reps, label)

    def intertwiners(self, source: Rep, target: Rep) -> List[DomainMatrix]:
        return hopf_algebra.intertwiners(self.algebra, source, target)

    def is_intertwiner(self, X: DomainMatrix, source: Rep, target: Rep) -> bool:
        return hopf_algebra.is_intertwiner(self.algebra, X, source, target)
