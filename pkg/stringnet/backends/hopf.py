"""H-mod for a finite dimensional Hopf algebra H.

Generators are user-registered modules (the regular module ``H`` is always
registered). A letter carries a twist t and acts through a(S^t h), transposed
for odd t, so left duals, right duals and powers of the double dual stay
strict on words even when S^2 is not the identity.
"""

from typing import Dict, List, Optional, Sequence

from loguru import logger

from stringnet.backends.hopf_algebra import HopfAlgebra, regular_rep
from stringnet.backends.realized import ModuleBackend
from stringnet.core import exact
from stringnet.core.errors import AxiomError
from stringnet.core.objects import Letter, ObjectWord, Rep


class HopfBackend(ModuleBackend):
    def __init__(self, algebra: HopfAlgebra, backend_id: Optional[str] = None):
        super().__init__(backend_id or f"hopf-{algebra.name}", algebra)
        self._modules: Dict[str, Rep] = {}
        self.register_module("H", list(regular_rep(algebra, self.backend_id).action))

    def register_module(self, label: str, action: Sequence) -> ObjectWord:
        """Registers a module given one action matrix per basis element of H.

        Raises:
            AxiomError: If the matrices do not define an H-module.
        """
        if label in self._modules:
            raise AxiomError("unique module label", (), label)
        K = self.field
        matrices = tuple(m if hasattr(m, "to_dok") else exact.from_rows(m, K) for m in action)
        if len(matrices) != self.algebra.dim:
            raise AxiomError("module action count", (len(matrices), self.algebra.dim), label)
        rep = Rep(label, matrices[0].shape[0], matrices, self.backend_id)
        verify_module(self.algebra, rep)
        self._modules[label] = rep
        logger.debug(f"Registered {label} (dimension {rep.dim}) in {self.backend_id}.")
        return self.module_word(label)

    def module(self, label: str) -> Rep:
        return self._modules[label]

    def module_word(self, label: str, twist: int = 0) -> ObjectWord:
        rep = self._modules[label]
        return ObjectWord((Letter(label, rep.dim, twist),), self.backend_id)

    def generators(self) -> List[ObjectWord]:
        return [self.module_word(label) for label in self._modules]

    def left_dual_letter(self, letter: Letter) -> Letter:
        return Letter(letter.label, letter.dim, letter.twist - 1)

    def right_dual_letter(self, letter: Letter) -> Letter:
        return Letter(letter.label, letter.dim, letter.twist + 1)

    def double_dual_letter(self, letter: Letter, k: int) -> Letter:
        return Letter(letter.label, letter.dim, letter.twist + 2 * k)

    def realize_letter(self, letter: Letter) -> Rep:
        return self.twist_rep(self._modules[letter.label], letter.twist).relabel(str(letter))

    def fingerprint_data(self) -> dict:
        return {
            "kind": "hopf",
            "field": exact.field_name(self.field),
            "algebra": self.algebra.fingerprint_data(),
            "modules": {label: [exact.render(m) for m in rep.action] for label, rep in sorted(self._modules.items())},
        }


def verify_module(H: HopfAlgebra, rep: Rep) -> None:
    """Checks a(b_i) a(b_j) = sum_k m_ijk a(b_k) and a(1) = id exactly.

    Raises:
        AxiomError: Naming the failing pair of basis indices.
    """
    K = H.field
    n = rep.dim
    for i in range(H.dim):
        for j in range(H.dim):
            product = exact.matmul(rep.action[i], rep.action[j])
            coefficients = exact.submatrix(H.mult_map, list(range(H.dim)), [i * H.dim + j])
            if not exact.equal(product, H.act(rep.action, coefficients)):
                raise AxiomError("module multiplication", (i, j), rep.label)
    if not exact.equal(H.act(rep.action, H.unit_vector()), exact.identity(n, K)):
        raise AxiomError("module unit", (), rep.label)


def load_hopf(
    algebra: HopfAlgebra,
    modules: Optional[Dict[str, Sequence]] = None,
    backend_id: Optional[str] = None,
) -> HopfBackend:
    """Returns the H-mod backend with the regular module and any extra modules registered."""
    backend = HopfBackend(algebra, backend_id)
    for label, action in (modules or {}).items():
        backend.register_module(label, action)
    logger.info(
        f"Loaded {backend.backend_id}: dimension {algebra.dim}, "
        f"{'involutory' if algebra.is_involutory() else 'non-involutory'}, {len(backend.generators())} modules."
    )
    return backend
