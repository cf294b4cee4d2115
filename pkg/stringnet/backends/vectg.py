"""Vect_G: G-graded vector spaces for a finite group G.

Generators are the one-dimensional simples delta_g. They are realized as
modules over the function algebra K^G, on which e_h acts on delta_g by
[h == g]; tensor products then multiply degrees and the double dual is the
identity on the nose.
"""

from typing import List, Optional, Sequence

from loguru import logger
from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain

from stringnet.backends.groups import GroupTable, build_group
from stringnet.backends.hopf_algebra import function_algebra
from stringnet.backends.realized import ModuleBackend
from stringnet.core import exact
from stringnet.core.objects import Letter, ObjectWord, Rep


class VectGBackend(ModuleBackend):
    def __init__(self, group: GroupTable, K: Domain = QQ, backend_id: Optional[str] = None):
        backend_id = backend_id or f"vect-G{group.order}"
        super().__init__(backend_id, function_algebra(group, K, name=f"K^{backend_id}"))
        self.group = group
        self._letters = [Letter(name, 1) for name in group.names]

    def generators(self) -> List[ObjectWord]:
        return [ObjectWord((letter,), self.backend_id) for letter in self._letters]

    def simple(self, g: int) -> ObjectWord:
        """delta_g as a one-letter word."""
        return ObjectWord((self._letters[g],), self.backend_id)

    def degree(self, x: ObjectWord) -> int:
        return self.group.product([self.group.index(letter.label) for letter in x.letters])

    def _inverse_letter(self, letter: Letter) -> Letter:
        return self._letters[self.group.inverse[self.group.index(letter.label)]]

    def left_dual_letter(self, letter: Letter) -> Letter:
        return self._inverse_letter(letter)

    def right_dual_letter(self, letter: Letter) -> Letter:
        return self._inverse_letter(letter)

    def double_dual_letter(self, letter: Letter, k: int) -> Letter:
        return letter

    def realize_letter(self, letter: Letter) -> Rep:
        g = self.group.index(letter.label)
        K = self.field
        action = tuple(
            exact.from_entries({(0, 0): K.one if h == g else K.zero}, (1, 1), K) for h in range(self.group.order)
        )
        return Rep(letter.label, 1, action, self.backend_id)

    def simple_reps(self) -> List[Rep]:
        return [self.realize(self.simple(g)) for g in range(self.group.order)]

    def fingerprint_data(self) -> dict:
        return {
            "kind": "group",
            "field": exact.field_name(self.field),
            "names": list(self.group.names),
            "table": [list(row) for row in self.group.table],
        }


def load_group(
    table: Sequence[Sequence[int]],
    names: Optional[Sequence[str]] = None,
    K: Domain = QQ,
    backend_id: Optional[str] = None,
) -> VectGBackend:
    """Validates a group table and returns the Vect_G backend over K.

    Raises:
        AxiomError: If the table is not a group; the error names the violated triple.
    """
    group = build_group(table, names)
    backend = VectGBackend(group, K, backend_id)
    logger.info(f"Loaded {backend.backend_id}: group of order {group.order} over {exact.field_name(K)}.")
    return backend
