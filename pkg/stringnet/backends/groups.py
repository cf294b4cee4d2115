from dataclasses import dataclass
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

from stringnet.core.errors import AxiomError


@dataclass(frozen=True)
class GroupTable:
    """A finite group given by its multiplication table on indices 0..n-1."""

    order: int
    table: Tuple[Tuple[int, ...], ...]
    identity: int
    inverse: Tuple[int, ...]
    names: Tuple[str, ...]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, elements: Sequence[int]) -> int:
        result = self.identity
        for g in elements:
            result = self.table[result][g]
        return result

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"Unknown group element {name!r}.")

    def conjugate(self, h: int, g: int) -> int:
        """h g h^-1."""
        return self.table[self.table[h][g]][self.inverse[h]]


def build_group(table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None) -> GroupTable:
    """Validates a multiplication table and returns the group.

    Raises:
        AxiomError: If closure, associativity, identity or inverses fail; the
            error names the violated triple.
    """
    n = len(table)
    if n == 0:
        raise AxiomError("nonempty", ())
    for a, row in enumerate(table):
        if len(row) != n:
            raise AxiomError("square table", (a,), f"row has {len(row)} entries")
        for b, c in enumerate(row):
            if not 0 <= c < n:
                raise AxiomError("closure", (a, b), f"product {c} out of range")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise AxiomError("associativity", (a, b, c))
    identities = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
    if not identities:
        raise AxiomError("identity", ())
    e = identities[0]
    inverse = []
    for g in range(n):
        candidates = [h for h in range(n) if table[g][h] == e and table[h][g] == e]
        if not candidates:
            raise AxiomError("inverse", (g,))
        inverse.append(candidates[0])
    if names is None:
        names = ["e" if g == e else f"g{g}" for g in range(n)]
    if len(set(names)) != n:
        raise AxiomError("distinct names", ())
    return GroupTable(
        order=n,
        table=tuple(tuple(row) for row in table),
        identity=e,
        inverse=tuple(inverse),
        names=tuple(names),
    )


def cyclic_group(n: int) -> GroupTable:
    names = ["e"] + [f"a{k}" if n > 2 else "g" for k in range(1, n)]
    return build_group([[(a + b) % n for b in range(n)] for a in range(n)], names)


def symmetric_group(k: int) -> GroupTable:
    """S_k acting on 0..k-1; composition (p q)(i) = p(q(i))."""
    elements: List[Tuple[int, ...]] = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[tuple(p[q[i]] for i in range(k))] for q in elements] for p in elements]
    return build_group(table, [_cycle_name(p) for p in elements])


def _cycle_name(p: Tuple[int, ...]) -> str:
    seen = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = p[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = p[nxt]
        cycles.append("(" + "".join(str(i + 1) for i in cycle) + ")")
    return "".join(cycles) or "e"
