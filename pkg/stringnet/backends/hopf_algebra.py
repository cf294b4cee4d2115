"""Finite dimensional Hopf algebras given by structure constants, and their modules.

Conventions, for a basis b_0..b_{d-1}:

* ``mult[(i*d + j)*d + k]``: coefficient of b_k in b_i b_j.
* ``comult[(i*d + j)*d + k]``: coefficient of b_j (x) b_k in Delta(b_i).
* ``antipode[i*d + j]``: coefficient of b_j in S(b_i).

Internally the structure maps are kept as matrices of linear maps
(``M: H(x)H -> H``, ``D: H -> H(x)H``, ...) so every axiom is a single exact
matrix identity.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from stringnet.backends.groups import GroupTable
from stringnet.core import exact
from stringnet.core.errors import AxiomError
from stringnet.core.exact import ScalarLike
from stringnet.core.objects import Rep


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    name: str
    field: Domain
    dim: int
    # M: H (x) H -> H
    mult_map: DomainMatrix
    # u: K -> H
    unit_map: DomainMatrix
    # D: H -> H (x) H
    comult_map: DomainMatrix
    # eps: H -> K
    counit_map: DomainMatrix
    # S as a linear map, S_map[j][i] = coefficient of b_j in S(b_i)
    antipode_map: DomainMatrix
    antipode_inverse_map: DomainMatrix
    _powers: Dict[int, DomainMatrix] = field(default_factory=dict, repr=False)

    def left_mult(self, i: int) -> DomainMatrix:
        """Matrix of h -> b_i h, which is the regular action of b_i."""
        d = self.dim
        return exact.submatrix(self.mult_map, list(range(d)), list(range(i * d, (i + 1) * d)))

    def right_mult(self, i: int) -> DomainMatrix:
        """Matrix of h -> h b_i."""
        d = self.dim
        return exact.submatrix(self.mult_map, list(range(d)), [j * d + i for j in range(d)])

    def mult_coefficient(self, i: int, j: int, k: int):
        return exact.entry(self.mult_map, k, i * self.dim + j)

    def comult_coefficient(self, i: int, j: int, k: int):
        return exact.entry(self.comult_map, j * self.dim + k, i)

    def counit(self, i: int):
        return exact.entry(self.counit_map, 0, i)

    def unit_vector(self) -> DomainMatrix:
        return self.unit_map

    def antipode_power(self, t: int) -> DomainMatrix:
        """Linear map S^t (t may be negative)."""
        if t not in self._powers:
            if t == 0:
                self._powers[t] = exact.identity(self.dim, self.field)
            elif t > 0:
                self._powers[t] = exact.matmul(self.antipode_map, self.antipode_power(t - 1))
            else:
                self._powers[t] = exact.matmul(self.antipode_inverse_map, self.antipode_power(t + 1))
        return self._powers[t]

    def is_involutory(self) -> bool:
        return exact.equal(self.antipode_power(2), exact.identity(self.dim, self.field))

    def act(self, action: Sequence[DomainMatrix], coefficients: DomainMatrix) -> DomainMatrix:
        """Action of the element with coordinate column ``coefficients``."""
        n = action[0].shape[0]
        coeffs = [exact.entry(coefficients, j, 0) for j in range(self.dim)]
        return exact.linear_combination(coeffs, action, (n, n), self.field)

    def twisted_action(self, action: Sequence[DomainMatrix], t: int) -> Tuple[DomainMatrix, ...]:
        """Action h -> a(S^t h), transposed when t is odd.

        t = 1 is the right dual, t = -1 the left dual, t = 2k the k-th power of
        the right double dual.
        """
        if t == 0:
            return tuple(action)
        power = self.antipode_power(t)
        result = []
        for i in range(self.dim):
            matrix = self.act(action, exact.submatrix(power, list(range(self.dim)), [i]))
            result.append(exact.transpose(matrix) if t % 2 else matrix)
        return tuple(result)

    def generating_indices(self) -> Tuple[int, ...]:
        """A small set of basis elements generating H as an algebra."""
        return _generating_indices(self)

    def fingerprint_data(self) -> List[List[List[str]]]:
        return [
            exact.render(m)
            for m in (self.mult_map, self.unit_map, self.comult_map, self.counit_map, self.antipode_map)
        ]


def _subalgebra_rank(H: HopfAlgebra, generators: Sequence[int]) -> int:
    K = H.field
    span = H.unit_map
    while True:
        products = [span]
        for g in generators:
            products.append(exact.matmul(H.left_mult(g), span))
        grown = exact.transpose(exact.rowspace(exact.transpose(exact.hstack(products, K))))
        if grown.shape[1] == span.shape[1]:
            return grown.shape[1]
        span = grown


@lru_cache(maxsize=None)
def _generating_indices(H: HopfAlgebra) -> Tuple[int, ...]:
    chosen: List[int] = []
    current = _subalgebra_rank(H, chosen)
    for i in range(H.dim):
        if current == H.dim:
            break
        candidate = _subalgebra_rank(H, chosen + [i])
        if candidate > current:
            chosen.append(i)
            current = candidate
    return tuple(chosen)


def _swap_middle(d: int, K: Domain) -> DomainMatrix:
    """id (x) tau (x) id on H^{(x)4}: (a, b, c, e) -> (a, c, b, e)."""
    targets = []
    for index in range(d**4):
        a, rest = divmod(index, d**3)
        b, rest = divmod(rest, d**2)
        c, e = divmod(rest, d)
        targets.append(((a * d + c) * d + b) * d + e)
    return exact.permutation(targets, K)


def _check(identity: str, lhs: DomainMatrix, rhs: DomainMatrix, d: int) -> None:
    if exact.equal(lhs, rhs):
        return
    difference = exact.sub(lhs, rhs).to_dok()
    (row, col) = sorted(difference)[0]
    raise AxiomError(identity, _digits(row, lhs.shape[0], d) + _digits(col, lhs.shape[1], d))


def _digits(index: int, size: int, d: int) -> Tuple[int, ...]:
    digits = []
    while size > 1:
        size //= d
        digit, index = divmod(index, size)
        digits.append(digit)
    return tuple(digits)


def verify_hopf_axioms(H: HopfAlgebra) -> None:
    """Checks every Hopf algebra axiom as an exact matrix identity.

    Raises:
        AxiomError: Naming the failed identity and the basis indices where the
            two sides first differ.
    """
    d, K = H.dim, H.field
    I = exact.identity(d, K)
    one = exact.identity(1, K)
    M, u, D, eps, S = H.mult_map, H.unit_map, H.comult_map, H.counit_map, H.antipode_map

    _check("associativity", exact.matmul(M, exact.kron(M, I)), exact.matmul(M, exact.kron(I, M)), d)
    _check("left unit", exact.matmul(M, exact.kron(u, I)), I, d)
    _check("right unit", exact.matmul(M, exact.kron(I, u)), I, d)
    _check("coassociativity", exact.matmul(exact.kron(D, I), D), exact.matmul(exact.kron(I, D), D), d)
    _check("left counit", exact.matmul(exact.kron(eps, I), D), I, d)
    _check("right counit", exact.matmul(exact.kron(I, eps), D), I, d)
    _check(
        "bialgebra compatibility",
        exact.matmul(D, M),
        exact.chain(exact.kron(M, M), _swap_middle(d, K), exact.kron(D, D)),
        d,
    )
    _check("counit multiplicativity", exact.matmul(eps, M), exact.kron(eps, eps), d)
    _check("counit of unit", exact.matmul(eps, u), one, d)
    _check("comultiplication of unit", exact.matmul(D, u), exact.kron(u, u), d)
    convolution_unit = exact.matmul(u, eps)
    _check("left antipode", exact.chain(M, exact.kron(S, I), D), convolution_unit, d)
    _check("right antipode", exact.chain(M, exact.kron(I, S), D), convolution_unit, d)
    _check("antipode inverse", exact.matmul(S, H.antipode_inverse_map), I, d)


def build_hopf_algebra(
    name: str,
    K: Domain,
    dim: int,
    mult: Sequence[ScalarLike],
    unit: Sequence[ScalarLike],
    comult: Sequence[ScalarLike],
    counit: Sequence[ScalarLike],
    antipode: Sequence[ScalarLike],
    antipode_inverse: Optional[Sequence[ScalarLike]] = None,
) -> HopfAlgebra:
    """Builds and verifies a Hopf algebra from flat structure-constant lists.

    Raises:
        AxiomError: If a list has the wrong length, S is singular, or an axiom fails.
    """
    d = dim
    for label, values, size in (
        ("multiplication", mult, d**3),
        ("unit", unit, d),
        ("comultiplication", comult, d**3),
        ("counit", counit, d),
        ("antipode", antipode, d**2),
    ):
        if len(values) != size:
            raise AxiomError(f"{label} size", (len(values), size))

    def conv(x):
        return exact.scalar(K, x)

    mult_map = exact.from_entries(
        {(k, i * d + j): conv(mult[(i * d + j) * d + k]) for i in range(d) for j in range(d) for k in range(d)},
        (d, d * d),
        K,
    )
    comult_map = exact.from_entries(
        {(j * d + k, i): conv(comult[(i * d + j) * d + k]) for i in range(d) for j in range(d) for k in range(d)},
        (d * d, d),
        K,
    )
    unit_map = exact.from_entries({(i, 0): conv(unit[i]) for i in range(d)}, (d, 1), K)
    counit_map = exact.from_entries({(0, i): conv(counit[i]) for i in range(d)}, (1, d), K)
    antipode_map = exact.from_entries({(j, i): conv(antipode[i * d + j]) for i in range(d) for j in range(d)}, (d, d), K)
    if antipode_inverse is None:
        inverse_map = exact.inverse(antipode_map)
        if inverse_map is None:
            raise AxiomError("antipode invertibility", ())
    else:
        inverse_map = exact.from_entries(
            {(j, i): conv(antipode_inverse[i * d + j]) for i in range(d) for j in range(d)}, (d, d), K
        )
    H = HopfAlgebra(name, K, d, mult_map, unit_map, comult_map, counit_map, antipode_map, inverse_map)
    verify_hopf_axioms(H)
    logger.debug(f"Loaded Hopf algebra {name} of dimension {d} over {exact.field_name(K)}.")
    return H


def group_algebra(group: GroupTable, K: Domain, name: Optional[str] = None) -> HopfAlgebra:
    """K[G]: basis the group elements, grouplike comultiplication, S(g) = g^-1."""
    n = group.order
    mult = [0] * n**3
    comult = [0] * n**3
    antipode = [0] * n**2
    for a in range(n):
        for b in range(n):
            mult[(a * n + b) * n + group.mul(a, b)] = 1
        comult[(a * n + a) * n + a] = 1
        antipode[a * n + group.inverse[a]] = 1
    unit = [1 if g == group.identity else 0 for g in range(n)]
    counit = [1] * n
    return build_hopf_algebra(name or f"K[G{n}]", K, n, mult, unit, comult, counit, antipode)


def function_algebra(group: GroupTable, K: Domain, name: Optional[str] = None) -> HopfAlgebra:
    """K^G: basis the delta functions e_g, Delta(e_g) = sum over ab=g of e_a (x) e_b.

    Its modules are exactly the G-graded vector spaces.
    """
    n = group.order
    mult = [0] * n**3
    comult = [0] * n**3
    antipode = [0] * n**2
    for g in range(n):
        mult[(g * n + g) * n + g] = 1
        antipode[g * n + group.inverse[g]] = 1
        for a in range(n):
            b = group.mul(group.inverse[a], g)
            comult[(g * n + a) * n + b] = 1
    unit = [1] * n
    counit = [1 if g == group.identity else 0 for g in range(n)]
    return build_hopf_algebra(name or f"K^G{n}", K, n, mult, unit, comult, counit, antipode)


# ---------------------------------
# Modules.
# ---------------------------------


def regular_rep(H: HopfAlgebra, backend_id: str, label: str = "H") -> Rep:
    return Rep(label, H.dim, tuple(H.left_mult(i) for i in range(H.dim)), backend_id)


def unit_rep(H: HopfAlgebra, backend_id: str) -> Rep:
    return Rep(
        "1",
        1,
        tuple(exact.from_entries({(0, 0): H.counit(i)}, (1, 1), H.field) for i in range(H.dim)),
        backend_id,
    )


def tensor_action(H: HopfAlgebra, left: Sequence[DomainMatrix], right: Sequence[DomainMatrix]) -> Tuple[DomainMatrix, ...]:
    K = H.field
    n = left[0].shape[0] * right[0].shape[0]
    result = []
    for i in range(H.dim):
        entries: Dict[Tuple[int, int], object] = {}
        column = exact.submatrix(H.comult_map, list(range(H.dim**2)), [i]).to_dok()
        for (jk, _), c in column.items():
            j, k = divmod(jk, H.dim)
            for key, value in exact.kron(left[j], right[k]).to_dok().items():
                entries[key] = entries.get(key, K.zero) + c * value
        result.append(exact.from_entries(entries, (n, n), K))
    return tuple(result)


def tensor_reps(H: HopfAlgebra, *reps: Rep) -> Rep:
    """Tensor product through Delta; the basis is lexicographic in the factors."""
    if not reps:
        raise ValueError("tensor_reps needs at least one factor")
    result = reps[0]
    for rep in reps[1:]:
        result = Rep(
            f"{result.label}(x){rep.label}",
            result.dim * rep.dim,
            tensor_action(H, result.action, rep.action),
            result.backend_id,
            result.factors + rep.factors,
        )
    return result


def twist_rep(H: HopfAlgebra, rep: Rep, t: int, label: Optional[str] = None) -> Rep:
    if t == 0:
        return rep
    return Rep(label or f"{rep.label}^{t:+d}", rep.dim, H.twisted_action(rep.action, t), rep.backend_id, rep.factors)


def left_dual_rep(H: HopfAlgebra, rep: Rep) -> Rep:
    """Dual space with the action of S^-1 transposed, paired by ev: V (x) vV -> 1."""
    return twist_rep(H, rep, -1, f"v{rep.label}")


def right_dual_rep(H: HopfAlgebra, rep: Rep) -> Rep:
    """Dual space with the action of S transposed, paired by ev~: V^v (x) V -> 1."""
    return twist_rep(H, rep, 1, f"{rep.label}^v")


def double_dual_rep(H: HopfAlgebra, rep: Rep, k: int) -> Rep:
    return twist_rep(H, rep, 2 * k, f"{rep.label}^vv{k:+d}" if k else rep.label)


def direct_sum_reps(H: HopfAlgebra, reps: Sequence[Rep], label: str) -> Rep:
    K = H.field
    dim = sum(rep.dim for rep in reps)
    action = tuple(exact.block_diag([rep.action[i] for rep in reps], K) for i in range(H.dim))
    return Rep(label, dim, action, reps[0].backend_id)


def intertwiner_constraints(H: HopfAlgebra, source: Rep, target: Rep) -> DomainMatrix:
    """Linear constraints on row-major X with X a_source(g) = a_target(g) X for generators g."""
    K = H.field
    n, m = source.dim, target.dim
    entries: Dict[Tuple[int, int], object] = {}
    row = 0
    for g in H.generating_indices():
        A = source.action[g].to_dok()
        B = target.action[g].to_dok()
        block: Dict[Tuple[int, int], object] = {}
        # (X A)[r][c] = sum_k X[r][k] A[k][c]
        for (k, c), value in A.items():
            for r in range(m):
                key = (r * n + c, r * n + k)
                block[key] = block.get(key, K.zero) + value
        # (B X)[r][c] = sum_k B[r][k] X[k][c]
        for (r, k), value in B.items():
            for c in range(n):
                key = (r * n + c, k * n + c)
                block[key] = block.get(key, K.zero) - value
        for (i, j), value in block.items():
            entries[row + i, j] = value
        row += m * n
    return exact.from_entries(entries, (row, m * n), K)


def intertwiners(H: HopfAlgebra, source: Rep, target: Rep) -> List[DomainMatrix]:
    """Basis of Hom_H(source, target) in reduced echelon order of the flattened matrices."""
    if source.dim == 0 or target.dim == 0:
        return []
    constraints = intertwiner_constraints(H, source, target)
    return [exact.unflatten(v, (target.dim, source.dim)) for v in exact.nullspace(constraints)]


def is_intertwiner(H: HopfAlgebra, X: DomainMatrix, source: Rep, target: Rep) -> bool:
    return all(
        exact.equal(exact.matmul(X, source.action[g]), exact.matmul(target.action[g], X))
        for g in H.generating_indices()
    )
