"""Exact linear algebra on top of sympy's ``DomainMatrix``.

Every matrix produced here is normalized: dense for small shapes, sparse once
the entry count passes ``constants.DENSE_ENTRY_LIMIT``. Binary operations
unify formats explicitly because ``DomainMatrix.__mul__`` would otherwise
densify sparse operands.
"""

import re
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

import constants
from stringnet.core.errors import StringNetError

ScalarLike = Union[int, Fraction, str, Tuple[int, int]]

_FIELD_PATTERN = re.compile(r"^GF\((\d+)\)$")


def parse_field(spec: str) -> Domain:
    """Returns the sympy domain named by ``spec`` ("QQ" or "GF(p)").

    Raises:
        StringNetError: If the name is unknown or p is not a prime >= 5.
    """
    spec = spec.strip()
    if spec in ("QQ", "Q"):
        return QQ
    match = _FIELD_PATTERN.match(spec.replace(" ", ""))
    if not match:
        raise StringNetError(f"Unknown field {spec!r}; expected QQ or GF(p).")
    p = int(match.group(1))
    if p < constants.MIN_PRIME_CHARACTERISTIC or not isprime(p):
        raise StringNetError(
            f"GF({p}) is not allowed; the characteristic must be a prime >= {constants.MIN_PRIME_CHARACTERISTIC}."
        )
    return GF(p)


def field_name(K: Domain) -> str:
    if K == QQ:
        return "QQ"
    return f"GF({K.characteristic()})"


def scalar(K: Domain, value: ScalarLike):
    """Converts an int, Fraction, "p/q" string or (p, q) pair into an element of K."""
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, tuple):
        value = Fraction(value[0], value[1])
    if isinstance(value, Fraction):
        num, den = value.numerator, value.denominator
    else:
        num, den = int(value), 1
    if K == QQ:
        return QQ(num, den)
    if den % K.characteristic() == 0:
        raise StringNetError(f"{value} has no image in {field_name(K)}.")
    return K(num) * K.revert(K(den))


def scalar_str(K: Domain, x) -> str:
    """Renders a field element canonically: "n", "n/d", or a residue in [0, p)."""
    if K == QQ:
        num, den = int(x.numerator), int(x.denominator)
        return str(num) if den == 1 else f"{num}/{den}"
    return str(int(K.to_int(x)) % K.characteristic())


def _fmt(shape: Tuple[int, int]) -> str:
    return "dense" if shape[0] * shape[1] <= constants.DENSE_ENTRY_LIMIT else "sparse"


def normalize(M: DomainMatrix) -> DomainMatrix:
    if _fmt(M.shape) == "dense":
        return M.to_dense()
    return M.to_sparse()


def from_entries(entries: Dict[Tuple[int, int], object], shape: Tuple[int, int], K: Domain) -> DomainMatrix:
    dok = {key: value for key, value in entries.items() if value}
    return normalize(DomainMatrix.from_dok(dok, shape, K))


def from_rows(rows: Sequence[Sequence[ScalarLike]], K: Domain, ncols: Optional[int] = None) -> DomainMatrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    entries = {}
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise StringNetError(f"Row {i} has {len(row)} entries, expected {ncols}.")
        for j, value in enumerate(row):
            entries[i, j] = value if K.of_type(value) else scalar(K, value)
    return from_entries(entries, (nrows, ncols), K)


def zeros(shape: Tuple[int, int], K: Domain) -> DomainMatrix:
    return normalize(DomainMatrix.zeros(shape, K))


def identity(n: int, K: Domain) -> DomainMatrix:
    return normalize(DomainMatrix.eye(n, K))


def unit_vector(n: int, index: int, K: Domain) -> DomainMatrix:
    """Column vector e_index of length n."""
    return from_entries({(index, 0): K.one}, (n, 1), K)


def permutation(targets: Sequence[int], K: Domain) -> DomainMatrix:
    """Matrix sending basis vector i to basis vector ``targets[i]``."""
    n = len(targets)
    return from_entries({(t, i): K.one for i, t in enumerate(targets)}, (n, n), K)


def _pair(A: DomainMatrix, B: DomainMatrix) -> Tuple[DomainMatrix, DomainMatrix]:
    if A.domain != B.domain:
        raise StringNetError(f"Field mismatch: {A.domain} and {B.domain}.")
    if A.rep.fmt == B.rep.fmt:
        return A, B
    return A.to_sparse(), B.to_sparse()


def matmul(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if A.shape[1] != B.shape[0]:
        raise StringNetError(f"Shape mismatch: {A.shape} @ {B.shape}.")
    if 0 in A.shape or 0 in B.shape:
        return zeros((A.shape[0], B.shape[1]), A.domain)
    A, B = _pair(A, B)
    return normalize(A.matmul(B))


def chain(*matrices: DomainMatrix) -> DomainMatrix:
    """Product of the matrices, rightmost applied first."""
    result = matrices[-1]
    for M in reversed(matrices[:-1]):
        result = matmul(M, result)
    return result


def add(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if A.shape != B.shape:
        raise StringNetError(f"Shape mismatch: {A.shape} + {B.shape}.")
    A, B = _pair(A, B)
    return normalize(A.add(B))


def sub(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    if A.shape != B.shape:
        raise StringNetError(f"Shape mismatch: {A.shape} - {B.shape}.")
    A, B = _pair(A, B)
    return normalize(A.sub(B))


def scale(c, A: DomainMatrix) -> DomainMatrix:
    K = A.domain
    c = c if K.of_type(c) else scalar(K, c)
    return from_entries({key: c * value for key, value in A.to_dok().items()}, A.shape, K)


def linear_combination(coefficients: Sequence, matrices: Sequence[DomainMatrix], shape: Tuple[int, int], K: Domain) -> DomainMatrix:
    entries: Dict[Tuple[int, int], object] = {}
    for c, M in zip(coefficients, matrices):
        if not c:
            continue
        for key, value in M.to_dok().items():
            entries[key] = entries.get(key, K.zero) + c * value
    return from_entries(entries, shape, K)


def transpose(A: DomainMatrix) -> DomainMatrix:
    return normalize(A.transpose())


def kron(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    rows_b, cols_b = B.shape
    entries = {}
    b_items = list(B.to_dok().items())
    for (i, j), a in A.to_dok().items():
        for (k, l), b in b_items:
            entries[i * rows_b + k, j * cols_b + l] = a * b
    shape = (A.shape[0] * rows_b, A.shape[1] * cols_b)
    return from_entries(entries, shape, A.domain)


def kron_all(matrices: Sequence[DomainMatrix], K: Domain) -> DomainMatrix:
    result = identity(1, K)
    for M in matrices:
        result = kron(result, M)
    return result


def block_diag(blocks: Sequence[DomainMatrix], K: Domain) -> DomainMatrix:
    entries = {}
    r0 = c0 = 0
    for M in blocks:
        for (i, j), value in M.to_dok().items():
            entries[r0 + i, c0 + j] = value
        r0 += M.shape[0]
        c0 += M.shape[1]
    return from_entries(entries, (r0, c0), K)


def hstack(blocks: Sequence[DomainMatrix], K: Domain, nrows: Optional[int] = None) -> DomainMatrix:
    if nrows is None:
        nrows = blocks[0].shape[0]
    entries = {}
    c0 = 0
    for M in blocks:
        if M.shape[0] != nrows:
            raise StringNetError(f"Cannot place a {M.shape} block in {nrows} rows.")
        for (i, j), value in M.to_dok().items():
            entries[i, c0 + j] = value
        c0 += M.shape[1]
    return from_entries(entries, (nrows, c0), K)


def vstack(blocks: Sequence[DomainMatrix], K: Domain, ncols: Optional[int] = None) -> DomainMatrix:
    if ncols is None:
        ncols = blocks[0].shape[1]
    entries = {}
    r0 = 0
    for M in blocks:
        if M.shape[1] != ncols:
            raise StringNetError(f"Cannot stack a {M.shape} block under {ncols} columns.")
        for (i, j), value in M.to_dok().items():
            entries[r0 + i, j] = value
        r0 += M.shape[0]
    return from_entries(entries, (r0, ncols), K)


def submatrix(A: DomainMatrix, rows: Sequence[int], cols: Sequence[int]) -> DomainMatrix:
    row_pos = {r: i for i, r in enumerate(rows)}
    col_pos = {c: j for j, c in enumerate(cols)}
    entries = {
        (row_pos[i], col_pos[j]): value
        for (i, j), value in A.to_dok().items()
        if i in row_pos and j in col_pos
    }
    return from_entries(entries, (len(rows), len(cols)), A.domain)


def equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    return A.shape == B.shape and A.domain == B.domain and A.to_dok() == B.to_dok()


def is_zero(A: DomainMatrix) -> bool:
    return not A.to_dok()


def entry(A: DomainMatrix, i: int, j: int):
    return A.to_dok().get((i, j), A.domain.zero)


def flatten(A: DomainMatrix) -> DomainMatrix:
    """Row-major vectorization as a column."""
    rows, cols = A.shape
    return from_entries({(i * cols + j, 0): v for (i, j), v in A.to_dok().items()}, (rows * cols, 1), A.domain)


def unflatten(v: DomainMatrix, shape: Tuple[int, int]) -> DomainMatrix:
    cols = shape[1]
    return from_entries({divmod(i, cols): value for (i, _), value in v.to_dok().items()}, shape, v.domain)


def rref(A: DomainMatrix) -> Tuple[DomainMatrix, Tuple[int, ...]]:
    if 0 in A.shape:
        return A, ()
    R, pivots = A.rref()
    return normalize(R), tuple(pivots)


def rank(A: DomainMatrix) -> int:
    return len(rref(A)[1])


def nullspace(A: DomainMatrix) -> List[DomainMatrix]:
    """Basis of {x : A x = 0} as columns, canonicalized by reduced echelon form."""
    K = A.domain
    n = A.shape[1]
    if n == 0:
        return []
    if A.shape[0] == 0 or is_zero(A):
        return [unit_vector(n, i, K) for i in range(n)]
    N = A.nullspace()
    if N.shape[0] == 0:
        return []
    R, pivots = rref(N)
    dok = R.to_dok()
    return [
        from_entries({(j, 0): v for (i, j), v in dok.items() if i == r}, (n, 1), K)
        for r in range(len(pivots))
    ]


def rowspace(A: DomainMatrix) -> DomainMatrix:
    """Reduced echelon basis of the row space, zero rows dropped."""
    R, pivots = rref(A)
    return submatrix(R, list(range(len(pivots))), list(range(A.shape[1])))


def solve(A: DomainMatrix, b: DomainMatrix) -> Optional[DomainMatrix]:
    """A particular solution of A x = b, or None if the system is inconsistent."""
    K = A.domain
    n = A.shape[1]
    if A.shape[0] == 0:
        return zeros((n, b.shape[1]), K)
    augmented = hstack([A, b], K)
    R, pivots = rref(augmented)
    if any(p >= n for p in pivots):
        return None
    dok = R.to_dok()
    entries = {}
    for r, p in enumerate(pivots):
        for (i, j), value in dok.items():
            if i == r and j >= n:
                entries[p, j - n] = value
    return from_entries(entries, (n, b.shape[1]), K)


def inverse(A: DomainMatrix) -> Optional[DomainMatrix]:
    if A.shape[0] != A.shape[1]:
        return None
    if A.shape[0] == 0:
        return A
    if rank(A) < A.shape[0]:
        return None
    return normalize(A.to_dense().inv())


def in_span(target: DomainMatrix, spanning: Sequence[DomainMatrix]) -> bool:
    """Whether ``target`` is a linear combination of ``spanning`` (all the same shape)."""
    if is_zero(target):
        return True
    if not spanning:
        return False
    K = target.domain
    columns = hstack([flatten(M) for M in spanning], K)
    return solve(columns, flatten(target)) is not None


def render(A: DomainMatrix) -> List[List[str]]:
    K = A.domain
    dok = A.to_dok()
    return [[scalar_str(K, dok.get((i, j), K.zero)) for j in range(A.shape[1])] for i in range(A.shape[0])]


def trace(A: DomainMatrix):
    K = A.domain
    total = K.zero
    for (i, j), value in A.to_dok().items():
        if i == j:
            total += value
    return total
