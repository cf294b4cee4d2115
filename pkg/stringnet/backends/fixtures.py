"""Bundled example categories, built in code.

The same categories ship as structure files under ``data/``; the loaders in
``stringnet.cli.files`` read those, and the two must agree fingerprint for
fingerprint.
"""

from typing import Callable, Dict, List, Tuple

from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain

from stringnet.backends.groups import GroupTable, cyclic_group, symmetric_group
from stringnet.backends.hopf import HopfBackend, load_hopf
from stringnet.backends.hopf_algebra import HopfAlgebra, build_hopf_algebra, group_algebra
from stringnet.backends.vectg import VectGBackend, load_group
from stringnet.core.backend import CategoryBackend

# Sweedler's four dimensional Hopf algebra on the basis 1, g, x, gx.
H4_BASIS = ("1", "g", "x", "gx")
_H4_PRODUCTS: Dict[Tuple[int, int], Dict[int, int]] = {
    (1, 1): {0: 1},
    (1, 2): {3: 1},
    (1, 3): {2: 1},
    (2, 1): {3: -1},
    (3, 1): {2: -1},
}
_H4_COPRODUCTS: Dict[int, Dict[Tuple[int, int], int]] = {
    0: {(0, 0): 1},
    1: {(1, 1): 1},
    2: {(2, 0): 1, (1, 2): 1},
    3: {(3, 1): 1, (0, 3): 1},
}
_H4_ANTIPODE: Dict[int, Dict[int, int]] = {0: {0: 1}, 1: {1: 1}, 2: {3: -1}, 3: {2: 1}}


def _flat_products(d: int, products: Dict[Tuple[int, int], Dict[int, int]], unit: int) -> List[int]:
    flat = [0] * d**3
    for i in range(d):
        flat[(unit * d + i) * d + i] = 1
        flat[(i * d + unit) * d + i] = 1
    for (i, j), terms in products.items():
        for k, c in terms.items():
            flat[(i * d + j) * d + k] = c
    return flat


def sweedler_h4(K: Domain = QQ) -> HopfAlgebra:
    """g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x (x) 1 + g (x) x, S(x) = -gx."""
    d = 4
    comult = [0] * d**3
    for i, terms in _H4_COPRODUCTS.items():
        for (j, k), c in terms.items():
            comult[(i * d + j) * d + k] = c
    antipode = [0] * d**2
    for i, terms in _H4_ANTIPODE.items():
        for j, c in terms.items():
            antipode[i * d + j] = c
    return build_hopf_algebra(
        "H4",
        K,
        d,
        _flat_products(d, _H4_PRODUCTS, 0),
        [1, 0, 0, 0],
        comult,
        [1, 1, 0, 0],
        antipode,
    )


def h4_character_modules() -> Dict[str, List[List[List[int]]]]:
    """The two one dimensional H4-modules: g acts by +1 or -1, x by 0."""
    return {
        "k": [[[1]], [[1]], [[0]], [[0]]],
        "s": [[[1]], [[-1]], [[0]], [[0]]],
    }


def trivial_hopf(K: Domain = QQ) -> HopfAlgebra:
    return build_hopf_algebra("K", K, 1, [1], [1], [1], [1], [1])


def trivial_group() -> GroupTable:
    return cyclic_group(1)


def vect_z2(K: Domain = QQ) -> VectGBackend:
    return load_group(cyclic_group(2).table, cyclic_group(2).names, K, "vect-z2")


def vect_s3(K: Domain = QQ) -> VectGBackend:
    s3 = symmetric_group(3)
    return load_group(s3.table, s3.names, K, "vect-s3")


def vect_trivial(K: Domain = QQ) -> VectGBackend:
    return load_group([[0]], ["e"], K, "vect-1")


def hopf_z2(K: Domain = QQ) -> HopfBackend:
    return load_hopf(group_algebra(cyclic_group(2), K, "K[Z2]"), backend_id="hopf-z2")


def hopf_s3(K: Domain = QQ) -> HopfBackend:
    return load_hopf(group_algebra(symmetric_group(3), K, "K[S3]"), backend_id="hopf-s3")


def hopf_h4(K: Domain = QQ) -> HopfBackend:
    return load_hopf(sweedler_h4(K), h4_character_modules(), backend_id="hopf-h4")


def hopf_trivial(K: Domain = QQ) -> HopfBackend:
    return load_hopf(trivial_hopf(K), backend_id="hopf-1")


def vect_spaces(K: Domain = QQ) -> HopfBackend:
    """Finite dimensional vector spaces with generators V1, V2, V3 of dimensions 1, 2, 3."""
    modules = {f"V{d}": [[[int(i == j) for j in range(d)] for i in range(d)]] for d in (1, 2, 3)}
    return load_hopf(trivial_hopf(K), modules, backend_id="vect")


BUILDERS: Dict[str, Callable[[Domain], CategoryBackend]] = {
    "vect": vect_spaces,
    "vect-1": vect_trivial,
    "vect-z2": vect_z2,
    "vect-s3": vect_s3,
    "hopf-1": hopf_trivial,
    "hopf-z2": hopf_z2,
    "hopf-s3": hopf_s3,
    "hopf-h4": hopf_h4,
}


def bundled_backend(backend_id: str, K: Domain = QQ) -> CategoryBackend:
    """Builds one of the bundled categories by id.

    Raises:
        ValueError: If the id is unknown.
    """
    if backend_id not in BUILDERS:
        raise ValueError(f"Unknown bundled backend {backend_id!r}; choose from {sorted(BUILDERS)}.")
    return BUILDERS[backend_id](K)
