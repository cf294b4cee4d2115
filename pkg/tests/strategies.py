from fractions import Fraction
from typing import Tuple

from hypothesis import strategies as st

from stringnet.core import exact
from stringnet.core.backend import CategoryBackend
from stringnet.core.morphism import Morphism
from stringnet.core.objects import Obj


def rationals(bound: int = 9) -> st.SearchStrategy[Fraction]:
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


def matrices(K, shape: Tuple[int, int], bound: int = 9):
    rows, cols = shape
    return st.lists(
        st.lists(rationals(bound), min_size=cols, max_size=cols), min_size=rows, max_size=rows
    ).map(lambda entries: exact.from_rows(entries, K, ncols=cols))


def morphisms(backend: CategoryBackend, x: Obj, y: Obj):
    """Random exact linear combinations of a basis of Hom(x, y)."""
    basis = backend.hom_basis(x, y)
    K = backend.field
    return st.lists(rationals(), min_size=len(basis), max_size=len(basis)).map(
        lambda coefficients: Morphism(
            x,
            y,
            exact.linear_combination(
                [exact.scalar(K, c) for c in coefficients], [f.matrix for f in basis], (y.dim, x.dim), K
            ),
        )
    )


def seeds() -> st.SearchStrategy[int]:
    return st.integers(min_value=0, max_value=2**32 - 1)


def words(backend: CategoryBackend, max_length: int = 2):
    generators = [w for w in backend.generators() if w.dim <= 2]
    return st.lists(st.sampled_from(generators), max_size=max_length).map(lambda ws: backend.tensor_all(*ws))
