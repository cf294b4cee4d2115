from fractions import Fraction

import pytest
from hypothesis import given
from sympy.polys.domains import QQ

from stringnet.core import exact
from stringnet.core.errors import StringNetError
from tests.settings import LAW_SETTINGS
from tests.strategies import matrices


@pytest.mark.parametrize("spec, name", [("QQ", "QQ"), ("GF(5)", "GF(5)"), (" GF(101) ", "GF(101)")])
def test_parse_field(spec, name):
    assert exact.field_name(exact.parse_field(spec)) == name


@pytest.mark.parametrize("spec", ["GF(2)", "GF(3)", "GF(9)", "RR", "GF(p)"])
def test_parse_field_refuses(spec):
    with pytest.raises(StringNetError):
        exact.parse_field(spec)


def test_scalars_render_canonically():
    assert exact.scalar_str(QQ, exact.scalar(QQ, "6/4")) == "3/2"
    assert exact.scalar_str(QQ, exact.scalar(QQ, (-4, 2))) == "-2"
    K = exact.parse_field("GF(7)")
    assert exact.scalar_str(K, exact.scalar(K, Fraction(1, 2))) == "4"
    assert exact.scalar_str(K, exact.scalar(K, -1)) == "6"


def test_scalar_without_image():
    with pytest.raises(StringNetError):
        exact.scalar(exact.parse_field("GF(5)"), Fraction(1, 5))


def test_from_rows_checks_lengths():
    with pytest.raises(StringNetError):
        exact.from_rows([[1, 2], [3]], QQ)


def test_render_and_solve():
    A = exact.from_rows([[1, 2], [3, 4]], QQ)
    assert exact.render(A) == [["1", "2"], ["3", "4"]]
    x = exact.solve(A, exact.from_rows([[5], [6]], QQ))
    assert exact.render(x) == [["-4"], ["9/2"]]
    assert exact.solve(exact.from_rows([[1, 1], [1, 1]], QQ), exact.from_rows([[0], [1]], QQ)) is None


def test_nullspace_is_reduced():
    A = exact.from_rows([[1, 2, 3], [2, 4, 6]], QQ)
    basis = exact.nullspace(A)
    assert len(basis) == 2
    for v in basis:
        assert exact.is_zero(exact.matmul(A, v))
    assert exact.render(exact.hstack(basis, QQ)) == [["1", "0"], ["0", "1"], ["-1/3", "-2/3"]]


def test_large_matrices_go_sparse():
    n = 101
    assert exact.identity(n, QQ).rep.fmt == "sparse"
    assert exact.identity(3, QQ).rep.fmt == "dense"


@LAW_SETTINGS
@given(matrices(QQ, (2, 2)), matrices(QQ, (2, 3)), matrices(QQ, (2, 2)), matrices(QQ, (3, 1)))
def test_kron_mixed_product(A, B, C, D):
    lhs = exact.matmul(exact.kron(A, B), exact.kron(C, D))
    rhs = exact.kron(exact.matmul(A, C), exact.matmul(B, D))
    assert exact.equal(lhs, rhs)


@LAW_SETTINGS
@given(matrices(QQ, (3, 3)))
def test_inverse_when_full_rank(A):
    inverse = exact.inverse(A)
    if exact.rank(A) < 3:
        assert inverse is None
    else:
        assert exact.equal(exact.matmul(A, inverse), exact.identity(3, QQ))


@LAW_SETTINGS
@given(matrices(QQ, (3, 4)))
def test_rank_nullity(A):
    assert exact.rank(A) + len(exact.nullspace(A)) == 4
