from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.domains import QQ

from stringnet.backends.fixtures import BUILDERS, bundled_backend, sweedler_h4
from stringnet.backends.groups import build_group, cyclic_group, symmetric_group
from stringnet.backends.hopf import HopfBackend
from stringnet.backends.hopf_algebra import build_hopf_algebra
from stringnet.backends.vectg import load_group
from stringnet.cli.files import load_backend
from stringnet.core import exact
from stringnet.core.errors import AxiomError, BackendMismatchError, CompositionError
from stringnet.core.morphism import compose
from tests.settings import LAW_SETTINGS
from tests.strategies import words

RIGID_BACKENDS = ["vect-z2", "vect-s3", "hopf-z2", "hopf-h4"]

S3_TABLE = [
    [0, 1, 2, 3, 4, 5],
    [1, 0, 4, 5, 2, 3],
    [2, 3, 0, 1, 5, 4],
    [3, 2, 5, 4, 0, 1],
    [4, 5, 1, 0, 3, 2],
    [5, 4, 3, 2, 1, 0],
]

# module level so hypothesis strategies can draw its words
H4 = bundled_backend("hopf-h4", QQ)


def _rational(value) -> Fraction:
    return Fraction(exact.scalar_str(QQ, value))


def _objects(backend):
    generators = [w for w in backend.generators() if w.dim <= 2]
    return generators + [backend.tensor_all(*generators[:2])]


def test_symmetric_group_table():
    s3 = symmetric_group(3)
    assert [list(row) for row in s3.table] == S3_TABLE
    assert list(s3.names) == ["e", "(23)", "(12)", "(123)", "(132)", "(13)"]
    assert s3.inverse[3] == 4


@pytest.mark.parametrize(
    "table, identity",
    [
        ([[0, 1], [0, 1]], None),
        ([[0, 2], [1, 0]], "closure"),
        ([[0, 1], [1, 1]], "inverse"),
    ],
)
def test_bad_group_tables(table, identity):
    with pytest.raises(AxiomError) as info:
        build_group(table)
    if identity is not None:
        assert info.value.identity == identity


def test_group_names_must_be_distinct():
    with pytest.raises(AxiomError):
        build_group(cyclic_group(2).table, ["a", "a"])


def test_broken_counit_is_refused():
    H = sweedler_h4(QQ)
    d = H.dim
    mult = [_rational(exact.entry(H.mult_map, k, i * d + j)) for i in range(d) for j in range(d) for k in range(d)]
    comult = [_rational(exact.entry(H.comult_map, j * d + k, i)) for i in range(d) for j in range(d) for k in range(d)]
    antipode = [_rational(exact.entry(H.antipode_map, j, i)) for i in range(d) for j in range(d)]
    with pytest.raises(AxiomError):
        build_hopf_algebra("broken", QQ, d, mult, [1, 0, 0, 0], comult, [1, 1, 1, 0], antipode)


def test_module_axioms_are_checked():
    backend = bundled_backend("hopf-h4", QQ)
    with pytest.raises(AxiomError):
        backend.register_module("bad", [[[1]], [[1]], [[1]], [[0]]])


def test_sweedler_is_not_involutory():
    H = sweedler_h4(QQ)
    assert not H.is_involutory()
    assert exact.equal(H.antipode_power(4), exact.identity(4, QQ))


@pytest.mark.parametrize("backend_id", RIGID_BACKENDS)
def test_zigzag_identities(backend_id):
    backend = bundled_backend(backend_id, QQ)
    for x in _objects(backend):
        vx, xv = backend.left_dual(x), backend.right_dual(x)
        left_snake = compose(
            backend.tensor_morphisms(backend.ev_left(x), backend.identity(x)),
            backend.tensor_morphisms(backend.identity(x), backend.coev_left(x)),
        )
        assert left_snake == backend.identity(x)
        left_dual_snake = compose(
            backend.tensor_morphisms(backend.identity(vx), backend.ev_left(x)),
            backend.tensor_morphisms(backend.coev_left(x), backend.identity(vx)),
        )
        assert left_dual_snake == backend.identity(vx)
        right_snake = compose(
            backend.tensor_morphisms(backend.identity(x), backend.ev_right(x)),
            backend.tensor_morphisms(backend.coev_right(x), backend.identity(x)),
        )
        assert right_snake == backend.identity(x)
        right_dual_snake = compose(
            backend.tensor_morphisms(backend.ev_right(x), backend.identity(xv)),
            backend.tensor_morphisms(backend.identity(xv), backend.coev_right(x)),
        )
        assert right_dual_snake == backend.identity(xv)


@pytest.mark.parametrize("backend_id", RIGID_BACKENDS)
def test_structure_maps_are_morphisms(backend_id):
    backend = bundled_backend(backend_id, QQ)
    for x in _objects(backend):
        for f in (backend.ev_left(x), backend.coev_left(x), backend.ev_right(x), backend.coev_right(x)):
            assert backend.is_morphism(f), f"{f} in {backend_id}"


@pytest.mark.parametrize("backend_id", RIGID_BACKENDS)
def test_duals_are_mutually_inverse(backend_id):
    backend = bundled_backend(backend_id, QQ)
    for x in _objects(backend):
        assert backend.left_dual(backend.right_dual(x)) == x
        assert backend.right_dual(backend.left_dual(x)) == x
        assert backend.double_dual_power(x, 1) == backend.right_dual(backend.right_dual(x))
        assert backend.double_dual_power(x, -1) == backend.left_dual(backend.left_dual(x))


def test_double_dual_is_strict_for_graded_spaces(vect_s3):
    for x in vect_s3.generators():
        assert vect_s3.double_dual_power(x, 3) == x
        assert vect_s3.left_dual(x) == vect_s3.right_dual(x)


def test_double_dual_is_visible_for_sweedler(hopf_h4):
    H = hopf_h4.module_word("H")
    twice = hopf_h4.double_dual_power(H, 1)
    assert twice != H
    assert hopf_h4.realize(twice) != hopf_h4.realize(H)
    assert hopf_h4.realize(hopf_h4.double_dual_power(H, 2)) == hopf_h4.realize(H)


def test_dual_reverses_words(hopf_h4):
    word = hopf_h4.tensor_all(hopf_h4.module_word("k"), hopf_h4.module_word("s"))
    dual = hopf_h4.left_dual(word)
    assert [(l.label, l.twist) for l in dual.letters] == [("s", -1), ("k", -1)]


def test_duals_of_realized_modules(hopf_h4):
    word = hopf_h4.module_word("s")
    rep = hopf_h4.realize(word)
    left, right = hopf_h4.left_dual(rep), hopf_h4.right_dual(rep)
    assert left.label == f"v{rep.label}"
    assert right.label == f"{rep.label}^v"
    assert left == hopf_h4.realize(hopf_h4.left_dual(word))
    assert right == hopf_h4.realize(hopf_h4.right_dual(word))
    assert hopf_h4.right_dual(left) == rep
    assert hopf_h4.double_dual_power(rep, 1) == hopf_h4.right_dual(right)
    assert hopf_h4.double_dual_power(rep, 0) is rep


@LAW_SETTINGS
@given(words(H4), words(H4), st.integers(-2, 2))
def test_double_dual_is_strong_monoidal(a, b, k):
    assert H4.double_dual_power(H4.tensor_objects(a, b), k) == H4.tensor_objects(
        H4.double_dual_power(a, k), H4.double_dual_power(b, k)
    )
    # the structure map D(a) (x) D(b) -> D(a (x) b) is the identity matrix
    ra, rb = H4.realize(a), H4.realize(b)
    joint = H4.double_dual_power(H4.tensor_reps(ra, rb), k)
    staged = H4.tensor_reps(H4.double_dual_power(ra, k), H4.double_dual_power(rb, k))
    assert joint == staged
    assert H4.is_intertwiner(exact.identity(joint.dim, QQ), staged, joint)
    assert H4.is_morphism(H4.double_dual_morphism(H4.ev_left(a), k))
    assert H4.double_dual_power(H4.left_dual(a), k) == H4.left_dual(H4.double_dual_power(a, k))


@LAW_SETTINGS
@given(words(H4, max_length=3), st.integers(-3, 3), st.integers(-3, 3))
def test_double_dual_powers_add_on_modules(x, j, k):
    rep = H4.realize(x)
    assert H4.double_dual_power(H4.double_dual_power(rep, j), k) == H4.double_dual_power(rep, j + k)


def test_dual_morphisms_respect_composition(hopf_h4):
    H = hopf_h4.module_word("H")
    basis = hopf_h4.hom_basis(H, H)
    f, g = basis[0], basis[-1]
    assert hopf_h4.right_dual_morphism(compose(g, f)) == compose(
        hopf_h4.right_dual_morphism(f), hopf_h4.right_dual_morphism(g)
    )
    assert hopf_h4.left_dual_morphism(hopf_h4.identity(H)) == hopf_h4.identity(hopf_h4.left_dual(H))


def test_mixing_backends_fails(vect_z2, hopf_z2):
    with pytest.raises(BackendMismatchError):
        vect_z2.tensor_objects(vect_z2.generators()[0], hopf_z2.generators()[0])


def test_composition_checks_words(vect_z2):
    e, g = vect_z2.generators()
    with pytest.raises(CompositionError):
        compose(vect_z2.identity(e), vect_z2.identity(g))


def test_hom_dimensions(vect_z2, hopf_z2, hopf_h4):
    e, g = vect_z2.generators()
    assert len(vect_z2.hom_basis(g, g)) == 1
    assert len(vect_z2.hom_basis(e, g)) == 0
    assert len(vect_z2.hom_basis(vect_z2.tensor_all(g, g), e)) == 1
    H = hopf_z2.module_word("H")
    assert len(hopf_z2.hom_basis(H, H)) == 2
    assert len(hopf_h4.hom_basis(hopf_h4.module_word("H"), hopf_h4.module_word("H"))) == 4


@pytest.mark.parametrize("backend_id", sorted(BUILDERS))
def test_field_choice(backend_id):
    K = exact.parse_field("GF(7)")
    backend = bundled_backend(backend_id, K)
    assert backend.field == K
    for x in backend.generators():
        assert backend.identity(x).matrix.domain == K


@pytest.mark.parametrize("backend_id", ["vect", "vect-1", "vect-z2", "vect-s3", "hopf-z2", "hopf-s3", "hopf-h4"])
def test_bundled_files_match_builders(backend_id):
    from_file = load_backend(backend_id, QQ)
    built = bundled_backend(backend_id, QQ)
    assert from_file.fingerprint() == built.fingerprint()
    assert [str(w) for w in from_file.generators()] == [str(w) for w in built.generators()]


def test_fingerprint_depends_on_data():
    z2 = load_group(cyclic_group(2).table, ["e", "g"], QQ, "a")
    renamed = load_group(cyclic_group(2).table, ["e", "h"], QQ, "a")
    assert z2.fingerprint() != renamed.fingerprint()
    assert z2.fingerprint() != load_group(cyclic_group(2).table, ["e", "g"], exact.parse_field("GF(5)"), "a").fingerprint()


def test_hopf_backend_registers_regular_module(hopf_z2):
    assert isinstance(hopf_z2, HopfBackend)
    assert [str(w) for w in hopf_z2.generators()] == ["(H)"]
