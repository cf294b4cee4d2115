import dataclasses
from fractions import Fraction

import numpy as np
import pytest
from sympy.polys.domains import QQ

from stringnet.cli.files import load_cylinder
from stringnet.core import exact
from stringnet.core.errors import ColoringError, ReductionNotSupported, ValidationError
from stringnet.cylinder.local import EvaluationRectangle, local_evaluate, local_piece, null_relation_check
from stringnet.cylinder.net import INNER_POINT, Direction, validate_locally_progressive
from stringnet.cylinder.reduce import (
    NormalFormNet,
    identity_net,
    net_value,
    reduce_to_normal_form,
    standard_form_net,
    turned_leftward,
    unrolled,
)
from stringnet.cylinder.stack import stack
from stringnet.monad.kleisli import kleisli_compose
from stringnet.monad.twisting import twisting
from stringnet.progressive.evaluate import Coloring
from stringnet.progressive.validate import validate_progressive
from tests.helpers import data_path, random_morphism

SEED = 11
RECT = EvaluationRectangle(Fraction(1, 8), Fraction(7, 8), Fraction(1, 8), Fraction(3, 8))


def _normal_form(backend, winding, c, x, y, rng) -> NormalFormNet:
    twist = twisting(winding)
    codom = backend.tensor_all(twist.F(backend, c), y, twist.cowrap(backend, c))
    return NormalFormNet(c, random_morphism(backend, x, codom, rng), winding, x, y)


def _choices(backend):
    if backend.backend_id == "vect-z2":
        e, g = backend.generators()
        return [backend.unit(), e, g], [e, g]
    k, s = backend.module_word("k"), backend.module_word("s")
    return [backend.unit(), k, s, backend.module_word("H")], [k, s]


def _pick(rng, items):
    return items[int(rng.integers(0, len(items)))]


@pytest.fixture
def z2_standard(vect_z2):
    net, _ = load_cylinder(data_path("z2_standard.json"), QQ, vect_z2)
    return net


def test_standard_file_reduces_to_its_coupon(z2_standard, vect_z2):
    assert validate_locally_progressive(z2_standard, vect_z2).accepted
    normal = reduce_to_normal_form(z2_standard, vect_z2)
    _, g = vect_z2.generators()
    assert normal.c == g
    assert exact.render(normal.h.matrix) == [["3"]]
    assert normal.h.codom == vect_z2.tensor_all(g, g, g)


def test_standard_file_value(z2_standard, monad_z2, vect_z2):
    _, g = vect_z2.generators()
    value = net_value(z2_standard, monad_z2)
    assert value == monad_z2.iota(g, g).scaled(QQ(3)).retyped(g, monad_z2.T(g))


@pytest.mark.parametrize("label", ["e", "g"])
def test_identity_net_is_the_unit(monad_z2, vect_z2, label):
    x = dict(zip(["e", "g"], vect_z2.generators()))[label]
    assert net_value(identity_net(x, 1), monad_z2) == monad_z2.unit(x)


def test_identity_file_is_the_unit(monad_z2, vect_z2):
    net, _ = load_cylinder(data_path("z2_identity.json"), QQ, vect_z2)
    _, g = vect_z2.generators()
    assert net_value(net, monad_z2) == monad_z2.unit(g)


def test_identity_net_on_sweedler(monad_h4, hopf_h4):
    s = hopf_h4.module_word("s")
    assert net_value(identity_net(s, 1), monad_h4) == monad_h4.unit(s)


@pytest.mark.parametrize("backend_name, monad_name", [("vect_z2", "monad_z2"), ("hopf_h4", "monad_h4")])
def test_standard_form_round_trip(request, backend_name, monad_name):
    backend = request.getfixturevalue(backend_name)
    monad = request.getfixturevalue(monad_name)
    rng = np.random.default_rng(SEED)
    wraps, sides = _choices(backend)
    for _ in range(10):
        normal = _normal_form(backend, 1, _pick(rng, wraps), _pick(rng, sides), _pick(rng, sides), rng)
        net = standard_form_net(normal, backend)
        assert validate_locally_progressive(net, backend).accepted
        again = reduce_to_normal_form(net, backend)
        assert again.c == normal.c
        assert again.h == normal.h
        assert net_value(net, monad) == normal.value(monad)


@pytest.mark.parametrize("backend_name, monad_name", [("vect_z2", "monad_z2"), ("hopf_h4", "monad_h4")])
def test_stacking_is_kleisli_composition(request, backend_name, monad_name):
    backend = request.getfixturevalue(backend_name)
    monad = request.getfixturevalue(monad_name)
    rng = np.random.default_rng(SEED)
    wraps, sides = _choices(backend)
    for _ in range(50):
        x, y, z = (_pick(rng, sides) for _ in range(3))
        lower = _normal_form(backend, 1, _pick(rng, wraps), x, y, rng)
        upper = _normal_form(backend, 1, _pick(rng, wraps), y, z, rng)
        stacked = stack(standard_form_net(upper, backend), standard_form_net(lower, backend))
        assert validate_locally_progressive(stacked, backend).accepted
        composite = kleisli_compose(monad, upper.kleisli(monad), lower.kleisli(monad))
        assert net_value(stacked, monad) == composite.morphism


def test_unrolled_net_is_progressive(z2_standard):
    graph, embedding, crossings = unrolled(z2_standard)
    assert len(crossings) == 1
    assert validate_progressive(graph, embedding).accepted


def test_rightward_crossing_is_turned_around(vect_z2, monad_z2):
    net, _ = load_cylinder(data_path("z2_rightward.json"), QQ, vect_z2)
    assert validate_locally_progressive(net, vect_z2).accepted
    with pytest.raises(ReductionNotSupported):
        unrolled(net)
    turned = turned_leftward(net, vect_z2)
    assert [s.direction for s in turned.seams] == [Direction.LEFTWARD]
    assert validate_locally_progressive(turned, vect_z2).accepted
    assert len(turned.graph.inner_nodes()) == len(net.graph.inner_nodes()) + 2

    normal = reduce_to_normal_form(net, vect_z2)
    _, g = vect_z2.generators()
    assert normal.c == g
    assert exact.render(normal.h.matrix) == [["1"]]
    assert net_value(net, monad_z2) == monad_z2.iota(g, g).retyped(g, monad_z2.T(g))


def test_seam_colors_follow_the_double_dual(z2_standard, vect_z2):
    e, _ = vect_z2.generators()
    colors = {**z2_standard.coloring.edge_colors, "unwrap": e}
    bad = dataclasses.replace(z2_standard, coloring=Coloring(colors, z2_standard.coloring.node_morphisms))
    report = validate_locally_progressive(bad, vect_z2)
    assert "seam-color" in report.kinds()


def test_boundary_must_sit_on_marked_points(z2_standard, vect_z2):
    positions = {**z2_standard.embedding.positions, "p1": (Fraction(1, 4), Fraction(0))}
    bad = dataclasses.replace(z2_standard, embedding=z2_standard.embedding.with_points(positions, {}))
    report = validate_locally_progressive(bad, vect_z2)
    assert "boundary-marking" in report.kinds()
    assert not report.accepted


def test_boundary_value_must_match(z2_standard, vect_z2):
    e, _ = vect_z2.generators()
    report = validate_locally_progressive(dataclasses.replace(z2_standard, outer=e), vect_z2)
    assert report.kinds() == ["boundary-value"]
    with pytest.raises(ValidationError):
        reduce_to_normal_form(dataclasses.replace(z2_standard, outer=e), vect_z2)


def test_winding_must_match_the_monad(z2_standard, monad_z2):
    with pytest.raises(ValidationError):
        net_value(dataclasses.replace(z2_standard, winding=2), monad_z2)


def test_stack_checks_windings_and_values(vect_z2):
    e, g = vect_z2.generators()
    with pytest.raises(ValidationError):
        stack(identity_net(g, 1), identity_net(g, 2))
    with pytest.raises(ColoringError):
        stack(identity_net(g, 1), identity_net(e, 1))


def test_standard_form_checks_the_coupon_type(vect_z2):
    e, g = vect_z2.generators()
    wrong = NormalFormNet(g, vect_z2.identity(g), 1, g, g)
    with pytest.raises(ColoringError):
        standard_form_net(wrong, vect_z2)


def test_local_evaluation(z2_standard, vect_z2):
    value = local_evaluate(z2_standard, RECT, vect_z2)
    _, g = vect_z2.generators()
    assert value.dom == g
    assert value.codom == vect_z2.tensor_all(g, g, g)
    assert exact.render(value.matrix) == [["3"]]
    piece = local_piece(z2_standard, RECT, vect_z2)
    assert [x for x, _ in piece.bottom] == [INNER_POINT[0]]
    assert [x for x, _ in piece.top] == [Fraction(1, 4), Fraction(1, 2), Fraction(9, 16)]


def test_rectangles_must_be_admissible(z2_standard, vect_z2):
    with pytest.raises(ValidationError):
        EvaluationRectangle(Fraction(0), Fraction(1, 2), Fraction(0), Fraction(1))
    through_coupon = EvaluationRectangle(Fraction(1, 8), Fraction(7, 8), Fraction(1, 4), Fraction(3, 8))
    with pytest.raises(ValidationError):
        local_evaluate(z2_standard, through_coupon, vect_z2)
    across_strand = EvaluationRectangle(Fraction(1, 4), Fraction(7, 8), Fraction(1, 8), Fraction(3, 8))
    with pytest.raises(ValidationError):
        local_evaluate(z2_standard, across_strand, vect_z2)


def _with_coupon(net, node_id, scale):
    morphisms = dict(net.coloring.node_morphisms)
    morphisms[node_id] = morphisms[node_id].scaled(QQ(scale))
    return dataclasses.replace(net, coloring=Coloring(net.coloring.edge_colors, morphisms))


def test_null_relations(z2_standard, vect_z2):
    assert null_relation_check([(1, z2_standard), (-1, z2_standard)], RECT, vect_z2).null
    assert null_relation_check([(2, z2_standard), (-1, _with_coupon(z2_standard, "h", 2))], RECT, vect_z2).null

    report = null_relation_check([(1, z2_standard), (1, z2_standard)], RECT, vect_z2)
    assert not report.null
    assert report.same_outside and report.same_type and not report.vanishes

    report = null_relation_check([(1, z2_standard), (-1, _with_coupon(z2_standard, "kappa", 2))], RECT, vect_z2)
    assert not report.null
    assert report.vanishes and not report.same_outside

    with pytest.raises(ValidationError):
        null_relation_check([], RECT, vect_z2)
