from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from sympy.polys.domains import QQ

from stringnet.backends.fixtures import bundled_backend
from stringnet.cli.files import load_diagram
from stringnet.core import exact
from stringnet.core.errors import ColoringError, ValidationError
from stringnet.core.morphism import Morphism, compose
from stringnet.progressive.diagram import (
    identity_diagram,
    jitter,
    juxtapose,
    random_levels,
    single_coupon,
    stack_diagrams,
)
from stringnet.progressive.evaluate import band_summary
from stringnet.progressive.graph import AbstractGraph, Edge, Node, NodeKind
from stringnet.progressive.geometry import PlanarEmbedding
from stringnet.progressive.slicing import slice_diagram
from stringnet.progressive.validate import validate_progressive
from tests.helpers import data_path, five_coupon_bands, five_coupon_value, random_morphism, recolored
from tests.settings import GEOMETRY_SETTINGS
from tests.strategies import seeds

SEED = 7


def _graph(nodes, edges):
    return AbstractGraph(tuple(nodes), tuple(edges))


def test_five_coupon_diagram_is_progressive(five_coupons):
    report = five_coupons.validate()
    assert report.accepted, report.violations
    assert five_coupons.inputs() == ("X1", "X2", "X3", "X4")
    assert five_coupons.outputs() == ("Y1", "Y2", "Y3")


def test_five_coupon_bands(five_coupons, vect):
    ir = slice_diagram(five_coupons.graph, five_coupons.embedding)
    summary = band_summary(ir)
    assert [band["blocks"] for band in summary] == [
        [["strand", "X1"], ["strand", "X2"], ["node", "f4"], ["strand", "X4"]],
        [["node", "f1"], ["node", "f2"], ["strand", "Z2"], ["node", "f5"]],
        [["strand", "Y1"], ["node", "f3"]],
    ]
    assert five_coupons.evaluate(vect) == five_coupon_value(five_coupons, vect)


def test_five_coupon_value(five_coupons, vect):
    value = five_coupons.evaluate(vect)
    band1, _, _ = five_coupon_bands(five_coupons, vect)
    assert value.dom.dims == (2, 1, 2, 1)
    assert value.codom.dims == (3, 2, 1)
    assert band1.codom == vect.tensor_all(*(five_coupons.coloring.color(e) for e in ("X1", "X2", "Z2", "Z3", "X4")))


def test_five_coupon_random_colorings(five_coupons, vect):
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        colored = recolored(five_coupons, vect, rng)
        assert colored.evaluate(vect) == five_coupon_value(colored, vect)


def test_random_levels_do_not_change_the_value(five_coupons, vect):
    rng = np.random.default_rng(SEED)
    expected = five_coupons.evaluate(vect)
    for _ in range(200):
        levels = random_levels(five_coupons, rng)
        assert five_coupons.evaluate(vect, levels) == expected, levels


def test_jitters_do_not_change_the_value(five_coupons, vect):
    rng = np.random.default_rng(SEED)
    expected = five_coupons.evaluate(vect)
    for _ in range(200):
        moved = jitter(five_coupons, rng)
        assert moved.evaluate(vect) == expected


@GEOMETRY_SETTINGS
@given(seeds())
def test_jitter_then_levels(seed):
    vect = bundled_backend("vect", QQ)
    diagram, _ = load_diagram(data_path("five_coupons.json"), QQ, vect)
    rng = np.random.default_rng(seed)
    moved = jitter(diagram, rng)
    assert moved.evaluate(vect, random_levels(moved, rng)) == diagram.evaluate(vect)


def test_levels_through_a_node_are_refused(five_coupons, vect):
    with pytest.raises(ValidationError):
        five_coupons.evaluate(vect, [Fraction(-4)])


def test_levels_that_split_nothing_are_refused(five_coupons, vect):
    with pytest.raises(ValidationError):
        five_coupons.evaluate(vect, [Fraction(2)])


def test_cup_is_rejected(vect):
    diagram, _ = load_diagram(data_path("cup.json"), QQ, vect)
    report = diagram.validate()
    assert not report.accepted
    assert report.kinds() == ["monotonicity"]
    with pytest.raises(ValidationError):
        diagram.evaluate(vect)


def test_single_coupon_file(vect):
    diagram, backend = load_diagram(data_path("single_coupon.json"), QQ)
    value = diagram.evaluate(backend)
    assert exact.render(value.matrix) == [["2", "-1/3"]]
    assert str(value.dom) == "(V2)"
    assert str(value.codom) == "(V1)"


def test_identity_diagram_evaluates_to_identity(vect):
    word = vect.tensor_all(vect.module_word("V2"), vect.module_word("V3"), vect.module_word("V1"))
    assert identity_diagram(word).evaluate(vect) == vect.identity(word)
    assert identity_diagram(vect.unit()).evaluate(vect) == vect.identity(vect.unit())


def test_juxtapose_is_tensor(vect):
    rng = np.random.default_rng(SEED)
    V1, V2, V3 = (vect.module_word(f"V{d}") for d in (1, 2, 3))
    f = random_morphism(vect, V2, vect.tensor_objects(V1, V3), rng)
    g = random_morphism(vect, vect.tensor_objects(V3, V1), V2, rng)
    diagram = juxtapose(single_coupon(f, "f"), single_coupon(g, "g"))
    assert diagram.validate().accepted
    assert diagram.evaluate(vect) == vect.tensor_morphisms(f, g)


def test_stack_is_composition(vect):
    rng = np.random.default_rng(SEED)
    V1, V2, V3 = (vect.module_word(f"V{d}") for d in (1, 2, 3))
    f = random_morphism(vect, V2, vect.tensor_objects(V1, V3), rng)
    g = random_morphism(vect, vect.tensor_objects(V1, V3), V2, rng)
    diagram = stack_diagrams(single_coupon(g, "g"), single_coupon(f, "f"))
    assert diagram.validate().accepted
    assert diagram.evaluate(vect) == compose(g, f)


def test_stack_checks_boundary_words(vect):
    V1, V2 = vect.module_word("V1"), vect.module_word("V2")
    with pytest.raises(ColoringError):
        stack_diagrams(identity_diagram(V1), identity_diagram(V2))


def test_wrong_coupon_type_is_named(five_coupons, vect):
    V1 = vect.module_word("V1")
    bad = five_coupons.with_morphisms({"f2": Morphism(V1, V1, exact.identity(1, QQ))})
    with pytest.raises(ColoringError) as info:
        bad.evaluate(vect)
    assert info.value.node == "f2"


@pytest.mark.parametrize(
    "nodes, edges, kinds",
    [
        (
            [Node("p", NodeKind.BOUNDARY), Node("q", NodeKind.BOUNDARY)],
            [Edge("e", "p", "q")],
            [],
        ),
        (
            [Node("p", NodeKind.BOUNDARY), Node("q", NodeKind.BOUNDARY)],
            [Edge("e", "q", "p")],
            ["monotonicity"],
        ),
        (
            [Node("p", NodeKind.BOUNDARY), Node("f", NodeKind.INNER, "f")],
            [Edge("e", "p", "f")],
            ["inner-placement"],
        ),
        (
            [Node("p", NodeKind.BOUNDARY), Node("q", NodeKind.BOUNDARY), Node("r", NodeKind.BOUNDARY)],
            [Edge("e", "p", "q")],
            ["boundary-degree"],
        ),
        (
            [Node("p", NodeKind.BOUNDARY), Node("q", NodeKind.BOUNDARY)],
            [Edge("e", "p", "missing")],
            ["reference"],
        ),
    ],
)
def test_violation_kinds(nodes, edges, kinds):
    positions = {"p": (Fraction(0), Fraction(0)), "q": (Fraction(0), Fraction(1)), "f": (Fraction(0), Fraction(1))}
    positions["r"] = (Fraction(1), Fraction(1))
    embedding = PlanarEmbedding(Fraction(0), Fraction(1), {n.id: positions[n.id] for n in nodes})
    report = validate_progressive(_graph(nodes, edges), embedding)
    assert report.kinds() == kinds
    assert report.accepted == (not kinds)


def test_crossing_edges_are_rejected():
    nodes = [Node(n, NodeKind.BOUNDARY) for n in ("a", "b", "c", "d")]
    edges = [Edge("e", "a", "d"), Edge("f", "b", "c")]
    positions = {
        "a": (Fraction(0), Fraction(0)),
        "b": (Fraction(1), Fraction(0)),
        "c": (Fraction(0), Fraction(1)),
        "d": (Fraction(1), Fraction(1)),
    }
    report = validate_progressive(_graph(nodes, edges), PlanarEmbedding(Fraction(0), Fraction(1), positions))
    assert report.kinds() == ["crossing"]
