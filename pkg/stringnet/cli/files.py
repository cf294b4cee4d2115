"""Structure, diagram and cylinder files.

Group tables are plain text: the order n on the first line, then n rows of n
element indices, then an optional ``names:`` line. Every other file is JSON
read into the pydantic models below. Rationals are written as an int, a
"p/q" string or a [p, q] pair; floats are refused.
"""

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, field_validator, model_validator
from sympy.polys.domains.domain import Domain

import constants
from stringnet.backends.fixtures import bundled_backend
from stringnet.backends.groups import build_group
from stringnet.backends.hopf import HopfBackend, load_hopf
from stringnet.backends.hopf_algebra import build_hopf_algebra, function_algebra, group_algebra
from stringnet.backends.vectg import load_group
from stringnet.core import exact
from stringnet.core.backend import CategoryBackend
from stringnet.core.errors import ParseError
from stringnet.core.morphism import Morphism
from stringnet.core.objects import Letter, ObjectWord
from stringnet.cylinder.net import CylinderStringNet, Direction, SeamCrossing
from stringnet.progressive.diagram import ProgressiveDiagram
from stringnet.progressive.evaluate import Coloring
from stringnet.progressive.geometry import PlanarEmbedding, RationalLike, to_fraction
from stringnet.progressive.graph import AbstractGraph, Edge, Node, NodeKind

Rational = Union[int, str, List[int]]

_LETTER = re.compile(r"^(?P<label>[^\^\s]+)(\^(?P<twist>[+-]?\d+))?$")


def _rational(value: RationalLike, where: str) -> Fraction:
    try:
        return to_fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"{where}: {e}")


# ---------------------------------
# Group tables.
# ---------------------------------


class GroupTableFile(BaseModel):
    order: int = Field(description="Number of group elements.")
    table: List[List[int]] = Field(description="table[a][b] is the index of the product ab.")
    names: Optional[List[str]] = Field(default=None, description="Optional element names, in index order.")

    @model_validator(mode="after")
    def _shape(self) -> "GroupTableFile":
        if len(self.table) != self.order or any(len(row) != self.order for row in self.table):
            raise ValueError(f"The table is not {self.order} x {self.order}.")
        if self.names is not None and len(self.names) != self.order:
            raise ValueError(f"{len(self.names)} names for {self.order} elements.")
        return self


def parse_group_text(text: str, path: Optional[str] = None) -> GroupTableFile:
    """Reads the plain text group format.

    Raises:
        ParseError: Pointing at the offending line and column.
    """
    rows: List[Tuple[int, List[Tuple[int, str]]]] = []
    names: Optional[List[str]] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if line.strip().startswith("names:"):
            names = line.split("names:", 1)[1].split()
            continue
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        rows.append((number, tokens))
    if not rows:
        raise ParseError("Empty group file.", path, 1, 1)

    def integer(number: int, column: int, token: str) -> int:
        try:
            return int(token)
        except ValueError:
            raise ParseError(f"Expected an integer, found {token!r}.", path, number, column)

    number, header = rows[0]
    if len(header) != 1:
        raise ParseError("The first line holds the group order only.", path, number, header[1][0])
    order = integer(number, *header[0])
    if len(rows) - 1 != order:
        raise ParseError(f"Expected {order} table rows, found {len(rows) - 1}.", path, rows[-1][0], 1)
    table = []
    for number, tokens in rows[1:]:
        if len(tokens) != order:
            column = tokens[order][0] if len(tokens) > order else len(" ".join(t for _, t in tokens)) + 1
            raise ParseError(f"Expected {order} entries, found {len(tokens)}.", path, number, column)
        table.append([integer(number, column, token) for column, token in tokens])
    return GroupTableFile(order=order, table=table, names=names)


# ---------------------------------
# Hopf algebras.
# ---------------------------------


class GeneratedAlgebra(BaseModel):
    group: str = Field(description="Group table file, relative to the Hopf file.")
    kind: Literal["group_algebra", "function_algebra"] = Field(
        default="group_algebra", description="K[G] or its dual K^G."
    )


class HopfFile(BaseModel):
    name: str = Field(description="Display name of the algebra.")
    dim: Optional[int] = Field(default=None, description="Dimension of H; omitted when generated from a group.")
    from_group: Optional[GeneratedAlgebra] = Field(default=None, description="Build the structure constants from a group table.")
    mult: List[Tuple[int, int, int, Rational]] = Field(
        default_factory=list, description="Sparse [i, j, k, c]: b_i b_j has coefficient c on b_k."
    )
    unit: List[Rational] = Field(default_factory=list, description="Coordinates of 1.")
    comult: List[Tuple[int, int, int, Rational]] = Field(
        default_factory=list, description="Sparse [i, j, k, c]: Delta(b_i) has coefficient c on b_j (x) b_k."
    )
    counit: List[Rational] = Field(default_factory=list, description="eps(b_i).")
    antipode: List[Tuple[int, int, Rational]] = Field(
        default_factory=list, description="Sparse [i, j, c]: S(b_i) has coefficient c on b_j."
    )
    modules: Dict[str, List[List[List[Rational]]]] = Field(
        default_factory=dict, description="Extra generators: one action matrix per basis element."
    )

    @model_validator(mode="after")
    def _complete(self) -> "HopfFile":
        if self.from_group is None:
            if self.dim is None or self.dim < 1:
                raise ValueError("Either dim with structure constants or from_group is required.")
            for label, entries in (("mult", self.mult), ("comult", self.comult)):
                for entry in entries:
                    if not all(0 <= i < self.dim for i in entry[:3]):
                        raise ValueError(f"{label} entry {list(entry)} names an index outside 0..{self.dim - 1}.")
        return self


def _flat3(d: int, entries, where: str) -> List[Fraction]:
    flat = [Fraction(0)] * d**3
    for i, j, k, c in entries:
        flat[(i * d + j) * d + k] = _rational(c, where)
    return flat


def hopf_backend_from_file(
    model: HopfFile, K: Domain, backend_id: str, base: Optional[Path] = None
) -> HopfBackend:
    """Raises:
    AxiomError: If the structure constants or a module fail an axiom.
    """
    if model.from_group is not None:
        group_path = (base or Path(".")) / model.from_group.group
        group = build_group(*_group_data(load_group_file(group_path)))
        build = group_algebra if model.from_group.kind == "group_algebra" else function_algebra
        algebra = build(group, K, model.name)
    else:
        d = model.dim
        antipode = [Fraction(0)] * d * d
        for i, j, c in model.antipode:
            antipode[i * d + j] = _rational(c, "antipode")
        algebra = build_hopf_algebra(
            model.name,
            K,
            d,
            _flat3(d, model.mult, "mult"),
            [_rational(v, "unit") for v in model.unit],
            _flat3(d, model.comult, "comult"),
            [_rational(v, "counit") for v in model.counit],
            antipode,
        )
    modules = {
        label: [[[exact.scalar(K, _rational(v, label)) for v in row] for row in m] for m in action]
        for label, action in model.modules.items()
    }
    return load_hopf(algebra, modules, backend_id=backend_id)


# ---------------------------------
# Loading.
# ---------------------------------


def _read(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"Not UTF-8 text: {e.reason}.", str(path), 1, 1)


def _load_json(path: Path, model):
    text = _read(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, str(path), e.lineno, e.colno)
    try:
        return model.model_validate(data)
    except PydanticValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{location}: {first['msg']}", str(path), 1, 1)


def load_group_file(path: Path) -> GroupTableFile:
    try:
        return parse_group_text(_read(path), str(path))
    except PydanticValidationError as e:
        raise ParseError(e.errors()[0]["msg"], str(path), 1, 1)


def _group_data(model: GroupTableFile):
    return model.table, model.names


def load_backend(spec: str, K: Domain) -> CategoryBackend:
    """A bundled backend id or the path of a .group / .hopf file.

    Raises:
        ParseError: If the file is malformed.
        AxiomError: If the structure fails an axiom.
        OSError: If the file cannot be read.
    """
    bundled = {b.backend_id: b for b in constants.BUNDLED_BACKENDS}
    if spec in bundled:
        path = constants.DATA_DIR / bundled[spec].filename
        backend_id = spec
    elif Path(spec).exists():
        path = Path(spec)
        backend_id = path.stem
    else:
        return bundled_backend(spec, K)
    if path.suffix == ".group":
        table, names = _group_data(load_group_file(path))
        return load_group(table, names, K, backend_id)
    return hopf_backend_from_file(_load_json(path, HopfFile), K, backend_id, path.parent)


# ---------------------------------
# Diagrams.
# ---------------------------------


class NodeRecord(BaseModel):
    id: str
    kind: NodeKind = Field(default=NodeKind.INNER, description="inner, boundary or seam.")
    x: Rational
    y: Rational
    coupon: Optional[str] = Field(default=None, description="Coupon label of an inner node.")


class EdgeRecord(BaseModel):
    id: str
    source: str
    target: str
    color: List[str] = Field(description="Word of generator labels, a twist written as label^t.")
    bends: List[Tuple[Rational, Rational]] = Field(default_factory=list, description="Interior polyline vertices.")


class CouponRecord(BaseModel):
    dom: List[str] = Field(default_factory=list)
    codom: List[str] = Field(default_factory=list)
    matrix: Optional[List[List[Rational]]] = Field(default=None, description="Rows of the coupon matrix.")
    structure: Optional[Literal["ev_left", "coev_left", "ev_right", "coev_right", "identity"]] = Field(
        default=None, description="A structure morphism of the word ``of`` instead of a matrix."
    )
    of: List[str] = Field(default_factory=list, description="The word a structure morphism belongs to.")

    @model_validator(mode="after")
    def _one_source(self) -> "CouponRecord":
        if (self.matrix is None) == (self.structure is None):
            raise ValueError("A coupon gives exactly one of matrix and structure.")
        return self


class _GraphFile(BaseModel):
    backend: str = Field(description="Bundled backend id or structure file path.")
    nodes: List[NodeRecord]
    edges: List[EdgeRecord]
    coupons: Dict[str, CouponRecord] = Field(default_factory=dict, description="Coupons by label.")

    @model_validator(mode="after")
    def _references(self) -> "_GraphFile":
        ids = [n.id for n in self.nodes] + [e.id for e in self.edges]
        duplicates = sorted({i for i in ids if ids.count(i) > 1})
        if duplicates:
            raise ValueError(f"Duplicate ids {duplicates}.")
        nodes = {n.id for n in self.nodes}
        for e in self.edges:
            for end in (e.source, e.target):
                if end not in nodes:
                    raise ValueError(f"Edge {e.id} names missing node {end}.")
        for n in self.nodes:
            if n.coupon is not None and n.coupon not in self.coupons:
                raise ValueError(f"Node {n.id} names missing coupon {n.coupon}.")
        return self


class DiagramFile(_GraphFile):
    bottom: Rational = Field(description="Lower bound a of the strip.")
    top: Rational = Field(description="Upper bound b of the strip.")


class SeamRecord(BaseModel):
    radius: Rational
    left: str
    right: str
    direction: Direction = Direction.LEFTWARD


class CylinderFile(_GraphFile):
    winding: int = Field(description="Framing winding n of the cylinder.")
    inner: List[str] = Field(default_factory=list, description="Boundary value x on the inner circle.")
    outer: List[str] = Field(default_factory=list, description="Boundary value y on the outer circle.")
    seams: List[SeamRecord] = Field(default_factory=list)

    @field_validator("seams")
    @classmethod
    def _distinct(cls, seams: List[SeamRecord]) -> List[SeamRecord]:
        radii = [to_fraction(s.radius) for s in seams]
        if len(set(radii)) != len(radii):
            raise ValueError("Two seam records share a radius.")
        return seams


def parse_word(backend: CategoryBackend, labels: List[str]) -> ObjectWord:
    """Raises:
    ParseError: If a label is unknown or a twist is given to a backend with a strict double dual.
    """
    letters = []
    generators = {w.letters[0].label: w.letters[0] for w in backend.generators()}
    for token in labels:
        match = _LETTER.match(token.strip())
        if not match or match.group("label") not in generators:
            raise ParseError(f"Unknown generator {token!r} for {backend.backend_id}.")
        base = generators[match.group("label")]
        twist = int(match.group("twist") or 0)
        if twist and not isinstance(backend, HopfBackend):
            raise ParseError(f"{backend.backend_id} keeps no twists; found {token!r}.")
        letters.append(Letter(base.label, base.dim, twist))
    return ObjectWord(tuple(letters), backend.backend_id)


def coupon_morphism(backend: CategoryBackend, label: str, record: CouponRecord) -> Morphism:
    if record.structure is not None:
        of = parse_word(backend, record.of)
        return getattr(backend, record.structure)(of)
    dom, codom = parse_word(backend, record.dom), parse_word(backend, record.codom)
    rows = [[exact.scalar(backend.field, _rational(v, label)) for v in row] for row in record.matrix]
    matrix = exact.from_rows(rows, backend.field, ncols=dom.dim)
    if matrix.shape != (codom.dim, dom.dim):
        raise ParseError(f"Coupon {label} has shape {matrix.shape}, expected {(codom.dim, dom.dim)}.")
    return Morphism(dom, codom, matrix)


def _graph_parts(model: _GraphFile, backend: CategoryBackend):
    nodes = tuple(Node(n.id, n.kind, n.coupon) for n in model.nodes)
    edges = tuple(Edge(e.id, e.source, e.target) for e in model.edges)
    positions = {n.id: (to_fraction(n.x), to_fraction(n.y)) for n in model.nodes}
    bends = {e.id: tuple((to_fraction(x), to_fraction(y)) for x, y in e.bends) for e in model.edges if e.bends}
    colors = {e.id: parse_word(backend, e.color) for e in model.edges}
    morphisms = {
        n.id: coupon_morphism(backend, n.coupon, model.coupons[n.coupon]) for n in model.nodes if n.coupon is not None
    }
    return AbstractGraph(nodes, edges), positions, bends, Coloring(colors, morphisms)


def load_diagram(path: Path, K: Domain, backend: Optional[CategoryBackend] = None) -> Tuple[ProgressiveDiagram, CategoryBackend]:
    """Raises:
    ParseError: If the file is malformed or names unknown generators.
    """
    model = _load_json(path, DiagramFile)
    backend = backend or load_backend(model.backend, K)
    graph, positions, bends, coloring = _graph_parts(model, backend)
    embedding = PlanarEmbedding(to_fraction(model.bottom), to_fraction(model.top), positions, bends)
    return ProgressiveDiagram(graph, embedding, coloring), backend


def load_cylinder(path: Path, K: Domain, backend: Optional[CategoryBackend] = None) -> Tuple[CylinderStringNet, CategoryBackend]:
    """Raises:
    ParseError: If the file is malformed or names unknown generators.
    """
    model = _load_json(path, CylinderFile)
    backend = backend or load_backend(model.backend, K)
    graph, positions, bends, coloring = _graph_parts(model, backend)
    embedding = PlanarEmbedding(Fraction(0), Fraction(1), positions, bends)
    seams = tuple(SeamCrossing(to_fraction(s.radius), s.left, s.right, s.direction) for s in model.seams)
    net = CylinderStringNet(
        graph,
        embedding,
        coloring,
        model.winding,
        parse_word(backend, model.inner),
        parse_word(backend, model.outer),
        seams,
    )
    return net, backend


def is_cylinder_file(path: Path) -> bool:
    """Cylinder files carry a winding; strip diagrams carry strip bounds."""
    try:
        return "winding" in json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, str(path), e.lineno, e.colno)
