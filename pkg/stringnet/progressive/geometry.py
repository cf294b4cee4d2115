"""Exact planar geometry on rational points.

Edges are polylines with rational vertices, so progressivity is a sign check
per segment and crossings are decided by exact orientation tests.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from stringnet.progressive.graph import AbstractGraph, Edge

Point = Tuple[Fraction, Fraction]
RationalLike = Union[int, str, Fraction, Sequence[int]]


def to_fraction(value: RationalLike) -> Fraction:
    """Reads an int, a "p/q" string, a Fraction or a [p, q] pair.

    Raises:
        ValueError: On anything else (floats included).
    """
    if isinstance(value, bool):
        raise ValueError(f"{value!r} is not a rational.")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(isinstance(v, int) for v in value):
        if value[1] == 0:
            raise ValueError("Zero denominator.")
        return Fraction(value[0], value[1])
    raise ValueError(f"{value!r} is not an exact rational; use an int, 'p/q' or [p, q].")


def point(x: RationalLike, y: RationalLike) -> Point:
    return (to_fraction(x), to_fraction(y))


def fraction_str(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, eq=False)
class PlanarEmbedding:
    """Node coordinates and edge bends of a graph drawn in the strip R x [bottom, top]."""

    bottom: Fraction
    top: Fraction
    positions: Mapping[str, Point]
    bends: Mapping[str, Tuple[Point, ...]] = field(default_factory=dict)

    def position(self, node_id: str) -> Point:
        return self.positions[node_id]

    def polyline(self, edge: Edge) -> Tuple[Point, ...]:
        return (self.positions[edge.source],) + tuple(self.bends.get(edge.id, ())) + (self.positions[edge.target],)

    def mapped(self, fn) -> "PlanarEmbedding":
        """Applies ``fn(point) -> point`` to every coordinate; the strip is mapped through its y-part."""
        return PlanarEmbedding(
            fn((Fraction(0), self.bottom))[1],
            fn((Fraction(0), self.top))[1],
            {k: fn(p) for k, p in self.positions.items()},
            {k: tuple(fn(p) for p in ps) for k, ps in self.bends.items()},
        )

    def renamed(self, prefix: str) -> "PlanarEmbedding":
        return PlanarEmbedding(
            self.bottom,
            self.top,
            {prefix + k: p for k, p in self.positions.items()},
            {prefix + k: ps for k, ps in self.bends.items()},
        )

    def with_points(self, positions: Mapping[str, Point], bends: Mapping[str, Tuple[Point, ...]]) -> "PlanarEmbedding":
        return PlanarEmbedding(self.bottom, self.top, dict(positions), dict(bends))

    def x_extent(self) -> Tuple[Fraction, Fraction]:
        xs = [p[0] for p in self.all_points()]
        if not xs:
            return Fraction(0), Fraction(0)
        return min(xs), max(xs)

    def all_points(self) -> Iterable[Point]:
        yield from self.positions.values()
        for ps in self.bends.values():
            yield from ps


def segments(polyline: Sequence[Point]) -> List[Tuple[Point, Point]]:
    return [(polyline[i], polyline[i + 1]) for i in range(len(polyline) - 1)]


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q - p) x (r - p)."""
    value = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (value > 0) - (value < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        orientation(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    o1, o2 = orientation(a, b, c), orientation(a, b, d)
    o3, o4 = orientation(c, d, a), orientation(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return on_segment(c, a, b) or on_segment(d, a, b) or on_segment(a, c, d) or on_segment(b, c, d)


def collinear_overlap(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Whether two segments lie on one line and share more than a point."""
    if orientation(a, b, c) != 0 or orientation(a, b, d) != 0:
        return False
    lo = max(min(a[1], b[1]), min(c[1], d[1]))
    hi = min(max(a[1], b[1]), max(c[1], d[1]))
    if lo < hi:
        return True
    if a[1] == b[1] or c[1] == d[1]:
        lo_x = max(min(a[0], b[0]), min(c[0], d[0]))
        hi_x = min(max(a[0], b[0]), max(c[0], d[0]))
        return lo_x < hi_x
    return False


def x_at(polyline: Sequence[Point], y: Fraction) -> Optional[Fraction]:
    """x-coordinate where a y-monotone polyline meets height y, or None outside its range."""
    for (x0, y0), (x1, y1) in segments(polyline):
        if y0 <= y <= y1 and y0 != y1:
            return x0 + (x1 - x0) * (y - y0) / (y1 - y0)
        if y0 == y1 == y:
            return x0
    return None


def slope_above(polyline: Sequence[Point], y: Fraction) -> Fraction:
    """dx/dy of the segment leaving height y upwards."""
    for (x0, y0), (x1, y1) in segments(polyline):
        if y0 <= y < y1:
            return (x1 - x0) / (y1 - y0)
    raise ValueError(f"Polyline does not continue above {y}.")


def slope_below(polyline: Sequence[Point], y: Fraction) -> Fraction:
    """dx/dy of the segment arriving at height y from below."""
    for (x0, y0), (x1, y1) in segments(polyline):
        if y0 < y <= y1:
            return (x1 - x0) / (y1 - y0)
    raise ValueError(f"Polyline does not arrive at {y} from below.")


def clip(polyline: Sequence[Point], lo: Fraction, hi: Fraction) -> Tuple[Point, ...]:
    """The part of a y-monotone polyline with lo <= y <= hi."""
    if not polyline or polyline[-1][1] < lo or polyline[0][1] > hi:
        return ()
    result: List[Point] = []
    start = max(lo, polyline[0][1])
    end = min(hi, polyline[-1][1])
    result.append((x_at(polyline, start), start))
    for p in polyline:
        if start < p[1] < end:
            result.append(p)
    if end != start:
        result.append((x_at(polyline, end), end))
    return tuple(result)


def edge_polylines(graph: AbstractGraph, embedding: PlanarEmbedding) -> Dict[str, Tuple[Point, ...]]:
    return {e.id: embedding.polyline(e) for e in graph.edges}
