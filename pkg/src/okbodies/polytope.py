"""Exact convex polygons in the rational plane.

Polygons are stored in a canonical form: counterclockwise vertex order
starting at the lexicographically smallest vertex, with no three stored
vertices collinear. Points and segments are the degenerate cases with one
and two vertices. The canonical form makes equality and shape comparison
plain sequence comparisons.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .linalg import format_rational, frac, parse_rational

Point2 = tuple[Fraction, Fraction]


def _pt(p) -> Point2:
    x, y = p
    return (frac(x), frac(y))


def _cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def primitive_direction(v) -> Point2:
    """The primitive integer vector on the same ray (orientation kept)."""
    x, y = _pt(v)
    if x == 0 and y == 0:
        raise ValueError("zero vector has no direction")
    denom = (x.denominator * y.denominator
             // gcd(x.denominator, y.denominator))
    xi, yi = int(x * denom), int(y * denom)
    g = gcd(abs(xi), abs(yi))
    return (Fraction(xi // g), Fraction(yi // g))


def _angular_bucket(v: Point2) -> int:
    """0 for angles in (-90deg, 90deg], 1 for (90deg, 270deg]."""
    return 0 if (v[0] > 0 or (v[0] == 0 and v[1] > 0)) else 1


def _compare_directions(a: Point2, b: Point2) -> int:
    """Order edge vectors by angle in (-90deg, 270deg].

    A convex polygon traversed counterclockwise from its lexicographically
    smallest vertex lists its edges exactly in this order, which is what
    makes the canonical form and the angular merge line up.
    """
    ba, bb = _angular_bucket(a), _angular_bucket(b)
    if ba != bb:
        return -1 if ba < bb else 1
    c = a[0] * b[1] - a[1] * b[0]
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def _sort_directions(edges):
    return sorted(edges, key=functools.cmp_to_key(_compare_directions))


def _same_direction(a: Point2, b: Point2) -> bool:
    return (a[0] * b[1] - a[1] * b[0] == 0
            and a[0] * b[0] + a[1] * b[1] > 0)


@dataclass(frozen=True)
class RationalPolygon:
    vertices: tuple[Point2, ...]

    def __init__(self, vertices):
        object.__setattr__(self, "vertices", tuple(_pt(p) for p in vertices))

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def dimension(self) -> int:
        return min(len(self.vertices) - 1, 2)

    def edge_vectors(self) -> tuple[Point2, ...]:
        """Edge vectors of the closed boundary walk from the canonical start."""
        n = len(self.vertices)
        if n == 1:
            return ()
        return tuple(
            (self.vertices[(i + 1) % n][0] - self.vertices[i][0],
             self.vertices[(i + 1) % n][1] - self.vertices[i][1])
            for i in range(n))

    def edge_directions(self) -> tuple[Point2, ...]:
        return tuple(primitive_direction(v) for v in self.edge_vectors())

    def to_json(self) -> dict:
        return {"vertices": [[format_rational(x), format_rational(y)]
                             for x, y in self.vertices]}

    @staticmethod
    def from_json(data: dict) -> "RationalPolygon":
        return hull([(parse_rational(x), parse_rational(y))
                     for x, y in data["vertices"]])


def hull(points) -> RationalPolygon:
    """Canonical convex hull (monotone chain); collinear points dropped."""
    pts = sorted(set(_pt(p) for p in points))
    if not pts:
        raise ValueError("hull of an empty point set")
    if len(pts) == 1:
        return RationalPolygon(pts)
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    verts = lower[:-1] + upper[:-1]
    if len(verts) == 2 or all(v == verts[0] for v in verts):
        # collinear input collapses to a segment between the extremes
        return RationalPolygon([pts[0], pts[-1]])
    start = verts.index(min(verts))
    return RationalPolygon(verts[start:] + verts[:start])


def area(p: RationalPolygon) -> Fraction:
    """Exact shoelace area; zero for points and segments."""
    n = len(p.vertices)
    if n < 3:
        return Fraction(0)
    twice = Fraction(0)
    for i in range(n):
        x0, y0 = p.vertices[i]
        x1, y1 = p.vertices[(i + 1) % n]
        twice += x0 * y1 - x1 * y0
    return twice / 2


def translate(p: RationalPolygon, v) -> RationalPolygon:
    dx, dy = _pt(v)
    return RationalPolygon([(x + dx, y + dy) for x, y in p.vertices])


def scale(p: RationalPolygon, r) -> RationalPolygon:
    r = frac(r)
    if r <= 0:
        raise ValueError("scale factor must be positive")
    return RationalPolygon([(r * x, r * y) for x, y in p.vertices])


def minkowski_sum(a: RationalPolygon, b: RationalPolygon) -> RationalPolygon:
    """Exact Minkowski sum by merging the two edge fans by angle.

    Both canonical boundaries start at the lexicographically smallest
    vertex and list edges in increasing angular order, so a single merge
    pass (fusing parallel same-direction edges) produces the sum; the
    start vertex of the sum is the sum of the start vertices.
    """
    if a.is_point:
        return translate(b, a.vertices[0])
    if b.is_point:
        return translate(a, b.vertices[0])
    edges = _sort_directions(list(a.edge_vectors()) + list(b.edge_vectors()))
    fused = []
    for e in edges:
        if fused and _same_direction(fused[-1], e):
            fused[-1] = (fused[-1][0] + e[0], fused[-1][1] + e[1])
        else:
            fused.append(e)
    start = (a.vertices[0][0] + b.vertices[0][0],
             a.vertices[0][1] + b.vertices[0][1])
    verts = [start]
    for e in fused[:-1]:
        verts.append((verts[-1][0] + e[0], verts[-1][1] + e[1]))
    if len(fused) == 2:
        # two opposite fused directions: a segment walked out and back
        return RationalPolygon(sorted(verts))
    return RationalPolygon(verts)


def is_indecomposable(p: RationalPolygon) -> bool:
    """Points, segments and triangles: the only indecomposable cases."""
    return len(p.vertices) <= 3


def similar(a: RationalPolygon, b: RationalPolygon) -> bool:
    """Same shape: equal sequences of primitive edge directions.

    Canonical form fixes the starting edge, so no rotation search is
    needed. Segments compare by their single undirected direction; a
    point is similar only to a point.
    """
    if len(a.vertices) != len(b.vertices):
        return False
    if a.is_point:
        return True
    if a.is_segment:
        return a.edge_directions()[0] == b.edge_directions()[0]
    return a.edge_directions() == b.edge_directions()


def contains_point(p: RationalPolygon, point) -> bool:
    x, y = _pt(point)
    verts = p.vertices
    if p.is_point:
        return verts[0] == (x, y)
    if p.is_segment:
        (x0, y0), (x1, y1) = verts
        if _cross((x0, y0), (x1, y1), (x, y)) != 0:
            return False
        return (min(x0, x1) <= x <= max(x0, x1)
                and min(y0, y1) <= y <= max(y0, y1))
    n = len(verts)
    return all(_cross(verts[i], verts[(i + 1) % n], (x, y)) >= 0
               for i in range(n))


def contains_polygon(outer: RationalPolygon, inner: RationalPolygon) -> bool:
    return all(contains_point(outer, v) for v in inner.vertices)
