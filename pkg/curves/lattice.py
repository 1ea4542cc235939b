"""
Convex lattice polygons in Z^2: hulls, lattice point counts and the
target polygons Delta_r of the construction.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, NamedTuple, Tuple

from .conf import debug_checks
from .errors import CurveError, DegeneratePolygonError

logger = logging.getLogger(__name__)


class LatticePoint(NamedTuple):
    x: int
    y: int


def cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> int:
    """z-component of (a - o) x (b - o)"""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolygon:
    """Vertices counterclockwise from the lexicographically least one"""
    vertices: Tuple[LatticePoint, ...]

    @property
    def dimension(self) -> int:
        return min(len(self.vertices), 3) - 1

    @property
    def is_degenerate(self) -> bool:
        return self.dimension < 2

    def edges(self) -> List[Tuple[LatticePoint, LatticePoint]]:
        n = len(self.vertices)
        if n < 2:
            return []
        if n == 2:
            return [(self.vertices[0], self.vertices[1])]
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def twice_area(self) -> int:
        vs = self.vertices
        n = len(vs)
        return sum(vs[i].x * vs[(i + 1) % n].y - vs[(i + 1) % n].x * vs[i].y for i in range(n)) if n > 2 else 0

    def bounds(self) -> Tuple[int, int, int, int]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)

    def to_json(self) -> List[List[int]]:
        return [[v.x, v.y] for v in self.vertices]

    @classmethod
    def from_json(cls, data) -> 'LatticePolygon':
        return convex_hull(LatticePoint(int(x), int(y)) for x, y in data)

    def __contains__(self, point) -> bool:
        return contains_point(self, LatticePoint(*point))


def convex_hull(points: Iterable) -> LatticePolygon:
    """Monotone chain hull; collinear boundary points are dropped"""
    pts = sorted(set(LatticePoint(int(p[0]), int(p[1])) for p in points))
    if not pts:
        raise CurveError("convex hull of an empty point set", stage="lattice")
    if len(pts) == 1:
        return LatticePolygon(tuple(pts))

    lower: List[LatticePoint] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[LatticePoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    return LatticePolygon(tuple(hull))


def edge_lattice_count(a: LatticePoint, b: LatticePoint) -> int:
    """Lattice points on the closed segment ab"""
    if tuple(a) == tuple(b):
        raise DegeneratePolygonError(f"edge with equal endpoints {tuple(a)}")
    return math.gcd(abs(b[0] - a[0]), abs(b[1] - a[1])) + 1


def point_on_segment(p: LatticePoint, a: LatticePoint, b: LatticePoint) -> bool:
    if cross(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def contains_point(polygon: LatticePolygon, p: LatticePoint) -> bool:
    """Closed containment"""
    vs = polygon.vertices
    if len(vs) == 1:
        return tuple(vs[0]) == tuple(p)
    if len(vs) == 2:
        return point_on_segment(p, vs[0], vs[1])
    return all(cross(a, b, p) >= 0 for a, b in polygon.edges())


def _row_span(polygon: LatticePolygon, y: int) -> Tuple[Fraction, Fraction]:
    """Leftmost and rightmost x where the row meets the polygon"""
    xs = []
    for a, b in polygon.edges():
        if a.y == b.y:
            if a.y == y:
                xs.extend((Fraction(a.x), Fraction(b.x)))
            continue
        if min(a.y, b.y) <= y <= max(a.y, b.y):
            xs.append(a.x + Fraction((y - a.y) * (b.x - a.x), b.y - a.y))
    if not xs:
        xs = [Fraction(v.x) for v in polygon.vertices if v.y == y]
    return min(xs), max(xs)


def _row_scan_counts(polygon: LatticePolygon) -> Tuple[int, int]:
    _, _, ymin, ymax = polygon.bounds()
    interior = boundary = 0
    for y in range(ymin, ymax + 1):
        left, right = _row_span(polygon, y)
        if y in (ymin, ymax):
            boundary += math.floor(right) - math.ceil(left) + 1
            continue
        interior += max(math.ceil(right) - math.floor(left) - 1, 0)
        boundary += (left.denominator == 1) + (right.denominator == 1)
    return interior, boundary


def lattice_counts(polygon: LatticePolygon) -> Tuple[int, int]:
    """(interior, boundary) lattice point counts of a 2-dimensional polygon"""
    if polygon.is_degenerate:
        raise DegeneratePolygonError(f"polygon {polygon.to_json()} has no area")
    boundary = sum(edge_lattice_count(a, b) - 1 for a, b in polygon.edges())
    twice_area = polygon.twice_area()
    interior = (twice_area - boundary + 2) // 2
    if debug_checks():
        scanned = _row_scan_counts(polygon)
        if scanned != (interior, boundary):
            logger.error(f"Pick counts {(interior, boundary)} disagree with row scan {scanned} for {polygon.to_json()}")
            raise CurveError(f"lattice count mismatch on {polygon.to_json()}", stage="lattice")
    return interior, boundary


def row_scan_counts(polygon: LatticePolygon) -> Tuple[int, int]:
    """(interior, boundary) by scanning rows with exact edge crossings"""
    if polygon.is_degenerate:
        raise DegeneratePolygonError(f"polygon {polygon.to_json()} has no area")
    return _row_scan_counts(polygon)


def interior_points(polygon: LatticePolygon) -> Iterator[LatticePoint]:
    if polygon.is_degenerate:
        return
    _, _, ymin, ymax = polygon.bounds()
    for y in range(ymin + 1, ymax):
        left, right = _row_span(polygon, y)
        for x in range(math.floor(left) + 1, math.ceil(right)):
            yield LatticePoint(x, y)


def delta_r(gamma: int, right) -> LatticePolygon:
    """conv{(0,0), (0,gamma), (r,gamma), (r + l'_j, gamma - j) for j = 1..gamma}"""
    r, lp = right.r, right.lp
    if r < 1:
        raise DegeneratePolygonError(f"Delta_r needs r >= 1, got r={r}")
    corners = [LatticePoint(0, 0), LatticePoint(0, gamma), LatticePoint(r, gamma)]
    corners += [LatticePoint(r + lp[j], gamma - j) for j in range(1, gamma + 1)]
    polygon = convex_hull(corners)
    if polygon.is_degenerate or set(polygon.vertices) != set(corners) or len(polygon.vertices) != gamma + 3:
        logger.error(f"Delta_r degenerates for gamma={gamma}, r={r}, l'={list(lp)}")
        raise DegeneratePolygonError(f"Delta_{r} is not a ({gamma + 3})-gon for l'={list(lp)}")
    for j in range(1, gamma + 1):
        a = LatticePoint(r + lp[j - 1], gamma - j + 1)
        b = LatticePoint(r + lp[j], gamma - j)
        if edge_lattice_count(a, b) != 2:
            raise DegeneratePolygonError(f"right edge {tuple(a)}-{tuple(b)} has interior lattice points")
    return polygon
