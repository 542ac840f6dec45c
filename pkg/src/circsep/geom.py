"""Geometric primitives.

Points are plain ``(x, y)`` tuples of floats.  Lines, segments and circles are
small named tuples so they stay cheap to build inside query loops.
"""
from __future__ import annotations

import math
from enum import IntEnum
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple, Union

from .errors import CoincidentPoints, DegenerateTriangle

Point = Tuple[float, float]

EPS_GEOM = 1e-9
# grazing tangencies: negative discriminants above -DISC_CLAMP * scale**2 count as zero
DISC_CLAMP = 1e-12
COORD_LIMIT = 1e6

# Shewchuk's bound for the plain float orient2d determinant
_ORIENT_ERRBOUND = 3.3306690738754716e-16


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Segment(NamedTuple):
    a: Point
    b: Point


class DirectedLine(NamedTuple):
    anchor: Point
    direction: Tuple[float, float]

    @classmethod
    def through(cls, a: Point, b: Point) -> "DirectedLine":
        dx, dy = b[0] - a[0], b[1] - a[1]
        n = math.hypot(dx, dy)
        if n == 0.0:
            raise CoincidentPoints(f"cannot orient a line through {a} twice")
        return cls(a, (dx / n, dy / n))

    def normal_left(self) -> Tuple[float, float]:
        return (-self.direction[1], self.direction[0])

    def point_at(self, t: float) -> Point:
        return (self.anchor[0] + t * self.direction[0],
                self.anchor[1] + t * self.direction[1])

    def reversed(self) -> "DirectedLine":
        return DirectedLine(self.anchor, (-self.direction[0], -self.direction[1]))


class Circle(NamedTuple):
    center: Point
    radius: float

    def contains(self, p: Point, tol: float = 0.0) -> bool:
        return math.hypot(p[0] - self.center[0], p[1] - self.center[1]) <= self.radius + tol


Feature = Union[Point, Segment, Circle]


def orient2d(a: Point, b: Point, c: Point) -> float:
    """Twice the signed area of ``abc``; the sign is exact.

    The float determinant is used when it clears the forward error bound,
    otherwise the value is recomputed with rationals.
    """
    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright
    if abs(det) > _ORIENT_ERRBOUND * (abs(detleft) + abs(detright)):
        return det
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (a[0], a[1], b[0], b[1], c[0], c[1]))
    exact = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    if exact == 0:
        return 0.0
    # keep the sign even if the magnitude underflows
    return float(exact) or math.copysign(5e-324, exact)


def orientation(a: Point, b: Point, c: Point) -> Orientation:
    scale = max(abs(a[0]), abs(a[1]), abs(b[0]), abs(b[1]), abs(c[0]), abs(c[1]))
    det = orient2d(a, b, c)
    if abs(det) <= EPS_GEOM * scale * scale:
        return Orientation.COLLINEAR
    return Orientation.CCW if det > 0 else Orientation.CW


def dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def circumcenter(a: Point, b: Point, c: Point) -> Point:
    det = orient2d(a, b, c)
    if det == 0.0:
        raise DegenerateTriangle(f"collinear points {a}, {b}, {c}")
    # translate to a for accuracy; the filtered determinant is never a spurious zero
    bx, by = b[0] - a[0], b[1] - a[1]
    cx, cy = c[0] - a[0], c[1] - a[1]
    d = 2.0 * det
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return (a[0] + ux, a[1] + uy)


def dist_point_segment(p: Point, s: Segment) -> float:
    (ax, ay), (bx, by) = s
    dx, dy = bx - ax, by - ay
    l2 = dx * dx + dy * dy
    if l2 == 0.0:
        return math.hypot(p[0] - ax, p[1] - ay)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / l2
    if t <= 0.0:
        return math.hypot(p[0] - ax, p[1] - ay)
    if t >= 1.0:
        return math.hypot(p[0] - bx, p[1] - by)
    return abs((p[0] - ax) * dy - (p[1] - ay) * dx) / math.sqrt(l2)


def dist_point_line(p: Point, line: DirectedLine) -> float:
    """Signed distance, positive on the left of ``line`` (the P side)."""
    (ax, ay), (dx, dy) = line
    return (p[1] - ay) * dx - (p[0] - ax) * dy


def bisector(p: Point, p2: Point) -> DirectedLine:
    """Perpendicular bisector of ``[p, p2]``, directed so that ``p2`` is on its left."""
    dx, dy = p2[0] - p[0], p2[1] - p[1]
    n = math.hypot(dx, dy)
    if n == 0.0:
        raise CoincidentPoints(f"bisector of coincident points {p}")
    mid = ((p[0] + p2[0]) * 0.5, (p[1] + p2[1]) * 0.5)
    return DirectedLine(mid, (dy / n, -dx / n))


def _in_range(t: float, t0: float, t1: float, slack: float) -> bool:
    lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
    return lo - slack <= t <= hi + slack


def _quadratic_roots(a: float, b: float, c: float, scale2: float) -> list:
    """Real roots of ``a t^2 + 2 b t + c``; near-zero discriminants are clamped."""
    if abs(a) <= 1e-15:
        if b == 0.0:
            return []
        return [-c / (2.0 * b)]
    disc = b * b - a * c
    if disc < 0.0:
        if disc < -DISC_CLAMP * scale2 * max(1.0, b * b / max(scale2, 1e-300)):
            return []
        disc = 0.0
    sq = math.sqrt(disc)
    # numerically stable pair
    q = -(b + math.copysign(sq, b))
    roots = []
    if q != 0.0:
        roots.append(q / a)
        roots.append(c / q)
    else:
        roots.append(-b / a)
    return roots


def point_roots(mx, my, ux, uy, h, fx, fy):
    """Bisector parameters where the circle through the site pair passes through ``f``.

    The centre moves as ``m + t u`` with radius ``sqrt(h^2 + t^2)``; passing
    through a point is linear in ``t``.
    """
    wx, wy = mx - fx, my - fy
    wu = wx * ux + wy * uy
    num = h * h - (wx * wx + wy * wy)
    if wu == 0.0:
        return []
    return [num / (2.0 * wu)]


def circle_roots(mx, my, ux, uy, h, fx, fy, fr, scale2):
    """Parameters where the moving circle is externally tangent to circle ``(f, fr)``."""
    if fr == 0.0:
        return point_roots(mx, my, ux, uy, h, fx, fy)
    wx, wy = mx - fx, my - fy
    alpha = wx * wx + wy * wy - h * h - fr * fr
    beta = 2.0 * (wx * ux + wy * uy)
    a = beta * beta - 4.0 * fr * fr
    roots = _quadratic_roots(a, alpha * beta, alpha * alpha - 4.0 * fr * fr * h * h, scale2 * scale2)
    return [t for t in roots if alpha + beta * t >= -EPS_GEOM * scale2]


def line_roots(mx, my, ux, uy, h, ax, ay, dx, dy, scale2):
    """Parameters where the moving circle touches the line through ``a`` with unit direction ``d``."""
    a0 = (my - ay) * dx - (mx - ax) * dy
    a1 = uy * dx - ux * dy
    return _quadratic_roots(a1 * a1 - 1.0, a0 * a1, a0 * a0 - h * h, scale2)


def solve_tangency_on_bisector(p: Point, p2: Point, t0: float, t1: float,
                               feature: Feature) -> Optional[Tuple[Point, float]]:
    """First tangency with ``feature`` while the centre walks ``bisector(p, p2)`` from ``t0`` to ``t1``.

    Parameters are arc length along :func:`bisector`; ``t1`` may be infinite.
    Returns ``(center, radius)`` or ``None`` when the walk never touches.
    """
    line = bisector(p, p2)
    (mx, my), (ux, uy) = line
    h = dist(p, p2) * 0.5
    scale = max(h, abs(mx), abs(my), 1e-300)
    tol = EPS_GEOM * scale
    if isinstance(feature, Circle):
        (fx, fy), fr = feature
        cands = circle_roots(mx, my, ux, uy, h, fx, fy, fr, scale * scale)

        def gap(c, r):
            return dist(c, feature.center) - fr - r
    elif isinstance(feature, Segment) and feature.a != feature.b:
        (ax, ay), (bx, by) = feature
        ln = math.hypot(bx - ax, by - ay)
        dx, dy = (bx - ax) / ln, (by - ay) / ln
        cands = []
        for t in line_roots(mx, my, ux, uy, h, ax, ay, dx, dy, scale * scale):
            cx, cy = mx + t * ux, my + t * uy
            s = (cx - ax) * dx + (cy - ay) * dy
            if -tol <= s <= ln + tol:
                cands.append(t)
        cands += point_roots(mx, my, ux, uy, h, ax, ay)
        cands += point_roots(mx, my, ux, uy, h, bx, by)

        def gap(c, r):
            return dist_point_segment(c, feature) - r
    else:
        f = feature.a if isinstance(feature, Segment) else feature
        cands = point_roots(mx, my, ux, uy, h, f[0], f[1])

        def gap(c, r):
            return dist(c, f) - r

    best = None
    for t in cands:
        if not _in_range(t, t0, t1, tol):
            continue
        c = (mx + t * ux, my + t * uy)
        r = math.sqrt(h * h + t * t)
        if abs(gap(c, r)) > EPS_GEOM * max(r, scale) * 10:
            continue
        if best is None or abs(t - t0) < abs(best - t0):
            best = t
    if best is None:
        return None
    c = (mx + best * ux, my + best * uy)
    return c, math.sqrt(h * h + best * best)
