"""Minimum enclosing circle by randomized incremental construction."""
from __future__ import annotations

import math
import random
from typing import List, NamedTuple, Sequence, Tuple

from .errors import EmptyInput
from .geom import EPS_GEOM, Circle, Point, circumcenter, dist, orient2d
from .hull import convex_hull

DEFAULT_SEED = 42


class MecResult(NamedTuple):
    circle: Circle
    support: Tuple[int, ...]


def _diametral(a: Point, b: Point) -> Circle:
    c = ((a[0] + b[0]) * 0.5, (a[1] + b[1]) * 0.5)
    return Circle(c, max(dist(c, a), dist(c, b)))


def _through(a: Point, b: Point, c: Point) -> Circle:
    cc = circumcenter(a, b, c)
    return Circle(cc, max(dist(cc, a), dist(cc, b), dist(cc, c)))


def minimum_enclosing_circle(P: Sequence[Point], seed: int = DEFAULT_SEED) -> MecResult:
    """Smallest circle enclosing ``P`` and 1 to 3 indices of points on it."""
    pts = [(float(x), float(y)) for x, y in P]
    if not pts:
        raise EmptyInput("minimum enclosing circle of an empty set")
    if len(pts) > 64:
        hull, idx = convex_hull(pts)
    else:
        hull, idx = pts, list(range(len(pts)))
    scale = max(max(abs(x), abs(y)) for x, y in hull)
    tol = EPS_GEOM * max(scale, 1e-300)
    order = list(range(len(hull)))
    random.Random(seed).shuffle(order)
    # move-to-front keeps points that forced a rebuild near the front
    work: List[int] = order

    def inside(c: Circle, i: int) -> bool:
        return dist(c.center, hull[i]) <= c.radius + tol

    circ = Circle(hull[work[0]], 0.0)
    sup: Tuple[int, ...] = (work[0],)
    i = 1
    while i < len(work):
        p = work[i]
        if not inside(circ, p):
            circ, sup = _with_one(hull, work[:i], p, inside)
            work.insert(0, work.pop(i))
        i += 1
    return MecResult(circ, tuple(idx[s] for s in sup))


def _with_one(hull, prefix, p, inside):
    circ, sup = Circle(hull[p], 0.0), (p,)
    for k, q in enumerate(prefix):
        if not inside(circ, q):
            circ, sup = _with_two(hull, prefix[:k], p, q, inside)
    return circ, sup


def _with_two(hull, prefix, p, q, inside):
    circ, sup = _diametral(hull[p], hull[q]), (p, q)
    for r in prefix:
        if not inside(circ, r):
            if orient2d(hull[p], hull[q], hull[r]) == 0:
                # collinear: the two farthest apart span the circle
                pair = max(((p, q), (p, r), (q, r)), key=lambda ab: dist(hull[ab[0]], hull[ab[1]]))
                circ, sup = _diametral(hull[pair[0]], hull[pair[1]]), pair
            else:
                circ, sup = _through(hull[p], hull[q], hull[r]), (p, q, r)
    return _trim_support(hull, circ, sup)


def _trim_support(hull, circ: Circle, sup):
    """Report a diametral pair when the third support point is redundant."""
    if len(sup) == 3:
        for a, b in ((sup[0], sup[1]), (sup[0], sup[2]), (sup[1], sup[2])):
            d = _diametral(hull[a], hull[b])
            if abs(d.radius - circ.radius) <= EPS_GEOM * max(circ.radius, 1e-300) and \
                    math.isclose(d.center[0], circ.center[0], abs_tol=1e-9 * max(circ.radius, 1e-300)) and \
                    math.isclose(d.center[1], circ.center[1], abs_tol=1e-9 * max(circ.radius, 1e-300)):
                return d, (a, b)
    return circ, sup
