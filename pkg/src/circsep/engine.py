"""Minimum separating circle queries against a preprocessed point set.

A query object ``Q`` (point, circle or convex polygon) is separated from the
points when some circle encloses all of them while its open disk misses
``Q``.  The smallest such circle has its centre on the tree path from the
root (the minimum enclosing circle centre) to a *seed*: a location on the
diagram whose circle is already separating.  Along that path the radius
grows and the separating property switches from false to true exactly once,
so the answer is found by a binary search over tree nodes, interleaved with
a binary search over the part of ``Q`` facing the points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional, Tuple, Union

from . import convex as cx
from .convex import ConvexPolygon, Location
from .errors import NoRoot, SeedFailure
from .fpvd import NODE, DiagramLocation, FpvdTree, ray_exit_of_region
from .geom import (EPS_GEOM, Circle, DirectedLine, Point, dist,
                   line_roots, point_roots, circle_roots, Segment)
from .pathindex import PathLocator

try:
    from ._kernels import IMPLEMENTATION, dual_search as _dual_search
except ImportError:  # pragma: no cover - exercised when the extension is not built
    from ._fallback import IMPLEMENTATION, dual_search as _dual_search

from . import _fallback

EPS_TIE = 1e-7


class Status(str, Enum):
    SEPARATING = "separating"
    NO_SEPARATING_CIRCLE = "no_separating_circle"


@dataclass
class QueryResult:
    status: Status
    circle: Optional[Circle] = None
    tangency: Optional[Point] = None
    trivial_mec: bool = False
    stats: dict = field(default_factory=lambda: {"path_steps": 0, "chain_steps": 0})

    @property
    def separating(self) -> bool:
        return self.status is Status.SEPARATING


class Workspace(NamedTuple):
    """Final state of the path/chain search: the answer's centre lies on edge
    ``edge`` between parameters ``t0`` and ``t1``, its touching point on chain
    edges ``a..b``."""
    edge: int
    t0: float
    t1: float
    a: int
    b: int
    path_steps: int
    chain_steps: int


QueryObject = Union[Point, Circle, ConvexPolygon]


def _no_circle() -> QueryResult:
    return QueryResult(Status.NO_SEPARATING_CIRCLE)


def _tol(*vals: float) -> float:
    return EPS_GEOM * max(max(vals), 1e-300)


# ----------------------------------------------------- separation predicates

def gap(Q: QueryObject, c: Point) -> float:
    """Distance from ``c`` to ``Q`` (zero inside a polygon)."""
    if isinstance(Q, Circle):
        return max(dist(c, Q.center) - Q.radius, 0.0)
    if isinstance(Q, ConvexPolygon):
        return cx.gap_to_point(Q, c)
    return dist(c, Q)


def signed_clearance(Q: QueryObject, C: Circle) -> float:
    """Distance from ``Q`` to the circle's open disk; negative when they overlap."""
    if isinstance(Q, Circle):
        return dist(C.center, Q.center) - Q.radius - C.radius
    return gap(Q, C.center) - C.radius


def is_separating(Q: QueryObject, C: Circle, scale: float = 0.0) -> bool:
    return signed_clearance(Q, C) >= -_tol(C.radius, scale)


def closest_point(Q: QueryObject, c: Point) -> Point:
    if isinstance(Q, Circle):
        d = dist(c, Q.center)
        if d == 0.0:
            return (Q.center[0] + Q.radius, Q.center[1])
        s = Q.radius / d
        return (Q.center[0] + (c[0] - Q.center[0]) * s, Q.center[1] + (c[1] - Q.center[1]) * s)
    if isinstance(Q, ConvexPolygon):
        _, f = cx.distance_point(Q, c, check=False) if Q.m >= 3 else cx.distance_point_linear(Q, c)
        if f.kind == "vertex":
            return Q.vertex(f.index)
        return _project(c, Q.vertex(f.index), Q.vertex(f.index + 1))
    return Q


def _project(p: Point, a: Point, b: Point) -> Point:
    dx, dy = b[0] - a[0], b[1] - a[1]
    l2 = dx * dx + dy * dy
    if l2 == 0.0:
        return a
    s = min(1.0, max(0.0, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / l2))
    return (a[0] + s * dx, a[1] + s * dy)


# ------------------------------------------------------------------- seeds

def _left_normal(line: DirectedLine) -> Tuple[float, float]:
    return (-line.direction[1], line.direction[0])


def _closest_site(T: FpvdTree, n: Tuple[float, float]) -> Tuple[int, bool]:
    """Hull vertex minimizing ``dot(p, n)`` and whether a neighbour ties with it."""
    H = T.hull
    i = cx.extreme_vertex(H, (-n[0], -n[1]))
    h = T.h
    # settle rounding in the search by a local walk
    while True:
        p = H.vertex(i)
        best = p[0] * n[0] + p[1] * n[1]
        moved = False
        for j in (i - 1, i + 1):
            q = H.vertex(j)
            if q[0] * n[0] + q[1] * n[1] < best:
                i, moved = j % h, True
                break
        if not moved:
            break
    p = H.vertex(i)
    tie = False
    for j in (i - 1, i + 1):
        q = H.vertex(j)
        if q == p:
            continue
        ln = dist(p, q)
        if (q[0] - p[0]) * n[0] + (q[1] - p[1]) * n[1] <= 1e-12 * ln:
            tie = True
    return i, tie


def _rotate(v: Tuple[float, float], ang: float) -> Tuple[float, float]:
    c, s = math.cos(ang), math.sin(ang)
    return (c * v[0] - s * v[1], s * v[0] + c * v[1])


def find_seed(T: FpvdTree, L_sep: DirectedLine) -> DiagramLocation:
    """A diagram location whose circle is separating, for a line with the points on its left.

    Starts at the site closest to the line and walks away from the line until
    that site becomes the farthest one; the circle there lies in the
    half-plane through the site parallel to the line.
    """
    n = _left_normal(L_sep)
    i, tie = _closest_site(T, n)
    turns = 0
    while tie:
        # equally close sites: rotate the line a little, counter-clockwise
        turns += 1
        if turns > 8:
            raise SeedFailure("could not break a tie for the closest site")
        n = _rotate(n, EPS_TIE)
        i, tie = _closest_site(T, n)
    return ray_exit_of_region(T, i, DirectedLine(T.sites[i], n))


def seed_parameter_linear(T: FpvdTree, site: int, n: Tuple[float, float]) -> float:
    """Distance from the site to the seed along ``n``, by a scan of all sites."""
    p = T.sites[site]
    best = 0.0
    for q in T.sites:
        den = 2.0 * ((q[0] - p[0]) * n[0] + (q[1] - p[1]) * n[1])
        if den > 0.0:
            best = max(best, ((q[0] - p[0]) ** 2 + (q[1] - p[1]) ** 2) / den)
    return best


def _seed_state(T: FpvdTree, s: DiagramLocation) -> Tuple[int, float]:
    if s.kind == NODE:
        return s.ref, T.edge_thi[s.ref]
    return s.ref, s.t


def _loc_circle(T: FpvdTree, w: int, t: float) -> Circle:
    if w == T.root:
        return T.root_circle
    if T.finite[w] and t == T.edge_thi[w]:
        return Circle(T.pos[w], T.node_rho(w))
    return Circle(T.edge_point(w, t), T.edge_rho(w, t))


# ----------------------------------------------------------------- search

def dual_binary_search(T: FpvdTree, L: PathLocator, s: DiagramLocation,
                       Q: QueryObject, jb: int = 0, k: int = 0,
                       kernel=None) -> Workspace:
    """Locate the edge holding the answer's centre and the chain edge holding its touching point.

    For polygons the chain runs clockwise from vertex ``jb`` over ``k`` edges.
    """
    ws, ts = _seed_state(T, s)
    run = kernel or _dual_search
    py = run is _fallback.dual_search
    if isinstance(Q, Circle):
        scale = max(T.scale, abs(Q.center[0]), abs(Q.center[1]), Q.radius)
        verts = [Q.center] if py else _point_array(Q.center)
        res = run(L, ws, ts, verts, 1, 0, 0, True, Q.center[0], Q.center[1], Q.radius, scale)
    elif isinstance(Q, ConvexPolygon):
        scale = max(T.scale, Q.scale)
        verts = Q.vertices if py else Q.as_array()
        exact = lambda x, y, r: is_separating(Q, Circle((x, y), r), scale)
        res = run(L, ws, ts, verts, Q.m, jb, k, False, 0.0, 0.0, 0.0, scale, exact)
    else:
        scale = max(T.scale, abs(Q[0]), abs(Q[1]))
        verts = [Q] if py else _point_array(Q)
        res = run(L, ws, ts, verts, 1, 0, 0, False, 0.0, 0.0, 0.0, scale)
    return Workspace(*res)


def _point_array(p: Point):
    import numpy as np
    return np.array([p], dtype=np.float64)


def finalize(T: FpvdTree, ws: Workspace, piece: Union[Point, Segment, Circle],
             Q: QueryObject) -> Tuple[Point, float, Point]:
    """Closed-form answer on the final edge: the smallest tangency to ``piece`` that separates."""
    return _finalize(T, ws, piece, Q)[:3]


def _finalize(T: FpvdTree, ws: Workspace, piece, Q: QueryObject):
    w, t0, t1 = ws.edge, ws.t0, ws.t1
    if w == T.root:
        C = T.root_circle
        return C.center, C.radius, closest_point(Q, C.center), True
    mx, my = T.edge_mid[w]
    ux, uy = T.edge_dir[w]
    h = T.edge_h[w]
    scale = max(T.scale, h, 1e-300)
    s2 = scale * scale
    if isinstance(piece, Circle):
        cands = circle_roots(mx, my, ux, uy, h, piece.center[0], piece.center[1], piece.radius, s2)
    elif isinstance(piece, Segment) and piece.a != piece.b:
        (ax, ay), (bx, by) = piece
        ln = math.hypot(bx - ax, by - ay)
        dx, dy = (bx - ax) / ln, (by - ay) / ln
        cands = line_roots(mx, my, ux, uy, h, ax, ay, dx, dy, s2)
        cands += point_roots(mx, my, ux, uy, h, ax, ay)
        cands += point_roots(mx, my, ux, uy, h, bx, by)
    else:
        f = piece.a if isinstance(piece, Segment) else piece
        cands = point_roots(mx, my, ux, uy, h, f[0], f[1])
    span = max(abs(t0), abs(t1) if math.isfinite(t1) else 0.0, scale)
    slack = EPS_GEOM * span
    qscale = Q.scale if isinstance(Q, ConvexPolygon) else 0.0
    best = None
    for t in sorted(cands):
        if not (t0 - slack <= t <= t1 + slack):
            continue
        c = (mx + t * ux, my + t * uy)
        r = math.sqrt(h * h + t * t)
        if is_separating(Q, Circle(c, r), max(scale, qscale)):
            best = t
            break
    exact = best is not None
    if best is None:
        best = _bisect_edge(T, w, t0, t1, Q)
        if best is None:
            raise NoRoot("no separating tangency on the final edge")
    c = (mx + best * ux, my + best * uy)
    r = math.sqrt(h * h + best * best)
    return c, r, closest_point(Q, c), exact


def _bisect_edge(T: FpvdTree, w: int, t0: float, t1: float, Q: QueryObject) -> Optional[float]:
    """Safety net: bisection on the edge with the full separation test."""
    if not math.isfinite(t1):
        return None
    qs = Q.scale if isinstance(Q, ConvexPolygon) else 0.0
    ok = lambda t: is_separating(Q, Circle(T.edge_point(w, t), T.edge_rho(w, t)), max(T.scale, qs))
    if not ok(t1):
        return None
    lo, hi = t0, t1
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


# ---------------------------------------------------------------- queries

def _trivial(T: FpvdTree, Q: QueryObject) -> Optional[QueryResult]:
    C = T.root_circle
    qs = Q.scale if isinstance(Q, ConvexPolygon) else 0.0
    clear = signed_clearance(Q, C)
    tol = _tol(C.radius, T.scale, qs)
    if clear < -tol:
        return None
    tangency = closest_point(Q, C.center) if clear <= tol else None
    return QueryResult(Status.SEPARATING, C, tangency, True)


def _search(T: FpvdTree, L: PathLocator, line: DirectedLine, Q: QueryObject,
            piece_of, jb: int = 0, k: int = 0) -> QueryResult:
    s = find_seed(T, line)
    ws, ts = _seed_state(T, s)
    qs = Q.scale if isinstance(Q, ConvexPolygon) else 0.0
    if not is_separating(Q, _loc_circle(T, ws, ts), max(T.scale, qs)):
        raise SeedFailure("seed circle is not separating")
    if ws == T.root:
        C = T.root_circle
        return QueryResult(Status.SEPARATING, C, closest_point(Q, C.center), False)
    work = dual_binary_search(T, L, s, Q, jb, k)
    c, r, tp, exact = _finalize(T, work, piece_of(work), Q)
    stats = {"path_steps": work.path_steps, "chain_steps": work.chain_steps}
    if not exact:
        stats["bisection_fallback"] = True
    return QueryResult(Status.SEPARATING, Circle(c, r), tp, False, stats)


def _vertex_index(T: FpvdTree, q: Point) -> Optional[int]:
    tol = _tol(T.scale, abs(q[0]), abs(q[1]))
    for i, p in enumerate(T.sites):
        if dist(p, q) <= tol:
            return i
    return None


def query_point(T: FpvdTree, L: PathLocator, q: Point) -> QueryResult:
    q = (float(q[0]), float(q[1]))
    where = cx.contains_point(T.hull, q)
    if where is Location.INSIDE:
        return _no_circle()
    vi = None
    if where is Location.BOUNDARY:
        # only a hull vertex can sit on a circle enclosing every site
        vi = _hull_vertex_near(T, q)
        if vi is None:
            return _no_circle()
    triv = _trivial(T, q)
    if triv is not None:
        return triv
    if vi is not None:
        line = _vertex_line(T, vi)
    else:
        x = closest_point(T.hull if T.h >= 3 else T.hull, q)
        line = _midline(x, q)
    return _search(T, L, line, q, lambda w: q)


def _hull_vertex_near(T: FpvdTree, q: Point) -> Optional[int]:
    H = T.hull
    tol = _tol(T.scale, abs(q[0]), abs(q[1]))
    if H.m < 3:
        near = range(H.m)
    else:
        c = H.interior
        k = cx.ray_exit_edge(H.vertex, H.m, c, (q[0] - c[0], q[1] - c[1]))
        near = (k, k + 1, k - 1, k + 2)
    for i in near:
        if dist(H.vertex(i), q) <= tol:
            return i % H.m
    return None


def _vertex_line(T: FpvdTree, i: int) -> DirectedLine:
    """Line through hull vertex ``i`` touching the hull only there, points on the left."""
    H = T.hull
    p = H.vertex(i)
    acc = [0.0, 0.0]
    for j in (i - 1, i + 1):
        q = H.vertex(j)
        d = dist(p, q)
        acc[0] += (q[0] - p[0]) / d
        acc[1] += (q[1] - p[1]) / d
    n = math.hypot(*acc)
    nx, ny = acc[0] / n, acc[1] / n
    return DirectedLine(p, (ny, -nx))


def _midline(x: Point, q: Point) -> DirectedLine:
    """Perpendicular bisector of ``[x, q]`` with ``x`` on the left."""
    d = dist(x, q)
    nx, ny = (x[0] - q[0]) / d, (x[1] - q[1]) / d
    mid = ((x[0] + q[0]) * 0.5, (x[1] + q[1]) * 0.5)
    return DirectedLine(mid, (ny, -nx))


def query_circle(T: FpvdTree, L: PathLocator, D: Circle) -> QueryResult:
    D = Circle((float(D.center[0]), float(D.center[1])), float(D.radius))
    if D.radius == 0.0:
        return query_point(T, L, D.center)
    c = D.center
    H = T.hull
    where = cx.contains_point(H, c)
    if where is not Location.OUTSIDE:
        return _no_circle()
    g = cx.distance_point(H, c, check=False)[0] if H.m >= 3 else cx.distance_point_linear(H, c)[0]
    tol = _tol(T.scale, D.radius, abs(c[0]), abs(c[1]))
    if g < D.radius - tol:
        return _no_circle()
    x = closest_point(H, c)
    if g <= D.radius + tol:
        vi = _hull_vertex_near(T, x)
        if vi is None:
            return _no_circle()
        triv = _trivial(T, D)
        if triv is not None:
            return triv
        d = dist(x, c)
        n = ((x[0] - c[0]) / d, (x[1] - c[1]) / d)
        line = DirectedLine(x, (n[1], -n[0]))
        return _search(T, L, line, D, lambda w: D)
    triv = _trivial(T, D)
    if triv is not None:
        return triv
    # a line through the middle of the gap
    d = dist(x, c)
    n = ((x[0] - c[0]) / d, (x[1] - c[1]) / d)
    off = (g - D.radius) * 0.5
    anchor = (x[0] - n[0] * off, x[1] - n[1] * off)
    return _search(T, L, DirectedLine(anchor, (n[1], -n[0])), D, lambda w: D)


def _bisector_line(Lq: DirectedLine, Lq2: DirectedLine) -> DirectedLine:
    (ax, ay), (ux, uy) = Lq
    (bx, by), (vx, vy) = Lq2
    den = ux * vy - uy * vx
    sx, sy = ux + vx, uy + vy
    ns = math.hypot(sx, sy)
    if abs(den) <= 1e-15 or ns == 0.0:
        return Lq
    # intersection of the two tangents
    t = ((bx - ax) * vy - (by - ay) * vx) / den
    X = (ax + t * ux, ay + t * uy)
    return DirectedLine(X, (sx / ns, sy / ns))


def query_polygon(T: FpvdTree, L: PathLocator, Q: ConvexPolygon) -> QueryResult:
    if Q.m == 1:
        return query_point(T, L, Q.vertex(0))
    where, D = cx.classify_pair(T.hull_angles, Q)
    if where is Location.INSIDE:
        return _no_circle()
    triv = _trivial(T, Q)
    if triv is not None:
        return triv
    if where is Location.BOUNDARY:
        return _touching_polygon(T, L, Q, D)
    tg = cx.internal_tangents_of(T.hull_angles, Q, D)
    if tg.chain_len == 0 or tg.q == tg.q2:
        return query_point(T, L, tg.q)
    line = _bisector_line(tg.L, tg.L2)
    jb, k = tg.q_index, tg.chain_len

    def piece(work: Workspace):
        qa = Q.vertex(jb - work.a)
        if work.b == work.a:
            return qa
        return Segment(qa, Q.vertex(jb - work.b))

    return _search(T, L, line, Q, piece, jb, k)


def _touching_polygon(T: FpvdTree, L: PathLocator, Q: ConvexPolygon, D) -> QueryResult:
    """Closures meet but interiors do not; the contact must be a hull vertex."""
    line = cx._touching_line(T.hull, Q, D)
    if line is None:
        return _no_circle()
    n = _left_normal(line)
    i, tie = _closest_site(T, n)
    p = T.sites[i]
    contact = closest_point(Q, p)
    tol = _tol(T.scale, Q.scale)
    if dist(contact, p) > tol:
        # the polygon touches the hull away from this vertex, i.e. inside an edge
        return _no_circle()
    if tie:
        # the touching line contains a hull edge through p; tilt it about p
        ok = False
        for sgn in (1.0, -1.0):
            n2 = _rotate(n, sgn * 1e-4)
            line2 = DirectedLine(p, (n2[1], -n2[0]))
            if all(line2.direction[0] * (v[1] - p[1]) - line2.direction[1] * (v[0] - p[0]) <= tol
                   for v in Q.vertices) and \
                    all(line2.direction[0] * (v[1] - p[1]) - line2.direction[1] * (v[0] - p[0]) >= -tol
                        for v in T.sites):
                line, ok = line2, True
                break
        if not ok:
            return _no_circle()
    # the full search with the exact predicate; O(log n log m)
    s = find_seed(T, line)
    ws, ts = _seed_state(T, s)
    if not is_separating(Q, _loc_circle(T, ws, ts), max(T.scale, Q.scale)):
        raise SeedFailure("seed circle is not separating")
    return _exact_path_search(T, L, ws, ts, Q)


def _exact_path_search(T: FpvdTree, L: PathLocator, ws: int, ts: float, Q: QueryObject) -> QueryResult:
    """Binary search on the seed's root path with the full separation test."""
    sc = max(T.scale, Q.scale if isinstance(Q, ConvexPolygon) else 0.0)
    sep = lambda C: is_separating(Q, C, sc)
    wu, tu = ws, ts
    wv, tv = T.root, 0.0
    steps = 0
    while True:
        lo = T.depth[wv] + 1 if tv == T.edge_thi[wv] else T.depth[wv]
        hi = T.depth[wu] - 1
        if lo > hi:
            break
        z = L.ancestor_at_depth(wu, (lo + hi) // 2)
        steps += 1
        if sep(Circle(T.pos[z], T.node_rho(z))):
            wu, tu = z, T.edge_thi[z]
        else:
            wv, tv = z, T.edge_thi[z]
    t0 = tv if wv == wu else T.edge_tlo[wu]
    t = _bisect_edge(T, wu, t0, tu, Q)
    if t is None:
        raise NoRoot("exact path search found no separating circle")
    C = Circle(T.edge_point(wu, t), T.edge_rho(wu, t))
    return QueryResult(Status.SEPARATING, C, closest_point(Q, C.center), False,
                       {"path_steps": steps, "chain_steps": 0})


def query(T: FpvdTree, L: PathLocator, Q: QueryObject) -> QueryResult:
    if isinstance(Q, ConvexPolygon):
        return query_polygon(T, L, Q)
    if isinstance(Q, Circle):
        return query_circle(T, L, Q)
    return query_point(T, L, Q)


def prepare(P) -> Tuple[FpvdTree, PathLocator]:
    """Build the diagram tree of ``P`` and its ancestor index."""
    from .fpvd import build
    from .pathindex import build_locator
    T = build(P)
    return T, build_locator(T)
