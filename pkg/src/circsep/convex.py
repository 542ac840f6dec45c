"""Convex polygons and the logarithmic-time queries run against them.

Every routine here works on a *vertex getter* ``V(i)`` with ``m`` vertices in
counter-clockwise order, so the same binary searches serve both stored
polygons and the implicit Minkowski difference used for tangents.  Below
``SMALL_M`` vertices the searches fall back to linear scans.
"""
from __future__ import annotations

import math
from enum import Enum
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import NotConvex, PointNotOnBoundary, PointNotOutside, PolygonsIntersect
from .geom import (EPS_GEOM, Circle, DirectedLine, Point, Segment, dist,
                   dist_point_segment, orient2d)

SMALL_M = 16

Getter = Callable[[int], Point]


class Location(Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


class ChainInterval(NamedTuple):
    a: int
    b: int


class Feature(NamedTuple):
    kind: str  # "vertex" or "edge"
    index: int


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


class ConvexPolygon:
    """Strictly convex polygon, vertices counter-clockwise.

    1-gons and 2-gons are allowed and stand for a point and a segment.
    """

    __slots__ = ("vertices", "m", "scale", "_interior", "_array", "_bounds")

    def __init__(self, vertices: Sequence[Point]):
        self.vertices: List[Point] = [(float(x), float(y)) for x, y in vertices]
        self.m = len(self.vertices)
        self.scale = max((max(abs(x), abs(y)) for x, y in self.vertices), default=0.0)
        self._interior: Optional[Point] = None
        self._array = None
        self._bounds = None

    def as_array(self):
        """Vertices as a contiguous ``(m, 2)`` float64 array, built once."""
        if self._array is None:
            import numpy as np
            vs = self.vertices
            if isinstance(vs, _ShiftedVertices):
                self._array = vs.base.as_array() + np.array([vs.dx, vs.dy])
            else:
                self._array = np.ascontiguousarray(vs, dtype=np.float64).reshape(-1, 2)
        return self._array

    def translated(self, dx: float, dy: float) -> "ConvexPolygon":
        """Copy shifted by ``(dx, dy)`` in O(1); vertices are produced on access."""
        if self._bounds is None:
            arr = self.as_array()
            self._bounds = (float(arr[:, 0].min()), float(arr[:, 0].max()),
                            float(arr[:, 1].min()), float(arr[:, 1].max()))
        x0, x1, y0, y1 = self._bounds
        out = ConvexPolygon.__new__(ConvexPolygon)
        dx, dy = float(dx), float(dy)
        if self.m <= 512:
            out.vertices = [(x + dx, y + dy) for x, y in self.vertices]
        else:
            out.vertices = _ShiftedVertices(self, dx, dy)
        out.m = self.m
        out.scale = max(abs(x0 + dx), abs(x1 + dx), abs(y0 + dy), abs(y1 + dy)) if self.m else 0.0
        out._interior = None
        out._array = None
        out._bounds = (x0 + dx, x1 + dx, y0 + dy, y1 + dy)
        return out

    def __len__(self):
        return self.m

    def __repr__(self):
        return f"ConvexPolygon({self.vertices!r})"

    def __eq__(self, other):
        return isinstance(other, ConvexPolygon) and list(self.vertices) == list(other.vertices)

    def vertex(self, i: int) -> Point:
        return self.vertices[i % self.m]

    def edge(self, i: int) -> Segment:
        return Segment(self.vertex(i), self.vertex(i + 1))

    @property
    def interior(self) -> Point:
        """A point strictly inside (or the centroid for 1- and 2-gons)."""
        if self._interior is None:
            vs, m = self.vertices, self.m
            picks = [vs[0], vs[m // 3], vs[(2 * m) // 3]] if m >= 3 else vs
            self._interior = (sum(p[0] for p in picks) / len(picks),
                              sum(p[1] for p in picks) / len(picks))
        return self._interior

    def tol(self, extra: float = 0.0) -> float:
        return EPS_GEOM * max(self.scale, extra, 1e-300)


class _ShiftedVertices(Sequence):
    """Read-only view of another polygon's vertices plus a constant offset."""

    __slots__ = ("base", "dx", "dy", "_src")

    def __init__(self, base: ConvexPolygon, dx: float, dy: float):
        self.base, self.dx, self.dy = base, dx, dy
        self._src = base.vertices

    def __len__(self):
        return len(self._src)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [(x + self.dx, y + self.dy) for x, y in self._src[i]]
        x, y = self._src[i]
        return (x + self.dx, y + self.dy)

    def __repr__(self):
        return repr(list(self))


def make_polygon(points: Sequence[Point]) -> ConvexPolygon:
    pts = [(float(x), float(y)) for x, y in points]
    if not pts:
        raise NotConvex("polygon needs at least one vertex")
    for x, y in pts:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise NotConvex(f"non-finite vertex {(x, y)}")
    scale = max(max(abs(x), abs(y)) for x, y in pts)
    tol = EPS_GEOM * max(scale, 1e-300)

    # drop repeated vertices, including a closing duplicate
    clean: List[Point] = []
    for p in pts:
        if not clean or dist(p, clean[-1]) > tol:
            clean.append(p)
    while len(clean) > 1 and dist(clean[0], clean[-1]) <= tol:
        clean.pop()
    if len(clean) <= 2:
        return ConvexPolygon(clean)

    area2 = sum(_cross(*clean[i - 1], *clean[i]) for i in range(len(clean)))
    if abs(area2) <= tol * scale * len(clean):
        # everything collinear: keep the two extremes as a segment
        a = clean[0]
        far = max(clean, key=lambda p: dist(p, a))
        b = max(clean, key=lambda p: dist(p, far))
        return ConvexPolygon([far, b])
    if area2 < 0:
        clean.reverse()

    # collapse collinear runs
    changed = True
    while changed and len(clean) > 2:
        changed = False
        n = len(clean)
        for i in range(n):
            a, b, c = clean[i - 1], clean[i], clean[(i + 1) % n]
            ab = dist(a, b)
            bc = dist(b, c)
            if abs(orient2d(a, b, c)) <= tol * max(ab, bc, 1e-300):
                del clean[i]
                changed = True
                break

    n = len(clean)
    turning = 0.0
    for i in range(n):
        a, b, c = clean[i - 1], clean[i], clean[(i + 1) % n]
        if orient2d(a, b, c) <= 0:
            raise NotConvex(f"reflex or degenerate vertex at {b}")
        turning += math.atan2(_cross(b[0] - a[0], b[1] - a[1], c[0] - b[0], c[1] - b[1]),
                              (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]))
    if abs(turning - 2 * math.pi) > 1e-6:
        raise NotConvex("vertex cycle winds more than once")
    return ConvexPolygon(clean)


# ---------------------------------------------------------------- fan searches

def _angle_le(rx, ry, xx, xy, yx, yy) -> bool:
    """Is the ccw angle from r to x at most the ccw angle from r to y?"""
    cx = _cross(rx, ry, xx, xy)
    cy = _cross(rx, ry, yx, yy)
    hx = 0 if (cx > 0 or (cx == 0 and rx * xx + ry * xy > 0)) else 1
    hy = 0 if (cy > 0 or (cy == 0 and rx * yx + ry * yy > 0)) else 1
    if hx != hy:
        return hx < hy
    return _cross(xx, xy, yx, yy) >= 0


def ray_exit_edge(V: Getter, m: int, c: Point, r: Tuple[float, float]) -> int:
    """Index of the edge hit by the ray from interior point ``c`` along ``r``."""
    v0 = V(0)
    ax, ay = v0[0] - c[0], v0[1] - c[1]
    lo, hi = 0, m
    while hi - lo > 1:
        mid = (lo + hi) // 2
        vm = V(mid)
        if _angle_le(ax, ay, vm[0] - c[0], vm[1] - c[1], r[0], r[1]):
            lo = mid
        else:
            hi = mid
    return lo


def _first_false(pred: Callable[[int], bool], lo: int, hi: int) -> int:
    """Smallest i in [lo, hi] with pred(i) false, given pred is true..true false..false on [lo, hi)."""
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid + 1
        else:
            hi = mid
    return lo


def _visible(V: Getter, i: int, p: Point) -> bool:
    return orient2d(V(i), V(i + 1), p) < 0


def tangents_from_point(V: Getter, m: int, c: Point, p: Point) -> Optional[Tuple[int, int]]:
    """Visible chain of a convex polygon from an outside point.

    Returns ``(i_start, i_end)``: edges ``i_start .. i_end - 1`` (cyclic) are the
    ones ``p`` sees strictly, so ``V(i_start)`` and ``V(i_end)`` are the tangent
    vertices.  ``None`` when no edge is strictly visible.
    """
    if m < SMALL_M:
        vis = [_visible(V, i, p) for i in range(m)]
        if not any(vis):
            return None
        if all(vis):
            # only possible for degenerate (zero-area) cycles
            return 0, 0
        start = next(i for i in range(m) if vis[i] and not vis[i - 1])
        end = next(i for i in range(m) if vis[i - 1] and not vis[i])
        return start, end
    iv = ray_exit_edge(V, m, c, (p[0] - c[0], p[1] - c[1]))
    if not _visible(V, iv, p):
        return None
    jv = ray_exit_edge(V, m, c, (c[0] - p[0], c[1] - p[1]))
    span = (jv - iv) % m
    end = iv + _first_false(lambda k: _visible(V, iv + k, p), 1, span)
    span2 = (iv - jv) % m
    start = jv + _first_false(lambda k: not _visible(V, jv + k, p), 1, span2)
    return start % m, end % m


def _closest_on_chain(V: Getter, p: Point, start: int, count: int) -> Tuple[float, Feature]:
    """Closest feature of the chain of ``count`` edges from vertex ``start``."""

    def past_end(k):
        a, b = V(start + k), V(start + k + 1)
        return (p[0] - b[0]) * (b[0] - a[0]) + (p[1] - b[1]) * (b[1] - a[1]) > 0

    k = _first_false(past_end, 0, count)
    if k == count:
        i = start + count
        return dist(p, V(i)), Feature("vertex", i)
    a, b = V(start + k), V(start + k + 1)
    ex, ey = b[0] - a[0], b[1] - a[1]
    if (p[0] - a[0]) * ex + (p[1] - a[1]) * ey <= 0:
        return dist(p, a), Feature("vertex", start + k)
    return dist_point_segment(p, Segment(a, b)), Feature("edge", start + k)


def _closest_linear(V: Getter, m: int, p: Point) -> Tuple[float, Feature]:
    best = (math.inf, Feature("vertex", 0))
    for i in range(m):
        a = V(i)
        d = dist(p, a)
        if d < best[0]:
            best = (d, Feature("vertex", i))
        if m >= 2:
            b = V(i + 1)
            ex, ey = b[0] - a[0], b[1] - a[1]
            t = (p[0] - a[0]) * ex + (p[1] - a[1]) * ey
            if 0 < t < ex * ex + ey * ey:
                d = dist_point_segment(p, Segment(a, b))
                if d < best[0]:
                    best = (d, Feature("edge", i))
    return best


def _raw_distance(V: Getter, m: int, c: Point, p: Point) -> Optional[Tuple[float, Feature]]:
    """Distance from ``p`` to the polygon, or ``None`` if ``p`` sees no edge."""
    if m < 3:
        return _closest_linear(V, m, p)
    vis = tangents_from_point(V, m, c, p)
    if vis is None:
        return None
    start, end = vis
    count = (end - start) % m or m
    d, f = _closest_on_chain(V, p, start, count)
    return d, Feature(f.kind, f.index % m)


def contains_point(Q: ConvexPolygon, p: Point) -> Location:
    tol = Q.tol(max(abs(p[0]), abs(p[1])))
    m, V = Q.m, Q.vertex
    if m < 3:
        d, _ = _closest_linear(V, m, p)
        return Location.BOUNDARY if d <= tol else Location.OUTSIDE
    if m < SMALL_M:
        inside = all(orient2d(V(i), V(i + 1), p) > 0 for i in range(m))
        d, _ = _closest_linear(V, m, p)
        if d <= tol:
            return Location.BOUNDARY
        return Location.INSIDE if inside else Location.OUTSIDE
    v0 = V(0)
    if orient2d(v0, V(1), p) < 0 or orient2d(v0, V(m - 1), p) > 0:
        d, _ = distance_point(Q, p, check=False)
        return Location.BOUNDARY if d <= tol else Location.OUTSIDE
    # sector k: p between rays v0->v_k and v0->v_{k+1}
    k = _first_false(lambda i: orient2d(v0, V(i), p) >= 0, 2, m - 1) - 1
    near = min(dist_point_segment(p, Q.edge(k)), dist_point_segment(p, Q.edge(0)),
               dist_point_segment(p, Q.edge(m - 1)))
    if orient2d(V(k), V(k + 1), p) < 0:
        if near <= tol:
            return Location.BOUNDARY
        d, _ = distance_point(Q, p, check=False)
        return Location.BOUNDARY if d <= tol else Location.OUTSIDE
    return Location.BOUNDARY if near <= tol else Location.INSIDE


def distance_point(Q: ConvexPolygon, p: Point, check: bool = True) -> Tuple[float, Feature]:
    """Distance from an outside point to ``Q`` with the realizing vertex or edge."""
    if check and contains_point(Q, p) is not Location.OUTSIDE:
        raise PointNotOutside(f"{p} is not outside the polygon")
    res = _raw_distance(Q.vertex, Q.m, Q.interior, p)
    if res is None:
        # only reachable with check=False for a point that is inside
        return 0.0, Feature("vertex", 0)
    return res


def distance_point_linear(Q: ConvexPolygon, p: Point) -> Tuple[float, Feature]:
    return _closest_linear(Q.vertex, Q.m, p)


def gap_to_point(Q: ConvexPolygon, p: Point) -> float:
    """Distance from ``p`` to ``Q``; zero when ``p`` is inside."""
    if Q.m < 3:
        return _closest_linear(Q.vertex, Q.m, p)[0]
    res = _raw_distance(Q.vertex, Q.m, Q.interior, p)
    return 0.0 if res is None else res[0]


def extreme_vertex(Q: ConvexPolygon, direction: Tuple[float, float]) -> int:
    """Vertex maximizing ``dot(v, direction)``; ties go to the lower index."""
    return _extreme(Q.vertex, Q.m, Q.interior if Q.m >= 3 else None, direction)


def _extreme(V: Getter, m: int, c: Optional[Point], direction) -> int:
    dx, dy = direction
    if m < SMALL_M or c is None:
        best, bi = -math.inf, 0
        for i in range(m):
            v = V(i)
            s = v[0] * dx + v[1] * dy
            if s > best:
                best, bi = s, i
        return bi

    def rising(i):
        a, b = V(i), V(i + 1)
        return (b[0] - a[0]) * dx + (b[1] - a[1]) * dy > 0

    up = ray_exit_edge(V, m, c, (dy, -dx))
    down = ray_exit_edge(V, m, c, (-dy, dx))
    span = (down - up) % m or m
    k = (up + _first_false(lambda j: rising(up + j), 0, span)) % m
    nxt = (k + 1) % m
    a, b = V(k), V(nxt)
    if nxt < k and b[0] * dx + b[1] * dy >= a[0] * dx + a[1] * dy:
        return nxt
    return k


def circle_polygon_disjoint(C: Circle, Q: ConvexPolygon) -> bool:
    """True iff the open disk of ``C`` misses ``Q``; tangency counts as disjoint."""
    tol = EPS_GEOM * max(C.radius, Q.scale, 1e-300)
    return gap_to_point(Q, C.center) >= C.radius - tol


# ------------------------------------------------------- Minkowski difference

def _pseudo_angle(dx: float, dy: float) -> float:
    """Monotone in the polar angle of (dx, dy) over [0, 2 pi); range [0, 4)."""
    s = abs(dx) + abs(dy)
    if dy >= 0:
        return 1.0 - dx / s
    return 3.0 + dx / s


def _bottom_index(V: Getter, m: int) -> int:
    """Lowest vertex, leftmost among ties."""
    best = 0
    bv = V(0)
    for i in range(1, m):
        v = V(i)
        if v[1] < bv[1] or (v[1] == bv[1] and v[0] < bv[0]):
            best, bv = i, v
    return best


class PolygonAngles:
    """Edge pseudo-angles of a fixed polygon, starting at its bottom vertex."""

    __slots__ = ("poly", "start", "angles")

    def __init__(self, poly: ConvexPolygon):
        self.poly = poly
        m = poly.m
        self.start = _bottom_index(poly.vertex, m)
        self.angles = []
        for j in range(m if m > 1 else 0):
            a, b = poly.vertex(self.start + j), poly.vertex(self.start + j + 1)
            self.angles.append(_pseudo_angle(b[0] - a[0], b[1] - a[1]))


class MinkowskiDifference:
    """The polygon ``A - B`` seen through an O(log) vertex getter.

    ``A`` comes with precomputed edge angles (it is the fixed hull); edges of
    ``B`` are inspected lazily, so no O(m) work happens per query beyond the
    O(log m) extreme-vertex search for the starting vertex.
    """

    def __init__(self, A: PolygonAngles, B: ConvexPolygon):
        self.A = A
        self.B = B
        self.nA = len(A.angles)
        # a 1-gon contributes no edges
        self.nB = B.m if B.m > 1 else 0
        self.m = max(self.nA + self.nB, 1)
        # lowest-leftmost vertex of -B is the highest-rightmost vertex of B
        if B.m < SMALL_M:
            best = 0
            for i in range(1, B.m):
                v, w = B.vertex(i), B.vertex(best)
                if v[1] > w[1] or (v[1] == w[1] and v[0] > w[0]):
                    best = i
            self.b0 = best
        else:
            k = extreme_vertex(B, (1e-9, 1.0))
            # walk past exact ties on the top edge
            for j in (k - 1, k + 1):
                v, w = B.vertex(j), B.vertex(k)
                if v[1] > w[1] or (v[1] == w[1] and v[0] > w[0]):
                    k = j
            self.b0 = k % B.m
        self._cache = {}
        ca = A.poly.interior
        cb = B.interior
        self.interior = (ca[0] - cb[0], ca[1] - cb[1])

    def _b_angle(self, j: int) -> float:
        if j >= self.nB:
            return math.inf
        a, b = self.B.vertex(self.b0 + j), self.B.vertex(self.b0 + j + 1)
        return _pseudo_angle(a[0] - b[0], a[1] - b[1])

    def split(self, k: int) -> Tuple[int, int]:
        """Indices ``(i, j)`` into A and B with ``vertex(k) = A[i] - B[j]``."""
        k %= self.m
        hit = self._cache.get(k)
        if hit is not None:
            return hit
        nA, angles = self.nA, self.A.angles
        lo, hi = max(0, k - self.nB), min(k, nA)
        # largest x with: x == 0 or angle(A edge x-1) <= angle(B edge k-x)
        while lo < hi:
            x = (lo + hi + 1) // 2
            if angles[x - 1] <= self._b_angle(k - x):
                lo = x
            else:
                hi = x - 1
        x = lo
        res = ((self.A.start + x) % self.A.poly.m, (self.b0 + k - x) % self.B.m)
        self._cache[k] = res
        return res

    def vertex(self, k: int) -> Point:
        i, j = self.split(k)
        a, b = self.A.poly.vertices[i], self.B.vertices[j]
        return (a[0] - b[0], a[1] - b[1])

    def materialize(self) -> List[Point]:
        return [self.vertex(k) for k in range(self.m)]


class Tangents(NamedTuple):
    L: DirectedLine
    L2: DirectedLine
    q: Point
    q2: Point
    q_index: int
    q2_index: int
    chain_len: int  # number of chain edges k


def classify_pair(A: PolygonAngles, B: ConvexPolygon) -> Tuple[Location, MinkowskiDifference]:
    """Where the origin sits relative to ``A - B``: OUTSIDE means disjoint polygons."""
    D = MinkowskiDifference(A, B)
    scale = max(A.poly.scale, B.scale, 1e-300)
    tol = EPS_GEOM * scale
    origin = (0.0, 0.0)
    degenerate = A.poly.m < 3 and B.m < 3
    if degenerate or D.m < SMALL_M:
        V = D.materialize()
        g = lambda i: V[i % D.m]
        d, _ = _closest_linear(g, D.m, origin)
        if d <= tol:
            return Location.BOUNDARY, D
        if degenerate:
            return Location.OUTSIDE, D
        inside = all(orient2d(g(i), g(i + 1), origin) > 0 for i in range(D.m))
        return (Location.INSIDE if inside else Location.OUTSIDE), D
    res = _raw_distance(D.vertex, D.m, D.interior, origin)
    if res is None:
        return Location.INSIDE, D
    return (Location.BOUNDARY if res[0] <= tol else Location.OUTSIDE), D


def internal_tangents_of(A: PolygonAngles, B: ConvexPolygon,
                         D: Optional[MinkowskiDifference] = None) -> Tangents:
    if D is None:
        where, D = classify_pair(A, B)
        if where is not Location.OUTSIDE:
            raise PolygonsIntersect("polygons are not strictly disjoint")
    origin = (0.0, 0.0)
    if D.m < SMALL_M or (A.poly.m < 3 and B.m < 3):
        V = D.materialize()
        vis = tangents_from_point(lambda i: V[i % D.m], D.m, D.interior, origin)
        if vis is None or (A.poly.m < 3 and B.m < 3 and vis == (0, 0)):
            vis = _degenerate_visible(V, origin)
    else:
        vis = tangents_from_point(D.vertex, D.m, D.interior, origin)
    if vis is None:
        raise PolygonsIntersect("no edge of A - B is visible from the origin")
    k_start, k_end = vis
    ia_s, jb_s = D.split(k_start)
    ia_e, jb_e = D.split(k_end)
    cA = A.poly.interior
    cB = B.interior

    def oriented(ia, jb):
        a, b = A.poly.vertices[ia], B.vertices[jb]
        dx, dy = a[0] - b[0], a[1] - b[1]
        n = math.hypot(dx, dy)
        ux, uy = dx / n, dy / n
        # A on the left
        if _cross(ux, uy, cA[0] - cB[0], cA[1] - cB[1]) < 0:
            ux, uy = -ux, -uy
        return DirectedLine(b, (ux, uy))

    L = oriented(ia_e, jb_e)
    L2 = oriented(ia_s, jb_s)
    k = (jb_e - jb_s) % B.m
    return Tangents(L, L2, B.vertices[jb_e], B.vertices[jb_s], jb_e, jb_s, k)


def _degenerate_visible(V: List[Point], origin: Point) -> Optional[Tuple[int, int]]:
    # A - B is a segment traversed twice; pick the run facing the origin
    m = len(V)
    vis = [orient2d(V[i], V[(i + 1) % m], origin) < 0 for i in range(m)]
    if not any(vis) or all(vis):
        return None
    start = next(i for i in range(m) if vis[i] and not vis[i - 1])
    end = next(i for i in range(m) if vis[i - 1] and not vis[i])
    return start, end


def internal_tangents(A: ConvexPolygon, B: ConvexPolygon):
    """The two separating tangents of a disjoint pair, touching ``B`` at ``q`` and ``q2``.

    Walking clockwise on ``B`` from ``q`` to ``q2`` traverses the side facing ``A``.
    """
    t = internal_tangents_of(PolygonAngles(A), B)
    return t.L, t.L2, t.q, t.q2


def separating_line(A: ConvexPolygon, B: ConvexPolygon) -> Optional[DirectedLine]:
    """Some line with ``A`` on its left and ``B`` on its right, or ``None`` on overlap."""
    PA = PolygonAngles(A)
    where, D = classify_pair(PA, B)
    if where is Location.INSIDE:
        return None
    if where is Location.BOUNDARY:
        return _touching_line(A, B, D)
    return internal_tangents_of(PA, B, D).L


def _touching_line(A: ConvexPolygon, B: ConvexPolygon, D: MinkowskiDifference) -> Optional[DirectedLine]:
    """Supporting line through the contact of two touching polygons."""
    V = D.materialize()
    m = len(V)
    _, f = _closest_linear(lambda i: V[i % m], m, (0.0, 0.0))
    if f.kind == "edge":
        a, b = V[f.index % m], V[(f.index + 1) % m]
        cand = [(b[0] - a[0], b[1] - a[1])]
    else:
        i = f.index
        p, a, b = V[i % m], V[(i - 1) % m], V[(i + 1) % m]
        cand = [(p[0] - a[0], p[1] - a[1]), (b[0] - p[0], b[1] - p[1])]
        cand.append((cand[0][0] + cand[1][0], cand[0][1] + cand[1][1]))
    tol = EPS_GEOM * max(A.scale, B.scale, 1e-300)
    for dx, dy in cand:
        n = math.hypot(dx, dy)
        if n == 0:
            continue
        ux, uy = dx / n, dy / n
        for sgn in (1.0, -1.0):
            u = (sgn * ux, sgn * uy)
            # offset of the line: max over A of the right-side distance
            off = max(_cross(u[0], u[1], -a[0], -a[1]) for a in A.vertices)
            anchor = (u[1] * off, -u[0] * off)
            line = DirectedLine(anchor, u)
            if all(_cross(u[0], u[1], b[0] - anchor[0], b[1] - anchor[1]) <= tol for b in B.vertices):
                return line
    return None


def chain_between(Q: ConvexPolygon, q: Point, q2: Point) -> List[Point]:
    """Clockwise boundary walk of ``Q`` from ``q`` to ``q2``.

    Points interior to an edge become chain endpoints.
    """
    tol = Q.tol(max(abs(q[0]), abs(q[1]), abs(q2[0]), abs(q2[1])))
    m = Q.m

    def arc(p):
        # ccw arc coordinate: vertex index plus fraction along the next edge
        for i in range(m):
            if dist(p, Q.vertex(i)) <= tol:
                return float(i)
        for i in range(m):
            a, b = Q.edge(i)
            if dist_point_segment(p, Segment(a, b)) <= tol:
                return i + dist(a, p) / dist(a, b)
        raise PointNotOnBoundary(f"{p} is not on the polygon boundary")

    s, s2 = arc(q), arc(q2)
    if dist(q, q2) <= tol:
        return [q]
    span = (s - s2) % m
    out = [q]
    k = math.floor(s) if s != math.floor(s) else int(s) - 1
    while 0 < (s - k) % m < span:
        out.append(Q.vertex(k))
        k -= 1
    out.append(q2)
    return out
