"""Farthest-point Voronoi diagram of a planar point set, rooted at the centre
of the minimum enclosing circle.

The diagram is stored as a tree.  Unbounded edges are *ray leaves*: nodes
with no position whose edge to their parent runs off to infinity.  Every
non-root node ``v`` owns the edge to its parent, which lies on the bisector of
the site pair ``edge_sites[v]`` and is parametrized as

    centre(t) = edge_mid[v] + t * edge_dir[v],    radius(t) = sqrt(edge_h[v]**2 + t**2)

for ``t`` in ``[edge_tlo[v], edge_thi[v]]`` (``edge_thi`` is ``inf`` on rays).
``edge_dir`` points away from the root, so the radius grows with ``t``.
"""
from __future__ import annotations

import heapq
import math
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .convex import ConvexPolygon, PolygonAngles
from .errors import NoIntersection, TooFewPoints
from .geom import EPS_GEOM, Circle, DirectedLine, Point, circumcenter, dist, orient2d
from .hull import convex_hull

NODE = "node"
EDGE_POINT = "edge_point"
RAY_POINT = "ray_point"


class DiagramLocation(NamedTuple):
    kind: str
    ref: int  # node id for NODE; otherwise the child node owning the edge
    position: Point
    sites: Tuple[int, int]
    t: float  # edge parameter (for NODE: parameter on the node's own edge, if any)


class FpvdTree:
    def __init__(self):
        self.sites: List[Point] = []
        self.site_index: List[int] = []
        self.pos: List[Optional[Point]] = []
        self.finite: List[bool] = []
        self.parent: List[int] = []
        self.children: List[List[int]] = []
        self.depth: List[int] = []
        self.defining: List[Tuple[int, ...]] = []
        self.edge_sites: List[Tuple[int, int]] = []
        self.edge_mid: List[Point] = []
        self.edge_dir: List[Tuple[float, float]] = []
        self.edge_h: List[float] = []
        self.edge_tlo: List[float] = []
        self.edge_thi: List[float] = []
        self.ray_hull_edge: Dict[int, int] = {}
        self.region_boundary: List[List[int]] = []
        self.root = 0
        self.root_split = False
        self.scale = 0.0
        self.n_input = 0
        self._hull: Optional[ConvexPolygon] = None
        self._angles: Optional[PolygonAngles] = None

    # -- derived views -------------------------------------------------
    @property
    def node_count(self) -> int:
        return len(self.parent)

    @property
    def h(self) -> int:
        return len(self.sites)

    @property
    def rays(self) -> List[Tuple[int, Tuple[float, float], Tuple[int, int]]]:
        """``(origin node, direction, site pair)`` for every unbounded edge."""
        return [(self.parent[v], self.edge_dir[v], self.edge_sites[v])
                for v in range(self.node_count) if not self.finite[v]]

    @property
    def hull(self) -> ConvexPolygon:
        if self._hull is None:
            self._hull = ConvexPolygon(self.sites)
        return self._hull

    @property
    def hull_angles(self) -> PolygonAngles:
        if self._angles is None:
            self._angles = PolygonAngles(self.hull)
        return self._angles

    @property
    def tol(self) -> float:
        return EPS_GEOM * max(self.scale, 1e-300)

    def node_rho(self, v: int) -> float:
        return dist(self.pos[v], self.sites[self.defining[v][0]])

    @property
    def root_circle(self) -> Circle:
        return Circle(self.pos[self.root], self.node_rho(self.root))

    def edge_point(self, v: int, t: float) -> Point:
        m, u = self.edge_mid[v], self.edge_dir[v]
        return (m[0] + t * u[0], m[1] + t * u[1])

    def edge_rho(self, v: int, t: float) -> float:
        h = self.edge_h[v]
        return math.sqrt(h * h + t * t)


def _circumradius(a: Point, b: Point, c: Point) -> float:
    ab, bc, ca = dist(a, b), dist(b, c), dist(c, a)
    area2 = abs(orient2d(a, b, c))
    if area2 == 0.0:
        return math.inf
    return ab * bc * ca / (2.0 * area2)


def _fpd_triangles(sites: List[Point]) -> List[Tuple[int, int, int]]:
    """Farthest-point Delaunay triangles of a strictly convex CCW polygon.

    Repeatedly clips the vertex whose triangle with its two neighbours has the
    largest circumcircle; that circle encloses the whole remaining polygon.
    """
    h = len(sites)
    nxt = [(i + 1) % h for i in range(h)]
    prv = [(i - 1) % h for i in range(h)]
    alive = [True] * h
    stamp = [0] * h
    heap = []

    def push(i):
        stamp[i] += 1
        r = _circumradius(sites[prv[i]], sites[i], sites[nxt[i]])
        heapq.heappush(heap, (-r, i, stamp[i]))

    for i in range(h):
        push(i)
    tris = []
    remaining = h
    while remaining > 3:
        _, i, st = heapq.heappop(heap)
        if not alive[i] or st != stamp[i]:
            continue
        a, b = prv[i], nxt[i]
        tris.append((a, i, b))
        alive[i] = False
        nxt[a], prv[b] = b, a
        remaining -= 1
        push(a)
        push(b)
    i = next(k for k in range(h) if alive[k])
    tris.append((prv[i], i, nxt[i]))
    return tris


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def build(P: Sequence[Point]) -> FpvdTree:
    """Farthest-point Voronoi tree of ``P``, rooted at the minimum enclosing circle centre."""
    pts = [(float(x), float(y)) for x, y in P]
    for x, y in pts:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"non-finite point {(x, y)}")
    sites, idx = convex_hull(pts)
    if len(sites) < 2:
        raise TooFewPoints("need at least two distinct points")
    T = FpvdTree()
    T.sites, T.site_index = sites, idx
    T.n_input = len(set(pts))
    T.scale = max(max(abs(x), abs(y)) for x, y in sites)
    h = len(sites)
    tol = T.tol

    # graph nodes: positions and defining sites; edges: (g1, g2 or None for rays, site pair, hull edge)
    gpos: List[Point] = []
    gdef: List[Tuple[int, ...]] = []
    gedges: List[Tuple[int, Optional[int], Tuple[int, int], Optional[int]]] = []

    if h == 2:
        mid = ((sites[0][0] + sites[1][0]) * 0.5, (sites[0][1] + sites[1][1]) * 0.5)
        gpos.append(mid)
        gdef.append((0, 1))
        gedges.append((0, None, (0, 1), 0))
        gedges.append((0, None, (0, 1), 1))
    else:
        tris = _fpd_triangles(sites)
        centers = [circumcenter(*(sites[k] for k in t)) for t in tris]
        owner: Dict[Tuple[int, int], List[int]] = {}
        for ti, (a, b, c) in enumerate(tris):
            for e in ((a, b), (b, c), (a, c)):
                owner.setdefault((min(e), max(e)), []).append(ti)
        uf = _UF(len(tris))
        for e, ts in owner.items():
            if len(ts) == 2:
                r = _circumradius(*(sites[k] for k in tris[ts[0]]))
                if dist(centers[ts[0]], centers[ts[1]]) <= EPS_GEOM * max(r, T.scale):
                    uf.union(ts[0], ts[1])
        group: Dict[int, int] = {}
        members: Dict[int, set] = {}
        for ti in range(len(tris)):
            g = uf.find(ti)
            if g not in group:
                group[g] = len(gpos)
                gpos.append(centers[g])
                members[group[g]] = set()
            members[group[g]].update(tris[ti])
        for gi in range(len(gpos)):
            gdef.append(tuple(sorted(members[gi])))
        for (a, b), ts in owner.items():
            if len(ts) == 2:
                g1, g2 = group[uf.find(ts[0])], group[uf.find(ts[1])]
                if g1 != g2:
                    gedges.append((g1, g2, (a, b), None))
            else:
                hull_edge = a if (a + 1) % h == b else b
                gedges.append((group[uf.find(ts[0])], None, (a, b), hull_edge))

    def ray_dir(hull_edge):
        a, b = sites[hull_edge], sites[(hull_edge + 1) % h]
        dx, dy = b[0] - a[0], b[1] - a[1]
        n = math.hypot(dx, dy)
        return (-dy / n, dx / n)

    # locate the root: lowest radius among nodes and edge-interior midpoints
    best = (min(dist(gpos[g], sites[gdef[g][0]]) for g in range(len(gpos))), None)
    best_node = min(range(len(gpos)), key=lambda g: dist(gpos[g], sites[gdef[g][0]]))
    for ei, (g1, g2, (a, b), he) in enumerate(gedges):
        if h == 2:
            break
        m = ((sites[a][0] + sites[b][0]) * 0.5, (sites[a][1] + sites[b][1]) * 0.5)
        p1 = gpos[g1]
        if g2 is None:
            d = ray_dir(he)
            s = (m[0] - p1[0]) * d[0] + (m[1] - p1[1]) * d[1]
            inside = s > tol
        else:
            p2 = gpos[g2]
            L = dist(p1, p2)
            s = ((m[0] - p1[0]) * (p2[0] - p1[0]) + (m[1] - p1[1]) * (p2[1] - p1[1])) / L
            inside = tol < s < L - tol
        if inside:
            r = dist(m, sites[a])
            if r < best[0]:
                best = (r, ei)
    if best[1] is None:
        root_g = 0 if h == 2 else best_node
    else:
        g1, g2, (a, b), he = gedges[best[1]]
        m = ((sites[a][0] + sites[b][0]) * 0.5, (sites[a][1] + sites[b][1]) * 0.5)
        root_g = len(gpos)
        gpos.append(m)
        gdef.append((a, b) if a < b else (b, a))
        gedges[best[1]] = (g1, root_g, (a, b), None)
        gedges.append((root_g, g2, (a, b), he))
        T.root_split = True
    if h == 2:
        T.root_split = True

    # adjacency and BFS from the root
    adj: List[List[Tuple[Optional[int], Tuple[int, int], Optional[int]]]] = [[] for _ in gpos]
    for g1, g2, pair, he in gedges:
        if g2 is None:
            adj[g1].append((None, pair, he))
        else:
            adj[g1].append((g2, pair, None))
            adj[g2].append((g1, pair, None))

    node_of_g = {root_g: 0}
    T.pos.append(gpos[root_g])
    T.finite.append(True)
    T.parent.append(-1)
    T.children.append([])
    T.depth.append(0)
    T.defining.append(gdef[root_g])
    for lst in (T.edge_sites, T.edge_mid, T.edge_dir):
        lst.append(None)
    T.edge_h.append(0.0)
    T.edge_tlo.append(0.0)
    T.edge_thi.append(0.0)
    queue = [root_g]
    qi = 0
    while qi < len(queue):
        g = queue[qi]
        qi += 1
        u = node_of_g[g]
        for nb, (a, b), he in adj[g]:
            if nb is not None and nb in node_of_g:
                continue
            v = len(T.parent)
            T.parent.append(u)
            T.children.append([])
            T.children[u].append(v)
            T.depth.append(T.depth[u] + 1)
            T.edge_sites.append((a, b))
            sa, sb = sites[a], sites[b]
            m = ((sa[0] + sb[0]) * 0.5, (sa[1] + sb[1]) * 0.5)
            T.edge_mid.append(m)
            T.edge_h.append(dist(sa, sb) * 0.5)
            pu = T.pos[u]
            if nb is None:
                d = ray_dir(he)
                T.pos.append(None)
                T.finite.append(False)
                T.defining.append((a, b))
                T.ray_hull_edge[v] = he
                T.edge_dir.append(d)
                T.edge_tlo.append((pu[0] - m[0]) * d[0] + (pu[1] - m[1]) * d[1])
                T.edge_thi.append(math.inf)
            else:
                pv = gpos[nb]
                dx, dy = sb[0] - sa[0], sb[1] - sa[1]
                n = math.hypot(dx, dy)
                d = (dy / n, -dx / n)
                if d[0] * (pv[0] - pu[0]) + d[1] * (pv[1] - pu[1]) < 0:
                    d = (-d[0], -d[1])
                T.pos.append(pv)
                T.finite.append(True)
                T.defining.append(gdef[nb])
                T.edge_dir.append(d)
                T.edge_tlo.append((pu[0] - m[0]) * d[0] + (pu[1] - m[1]) * d[1])
                T.edge_thi.append((pv[0] - m[0]) * d[0] + (pv[1] - m[1]) * d[1])
                node_of_g[nb] = v
                queue.append(nb)
    T.root = 0
    _build_regions(T)
    return T


def _build_regions(T: FpvdTree) -> None:
    """Order the edges bounding each farthest-point region from ray to ray."""
    h = T.h
    incident: List[Dict[int, List[int]]] = [dict() for _ in range(h)]
    start_ray = [None] * h
    for v in range(1, T.node_count):
        a, b = T.edge_sites[v]
        ends = [T.parent[v]] + ([v] if T.finite[v] else [])
        for s in (a, b):
            for e in ends:
                incident[s].setdefault(e, []).append(v)
        if not T.finite[v]:
            he = T.ray_hull_edge[v]
            # the ray of hull edge (i-1, i) opens the boundary of site i
            start_ray[(he + 1) % h] = v
    T.region_boundary = []
    for s in range(h):
        seq = [start_ray[s]]
        cur = T.parent[start_ray[s]]
        prev_edge = start_ray[s]
        while True:
            nxt = [e for e in incident[s].get(cur, []) if e != prev_edge]
            if not nxt:
                break
            e = nxt[0]
            seq.append(e)
            if not T.finite[e]:
                break
            other = e if T.parent[e] == cur else T.parent[e]
            prev_edge, cur = e, other
        T.region_boundary.append(seq)


# ------------------------------------------------------------------ queries

def rho(T: FpvdTree, loc: DiagramLocation) -> float:
    return dist(loc.position, T.sites[loc.sites[0]])


def min_pcircle_at(T: FpvdTree, y: Point) -> Circle:
    """Smallest circle centred at ``y`` that encloses every site (linear scan)."""
    return Circle(y, max(dist(y, s) for s in T.sites))


def farthest_site(T: FpvdTree, y: Point) -> int:
    return max(range(T.h), key=lambda i: dist(y, T.sites[i]))


def node_location(T: FpvdTree, v: int) -> DiagramLocation:
    d = T.defining[v]
    t = T.edge_thi[v] if v != T.root else 0.0
    return DiagramLocation(NODE, v, T.pos[v], (d[0], d[1]), t)


def edge_location(T: FpvdTree, v: int, t: float) -> DiagramLocation:
    tol = T.tol
    if T.finite[v] and abs(t - T.edge_thi[v]) <= tol:
        return node_location(T, v)
    if abs(t - T.edge_tlo[v]) <= tol:
        return node_location(T, T.parent[v])
    kind = EDGE_POINT if T.finite[v] else RAY_POINT
    return DiagramLocation(kind, v, T.edge_point(v, t), T.edge_sites[v], t)


def ray_exit_of_region(T: FpvdTree, site: int, ray: DirectedLine) -> DiagramLocation:
    """Where ``ray`` first reaches the boundary of the region of ``site``.

    Assumes the supporting line meets that boundary once, which holds for rays
    leaving a site in a direction along which it becomes the farthest one.
    """
    seq = T.region_boundary[site]
    (px, py), (rx, ry) = ray
    tol = T.tol

    def side_node(v):
        q = T.pos[v]
        s = rx * (q[1] - py) - ry * (q[0] - px)
        return 0 if abs(s) <= tol * max(1.0, math.hypot(q[0] - px, q[1] - py)) else (1 if s > 0 else -1)

    def side_dir(d):
        s = rx * d[1] - ry * d[0]
        return 0 if abs(s) <= 1e-15 else (1 if s > 0 else -1)

    first, last = seq[0], seq[-1]
    # chain: [inf along first ray] + finite vertices + [inf along last ray]
    verts = [T.parent[first]]
    for e in seq[1:-1]:
        a = T.parent[e]
        verts.append(e if a == verts[-1] else a)
    s0 = side_dir(T.edge_dir[first])
    s_end = side_dir(T.edge_dir[last])
    if s0 == 0 or s_end == 0 or s0 == s_end:
        # degenerate or no crossing; try every vertex directly
        for v in verts:
            if side_node(v) == 0:
                return _check_ahead(T, node_location(T, v), ray)
        if s0 == s_end:
            raise NoIntersection("ray does not cross the region boundary")

    # first vertex whose side differs from s0
    lo, hi = 0, len(verts)
    while lo < hi:
        mid = (lo + hi) // 2
        if side_node(verts[mid]) == s0:
            lo = mid + 1
        else:
            hi = mid
    if lo < len(verts) and side_node(verts[lo]) == 0:
        return _check_ahead(T, node_location(T, verts[lo]), ray)
    e = seq[lo]
    m, u = T.edge_mid[e], T.edge_dir[e]
    den = rx * u[1] - ry * u[0]
    if den == 0.0:
        raise NoIntersection("ray parallel to boundary edge")
    t = (ry * (m[0] - px) - rx * (m[1] - py)) / den
    t = max(T.edge_tlo[e], min(T.edge_thi[e], t))
    return _check_ahead(T, edge_location(T, e, t), ray)


def _check_ahead(T: FpvdTree, loc: DiagramLocation, ray: DirectedLine) -> DiagramLocation:
    (px, py), (rx, ry) = ray
    lam = (loc.position[0] - px) * rx + (loc.position[1] - py) * ry
    if lam < -T.tol:
        raise NoIntersection("region boundary lies behind the ray")
    return loc


# --------------------------------------------------------------- auditing

def validate(T: FpvdTree, tol_rel: float = 1e-9) -> List[str]:
    """Invariant violations of ``T`` (empty when the tree is sound)."""
    out: List[str] = []
    N = T.node_count
    sc = max(T.scale, 1e-300)
    if T.parent[T.root] != -1:
        out.append("root has a parent")
    seen = 0
    for v in range(N):
        p = T.parent[v]
        if v != T.root:
            if p < 0 or p >= N:
                out.append(f"node {v}: bad parent {p}")
                continue
            if T.depth[v] != T.depth[p] + 1:
                out.append(f"node {v}: depth mismatch")
            if v not in T.children[p]:
                out.append(f"node {v}: missing from parent's children")
        seen += 1
        if T.finite[v]:
            q = T.pos[v]
            r = T.node_rho(v)
            tol = tol_rel * max(r, sc)
            for s in T.defining[v]:
                if abs(dist(q, T.sites[s]) - r) > tol:
                    out.append(f"node {v}: not equidistant from site {s}")
            far = max(dist(q, s) for s in T.sites)
            if far > r + tol:
                out.append(f"node {v}: a site is farther than its defining sites")
        elif T.children[v]:
            out.append(f"ray leaf {v} has children")
    # edges on bisectors and radius monotone away from the root
    for v in range(N):
        if v == T.root:
            continue
        a, b = T.edge_sites[v]
        sa, sb = T.sites[a], T.sites[b]
        pu = T.pos[T.parent[v]]
        for q in ([pu, T.pos[v]] if T.finite[v] else [pu]):
            if abs(dist(q, sa) - dist(q, sb)) > tol_rel * max(dist(q, sa), sc) * 10:
                out.append(f"edge {v}: endpoint off the bisector of {a},{b}")
        if T.edge_tlo[v] < -tol_rel * sc * 10:
            out.append(f"edge {v}: parameter range reaches past the site midpoint")
        if T.finite[v] and T.edge_thi[v] < T.edge_tlo[v] - tol_rel * sc:
            out.append(f"edge {v}: radius decreases away from the root")
        if T.finite[v] and T.node_rho(v) < T.node_rho(T.parent[v]) - tol_rel * sc:
            out.append(f"edge {v}: rho(parent) > rho(child)")
    # a single tree: N - 1 edges and everything reachable
    reach = [False] * N
    stack = [T.root]
    while stack:
        u = stack.pop()
        if reach[u]:
            out.append("cycle detected")
            break
        reach[u] = True
        stack.extend(T.children[u])
    if not all(reach):
        out.append("tree is disconnected")
    if sum(1 for v in range(N) if not T.finite[v]) != T.h:
        out.append("ray count differs from hull size")
    for s, seq in enumerate(T.region_boundary):
        if not seq or T.finite[seq[0]] or T.finite[seq[-1]]:
            out.append(f"region {s}: boundary does not run ray to ray")
        for e in seq:
            if s not in T.edge_sites[e]:
                out.append(f"region {s}: foreign edge {e}")
    return out


# ---------------------------------------------------------- serialization

def to_dict(T: FpvdTree) -> dict:
    return {
        "sites": [list(s) for s in T.sites],
        "site_index": list(T.site_index),
        "n_input": T.n_input,
        "root": T.root,
        "root_split": T.root_split,
        "nodes": [
            {
                "position": list(T.pos[v]) if T.finite[v] else None,
                "parent": T.parent[v],
                "defining_sites": list(T.defining[v]),
                "depth": T.depth[v],
                "edge_sites": list(T.edge_sites[v]) if v != T.root else None,
                "edge_dir": list(T.edge_dir[v]) if v != T.root else None,
                "hull_edge": T.ray_hull_edge.get(v),
            }
            for v in range(T.node_count)
        ],
    }


def from_dict(d: dict) -> FpvdTree:
    T = FpvdTree()
    T.sites = [tuple(map(float, s)) for s in d["sites"]]
    T.site_index = list(d["site_index"])
    T.n_input = int(d.get("n_input", len(T.sites)))
    T.root = int(d["root"])
    T.root_split = bool(d["root_split"])
    T.scale = max(max(abs(x), abs(y)) for x, y in T.sites)
    nodes = d["nodes"]
    T.children = [[] for _ in nodes]
    for v, nd in enumerate(nodes):
        fin = nd["position"] is not None
        T.pos.append(tuple(map(float, nd["position"])) if fin else None)
        T.finite.append(fin)
        T.parent.append(int(nd["parent"]))
        if nd["parent"] >= 0:
            T.children[nd["parent"]].append(v)
        T.depth.append(int(nd["depth"]))
        T.defining.append(tuple(nd["defining_sites"]))
        if nd["hull_edge"] is not None:
            T.ray_hull_edge[v] = int(nd["hull_edge"])
        if v == T.root:
            T.edge_sites.append(None)
            T.edge_mid.append(None)
            T.edge_dir.append(None)
            T.edge_h.append(0.0)
            T.edge_tlo.append(0.0)
            T.edge_thi.append(0.0)
            continue
        a, b = nd["edge_sites"]
        sa, sb = T.sites[a], T.sites[b]
        m = ((sa[0] + sb[0]) * 0.5, (sa[1] + sb[1]) * 0.5)
        dvec = tuple(map(float, nd["edge_dir"]))
        T.edge_sites.append((a, b))
        T.edge_mid.append(m)
        T.edge_dir.append(dvec)
        T.edge_h.append(dist(sa, sb) * 0.5)
        T.edge_tlo.append(0.0)
        T.edge_thi.append(0.0)
    # parameters derive from positions, exactly as in build
    for v in range(len(nodes)):
        if v == T.root:
            continue
        m, d = T.edge_mid[v], T.edge_dir[v]
        pu = T.pos[T.parent[v]]
        T.edge_tlo[v] = (pu[0] - m[0]) * d[0] + (pu[1] - m[1]) * d[1]
        if T.finite[v]:
            pv = T.pos[v]
            T.edge_thi[v] = (pv[0] - m[0]) * d[0] + (pv[1] - m[1]) * d[1]
        else:
            T.edge_thi[v] = math.inf
    _build_regions(T)
    return T

