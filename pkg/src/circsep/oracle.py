"""Brute-force references used to cross-check the fast code paths.

Nothing here touches the diagram tree or the path search; only the shared
tangency formulas from :mod:`geom` and the hull routine are reused.
"""
from __future__ import annotations

import itertools
import math
from typing import List, NamedTuple, Sequence, Tuple, Union

import numpy as np

from .convex import ConvexPolygon
from .engine import QueryResult, Status
from .errors import DegenerateTriangle
from .hull import convex_hull
from .geom import DISC_CLAMP, EPS_GEOM, Circle, Point, dist


class CandidateCircle(NamedTuple):
    circle: Circle
    witness: Tuple[Tuple[int, ...], object]


class BruteNode(NamedTuple):
    position: Point
    defining_sites: Tuple[Point, ...]


def _distinct(P: Sequence[Point]) -> np.ndarray:
    seen = []
    s = set()
    for x, y in P:
        p = (float(x), float(y))
        if p not in s:
            s.add(p)
            seen.append(p)
    return np.array(seen, dtype=float).reshape(-1, 2)


def brute_fpvd(P: Sequence[Point], tol: float = 1e-9) -> List[BruteNode]:
    """Farthest-point Voronoi vertices: circumcentres of triples with no point outside."""
    X = _distinct(P)
    n = len(X)
    scale = max(float(np.abs(X).max()), 1e-300)
    tri = np.array(list(itertools.combinations(range(n), 3)), dtype=int).reshape(-1, 3)
    a, b, c = X[tri[:, 0]], X[tri[:, 1]], X[tri[:, 2]]
    bx, by = b[:, 0] - a[:, 0], b[:, 1] - a[:, 1]
    cx_, cy_ = c[:, 0] - a[:, 0], c[:, 1] - a[:, 1]
    d = 2.0 * (bx * cy_ - by * cx_)
    ok = np.abs(d) > 1e-14 * scale * scale
    if not ok.any():
        raise DegenerateTriangle("all points are collinear")
    tri, a, bx, by, cx_, cy_, d = tri[ok], a[ok], bx[ok], by[ok], cx_[ok], cy_[ok], d[ok]
    b2, c2 = bx * bx + by * by, cx_ * cx_ + cy_ * cy_
    ux = (cy_ * b2 - by * c2) / d + a[:, 0]
    uy = (bx * c2 - cx_ * b2) / d + a[:, 1]
    r = np.hypot(ux - a[:, 0], uy - a[:, 1])
    far = np.hypot(ux[:, None] - X[None, :, 0], uy[:, None] - X[None, :, 1]).max(axis=1)
    keep = far <= r + tol * np.maximum(r, scale)
    nodes: List[Tuple[Point, set]] = []
    for i in np.nonzero(keep)[0]:
        p = (float(ux[i]), float(uy[i]))
        for q, sites in nodes:
            if math.hypot(p[0] - q[0], p[1] - q[1]) <= 1e-7 * max(r[i], scale):
                sites.update(int(k) for k in tri[i])
                break
        else:
            nodes.append((p, set(int(k) for k in tri[i])))
    return [BruteNode(p, tuple(tuple(X[k]) for k in sorted(s))) for p, s in nodes]


def brute_mec(P: Sequence[Point]) -> Circle:
    """Smallest enclosing circle by exhaustive search over point pairs.

    The optimum passes through at least two points, so its centre is the
    point nearest the pair midpoint inside some pair's enclosing interval.
    """
    X = _distinct(P)
    n = len(X)
    if n == 0:
        raise ValueError("empty point set")
    if n == 1:
        return Circle((float(X[0, 0]), float(X[0, 1])), 0.0)
    I, J, M, U, H, tmin, tmax = _pair_intervals(X)
    t = np.clip(0.0, tmin, tmax)
    ok = tmin <= tmax
    rad = np.where(ok, np.hypot(H, t), np.inf)
    k = int(np.argmin(rad))
    c = (float(M[k, 0] + t[k] * U[k, 0]), float(M[k, 1] + t[k] * U[k, 1]))
    return Circle(c, float(rad[k]))


def _pair_intervals(X: np.ndarray):
    n = len(X)
    I, J = np.triu_indices(n, 1)
    # centre the cloud so the expanded squares below keep their precision
    o = X.mean(axis=0)
    Y = X - o
    A, B = Y[I], Y[J]
    M = (A + B) * 0.5
    D = B - A
    ln = np.hypot(D[:, 0], D[:, 1])
    U = np.empty_like(D)
    U[:, 0] = D[:, 1] / ln
    U[:, 1] = -D[:, 0] / ln
    H = ln * 0.5
    # w = M - q:  w.u = M.u - q.u ;  |w|^2 = |M|^2 - 2 M.q + |q|^2
    mu = (M * U).sum(axis=1)
    coef = 2.0 * (mu[:, None] - U @ Y.T)
    rhs = (H * H - (M * M).sum(axis=1))[:, None] + 2.0 * (M @ Y.T) - (Y * Y).sum(axis=1)[None, :]
    scale = max(float(np.abs(Y).max()), 1e-300)
    # the pair itself gives coef ~ 0 with rhs ~ 0
    slack = 1e-9 * scale * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        bound = rhs / coef
    pos = coef > 1e-12 * scale
    neg = coef < -1e-12 * scale
    tmax = np.where(pos, bound, np.inf).min(axis=1)
    tmin = np.where(neg, bound, -np.inf).max(axis=1)
    flat_bad = (~pos & ~neg & (rhs < -slack)).any(axis=1)
    width_tol = 1e-9 * np.maximum(scale, np.minimum(np.abs(tmax), 1e300))
    empty = (tmin > tmax + width_tol) | flat_bad
    tmin = np.where(empty, np.inf, np.minimum(tmin, tmax))
    tmax = np.where(empty, -np.inf, tmax)
    return I, J, M + o, U, H, tmin, tmax


def enclosing_intervals(X: np.ndarray):
    """For every pair, the bisector parameters whose circle through the pair encloses ``X``.

    Yields ``(i, j, mid, dir, h, tmin, tmax)`` for the pairs with a non-empty
    interval.  The centre is ``mid + t * dir``; every other point ``q`` adds
    the linear constraint ``2 t (w . dir) <= h^2 - |w|^2`` with ``w = mid - q``.
    """
    if len(X) < 2:
        return
    I, J, M, U, H, tmin, tmax = _pair_intervals(X)
    for k in np.nonzero(tmin <= tmax)[0]:
        yield (int(I[k]), int(J[k]), (float(M[k, 0]), float(M[k, 1])),
               (float(U[k, 0]), float(U[k, 1])), float(H[k]), float(tmin[k]), float(tmax[k]))


def _np_quadratic(a, b, c, scale2):
    """Both roots of ``a t^2 + 2 b t + c`` elementwise (NaN where there are none).

    Mirrors :func:`geom._quadratic_roots`, including the clamp of slightly
    negative discriminants."""
    disc = b * b - a * c
    clamp = DISC_CLAMP * scale2 * np.maximum(1.0, b * b / max(scale2, 1e-300))
    disc = np.where((disc < 0) & (disc >= -clamp), 0.0, disc)
    with np.errstate(invalid="ignore", divide="ignore"):
        sq = np.sqrt(disc)
        q = -(b + np.copysign(sq, b))
        r1 = np.where(q != 0.0, q / a, -b / a)
        r2 = np.where(q != 0.0, c / q, np.nan)
        lin = np.abs(a) <= 1e-15
        l1 = np.where(b != 0.0, -c / (2.0 * b), np.nan)
    r1 = np.where(lin, l1, r1)
    r2 = np.where(lin, np.nan, r2)
    return r1, r2


def _clearance(Q, cx_, cy_, r) -> np.ndarray:
    """Distance from ``Q`` to each open disk, by exhaustive feature scan."""
    if isinstance(Q, Circle):
        return np.hypot(cx_ - Q.center[0], cy_ - Q.center[1]) - Q.radius - r
    if not isinstance(Q, ConvexPolygon):
        return np.hypot(cx_ - Q[0], cy_ - Q[1]) - r
    V = np.asarray(Q.vertices, dtype=float)
    m = len(V)
    if m == 1:
        return np.hypot(cx_ - V[0, 0], cy_ - V[0, 1]) - r
    A = V if m > 2 else V[:1]
    B = np.roll(V, -1, axis=0) if m > 2 else V[1:]
    dx, dy = (B - A)[:, 0], (B - A)[:, 1]
    px, py = cx_[:, None] - A[None, :, 0], cy_[:, None] - A[None, :, 1]
    l2 = dx * dx + dy * dy
    s = np.clip((px * dx + py * dy) / l2, 0.0, 1.0)
    d = np.hypot(px - s * dx, py - s * dy).min(axis=1)
    if m > 2:
        inside = (dx * py - dy * px >= 0).all(axis=1)
        d = np.where(inside, 0.0, d)
    return d - r


def candidate_circles(P: Sequence[Point], Q) -> List[CandidateCircle]:
    """Every circle enclosing ``P`` whose open disk misses ``Q`` and which touches ``Q``
    while passing through two points of ``P``; plus the minimum enclosing circle if it separates."""
    X = _distinct(P)
    ids = np.arange(len(X))
    if len(X) > 3:
        # only hull vertices can lie on an enclosing circle through two points
        hv, hi = convex_hull([tuple(p) for p in X.tolist()])
        X, ids = np.array(hv, dtype=float).reshape(-1, 2), np.array(hi, dtype=int)
    if isinstance(Q, Circle):
        qscale = max(abs(Q.center[0]), abs(Q.center[1]), Q.radius)
    elif isinstance(Q, ConvexPolygon):
        qscale = Q.scale
    else:
        qscale = max(abs(Q[0]), abs(Q[1]))
    scale = max(float(np.abs(X).max()), qscale, 1e-300)
    s2 = scale * scale
    out: List[CandidateCircle] = []
    if len(X) == 1:
        mec = Circle((float(X[0, 0]), float(X[0, 1])), 0.0)
        if _clearance(Q, np.array([mec.center[0]]), np.array([mec.center[1]]), 0.0)[0] >= 0:
            out.append(CandidateCircle(mec, ((), None)))
        return out
    I, J, M, U, H, tmin, tmax = _pair_intervals(X)
    good = np.nonzero(tmin <= tmax)[0]
    I, J, M, U, H, tmin, tmax = I[good], J[good], M[good], U[good], H[good], tmin[good], tmax[good]
    # minimum enclosing circle: smallest |t| in some interval
    t0 = np.clip(0.0, tmin, tmax)
    k = int(np.argmin(np.hypot(H, t0)))
    mec = Circle((float(M[k, 0] + t0[k] * U[k, 0]), float(M[k, 1] + t0[k] * U[k, 1])),
                 float(math.hypot(H[k], t0[k])))
    if _clearance(Q, np.array([mec.center[0]]), np.array([mec.center[1]]), mec.radius)[0] \
            >= -EPS_GEOM * max(mec.radius, scale):
        out.append(CandidateCircle(mec, ((), None)))

    mx, my, ux, uy = M[:, 0], M[:, 1], U[:, 0], U[:, 1]
    roots, feats = [], []
    if isinstance(Q, Circle):
        wx, wy = mx - Q.center[0], my - Q.center[1]
        fr = Q.radius
        alpha = wx * wx + wy * wy - H * H - fr * fr
        beta = 2.0 * (wx * ux + wy * uy)
        for t in _np_quadratic(beta * beta - 4 * fr * fr, alpha * beta,
                               alpha * alpha - 4 * fr * fr * H * H, s2 * s2):
            t = np.where(alpha + beta * t >= -EPS_GEOM * s2, t, np.nan)
            roots.append(t[:, None])
            feats.append(Q)
    else:
        pts = list(Q.vertices) if isinstance(Q, ConvexPolygon) else [(float(Q[0]), float(Q[1]))]
        F = np.asarray(pts, dtype=float)
        wx, wy = mx[:, None] - F[None, :, 0], my[:, None] - F[None, :, 1]
        wu = wx * ux[:, None] + wy * uy[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            roots.append(np.where(wu != 0.0, ((H * H)[:, None] - wx * wx - wy * wy) / (2.0 * wu), np.nan))
        feats.extend(pts)
        if isinstance(Q, ConvexPolygon) and Q.m >= 2:
            edges = [Q.edge(e) for e in range(Q.m if Q.m > 2 else 1)]
            E = np.asarray(edges, dtype=float)  # edges x 2 x 2
            ax, ay = E[:, 0, 0], E[:, 0, 1]
            ln = np.hypot(E[:, 1, 0] - ax, E[:, 1, 1] - ay)
            dx, dy = (E[:, 1, 0] - ax) / ln, (E[:, 1, 1] - ay) / ln
            a0 = (my[:, None] - ay) * dx - (mx[:, None] - ax) * dy
            a1 = uy[:, None] * dx - ux[:, None] * dy
            for t in _np_quadratic(a1 * a1 - 1.0, a0 * a1, a0 * a0 - (H * H)[:, None], s2):
                sft = (mx[:, None] + t * ux[:, None] - ax) * dx + (my[:, None] + t * uy[:, None] - ay) * dy
                ok = (sft >= -1e-9 * scale) & (sft <= ln + 1e-9 * scale)
                roots.append(np.where(ok, t, np.nan))
                feats.extend(edges)
    T_ = np.concatenate(roots, axis=1)  # pairs x features
    span = np.maximum(scale, np.maximum(np.where(np.isfinite(tmin), np.abs(tmin), 0.0),
                                        np.where(np.isfinite(tmax), np.abs(tmax), 0.0)))
    slack = 1e-9 * span
    with np.errstate(invalid="ignore"):
        inside = (T_ >= (tmin - slack)[:, None]) & (T_ <= (tmax + slack)[:, None])
    pi_, fi = np.nonzero(inside)
    if len(pi_):
        t = T_[pi_, fi]
        cxs = mx[pi_] + t * ux[pi_]
        cys = my[pi_] + t * uy[pi_]
        rs = np.hypot(H[pi_], t)
        clear = _clearance(Q, cxs, cys, rs)
        ok = clear >= -EPS_GEOM * np.maximum(rs, scale)
        for k in np.nonzero(ok)[0]:
            out.append(CandidateCircle(Circle((float(cxs[k]), float(cys[k])), float(rs[k])),
                                       ((int(ids[I[pi_[k]]]), int(ids[J[pi_[k]]])), feats[fi[k]])))
    return out


def brute_min_separating_circle(P: Sequence[Point], Q: Union[Point, Circle, ConvexPolygon]) -> QueryResult:
    cands = candidate_circles(P, Q)
    if not cands:
        return QueryResult(Status.NO_SEPARATING_CIRCLE)
    best = min(cands, key=lambda c: c.circle.radius)
    C = best.circle
    trivial = best.witness[1] is None
    clear = float(_clearance(Q, np.array([C.center[0]]), np.array([C.center[1]]), C.radius)[0])
    tangency = None
    if not trivial or clear <= EPS_GEOM * max(C.radius, 1e-300):
        tangency = _nearest_point(Q, C.center)
    return QueryResult(Status.SEPARATING, C, tangency, trivial)


def _nearest_point(Q, c: Point) -> Point:
    if isinstance(Q, Circle):
        d = dist(c, Q.center)
        s = Q.radius / d if d else 0.0
        return (Q.center[0] + (c[0] - Q.center[0]) * s, Q.center[1] + (c[1] - Q.center[1]) * s)
    if not isinstance(Q, ConvexPolygon):
        return (float(Q[0]), float(Q[1]))
    best, bp = math.inf, None
    segs = [Q.edge(i) for i in range(Q.m)] if Q.m > 2 else [(Q.vertex(0), Q.vertex(Q.m - 1))]
    for (ax, ay), (bx, by) in segs:
        dx, dy = bx - ax, by - ay
        l2 = dx * dx + dy * dy
        s = 0.0 if l2 == 0 else min(1.0, max(0.0, ((c[0] - ax) * dx + (c[1] - ay) * dy) / l2))
        p = (ax + s * dx, ay + s * dy)
        d = dist(p, c)
        if d < best:
            best, bp = d, p
    return bp
