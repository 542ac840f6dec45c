"""Pure-Python search kernel, used when the compiled extension is unavailable.

The interface mirrors ``_kernels.pyx`` exactly.  Locations on the tree are
``(w, t)``: the point at parameter ``t`` on the edge owned by node ``w``; a
node ``x`` itself is ``(x, thi[x])``.
"""
from __future__ import annotations

import math

from .geom import line_roots, point_roots

IMPLEMENTATION = "python"


def _seg_dist(px, py, ax, ay, bx, by):
    dx, dy = bx - ax, by - ay
    l2 = dx * dx + dy * dy
    if l2 == 0.0:
        return math.hypot(px - ax, py - ay)
    s = ((px - ax) * dx + (py - ay) * dy) / l2
    if s <= 0.0:
        return math.hypot(px - ax, py - ay)
    if s >= 1.0:
        return math.hypot(px - bx, py - by)
    return abs((px - ax) * dy - (py - ay) * dx) / math.sqrt(l2)


def segment_release(mx, my, ux, uy, h, ax, ay, bx, by, t0, t1, tol, scale2):
    """Smallest ``t`` in ``[t0, t1]`` at which the moving circle stops meeting segment ``ab``.

    Returns ``t0`` if it already misses the segment there and ``t1`` when no
    release happens inside the range.
    """
    cx, cy = mx + t0 * ux, my + t0 * uy
    if _seg_dist(cx, cy, ax, ay, bx, by) >= math.sqrt(h * h + t0 * t0) - tol:
        return t0
    ln = math.hypot(bx - ax, by - ay)
    cands = []
    if ln > 0.0:
        dx, dy = (bx - ax) / ln, (by - ay) / ln
        for t in line_roots(mx, my, ux, uy, h, ax, ay, dx, dy, scale2):
            s = (mx + t * ux - ax) * dx + (my + t * uy - ay) * dy
            if -tol <= s <= ln + tol:
                cands.append(t)
    cands += point_roots(mx, my, ux, uy, h, ax, ay)
    cands += point_roots(mx, my, ux, uy, h, bx, by)
    best = t1
    for t in cands:
        if t0 < t < best:
            cx, cy = mx + t * ux, my + t * uy
            r = math.sqrt(h * h + t * t)
            if _seg_dist(cx, cy, ax, ay, bx, by) >= r - tol:
                best = t
    return best


def dual_search(L, ws, ts, verts, m, jb, k, is_circle, ccx, ccy, cr, scale, exact=None):
    """Shrink the root path of the seed and the facing chain of the query together.

    ``u`` is the deep, separating end (starts at the seed); ``v`` is the
    root end, whose circle still meets the query.  ``exact(x, y, r)`` is the
    full disk-versus-polygon test, called only when the edge test is
    inconclusive.  Chain vertex ``j`` is
    ``verts[(jb - j) % m]``.  Returns ``(w, t0, t1, a, b, path_steps,
    chain_steps)``: the answer's centre lies on edge ``w`` between the two
    parameters and its touching point on chain edges ``a..b``.
    """
    A = L.lists
    posx, posy, rho = A["posx"], A["posy"], A["rho"]
    mxs, mys, uxs, uys, hs = A["mx"], A["my"], A["ux"], A["uy"], A["h"]
    tlo, thi, depth = A["tlo"], A["thi"], A["depth"]
    up = L.up_lists
    eps = 1e-9
    scale2 = scale * scale

    wu, tu = ws, ts
    wv = L.root
    tv = thi[wv]
    a, b = 0, k
    ps = cs = 0
    while True:
        lo = depth[wv] + 1 if tv == thi[wv] else depth[wv]
        hi = depth[wu] - 1
        if lo <= hi:
            # a tree node strictly between v and u
            kk = depth[wu] - (lo + hi) // 2
            z, lvl = wu, 0
            while kk:
                if kk & 1:
                    z = up[lvl][z]
                kk >>= 1
                lvl += 1
            zx, zy, r = posx[z], posy[z], rho[z]
            tol = eps * (r if r > scale else scale)
            if is_circle:
                sep = math.hypot(zx - ccx, zy - ccy) - cr >= r - tol
            elif b - a <= 1:
                qa = verts[(jb - a) % m]
                if b == a:
                    d = math.hypot(zx - qa[0], zy - qa[1])
                else:
                    qb = verts[(jb - b) % m]
                    d = _seg_dist(zx, zy, qa[0], qa[1], qb[0], qb[1])
                sep = d >= r - tol
            else:
                j = (a + b) // 2
                q0 = verts[(jb - j) % m]
                q1 = verts[(jb - j - 1) % m]
                dx, dy = q1[0] - q0[0], q1[1] - q0[1]
                ln = math.hypot(dx, dy)
                delta = (dx * (zy - q0[1]) - dy * (zx - q0[0])) / ln
                if delta >= r - tol:
                    sep = True
                elif _seg_dist(zx, zy, q0[0], q0[1], q1[0], q1[1]) < r - tol:
                    sep = False
                else:
                    # the disk crosses the line beside the edge; only a disk
                    # that meets Q says which side holds the touch
                    sep = exact(zx, zy, r)
                    if not sep:
                        f = ((zx - q0[0]) * dx + (zy - q0[1]) * dy) / ln
                        if f < 0.5 * ln:
                            b = j
                        else:
                            a = j
                        cs += 1
            ps += 1
            if sep:
                wu, tu = z, thi[z]
            else:
                wv, tv = z, thi[z]
            continue

        # u and v on one edge
        w = wu
        t0 = tv if wv == wu else tlo[w]
        t1 = tu
        if is_circle or b - a <= 1:
            return w, t0, t1, a, b, ps, cs
        j = (a + b) // 2
        q0 = verts[(jb - j) % m]
        q1 = verts[(jb - j - 1) % m]
        mx, my, ux, uy, h = mxs[w], mys[w], uxs[w], uys[w], hs[w]
        tol0 = eps * scale
        t = segment_release(mx, my, ux, uy, h, q0[0], q0[1], q1[0], q1[1], t0, t1, tol0, scale2)
        zx, zy = mx + t * ux, my + t * uy
        r = math.sqrt(h * h + t * t)
        tol = eps * (r if r > scale else scale)
        dx, dy = q1[0] - q0[0], q1[1] - q0[1]
        ln = math.hypot(dx, dy)
        delta = (dx * (zy - q0[1]) - dy * (zx - q0[0])) / ln
        cs += 1
        if delta >= r - tol:
            a, b = j, j + 1
        else:
            f = ((zx - q0[0]) * dx + (zy - q0[1]) * dy) / ln
            if f < 0.5 * ln:
                b = j
            else:
                a = j
