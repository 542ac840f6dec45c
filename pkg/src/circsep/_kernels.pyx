# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernel; same contract as ``_fallback.dual_search``."""
from libc.math cimport sqrt, hypot, fabs, copysign, INFINITY

IMPLEMENTATION = "cython"

cdef double DISC_CLAMP = 1e-12


cdef inline double seg_dist(double px, double py, double ax, double ay,
                            double bx, double by) nogil:
    cdef double dx = bx - ax, dy = by - ay
    cdef double l2 = dx * dx + dy * dy, s
    if l2 == 0.0:
        return hypot(px - ax, py - ay)
    s = ((px - ax) * dx + (py - ay) * dy) / l2
    if s <= 0.0:
        return hypot(px - ax, py - ay)
    if s >= 1.0:
        return hypot(px - bx, py - by)
    return fabs((px - ax) * dy - (py - ay) * dx) / sqrt(l2)


cdef inline int quad_roots(double a, double b, double c, double scale2,
                           double* out) nogil:
    # roots of a t^2 + 2 b t + c, near-zero discriminants clamped
    cdef double disc, sq, q, lim
    if fabs(a) <= 1e-15:
        if b == 0.0:
            return 0
        out[0] = -c / (2.0 * b)
        return 1
    disc = b * b - a * c
    if disc < 0.0:
        lim = b * b / (scale2 if scale2 > 1e-300 else 1e-300)
        if lim < 1.0:
            lim = 1.0
        if disc < -DISC_CLAMP * scale2 * lim:
            return 0
        disc = 0.0
    sq = sqrt(disc)
    q = -(b + copysign(sq, b))
    if q != 0.0:
        out[0] = q / a
        out[1] = c / q
        return 2
    out[0] = -b / a
    return 1


cdef double segment_release(double mx, double my, double ux, double uy, double h,
                            double ax, double ay, double bx, double by,
                            double t0, double t1, double tol, double scale2) nogil:
    cdef double cx, cy, r, ln, dx, dy, s, t, wx, wy, wu, a0, a1, best
    cdef double cands[4]
    cdef double roots[2]
    cdef int nc = 0, k, nr
    cx = mx + t0 * ux
    cy = my + t0 * uy
    if seg_dist(cx, cy, ax, ay, bx, by) >= sqrt(h * h + t0 * t0) - tol:
        return t0
    ln = hypot(bx - ax, by - ay)
    if ln > 0.0:
        dx = (bx - ax) / ln
        dy = (by - ay) / ln
        a0 = (my - ay) * dx - (mx - ax) * dy
        a1 = uy * dx - ux * dy
        nr = quad_roots(a1 * a1 - 1.0, a0 * a1, a0 * a0 - h * h, scale2, roots)
        for k in range(nr):
            t = roots[k]
            s = (mx + t * ux - ax) * dx + (my + t * uy - ay) * dy
            if -tol <= s <= ln + tol:
                cands[nc] = t
                nc += 1
    wx = mx - ax
    wy = my - ay
    wu = wx * ux + wy * uy
    if wu != 0.0:
        cands[nc] = (h * h - (wx * wx + wy * wy)) / (2.0 * wu)
        nc += 1
    wx = mx - bx
    wy = my - by
    wu = wx * ux + wy * uy
    if wu != 0.0:
        cands[nc] = (h * h - (wx * wx + wy * wy)) / (2.0 * wu)
        nc += 1
    best = t1
    for k in range(nc):
        t = cands[k]
        if t0 < t < best:
            cx = mx + t * ux
            cy = my + t * uy
            r = sqrt(h * h + t * t)
            if seg_dist(cx, cy, ax, ay, bx, by) >= r - tol:
                best = t
    return best


def dual_search(L, long ws, double ts, double[:, ::1] verts, long m, long jb, long k,
                bint is_circle, double ccx, double ccy, double cr, double scale,
                exact=None):
    A = L.arrays
    cdef double[::1] posx = A["posx"], posy = A["posy"], rho = A["rho"]
    cdef double[::1] mxs = A["mx"], mys = A["my"], uxs = A["ux"], uys = A["uy"], hs = A["h"]
    cdef double[::1] tlo = A["tlo"], thi = A["thi"]
    cdef long[::1] depth = A["depth"]
    cdef long[:, ::1] up = A["up"]
    cdef long root = L.root
    cdef double eps = 1e-9, scale2 = scale * scale
    cdef long wu = ws, wv = root, a = 0, b = k, ps = 0, cs = 0
    cdef double tu = ts, tv = thi[root]
    cdef long lo, hi, kk, z, lvl, j, ia, ib, w
    cdef double zx, zy, r, tol, d, q0x, q0y, q1x, q1y, dx, dy, ln, delta, f
    cdef double t0, t1, t, mx, my, ux, uy, h
    cdef bint sep
    with nogil:
        while True:
            lo = depth[wv] + 1 if tv == thi[wv] else depth[wv]
            hi = depth[wu] - 1
            if lo <= hi:
                kk = depth[wu] - (lo + hi) // 2
                z = wu
                lvl = 0
                while kk:
                    if kk & 1:
                        z = up[lvl, z]
                    kk >>= 1
                    lvl += 1
                zx = posx[z]
                zy = posy[z]
                r = rho[z]
                tol = eps * (r if r > scale else scale)
                if is_circle:
                    sep = hypot(zx - ccx, zy - ccy) - cr >= r - tol
                elif b - a <= 1:
                    ia = (jb - a) % m
                    if ia < 0:
                        ia += m
                    if b == a:
                        d = hypot(zx - verts[ia, 0], zy - verts[ia, 1])
                    else:
                        ib = (jb - b) % m
                        if ib < 0:
                            ib += m
                        d = seg_dist(zx, zy, verts[ia, 0], verts[ia, 1], verts[ib, 0], verts[ib, 1])
                    sep = d >= r - tol
                else:
                    j = (a + b) // 2
                    ia = (jb - j) % m
                    if ia < 0:
                        ia += m
                    ib = (jb - j - 1) % m
                    if ib < 0:
                        ib += m
                    q0x = verts[ia, 0]
                    q0y = verts[ia, 1]
                    q1x = verts[ib, 0]
                    q1y = verts[ib, 1]
                    dx = q1x - q0x
                    dy = q1y - q0y
                    ln = hypot(dx, dy)
                    delta = (dx * (zy - q0y) - dy * (zx - q0x)) / ln
                    if delta >= r - tol:
                        sep = True
                    elif seg_dist(zx, zy, q0x, q0y, q1x, q1y) < r - tol:
                        sep = False
                    else:
                        # the disk crosses the line beside the edge; only a
                        # disk that meets Q says which side holds the touch
                        with gil:
                            sep = exact(zx, zy, r)
                        if not sep:
                            f = ((zx - q0x) * dx + (zy - q0y) * dy) / ln
                            if f < 0.5 * ln:
                                b = j
                            else:
                                a = j
                            cs += 1
                ps += 1
                if sep:
                    wu = z
                    tu = thi[z]
                else:
                    wv = z
                    tv = thi[z]
                continue

            w = wu
            t0 = tv if wv == wu else tlo[w]
            t1 = tu
            if is_circle or b - a <= 1:
                break
            j = (a + b) // 2
            ia = (jb - j) % m
            if ia < 0:
                ia += m
            ib = (jb - j - 1) % m
            if ib < 0:
                ib += m
            q0x = verts[ia, 0]
            q0y = verts[ia, 1]
            q1x = verts[ib, 0]
            q1y = verts[ib, 1]
            mx = mxs[w]
            my = mys[w]
            ux = uxs[w]
            uy = uys[w]
            h = hs[w]
            t = segment_release(mx, my, ux, uy, h, q0x, q0y, q1x, q1y, t0, t1, eps * scale, scale2)
            zx = mx + t * ux
            zy = my + t * uy
            r = sqrt(h * h + t * t)
            tol = eps * (r if r > scale else scale)
            dx = q1x - q0x
            dy = q1y - q0y
            ln = hypot(dx, dy)
            delta = (dx * (zy - q0y) - dy * (zx - q0x)) / ln
            cs += 1
            if delta >= r - tol:
                a = j
                b = j + 1
            else:
                f = ((zx - q0x) * dx + (zy - q0y) * dy) / ln
                if f < 0.5 * ln:
                    b = j
                else:
                    a = j
    return w, t0, t1, a, b, ps, cs
