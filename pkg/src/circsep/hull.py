"""Monotone-chain convex hull with exact orientation signs."""
from __future__ import annotations

import math
from typing import List, Sequence, Tuple

import numpy as np

from .geom import EPS_GEOM, Point, orient2d


def convex_hull(points: Sequence[Point]) -> Tuple[List[Point], List[int]]:
    """Hull vertices counter-clockwise from the leftmost (then lowest) one, plus input indices.

    Boundary points within ``EPS_GEOM * scale`` of the line through their
    neighbours are dropped as collinear.  Duplicate inputs collapse to the
    first occurrence.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n = len(pts)
    if n == 0:
        return [], []
    cand = np.arange(n)
    # Akl-Toussaint: discard points strictly inside the octagon of extremes
    if n > 64:
        xs, ys = pts[:, 0], pts[:, 1]
        ext = [np.argmin(xs), np.argmin(xs + ys), np.argmin(ys), np.argmax(xs - ys),
               np.argmax(xs), np.argmax(xs + ys), np.argmax(ys), np.argmin(xs - ys)]
        quad = [tuple(pts[int(i)]) for i in ext]
        keep = np.ones(n, dtype=bool)
        inside = np.ones(n, dtype=bool)
        for k in range(8):
            a, b = quad[k], quad[(k + 1) % 8]
            if a == b:
                continue
            side = (b[0] - a[0]) * (ys - a[1]) - (b[1] - a[1]) * (xs - a[0])
            inside &= side > 1e-12 * (abs(b[0] - a[0]) + abs(b[1] - a[1])) * (1.0 + np.abs(xs) + np.abs(ys))
        keep &= ~inside
        cand = cand[keep]
    order = cand[np.lexsort((pts[cand, 1], pts[cand, 0]))]
    idx = [int(i) for i in order]
    # dedupe exact repeats (sorted, so they are adjacent)
    uniq = []
    last = None
    for i in idx:
        p = (float(pts[i, 0]), float(pts[i, 1]))
        if p != last:
            uniq.append((p, i))
            last = p
    if len(uniq) <= 2:
        return [p for p, _ in uniq], [i for _, i in uniq]

    # a vertex closer than tol to the chord of its neighbours counts as collinear
    tol = EPS_GEOM * float(np.abs(pts[cand]).max())

    def flat(o, a, b):
        return orient2d(o, a, b) <= tol * math.hypot(b[0] - o[0], b[1] - o[1])

    def half(seq):
        out = []
        for item in seq:
            while len(out) >= 2 and flat(out[-2][0], out[-1][0], item[0]):
                out.pop()
            out.append(item)
        return out

    lower = half(uniq)
    upper = half(reversed(uniq))
    chain = lower[:-1] + upper[:-1]
    # the joins between the two halves were never tested against each other
    changed = True
    while changed and len(chain) > 2:
        changed = False
        for k in range(len(chain)):
            if len(chain) > 2 and flat(chain[k - 1][0], chain[k][0], chain[(k + 1) % len(chain)][0]):
                del chain[k]
                changed = True
                break
    if len(chain) < 2:
        chain = [uniq[0], uniq[-1]]
    return [p for p, _ in chain], [i for _, i in chain]
