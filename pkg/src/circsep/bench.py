"""Step-count and timing benchmark for polygon queries.

Each ``(n, m)`` cell builds one point set, draws ``queries`` convex
``m``-gons that stay clear of its hull but cut into its enclosing circle
(so every query reaches the path search), and records the search steps and
the wall time of each query.
"""
from __future__ import annotations

import math
import time
from typing import Iterable, List, Optional, Sequence

import numpy as np

from . import engine
from .convex import ConvexPolygon, circle_polygon_disjoint, make_polygon
from .engine import Status

DISTRIBUTIONS = ("disk", "rim", "ellipse")
TEMPLATE_BUDGET = 1 << 18  # vertices kept in the polygon pool of one cell
MAX_TEMPLATES = 256


def sample_points(n: int, rng: np.random.Generator, dist: str = "disk") -> np.ndarray:
    """``n`` random points.

    ``disk``: uniform in the unit disk.  ``ellipse``: all on an ellipse, so
    every point is a hull vertex and the tree is deep.  ``rim``: about
    ``sqrt(n)`` points on the ellipse and the rest uniform inside it, which
    keeps the build cheap while the tree depth still grows with ``n``.
    """
    if dist == "rim":
        k = min(n, max(3, math.isqrt(n)))
        a = np.sort(rng.random(k)) * 2 * math.pi
        rim = np.column_stack((np.cos(a), 0.6 * np.sin(a)))
        r = 0.95 * np.sqrt(rng.random(n - k))
        b = rng.random(n - k) * 2 * math.pi
        return np.vstack((rim, np.column_stack((r * np.cos(b), 0.6 * r * np.sin(b)))))
    if dist == "disk":
        r = np.sqrt(rng.random(n))
        a = rng.random(n) * 2 * math.pi
        return np.column_stack((r * np.cos(a), r * np.sin(a)))
    if dist == "ellipse":
        a = np.sort(rng.random(n)) * 2 * math.pi
        return np.column_stack((np.cos(a), 0.6 * np.sin(a)))
    raise ValueError(f"unknown distribution {dist!r}")


def random_polygon(m: int, rng: np.random.Generator, radius: float = 1.0) -> ConvexPolygon:
    """Convex ``m``-gon inscribed in a circle of ``radius`` about the origin.

    Angles are jittered around an even spacing so no three vertices are
    nearly collinear, even for large ``m``.
    """
    while True:
        a = (np.arange(m) + 0.8 * rng.random(m) + rng.random()) * (2 * math.pi / m)
        Q = make_polygon(np.column_stack((radius * np.cos(a), radius * np.sin(a))).tolist())
        if Q.m == m:
            return Q


class _Placer:
    """Places polygon templates just outside the hull, inside the enclosing circle."""

    def __init__(self, T, rng: np.random.Generator):
        self.T = T
        self.rng = rng
        self.hull = np.asarray(T.sites, dtype=np.float64)
        self.C = T.root_circle
        self.c = np.asarray(self.C.center)

    def place(self, tmpl: ConvexPolygon, tries: int = 64) -> Optional[ConvexPolygon]:
        rel = self.hull - self.c
        arr = tmpl.as_array()
        for _ in range(tries):
            th = self.rng.random() * 2 * math.pi
            d = np.array([math.cos(th), math.sin(th)])
            sup_h = float((rel @ d).max())
            room = self.C.radius - sup_h
            g = max(room, 1e-12 * self.C.radius) * (0.02 + 0.9 * self.rng.random())
            sup_q = float((-(arr @ d)).max())
            off = self.c + (sup_h + g + sup_q) * d
            Q = tmpl.translated(float(off[0]), float(off[1]))
            if not circle_polygon_disjoint(self.C, Q):
                return Q
        return None


def run_cell(n: int, m: int, queries: int, seed: int = 42, dist: str = "disk",
             kernel=None) -> dict:
    """Benchmark one ``(n, m)`` cell; ``kernel`` overrides the search kernel."""
    rng = np.random.default_rng([seed, n, m])
    P = sample_points(n, rng, dist)
    t0 = time.perf_counter()
    T, L = engine.prepare(P.tolist())
    build_s = time.perf_counter() - t0

    pool = max(1, min(queries, MAX_TEMPLATES, TEMPLATE_BUDGET // max(m, 1)))
    scale = 0.05 + 0.3 * rng.random(pool)
    templates = [random_polygon(m, rng, float(s)) for s in scale]
    placer = _Placer(T, rng)
    Qs: List[ConvexPolygon] = []
    skipped = 0
    while len(Qs) < queries and skipped < 50 * queries + 100:
        Q = placer.place(templates[len(Qs) % pool])
        if Q is None:
            skipped += 1
        else:
            Qs.append(Q)
    for Q in Qs:
        Q.as_array()

    old = engine._dual_search
    if kernel is not None:
        engine._dual_search = kernel
    path, chain, elapsed = [], [], []
    fallbacks = trivial = 0
    try:
        for Q in Qs:
            s = time.perf_counter_ns()
            res = engine.query_polygon(T, L, Q)
            elapsed.append(time.perf_counter_ns() - s)
            path.append(res.stats["path_steps"])
            chain.append(res.stats["chain_steps"])
            fallbacks += bool(res.stats.get("bisection_fallback"))
            trivial += res.trivial_mec or res.status is not Status.SEPARATING
    finally:
        engine._dual_search = old

    k = len(Qs)
    tot = [a + b for a, b in zip(path, chain)]

    def mean(x):
        return float(sum(x) / len(x)) if x else 0.0

    return {
        "n": n, "m": m, "h": T.h, "queries": k, "depth": max(T.depth),
        "build_ms": build_s * 1e3,
        "mean_path_steps": mean(path), "max_path_steps": max(path, default=0),
        "mean_chain_steps": mean(chain), "max_chain_steps": max(chain, default=0),
        "mean_total_steps": mean(tot), "max_total_steps": max(tot, default=0),
        "ns_per_query": mean(elapsed),
        "bisection_fallbacks": fallbacks, "trivial_or_none": trivial,
    }


def run_bench(ns: Sequence[int], ms: Sequence[int], queries: int, seed: int = 42,
              dist: str = "disk", kernel=None) -> List[dict]:
    if queries <= 0:
        return []
    return [run_cell(n, m, queries, seed, dist, kernel) for n in ns for m in ms]


COLUMNS = [("n", "{:>8d}"), ("m", "{:>6d}"), ("h", "{:>6d}"), ("queries", "{:>7d}"),
           ("mean_path_steps", "{:>9.2f}"), ("max_path_steps", "{:>8d}"),
           ("mean_chain_steps", "{:>10.2f}"), ("max_chain_steps", "{:>9d}"),
           ("ns_per_query", "{:>12.0f}"), ("bisection_fallbacks", "{:>9d}"),
           ("trivial_or_none", "{:>7d}")]


def format_table(rows: Iterable[dict]) -> str:
    heads = ["n", "m", "h", "queries", "mean_path", "max_path", "mean_chain", "max_chain", "ns/query",
             "fallback", "trivial"]
    widths = [8, 6, 6, 7, 9, 8, 10, 9, 12, 9, 7]
    lines = [" ".join(h.rjust(w) for h, w in zip(heads, widths))]
    for r in rows:
        lines.append(" ".join(fmt.format(r[key]) for key, fmt in COLUMNS))
    return "\n".join(lines)


def fit_log(xs: Sequence[float], ys: Sequence[float]):
    """Least-squares ``y = a + b log2 x``; returns ``(a, b, r2)``."""
    X = np.log2(np.asarray(xs, dtype=float))
    Y = np.asarray(ys, dtype=float)
    b, a = np.polyfit(X, Y, 1)
    ss_res = float(((Y - (a + b * X)) ** 2).sum())
    ss_tot = float(((Y - Y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(a), float(b), r2
