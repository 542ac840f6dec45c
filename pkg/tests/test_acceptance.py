"""Acceptance suite: eight end-to-end criteria at their stated sizes and tolerances.

Each test prints one ``CRITERION k: PASS|FAIL`` line as it finishes; the
lines are repeated in the terminal summary.
"""
import json
import math
import random
import subprocess
import sys
import time
from functools import lru_cache

import numpy as np
import pytest

from circsep import bench, engine
from circsep.convex import make_polygon
from circsep.engine import Status, prepare, query
from circsep.errors import DegenerateTriangle, TooFewPoints
from circsep.fpvd import build, min_pcircle_at, validate
from circsep.geom import Circle, Segment, dist, dist_point_segment
from circsep.oracle import brute_fpvd, brute_min_separating_circle
from circsep.pathindex import lca

from helpers import (apex_polygon, circle_anywhere, point_anywhere, polygon_outside,
                     random_points, record, same_answer)

TRIALS = 5000
STRUCT_TRIALS = 1000


def log2c(x):
    return math.ceil(math.log2(x)) if x > 1 else 0


def polygon_bound(n, m):
    return 2 * (log2c(n) + log2c(m)) + 8


def report(capsys, number, ok, detail):
    line = record(number, ok, detail)
    with capsys.disabled():
        print("\n" + line)
    return ok


def built(P):
    T, L = prepare(P)
    problems = validate(T)
    assert problems == [], problems
    return T, L


# --------------------------------------------------------------- criterion 1

@lru_cache(maxsize=None)
def polygon_trials():
    """Seeded polygon instances with engine and oracle outcomes."""
    rng = random.Random(20240601)
    rows = []
    t0 = time.perf_counter()
    for _ in range(TRIALS):
        n = rng.randint(3, 64)
        P = random_points(rng, n)
        T, L = built(P)
        Q = polygon_outside(rng, T, rng.randint(3, 16))
        res = query(T, L, Q)
        ref = brute_min_separating_circle(P, Q)
        rows.append((n, Q.m, res, ref))
    return rows, time.perf_counter() - t0


def test_criterion_1_polygon_oracle_equivalence(capsys):
    rows, elapsed = polygon_trials()
    bad = [i for i, (_, _, res, ref) in enumerate(rows) if not same_answer(res, ref, 1e-6)]
    ok = not bad and elapsed <= 60.0
    report(capsys, 1, ok, f"{len(rows) - len(bad)}/{len(rows)} match the oracle at 1e-6; "
                          f"{elapsed:.1f} s including oracle and validation (limit 60 s)")
    assert not bad, bad[:10]
    assert elapsed <= 60.0


# --------------------------------------------------------------- criterion 2

@lru_cache(maxsize=None)
def point_circle_trials():
    rng = random.Random(20240602)
    rows = []
    for kind in ("point", "circle"):
        for _ in range(TRIALS):
            n = rng.randint(3, 64)
            P = random_points(rng, n)
            T, L = built(P)
            Q = point_anywhere(rng) if kind == "point" else circle_anywhere(rng)
            rows.append((kind, n, query(T, L, Q), brute_min_separating_circle(P, Q)))
    return rows


def test_criterion_2_point_and_circle_equivalence(capsys):
    rows = point_circle_trials()
    bad = [i for i, (_, _, res, ref) in enumerate(rows) if not same_answer(res, ref, 1e-6)]
    two = [(0.0, 0.0), (2.0, 0.0)]
    tri = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0)]
    closed = []
    for P, Q, c, r in [(two, (1.0, 0.5), (1.0, -0.75), 1.25),
                       (two, Circle((1.0, 1.0), 0.5), (1.0, -0.75), 1.25),
                       (tri, (2.0, -1.0), (2.0, 1.5), 2.5)]:
        T, L = built(P)
        res = query(T, L, Q)
        closed.append(dist(res.circle.center, c) <= 1e-9 and abs(res.circle.radius - r) <= 1e-9)
    ok = not bad and all(closed)
    report(capsys, 2, ok, f"{len(rows) - len(bad)}/{len(rows)} point and circle queries match; "
                          f"closed-form instances {sum(closed)}/3 at 1e-9")
    assert not bad, bad[:10]
    assert all(closed)


# --------------------------------------------------------------- criterion 3

def _stress_point_circle(n, k, seed, kind):
    """Worst path count over point and circle queries placed between the hull and the enclosing circle."""
    rng = np.random.default_rng(seed)
    P = bench.sample_points(n, rng, kind)
    T, L = prepare(P.tolist())
    C = T.root_circle
    hull = np.asarray(T.sites) - np.asarray(C.center)
    worst = trivial = 0
    for i in range(k):
        a = rng.random() * 2 * math.pi
        d = (math.cos(a), math.sin(a))
        sup = float((hull @ np.asarray(d)).max())
        g = (C.radius - sup) * (0.02 + 0.9 * rng.random())
        rad = 0.0 if i % 2 else 0.5 * rng.random()
        c = (C.center[0] + (sup + g + rad) * d[0], C.center[1] + (sup + g + rad) * d[1])
        res = query(T, L, c if rad == 0.0 else Circle(c, rad))
        trivial += res.trivial_mec or not res.separating
        worst = max(worst, res.stats["path_steps"])
    return worst, trivial


def test_criterion_3_step_bounds(capsys):
    violations = 0
    for n, m, res, _ in polygon_trials()[0]:
        violations += res.stats["path_steps"] + res.stats["chain_steps"] > polygon_bound(n, m)
    for _, n, res, _ in point_circle_trials():
        violations += res.stats["path_steps"] > log2c(n) + 2
    n, m = 10 ** 5, 2 ** 10
    cells = [bench.run_cell(n, m, 1000, seed=s, dist=d) for s, d in ((1, "disk"), (2, "rim"))]
    poly_worst = max(c["max_total_steps"] for c in cells)
    violations += sum(c["max_total_steps"] > polygon_bound(n, m) for c in cells)
    pc = [_stress_point_circle(n, 1000, s, d) for s, d in ((3, "disk"), (4, "rim"))]
    pc_worst, pc_trivial = max(w for w, _ in pc), sum(t for _, t in pc)
    violations += pc_worst > log2c(n) + 2
    ok = violations == 0
    report(capsys, 3, ok, f"{violations} violations; n=1e5 stress: polygon max {poly_worst} "
                          f"<= {polygon_bound(n, m)}, point/circle max {pc_worst} <= {log2c(n) + 2} "
                          f"({pc_trivial} of 2000 trivial)")
    assert ok


# --------------------------------------------------------------- criterion 4

def test_criterion_4_bench_scaling(capsys):
    ns = [2 ** k for k in range(10, 21)]
    rows_n = bench.run_bench(ns, [64], 10 ** 4, seed=42, dist="rim")
    a, b, r2_n = bench.fit_log([r["n"] for r in rows_n], [r["mean_total_steps"] for r in rows_n])
    tail_n = all(r["max_total_steps"] <= polygon_bound(r["n"], 64) for r in rows_n)

    ms = [2 ** k for k in range(3, 15)]
    rows_m = bench.run_bench([2 ** 14], ms, 10 ** 4, seed=42, dist="rim")
    _, bm, r2_m = bench.fit_log([r["m"] for r in rows_m], [r["mean_chain_steps"] for r in rows_m])
    tail_m = all(r["max_total_steps"] <= polygon_bound(2 ** 14, r["m"]) for r in rows_m)
    clean = all(r["bisection_fallbacks"] == 0 and r["trivial_or_none"] == 0 for r in rows_n + rows_m)

    with capsys.disabled():
        print("\n" + bench.format_table(rows_n) + "\n" + bench.format_table(rows_m))
    ok = r2_n >= 0.95 and r2_m >= 0.95 and tail_n and tail_m and clean
    report(capsys, 4, ok, f"n sweep: steps = {a:.2f} + {b:.3f} log2 n, R^2 = {r2_n:.4f}; "
                          f"m sweep: chain slope {bm:.3f}, R^2 = {r2_m:.4f}; tails within bound: "
                          f"{tail_n and tail_m}")
    assert ok


# --------------------------------------------------------------- criterion 5

def _random_location(rng, T):
    v = rng.randrange(T.node_count)
    if v == T.root:
        return v, None, T.pos[v]
    lo, hi = T.edge_tlo[v], T.edge_thi[v]
    if not math.isfinite(hi):
        hi = lo + 3.0 * max(T.scale, 1.0)
    t = rng.uniform(lo, hi)
    return v, t, T.edge_point(v, t)


def _monotone_paths(rng):
    bad = 0
    for _ in range(STRUCT_TRIALS):
        T, _ = built(random_points(rng, rng.randint(3, 64)))
        v, t, y = _random_location(rng, T)
        radii = [min_pcircle_at(T, y).radius]
        while v != T.root:
            lo = T.edge_tlo[v]
            hi = t if t is not None else T.edge_thi[v]
            if not math.isfinite(hi):
                hi = lo + 1.0
            for k in range(4, -1, -1):
                radii.append(T.edge_rho(v, lo + (hi - lo) * k / 4))
            v, t = T.parent[v], None
        radii.append(T.root_circle.radius)
        bad += any(b > a * (1 + 1e-12) + 1e-15 for a, b in zip(radii, radii[1:]))
    return bad


def _union_containment(rng):
    bad = 0
    for _ in range(STRUCT_TRIALS):
        T, _ = built(random_points(rng, rng.randint(3, 64)))
        x, y = _random_location(rng, T)[2], _random_location(rng, T)[2]
        lam = rng.random()
        z = (x[0] + lam * (y[0] - x[0]), x[1] + lam * (y[1] - x[1]))
        Cx, Cy, Cz = (min_pcircle_at(T, p) for p in (x, y, z))
        tol = 1e-9 * max(Cx.radius, Cy.radius, T.scale)
        for k in range(32):
            a = 2 * math.pi * k / 32
            b = (Cz.center[0] + Cz.radius * math.cos(a), Cz.center[1] + Cz.radius * math.sin(a))
            if dist(b, Cx.center) > Cx.radius + tol and dist(b, Cy.center) > Cy.radius + tol:
                bad += 1
                break
    return bad


def _lca_lemma(rng):
    bad = done = 0
    while done < STRUCT_TRIALS:
        T, L = built(random_points(rng, rng.randint(3, 64)))
        Q = polygon_outside(rng, T, rng.randint(3, 16))
        sep = []
        for _ in range(200):
            v, t, p = _random_location(rng, T)
            C = min_pcircle_at(T, p)
            if engine.is_separating(Q, C, T.scale):
                sep.append((v, p, C))
        if len(sep) < 2:
            continue
        (a, pa, Ca), (b, pb, Cb) = rng.sample(sep, 2)
        z = lca(L, a, b)
        if a == b:
            # same edge: the paths meet at the location nearer the root
            p = pa if Ca.radius <= Cb.radius else pb
        elif z == a and a != T.root:
            p = pa
        elif z == b and b != T.root:
            p = pb
        else:
            p = T.pos[z]
        C = min_pcircle_at(T, p)
        ok = (engine.is_separating(Q, C, T.scale)
              and C.radius <= min(Ca.radius, Cb.radius) * (1 + 1e-12))
        bad += not ok
        done += 1
    return bad


def _feature_distances(Q, c):
    """Distances from ``c`` to every vertex and to every edge whose closest point is interior."""
    out = [dist(c, v) for v in Q.vertices]
    for i in range(Q.m):
        (ax, ay), (bx, by) = Q.vertex(i), Q.vertex(i + 1)
        dx, dy = bx - ax, by - ay
        s = ((c[0] - ax) * dx + (c[1] - ay) * dy) / (dx * dx + dy * dy)
        if 0.0 < s < 1.0:
            out.append(abs((c[0] - ax) * dy - (c[1] - ay) * dx) / math.hypot(dx, dy))
    return sorted(out)


def _touching_points(rng):
    """Second-nearest feature of Q must clear the answer circle; returns (failures, skipped)."""
    bad = done = skipped = 0
    while done < STRUCT_TRIALS:
        T, L = built(random_points(rng, rng.randint(3, 64)))
        Q = polygon_outside(rng, T, rng.randint(3, 16))
        res = query(T, L, Q)
        if res.trivial_mec:
            continue
        c, r = res.circle
        near = min(dist(res.tangency, v) for v in Q.vertices)
        if 1e-9 * r < near < 1e-4 * r:
            # touching an edge right next to a corner: not in general position
            skipped += 1
            continue
        done += 1
        d = _feature_distances(Q, c)
        bad += not (abs(d[0] - r) <= 1e-9 * r and d[1] > r * (1 + 1e-9))
    return bad, skipped


def test_criterion_5_structural_properties(capsys):
    rng = random.Random(20240605)
    counts = {
        "monotone radius": _monotone_paths(rng),
        "union containment": _union_containment(rng),
        "common ancestor": _lca_lemma(rng),
    }
    counts["single touching point"], skipped = _touching_points(rng)
    ok = not any(counts.values())
    report(capsys, 5, ok, "; ".join(f"{k}: {STRUCT_TRIALS - v}/{STRUCT_TRIALS}" for k, v in counts.items())
           + f" ({skipped} near-corner touches skipped)")
    assert ok, counts


# --------------------------------------------------------------- criterion 6

def _finite_vertices(T):
    return [T.pos[v] for v in range(T.node_count)
            if T.finite[v] and not (v == T.root and T.root_split)]


def _same_multiset(a, b, tol):
    rest = list(b)
    for p in a:
        k = min(range(len(rest)), key=lambda i: dist(p, rest[i]), default=None)
        if k is None or dist(p, rest[k]) > tol:
            return False
        rest.pop(k)
    return not rest


def _stress_set(rng, kind, n):
    if kind == "uniform":
        return random_points(rng, n)
    if kind == "cocircular":
        k = rng.randint(3, 12)
        angs = [2 * math.pi * rng.randrange(k) / k for _ in range(n)]
        return [(math.cos(a), math.sin(a)) for a in angs]
    if kind == "grid":
        return [(float(rng.randint(-3, 3)), float(rng.randint(-3, 3))) for _ in range(n)]
    return [(float(t), 0.5 * t + 1) for t in (2 * rng.randint(-50, 50) for _ in range(n))]


def test_criterion_6_diagram_matches_brute_force(capsys):
    rng = random.Random(20240606)
    kinds = ("uniform", "cocircular", "grid", "collinear")
    bad, invalid, total = 0, 0, 0
    for i in range(STRUCT_TRIALS):
        P = _stress_set(rng, kinds[i % 4], rng.randint(3, 48))
        try:
            T = build(P)
        except TooFewPoints:
            continue
        total += 1
        invalid += bool(validate(T))
        try:
            ref = [nd.position for nd in brute_fpvd(P)]
        except DegenerateTriangle:
            ref = []
        tol = 1e-7 * max(T.scale, T.root_circle.radius)
        bad += not _same_multiset(_finite_vertices(T), ref, tol)
    ok = bad == 0 and invalid == 0
    report(capsys, 6, ok, f"{total - bad}/{total} node sets equal the brute force at 1e-7; "
                          f"{invalid} builds with violations")
    assert ok


# --------------------------------------------------------------- criterion 7

BUILD_SCRIPT = """
import json, resource, time
import numpy as np
from circsep.engine import prepare
P = np.random.default_rng(7).uniform(-1.0, 1.0, size=(10 ** 6, 2)).tolist()
t = time.perf_counter()
T, L = prepare(P)
s = time.perf_counter() - t
# VmHWM belongs to this address space; ru_maxrss can carry the parent's peak across fork
hwm = [l for l in open("/proc/self/status") if l.startswith("VmHWM")]
kib = int(hwm[0].split()[1]) if hwm else resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
print(json.dumps({"seconds": s, "maxrss_kib": kib, "h": T.h}))
"""


def test_criterion_7_throughput(capsys):
    out = subprocess.run([sys.executable, "-c", BUILD_SCRIPT], capture_output=True, text=True,
                         check=True, timeout=600)
    stats = json.loads(out.stdout)
    mem_gib = stats["maxrss_kib"] / 2 ** 20
    row = bench.run_cell(10 ** 5, 64, 2000, seed=7, dist="disk")
    qps = 1e9 / row["ns_per_query"]
    build_ok = stats["seconds"] <= 15.0 and mem_gib <= 1.0
    ok = build_ok and qps >= 1e5
    report(capsys, 7, ok, f"n=1e6 build {stats['seconds']:.1f} s, peak memory {mem_gib:.2f} GiB "
                          f"(peak RSS of the build process); n=1e5 m=64 polygon queries {qps:,.0f}/s (target 100,000/s)")
    assert build_ok
    assert qps >= 1e5


# --------------------------------------------------------------- criterion 8

def _tangent_to_mec(rng, T):
    """A query touching the enclosing circle from outside: polygon edge, polygon corner, circle or point."""
    C = T.root_circle
    a = rng.uniform(0, 2 * math.pi)
    u = (math.cos(a), math.sin(a))
    v = (-u[1], u[0])
    touch = (C.center[0] + C.radius * u[0], C.center[1] + C.radius * u[1])
    w = rng.uniform(0.1, 1.0)
    kind = rng.randrange(4)
    if kind == 0:
        pts = [(touch[0] + s * w * v[0] + d * u[0], touch[1] + s * w * v[1] + d * u[1])
               for s, d in ((-1, 0), (1, 0), (1, w), (-1, w))]
        return make_polygon(pts)
    if kind == 1:
        pts = [touch] + [(touch[0] + s * w * v[0] + w * u[0], touch[1] + s * w * v[1] + w * u[1])
                         for s in (1, -1)]
        return make_polygon(pts)
    if kind == 2:
        return Circle((touch[0] + w * u[0], touch[1] + w * u[1]), w)
    return touch


def test_criterion_8_trivial_and_degenerate_paths(capsys):
    rng = random.Random(20240608)
    trivial_bad = overlap_bad = reduce_bad = 0
    for _ in range(200):
        T, L = built(random_points(rng, rng.randint(3, 64)))
        res = query(T, L, _tangent_to_mec(rng, T))
        trivial_bad += not (res.trivial_mec and res.circle.radius == T.root_circle.radius)

        inner = T.sites[rng.randrange(T.h)]
        g = T.root_circle.center
        c = ((inner[0] + g[0]) / 2, (inner[1] + g[1]) / 2)
        r = rng.uniform(0.05, 0.5)
        Q = make_polygon([(c[0] + r * math.cos(t), c[1] + r * math.sin(t))
                          for t in (0.3, 2.2, 4.1)])
        overlap_bad += query(T, L, Q).status is not Status.NO_SEPARATING_CIRCLE

        q, Q = apex_polygon(rng, T)
        a, b = engine.query_polygon(T, L, Q), engine.query_point(T, L, q)
        reduce_bad += not (a.status is b.status and a.circle == b.circle and a.tangency == b.tangency)
    ok = not (trivial_bad or overlap_bad or reduce_bad)
    report(capsys, 8, ok, f"tangent to the enclosing circle {200 - trivial_bad}/200 trivial with equal radius; "
                          f"overlap {200 - overlap_bad}/200 no circle; apex reduction "
                          f"{200 - reduce_bad}/200 bit-identical")
    assert ok
