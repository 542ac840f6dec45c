"""Time the compiled and pure-Python search kernels on identical inputs.

Two measurements per (n, m) cell:

* ``kernel``: the dual path/chain search alone, fed the same seeds;
* ``query``: complete polygon queries, where the surrounding Python work
  (tangents, seeds, final root solve) is shared by both kernels.

Usage: python3 benchmarks/compare_kernels.py [--n 1024,65536] [--m 64] [--queries 2000]
"""
import argparse
import json
import time

import numpy as np

from circsep import _fallback, bench, engine
from circsep import convex as cx
from circsep.cli import _int_list

try:
    from circsep import _kernels
except ImportError:
    _kernels = None


def _search_inputs(T, L, Qs):
    """Seed state and chain of every query that reaches the dual search."""
    out = []
    for Q in Qs:
        where, D = cx.classify_pair(T.hull_angles, Q)
        if where is not cx.Location.OUTSIDE:
            continue
        tg = cx.internal_tangents_of(T.hull_angles, Q, D)
        if tg.chain_len == 0 or tg.q == tg.q2:
            continue
        s = engine.find_seed(T, engine._bisector_line(tg.L, tg.L2))
        out.append((s, Q, tg.q_index, tg.chain_len))
    return out


def time_kernel(T, L, inputs, fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter_ns()
        for s, Q, jb, k in inputs:
            engine.dual_binary_search(T, L, s, Q, jb, k, kernel=fn)
        best = min(best, time.perf_counter_ns() - t)
    return best / max(len(inputs), 1)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=_int_list, default=[2 ** 10, 2 ** 14, 2 ** 18])
    ap.add_argument("--m", type=_int_list, default=[64])
    ap.add_argument("--queries", type=int, default=2000)
    ap.add_argument("--dist", default="rim")
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    kernels = [("python", _fallback.dual_search)]
    if _kernels is not None:
        kernels.insert(0, ("cython", _kernels.dual_search))
    rows = []
    for n in args.n:
        for m in args.m:
            rng = np.random.default_rng([args.seed, n, m])
            T, L = engine.prepare(bench.sample_points(n, rng, args.dist).tolist())
            placer = bench._Placer(T, rng)
            tmpl = [bench.random_polygon(m, rng, 0.05 + 0.3 * rng.random()) for _ in range(64)]
            Qs = [q for q in (placer.place(tmpl[i % 64]) for i in range(args.queries)) if q is not None]
            inputs = _search_inputs(T, L, Qs)
            row = {"n": n, "m": m, "searches": len(inputs)}
            for name, fn in kernels:
                row[f"{name}_kernel_ns"] = time_kernel(T, L, inputs, fn)
                row[f"{name}_query_ns"] = bench.run_cell(n, m, args.queries, args.seed, args.dist, fn)["ns_per_query"]
            rows.append(row)
            print(json.dumps(row), flush=True)


if __name__ == "__main__":
    main()
