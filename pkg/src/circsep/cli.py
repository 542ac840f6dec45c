"""Command-line front end: ``build``, ``query`` and ``bench``.

Machine output (JSON) goes to standard output, logs to standard error.
Exit codes: 0 success, 2 unreadable or malformed input, 3 fewer than two
distinct points, 4 snapshot format mismatch.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, List, Optional, Sequence

from . import engine, fpvd
from .convex import make_polygon
from .errors import GeometryError, NotConvex, TooFewPoints
from .geom import COORD_LIMIT, Circle
from .mec import DEFAULT_SEED, minimum_enclosing_circle
from .pathindex import build_locator

SNAPSHOT_FORMAT = "fpvd-snapshot/1"
EXIT_OK, EXIT_PARSE, EXIT_DEGENERATE, EXIT_VERSION = 0, 2, 3, 4

log = logging.getLogger("circsep")


class InputError(Exception):
    pass


# ------------------------------------------------------------------ JSON

def _fmt(x: Any) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            return "null"
        return format(x, ".17g")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    if hasattr(x, "item"):  # numpy scalar
        return _fmt(x.item())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(x: Any) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _fmt(x)


# ------------------------------------------------------------- parsing

def _coord(v, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InputError(f"{what}: expected a number, got {v!r}")
    x = float(v)
    if not math.isfinite(x) or abs(x) > COORD_LIMIT:
        raise InputError(f"{what}: coordinate {v!r} outside the accepted range")
    return x


def _point(v, what: str):
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise InputError(f"{what}: expected [x, y]")
    return (_coord(v[0], what), _coord(v[1], what))


def parse_points(doc: dict) -> List[tuple]:
    pts = doc.get("points")
    if not isinstance(pts, list):
        raise InputError("'points' must be an array of [x, y]")
    return [_point(p, f"points[{i}]") for i, p in enumerate(pts)]


def parse_query(q: Any, i: int):
    what = f"queries[{i}]"
    if not isinstance(q, dict):
        raise InputError(f"{what}: expected an object")
    kind = q.get("type")
    if kind == "point":
        return _point(q.get("point"), what)
    if kind == "circle":
        r = _coord(q.get("radius"), what)
        if r < 0:
            raise InputError(f"{what}: negative radius")
        return Circle(_point(q.get("center"), what), r)
    if kind == "polygon":
        vs = q.get("vertices")
        if not isinstance(vs, list) or not vs:
            raise InputError(f"{what}: 'vertices' must be a non-empty array")
        try:
            return make_polygon([_point(v, what) for v in vs])
        except NotConvex as e:
            raise InputError(f"{what}: {e}") from e
    raise InputError(f"{what}: unknown type {kind!r}")


def parse_queries(doc: dict) -> list:
    qs = doc.get("queries", [])
    if not isinstance(qs, list):
        raise InputError("'queries' must be an array")
    return [parse_query(q, i) for i, q in enumerate(qs)]


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, ValueError) as e:
        raise InputError(f"{path}: {e}") from e
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    return doc


# ------------------------------------------------------------ snapshots

def snapshot_of(points: Sequence, T: fpvd.FpvdTree) -> dict:
    return {"format": SNAPSHOT_FORMAT, "points": [list(p) for p in points], "tree": fpvd.to_dict(T)}


class VersionMismatch(Exception):
    pass


def load_snapshot(path: str):
    doc = _load_json(path)
    fmt = doc.get("format")
    if fmt != SNAPSHOT_FORMAT:
        raise VersionMismatch(f"{path}: snapshot format {fmt!r}, expected {SNAPSHOT_FORMAT!r}")
    try:
        T = fpvd.from_dict(doc["tree"])
        points = [tuple(map(float, p)) for p in doc.get("points", T.sites)]
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise InputError(f"{path}: malformed snapshot ({e})") from e
    return points, T, build_locator(T)


# --------------------------------------------------------------- records

def result_record(i: int, res: engine.QueryResult, elapsed_ns: int) -> dict:
    C = res.circle
    return {
        "index": i,
        "status": res.status.value,
        "center": list(C.center) if C else None,
        "radius": C.radius if C else None,
        "tangency": list(res.tangency) if res.tangency is not None else None,
        "trivial_mec": res.trivial_mec,
        "path_steps": res.stats.get("path_steps", 0),
        "chain_steps": res.stats.get("chain_steps", 0),
        "elapsed_ns": elapsed_ns,
    }


def run_queries(T, L, queries: list, workers: int = 1) -> List[dict]:
    """One record per query, in input order."""
    def one(item):
        i, Q = item
        t = time.perf_counter_ns()
        res = engine.query(T, L, Q)
        return i, res, time.perf_counter_ns() - t

    items = list(enumerate(queries))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            done = list(ex.map(one, items))
    else:
        done = [one(it) for it in items]
    return [(result_record(i, res, ns), res) for i, res, ns in done]


def _oracle_fields(rec: dict, points, Q, res: engine.QueryResult) -> None:
    from .oracle import brute_min_separating_circle
    o = brute_min_separating_circle(points, Q)
    rec["oracle_radius"] = o.circle.radius if o.circle else None
    if o.status is not res.status:
        rec["match"] = False
    elif o.circle is None:
        rec["match"] = True
    else:
        r = o.circle.radius
        rec["match"] = (abs(res.circle.radius - r) <= 1e-6 * max(r, 1e-300)
                        and math.dist(res.circle.center, o.circle.center) <= 1e-6 * max(r, 1e-300))


# -------------------------------------------------------------- commands

def cmd_build(instance: str, snapshot: str, seed: int = DEFAULT_SEED) -> int:
    try:
        points = parse_points(_load_json(instance))
    except InputError as e:
        log.error("%s", e)
        return EXIT_PARSE
    t0 = time.perf_counter()
    try:
        T = fpvd.build(points)
    except TooFewPoints as e:
        log.error("%s: %s", instance, e)
        return EXIT_DEGENERATE
    build_locator(T)
    ms = (time.perf_counter() - t0) * 1e3
    mec = minimum_enclosing_circle(T.sites, seed=seed).circle
    C = T.root_circle
    if abs(mec.radius - C.radius) > 1e-9 * max(T.scale, 1e-300):
        log.warning("tree root radius %r differs from the enclosing circle radius %r", C.radius, mec.radius)
    with open(snapshot, "w", encoding="utf-8") as fh:
        fh.write(dumps(snapshot_of(points, T)))
    print(dumps({"n": len(points), "h": T.h, "nodes": T.node_count, "build_ms": ms}))
    log.info("snapshot written to %s", snapshot)
    return EXIT_OK


def cmd_query(snapshot: str, queries_path: str, oracle: bool = False, svg_dir: Optional[str] = None,
              workers: int = 1) -> int:
    try:
        points, T, L = load_snapshot(snapshot)
        queries = parse_queries(_load_json(queries_path))
    except VersionMismatch as e:
        log.error("%s", e)
        return EXIT_VERSION
    except InputError as e:
        log.error("%s", e)
        return EXIT_PARSE
    if svg_dir:
        os.makedirs(svg_dir, exist_ok=True)
    out = sys.stdout
    for (rec, res), Q in zip(run_queries(T, L, queries, workers), queries):
        if oracle:
            _oracle_fields(rec, T.sites, Q, res)
        out.write(dumps(rec) + "\n")
        if svg_dir:
            from .svg import render
            doc = render(points, T.sites, Q, res.circle, res.tangency,
                         title=f"query {rec['index']}: {rec['status']}")
            with open(os.path.join(svg_dir, f"query_{rec['index']:05d}.svg"), "w", encoding="utf-8") as fh:
                fh.write(doc)
    out.flush()
    return EXIT_OK


def _kernels(choice: str):
    from . import _fallback
    if choice == "python":
        return [("python", _fallback.dual_search)]
    try:
        from . import _kernels
    except ImportError:
        if choice == "cython":
            raise InputError("compiled kernel is not built")
        return [("python", _fallback.dual_search)]
    if choice == "cython":
        return [("cython", _kernels.dual_search)]
    if choice == "both":
        return [("cython", _kernels.dual_search), ("python", _fallback.dual_search)]
    return [(engine.IMPLEMENTATION, None)]


def cmd_bench(ns: Sequence[int], ms: Sequence[int], queries: int, seed: int = DEFAULT_SEED,
              dist: str = "rim", kernel: str = "auto") -> int:
    from .bench import format_table, run_cell
    rows = []
    if queries > 0:
        for name, fn in _kernels(kernel):
            for n in ns:
                for m in ms:
                    row = run_cell(n, m, queries, seed, dist, fn)
                    row["kernel"] = name
                    rows.append(row)
                    log.info("n=%d m=%d kernel=%s: %.0f ns/query", n, m, name, row["ns_per_query"])
    print(dumps({"distribution": dist, "seed": seed, "rows": rows}))
    sys.stdout.flush()
    if rows:
        print(format_table(rows), file=sys.stderr)
    return EXIT_OK


# ------------------------------------------------------------------ main

def _int_list(s: str) -> List[int]:
    try:
        out = []
        for part in s.split(","):
            part = part.strip()
            if "^" in part:
                b, e = part.split("^")
                out.append(int(b) ** int(e))
            elif part:
                out.append(int(part))
        return out
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {s!r}")


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="circsep", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for every randomized step")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build and save the diagram tree of a point set")
    b.add_argument("instance")
    b.add_argument("snapshot")

    q = sub.add_parser("query", help="answer a file of queries against a snapshot")
    q.add_argument("snapshot")
    q.add_argument("queries")
    q.add_argument("--oracle", action="store_true", help="cross-check every answer by brute force")
    q.add_argument("--svg", metavar="DIR", help="write one figure per query into DIR")
    q.add_argument("--workers", type=int, default=1)

    r = sub.add_parser("bench", help="step counts and timing over (n, m) cells")
    r.add_argument("--n", type=_int_list, default=[1024], help="point counts, e.g. 1024,2^14")
    r.add_argument("--m", type=_int_list, default=[64], help="polygon sizes")
    r.add_argument("--queries", type=int, default=1000)
    r.add_argument("--dist", choices=("rim", "disk", "ellipse"), default="rim")
    r.add_argument("--kernel", choices=("auto", "cython", "python", "both"), default="auto")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        if args.command == "build":
            return cmd_build(args.instance, args.snapshot, args.seed)
        if args.command == "query":
            return cmd_query(args.snapshot, args.queries, args.oracle, args.svg, args.workers)
        return cmd_bench(args.n, args.m, args.queries, args.seed, args.dist, args.kernel)
    except InputError as e:
        log.error("%s", e)
        return EXIT_PARSE
    except GeometryError as e:
        log.error("%s", e)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
