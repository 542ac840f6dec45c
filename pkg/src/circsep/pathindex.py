"""Ancestor navigation on the rooted diagram tree.

Binary lifting: ``up[k][v]`` is the ``2**k``-th ancestor of ``v`` (the root
maps to itself).  Besides the table, the locator carries flat copies of the
per-node numbers the path search reads, both as numpy arrays (for the
compiled kernel) and as Python lists (for the fallback).
"""
from __future__ import annotations

from typing import List, Optional

import numpy as np

from .errors import AlreadyAdjacent, NotAncestor
from .fpvd import FpvdTree


class PathLocator:
    __slots__ = ("up", "up_lists", "depth", "root", "levels", "arrays", "lists")

    def __init__(self, up: np.ndarray, depth: List[int], root: int):
        self.up = up
        self.up_lists = [row.tolist() for row in up]
        self.depth = depth
        self.root = root
        self.levels = up.shape[0]
        self.arrays = {}
        self.lists = {}

    def ancestor_at_depth(self, u: int, d: int) -> int:
        k = self.depth[u] - d
        lvl = 0
        up = self.up_lists
        while k:
            if k & 1:
                u = up[lvl][u]
            k >>= 1
            lvl += 1
        return u

    def is_ancestor(self, v: int, u: int) -> bool:
        """True when ``v`` is ``u`` or one of its ancestors."""
        dv = self.depth[v]
        return dv <= self.depth[u] and self.ancestor_at_depth(u, dv) == v


def build_locator(T: FpvdTree) -> PathLocator:
    L = locator_from_parents(T.parent, T.root, T.depth)
    _attach_arrays(L, T)
    return L


def locator_from_parents(parent: List[int], root: int, depth: Optional[List[int]] = None) -> PathLocator:
    """Ancestor table of any rooted tree given by parent indices (``-1`` at the root)."""
    N = len(parent)
    if depth is None:
        depth = [-1] * N
        depth[root] = 0
        for v in range(N):
            path = []
            while depth[v] < 0:
                path.append(v)
                v = parent[v]
            d = depth[v]
            for w in reversed(path):
                d += 1
                depth[w] = d
    levels = max(1, (max(depth) + 1).bit_length())
    up = np.empty((levels, N), dtype=np.int64)
    par = np.asarray(parent, dtype=np.int64)
    par[root] = root
    up[0] = par
    for k in range(1, levels):
        up[k] = up[k - 1][up[k - 1]]
    return PathLocator(up, list(depth), root)


def _attach_arrays(L: PathLocator, T: FpvdTree) -> None:
    N = T.node_count
    nan = float("nan")
    posx = [p[0] if p is not None else nan for p in T.pos]
    posy = [p[1] if p is not None else nan for p in T.pos]
    rho = [T.node_rho(v) if T.finite[v] else nan for v in range(N)]
    mx = [m[0] if m is not None else 0.0 for m in T.edge_mid]
    my = [m[1] if m is not None else 0.0 for m in T.edge_mid]
    ux = [d[0] if d is not None else 0.0 for d in T.edge_dir]
    uy = [d[1] if d is not None else 0.0 for d in T.edge_dir]
    lists = dict(posx=posx, posy=posy, rho=rho, mx=mx, my=my, ux=ux, uy=uy,
                 h=list(T.edge_h), tlo=list(T.edge_tlo), thi=list(T.edge_thi),
                 depth=list(T.depth), parent=list(T.parent))
    L.lists = lists
    L.arrays = {k: np.asarray(v, dtype=np.int64 if k in ("depth", "parent") else np.float64)
                for k, v in lists.items()}
    L.arrays["up"] = np.ascontiguousarray(L.up)


def find_point_between(L: PathLocator, u: int, v: int) -> int:
    """Ancestor of ``u`` halfway (by depth, rounded toward the root) to its ancestor ``v``."""
    du, dv = L.depth[u], L.depth[v]
    if dv >= du or L.ancestor_at_depth(u, dv) != v:
        raise NotAncestor(f"{v} is not a strict ancestor of {u}")
    if du - dv < 2:
        raise AlreadyAdjacent(f"{u} and {v} are adjacent")
    return L.ancestor_at_depth(u, (du + dv) // 2)


def lca(L: PathLocator, u: int, v: int) -> int:
    du, dv = L.depth[u], L.depth[v]
    if du < dv:
        u, v, du, dv = v, u, dv, du
    u = L.ancestor_at_depth(u, dv)
    if u == v:
        return u
    up = L.up_lists
    for k in range(L.levels - 1, -1, -1):
        a, b = up[k][u], up[k][v]
        if a != b:
            u, v = a, b
    return up[0][u]
