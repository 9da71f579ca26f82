"""Brute-force ground truth for tiny instances."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .decomposition import TooLarge
from .drawing import Drawing, count_crossings, on_segment, orient
from .graph import Graph


class NoValidPlacement(ValueError):
    pass


class OddTotal(ValueError):
    pass


def _tables(side: int):
    pts = [(x, y) for x in range(side) for y in range(side)]
    P = len(pts)
    seg = -np.ones((P, P), dtype=np.int64)
    segs = []
    for i, j in combinations(range(P), 2):
        seg[i, j] = seg[j, i] = len(segs)
        segs.append((i, j))
    S = len(segs)
    # Points lying strictly inside each segment.
    on = np.zeros((P, S), dtype=bool)
    for s, (i, j) in enumerate(segs):
        a, b = pts[i], pts[j]
        for k, p in enumerate(pts):
            if k != i and k != j and on_segment(p, a, b):
                on[k, s] = True
    arr = np.array([[*pts[i], *pts[j]] for i, j in segs], dtype=np.int64)
    ax, ay, bx, by = (arr[:, k] for k in range(4))

    def o(px, py, qx, qy, rx, ry):
        return np.sign((qx - px) * (ry - py) - (qy - py) * (rx - px))

    A = lambda v: v[:, None]
    B = lambda v: v[None, :]
    o1 = o(A(ax), A(ay), A(bx), A(by), B(ax), B(ay))
    o2 = o(A(ax), A(ay), A(bx), A(by), B(bx), B(by))
    o3 = o(B(ax), B(ay), B(bx), B(by), A(ax), A(ay))
    o4 = o(B(ax), B(ay), B(bx), B(by), A(bx), A(by))
    cross = ((o1 * o2 < 0) & (o3 * o4 < 0)).astype(np.int16)
    return pts, seg, on, cross


def _twin_classes(graph: Graph) -> dict[int, int]:
    """Map each vertex to the previous member of its twin class, if any."""
    prev: dict[int, int] = {}
    seen_open: dict[frozenset, int] = {}
    seen_closed: dict[frozenset, int] = {}
    for v in range(graph.n):
        nb = graph.neighbors(v)
        key_o, key_c = frozenset(nb), frozenset(nb | {v})
        if key_o in seen_open:
            prev[v] = seen_open[key_o]
        elif key_c in seen_closed:
            prev[v] = seen_closed[key_c]
        seen_open[key_o] = v
        seen_closed[key_c] = v
    return prev


def rectilinear_cr_bruteforce(graph: Graph, grid_side: int) -> tuple[int, Drawing]:
    """Minimum straight-line crossing count over injective placements on the
    grid_side x grid_side grid (vertices never on non-incident edges)."""
    n = graph.n
    if n > 7 or grid_side > 8:
        raise TooLarge("oracle limited to n <= 7 and grid_side <= 8")
    if grid_side * grid_side < n:
        raise NoValidPlacement("grid has fewer points than vertices")
    pts, seg, on, cross = _tables(grid_side)
    P = len(pts)
    # Vertex order: greedy by adjacency to already ordered vertices.
    order: list[int] = []
    rest = set(range(n))
    while rest:
        v = max(sorted(rest), key=lambda x: (len(graph.neighbors(x) & set(order)), len(graph.neighbors(x))))
        order.append(v)
        rest.remove(v)
    twin_prev = _twin_classes(graph)
    # Twin classes are symmetric, so demand increasing point indices inside
    # each class; this is only sound if a class's earlier members are placed
    # first, which holds because twin_prev points to a smaller id -- reorder
    # so that it does.
    rank = {v: i for i, v in enumerate(order)}
    twin_prev = {v: u for v, u in twin_prev.items() if rank[u] < rank[v]}
    # Grid symmetry for the first vertex when it has no twin.
    first = order[0]
    has_twin = first in twin_prev.values() or first in twin_prev
    half = (grid_side + 1) // 2
    fundamental = np.zeros(P, dtype=bool)
    for k, (x, y) in enumerate(pts):
        if x < half and y < half and y <= x:
            fundamental[k] = True

    best = [None, None]  # value, positions
    pos = [-1] * n
    placed_edges: list[int] = []  # segment indices
    occupied = np.zeros(P, dtype=bool)

    def rec(depth: int, cost: int) -> None:
        if best[0] is not None and cost >= best[0]:
            return
        if depth == n:
            best[0] = cost
            best[1] = list(pos)
            return
        v = order[depth]
        nbrs = [u for u in graph.neighbors(v) if pos[u] >= 0]
        ok = ~occupied
        if depth == 0 and not has_twin:
            ok &= fundamental
        if v in twin_prev:
            lo = pos[twin_prev[v]]
            ok[: lo + 1] = False
        if placed_edges:
            pe = np.array(placed_edges, dtype=np.int64)
            ok &= ~on[:, pe].any(axis=1)
        add = np.zeros(P, dtype=np.int64)
        placed_pts = [pos[w] for w in range(n) if pos[w] >= 0]
        for u in nbrs:
            sidx = seg[:, pos[u]]
            sidx = np.where(sidx < 0, 0, sidx)
            others = [q for q in placed_pts if q != pos[u]]
            if others:
                ok &= ~on[np.array(others)][:, sidx].any(axis=0)
            if placed_edges:
                add += cross[sidx][:, pe].sum(axis=1)
        cand = np.nonzero(ok)[0]
        if best[0] is not None:
            cand = cand[cost + add[cand] < best[0]]
        cand = cand[np.argsort(add[cand], kind="stable")]
        for p in cand.tolist():
            pos[v] = p
            occupied[p] = True
            new = [int(seg[p, pos[u]]) for u in nbrs]
            placed_edges.extend(new)
            rec(depth + 1, cost + int(add[p]))
            del placed_edges[len(placed_edges) - len(new) :]
            occupied[p] = False
            pos[v] = -1

    rec(0, 0)
    if best[0] is None:
        raise NoValidPlacement(f"no valid placement on a {grid_side}x{grid_side} grid")
    d = Drawing.straight([pts[p] for p in best[1]], graph.edges)
    value = count_crossings(d).total
    assert value == best[0]
    d.claimed_crossings = value
    return value, d


def partition_bruteforce(a: list[int]) -> tuple[bool, frozenset[int] | None]:
    """Exhaustive Partition; J is returned 1-based."""
    if len(a) > 24:
        raise TooLarge("partition oracle limited to 24 numbers")
    if any(x <= 0 for x in a):
        raise ValueError("numbers must be positive")
    total = sum(a)
    if total % 2:
        raise OddTotal(f"total {total} is odd")
    target = total // 2
    n = len(a)
    for size in range(0, n + 1):
        for J in combinations(range(n), size):
            if sum(a[i] for i in J) == target:
                return True, frozenset(i + 1 for i in J)
    return False, None
