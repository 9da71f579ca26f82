"""Maximal pathwidth-w graphs (w >= 4): two-page poly-line drawing on a
4n x wn grid plus the upper/lower bound evaluators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .decomposition import (
    AlternatingDecomposition,
    Cluster,
    check_alternating,
    extract_clusters,
    is_maximal,
    validate_decomposition,
)
from .drawing import Drawing
from .exact import NotMaximal, cluster_term
from .graph import Edge, Graph, is_connected, norm


class WidthTooSmall(ValueError):
    pass


def _need_w(w: int) -> None:
    if w < 4:
        raise WidthTooSmall(f"width {w} < 4")


def mu(w: int) -> int:
    return 2 * w - 5


def ratio_guarantee(w: int) -> int:
    return 2 * (w - 1) * (w - 2) * (2 * w - 4)


def upper_bound_pww(clusters: Sequence[Cluster], w: int) -> int:
    _need_w(w)
    return comb(w + 1, 4) + sum(2 * (w - 1) * (w - 2) * cluster_term(c.size) for c in clusters)


def lower_bound_pww(clusters: Sequence[Cluster], w: int) -> Fraction:
    _need_w(w)
    inner = Fraction(comb(w + 1, 4), 5) + sum(cluster_term(c.size) for c in clusters)
    return inner / (mu(w) + 1)


@dataclass(frozen=True)
class PwwBounds:
    w: int
    mu: int
    upper: int
    lower: Fraction
    ratio_guarantee: int

    @classmethod
    def of(cls, clusters: Sequence[Cluster], w: int) -> "PwwBounds":
        return cls(w, mu(w), upper_bound_pww(clusters, w), lower_bound_pww(clusters, w), ratio_guarantee(w))

    def to_json(self, counted: int | None = None) -> dict:
        d = {
            "w": self.w,
            "mu": self.mu,
            "upper": self.upper,
            "lower": [self.lower.numerator, self.lower.denominator],
            "ratio_guarantee": self.ratio_guarantee,
        }
        if counted is not None:
            d["counted"] = counted
            if self.lower:
                r = Fraction(counted) / self.lower
                d["ratio"] = [r.numerator, r.denominator]
        return d


@dataclass(frozen=True)
class PredecessorList:
    vertex: int
    predecessors: tuple[int, ...]  # oldest first
    degrees: tuple[int, ...]  # degree inside G_i (graph on v_1..v_i)


def predecessor_lists(graph: Graph, ad: AlternatingDecomposition) -> list[PredecessorList]:
    """One entry per v_i with i >= w+2 (1-based)."""
    age = {v: k for k, v in enumerate(ad.age_order)}
    out = []
    for k in range(ad.width + 1, len(ad.age_order)):
        v = ad.age_order[k]
        preds = tuple(sorted((u for u in graph.neighbors(v) if age[u] < k), key=age.get))
        degs = tuple(sum(1 for x in graph.neighbors(p) if age[x] <= k) for p in preds)
        out.append(PredecessorList(v, preds, degs))
    return out


def per_vertex_crossing_bound(pred: PredecessorList, w: int) -> int:
    d = pred.degrees
    return sum((j - 2) * (d[j - 1] - 2) for j in range(3, min(w, len(d)) + 1))


def per_vertex_crossing_bound_coarse(pred: PredecessorList, w: int) -> int:
    if len(pred.degrees) < 3:
        return 0
    return (w - 1) * (w - 2) // 2 * (pred.degrees[2] - 2)


@dataclass
class PwwLayout:
    drawing: Drawing
    page: dict[Edge, int]  # 0 above the spine, 1 below
    new_crossings: dict[int, int]  # per inserted vertex
    counted: int


def _check(graph: Graph, ad: AlternatingDecomposition) -> None:
    _need_w(ad.width)
    check_alternating(ad)
    validate_decomposition(graph, ad)
    if not is_maximal(graph, ad):
        raise NotMaximal("some bag does not induce a clique")
    if not is_connected(graph):
        raise NotMaximal("graph is not connected")


def layout_maximal_pww(graph: Graph, ad: AlternatingDecomposition) -> PwwLayout:
    """Two-page layout along the age-order spine.

    v_j sits at (4j-2, 0).  An edge between spine positions a < b is a
    bracket (x_a,0) -> (x_a+1,h) -> (x_b-1,h) -> (x_b,0) with h > 0 on the
    upper page and h < 0 on the lower one.  Within a page |h| grows with the
    span, so nested or touching brackets never meet and two brackets cross
    (exactly once) iff their endpoints interleave.  The initial K_{w+1} goes
    on the upper page; each later edge goes on the page where it creates
    fewer new crossings.
    """
    _check(graph, ad)
    w = ad.width
    order = ad.age_order
    age = {v: k for k, v in enumerate(order)}
    arcs: list[list[tuple[int, int]]] = [[], []]
    page: dict[Edge, int] = {}
    new_crossings: dict[int, int] = {}
    total = 0
    for k, v in enumerate(order):
        preds = sorted((u for u in graph.neighbors(v) if age[u] < k), key=age.get)
        added = 0
        for u in preds:
            a = age[u]
            # Arcs of v itself share the endpoint k and never cross.
            cost = [sum(1 for c, d in arcs[P] if c < a < d < k) for P in (0, 1)]
            P = 0 if k <= w or cost[0] <= cost[1] else 1
            added += cost[P]
            arcs[P].append((a, k))
            page[norm(u, v)] = P
        new_crossings[v] = added
        total += added
    height: dict[Edge, int] = {}
    for P in (0, 1):
        ranked = sorted(arcs[P], key=lambda ab: (ab[1] - ab[0], ab[0], ab[1]))
        for r, (a, b) in enumerate(ranked, start=1):
            height[norm(order[a], order[b])] = r if P == 0 else -r
    x = {v: 4 * (age[v] + 1) - 2 for v in order}
    positions = [(x[v], 0) for v in range(graph.n)]
    bends: dict[Edge, list] = {}
    for e in graph.sorted_edges():
        u, v = e
        h = height[e]
        lo, hi = (u, v) if x[u] < x[v] else (v, u)
        pts = [(x[lo] + 1, h), (x[hi] - 1, h)]
        bends[e] = pts if lo == u else pts[::-1]
    d = Drawing(positions, bends, graph.sorted_edges(), total)
    return PwwLayout(d, page, new_crossings, total)


def draw_maximal_pww(graph: Graph, ad: AlternatingDecomposition) -> Drawing:
    return layout_maximal_pww(graph, ad).drawing


def pww_box(n: int, w: int) -> tuple[int, int, int, int]:
    """Closed box: 0 <= x <= 4n, |y| <= wn."""
    return (0, 4 * n, -w * n, w * n)


def clique_decomposition(w: int) -> tuple[Graph, AlternatingDecomposition]:
    g = Graph.complete(w + 1)
    return g, AlternatingDecomposition(w, (frozenset(range(w + 1)),), tuple(range(w + 1)))


def insertion_audit(graph: Graph, ad: AlternatingDecomposition, layout: PwwLayout) -> list[dict]:
    """Insertions whose new crossings exceed the per-vertex bound."""
    out = []
    for pl in predecessor_lists(graph, ad):
        b = per_vertex_crossing_bound(pl, ad.width)
        got = layout.new_crossings[pl.vertex]
        if got > b:
            out.append({"vertex": pl.vertex, "new_crossings": got, "bound": b})
    return out


def bounds_for(ad: AlternatingDecomposition) -> PwwBounds:
    clusters = extract_clusters(ad) if ad.xi > 1 else []
    return PwwBounds.of(clusters, ad.width)
