"""Exact crossing number and certified grid drawings for maximal
pathwidth-3 graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .decomposition import (
    AlternatingDecomposition,
    Cluster,
    check_alternating,
    extract_clusters,
    is_maximal,
    validate_decomposition,
)
from .drawing import Drawing, orient
from .graph import Edge, Graph, is_connected, norm


class NotMaximal(ValueError):
    pass


class WrongWidth(ValueError):
    pass


class PlacementError(RuntimeError):
    """Too few admissible grid points near a type-II edge (should not happen)."""


def zarankiewicz(n1: int, n2: int) -> int:
    if n1 < 0 or n2 < 0:
        raise ValueError("sizes must be nonnegative")
    return (n1 // 2) * ((n1 - 1) // 2) * (n2 // 2) * ((n2 - 1) // 2)


def cluster_term(size: int) -> int:
    """Crossings charged to one cluster with `size` vertices."""
    return ((size - 3) // 2) * ((size - 4) // 2)


def _check_pw3(graph: Graph, ad: AlternatingDecomposition, need_maximal: bool = True) -> None:
    if ad.width != 3:
        raise WrongWidth(f"decomposition has width {ad.width}, expected 3")
    check_alternating(ad)
    validate_decomposition(graph, ad)
    if need_maximal and not is_maximal(graph, ad):
        raise NotMaximal("some bag does not induce a clique")
    if not is_connected(graph):
        raise NotMaximal("graph is not connected")


def cr_exact(graph: Graph, ad: AlternatingDecomposition) -> int:
    _check_pw3(graph, ad)
    if graph.n <= 4:
        return 0
    return sum(cluster_term(c.size) for c in extract_clusters(ad))


@dataclass(frozen=True)
class ClusterPlacement:
    index: int
    ell: int
    ell1: int
    ell2: int
    s: int

    def to_json(self) -> dict:
        return {"index": self.index, "ell": self.ell, "ell1": self.ell1, "ell2": self.ell2, "s": self.s}


def split_counts(ell: int) -> tuple[int, int]:
    ell1 = (ell + 1) // 2
    return ell1, ell + 1 - ell1


def placements(clusters: Sequence[Cluster]) -> list[ClusterPlacement]:
    """s_i for i = 1..kappa (edge (x-_i, x+_{i-1}) with x+_0 = v_2)."""
    out = []
    prev_ell2 = 1
    for c in clusters:
        ell = len(c.singletons)
        ell1, ell2 = split_counts(ell)
        out.append(ClusterPlacement(c.index, ell, ell1, ell2, prev_ell2 - 1 + ell1))
        prev_ell2 = ell2
    return out


_DIR = {"T": (0, 1), "L": (-1, -1), "R": (1, -1)}
_STEP = {"T": 5, "L": 4, "R": 4}
# Side on which singleton points are taken, and which neighbouring group
# faces that side (p) or lies across the edge (q).
_OFFSET = {"T": (-1, 0), "L": (-1, 0), "R": (1, 0)}
_SIDES = {"T": ("L", "R"), "L": ("T", "R"), "R": ("T", "L")}


@dataclass
class ExactLayout:
    drawing: Drawing
    groups: dict[int, str]
    crossable: set[Edge]
    hull: tuple[int, int, int]
    placements: list[ClusterPlacement] = field(default_factory=list)


def _inside_triangle(z, a, b, c) -> bool:
    o = orient(a, b, c)
    return o != 0 and orient(a, b, z) == o and orient(b, c, z) == o and orient(c, a, z) == o


def layout_exact(graph: Graph, ad: AlternatingDecomposition, apex: int | None = None) -> ExactLayout:
    """Grid layout with bookkeeping.

    `apex` picks which vertex of the last anchor triplet is extended by the
    final vertex v_n; the outer triangle is then v_n plus the other two.
    """
    _check_pw3(graph, ad)
    n = graph.n
    big = 10 * n
    a = ad.age_order
    pos: dict[int, tuple[int, int]] = {}
    groups: dict[int, str] = {}
    if n == 4:
        v1, v2, v3, v4 = a
        pos = {v1: (0, 0), v2: (0, big), v3: (-big, -big), v4: (big, -big)}
        groups = {v2: "T", v3: "L", v4: "R"}
        d = Drawing.straight([pos[v] for v in range(n)], graph.edges)
        return ExactLayout(d, groups, set(), (v2, v3, v4))
    clusters = extract_clusters(ad)
    pl = placements(clusters)
    kappa = len(clusters)
    v1, v2, v3, v4 = a[:4]
    pos[v1] = (0, 0)
    pos[v2], groups[v2] = (0, big), "T"
    pos[v3], groups[v3] = (-big, -big), "L"
    pos[v4], groups[v4] = (big, -big), "R"
    crossable: set[Edge] = set()

    def inside_of(c: Cluster) -> tuple[int, ...]:
        return c.singletons[: split_counts(len(c.singletons))[0]]

    def outside_of(c: Cluster) -> tuple[int, ...]:
        return c.singletons[split_counts(len(c.singletons))[0] :]

    hull: tuple[int, int, int] | None = None
    for i in range(1, kappa + 2):
        if i == 1:
            xm, xp = v1, v2
            g = "T"
            length = big
            anchors_new = clusters[0].anchor
            inner, outer = inside_of(clusters[0]), ()
            pq = set(anchors_new) - {xp}
        else:
            prev = clusters[i - 2]
            if i <= kappa:
                cur = clusters[i - 1]
                xm = cur.lost
                inner = inside_of(cur)
            else:
                cur = None
                if apex is None:
                    xm = next(v for v in prev.anchor if groups[v] == "T")
                else:
                    if apex not in prev.anchor:
                        raise ValueError(f"apex {apex} is not in the last anchor triplet")
                    xm = apex
                inner = ()
            xp = prev.emerging
            outer = outside_of(prev)
            g = groups[xm]
            s = len(inner) + len(outer)
            length = s + _STEP[g]
            dx, dy = _DIR[g]
            groups[xp] = g
            pos[xp] = (pos[xm][0] + dx * length, pos[xm][1] + dy * length)
            pq = set(prev.anchor) - {xm}
        pside, qside = _SIDES[g]
        p = next(v for v in pq if groups[v] == pside)
        q = next(v for v in pq if groups[v] == qside)
        if i == kappa + 1:
            hull = (xp, p, q)
        if not inner and not outer:
            continue
        crossable.add(norm(xm, xp))
        dx, dy = _DIR[g]
        ox, oy = _OFFSET[g]
        P, M, Q, X = pos[p], pos[xm], pos[q], pos[xp]
        o_m, o_p = orient(Q, M, X), orient(Q, X, M)
        survivors = []
        for t in range(length, -1, -1):  # from the x+ end towards x-
            z = (M[0] + dx * t + ox, M[1] + dy * t + oy)
            if not _inside_triangle(z, P, M, X):
                continue
            if orient(Q, M, z) != o_m or orient(Q, X, z) != o_p:
                continue
            survivors.append(z)
        if len(survivors) < len(inner) + len(outer):
            raise PlacementError(
                f"edge ({xm},{xp}): {len(survivors)} admissible points, need {len(inner) + len(outer)}"
            )
        for v, z in zip(inner, survivors):
            pos[v] = z
        for v, z in zip(outer, survivors[len(survivors) - len(outer) :]):
            pos[v] = z
        for v in (*inner, *outer):
            for u in graph.neighbors(v):
                crossable.add(norm(u, v))
    if len(pos) != n:
        missing = sorted(set(range(n)) - set(pos))
        raise PlacementError(f"unplaced vertices {missing}")
    d = Drawing.straight([pos[v] for v in range(n)], graph.edges)
    assert hull is not None
    return ExactLayout(d, groups, crossable, hull, pl)


def draw_exact(graph: Graph, ad: AlternatingDecomposition, apex: int | None = None) -> Drawing:
    lay = layout_exact(graph, ad, apex)
    lay.drawing.claimed_crossings = cr_exact(graph, ad)
    return lay.drawing


def grid_box(n: int) -> tuple[int, int, int, int]:
    """Open box guaranteed to contain every drawn point."""
    return (-14 * n, 14 * n, -14 * n, 15 * n)


def slope_violations(drawing: Drawing, groups: dict[int, str]) -> list[tuple[Edge, Fraction]]:
    """Ray-to-ray edges whose slope leaves the ranges the layout guarantees."""
    bad = []
    lo1, hi1 = Fraction(-1, 5), Fraction(1, 5)
    lo2, hi2 = Fraction(10, 7), Fraction(29, 10)
    for u, v in drawing.edges:
        gu, gv = groups.get(u), groups.get(v)
        if gu is None or gv is None or gu == gv:
            continue
        (x1, y1), (x2, y2) = drawing.positions[u], drawing.positions[v]
        slope = Fraction(y2 - y1, x2 - x1) if x2 != x1 else None
        kinds = {gu, gv}
        if kinds == {"L", "R"}:
            if slope is None or not lo1 < slope < hi1:
                bad.append(((u, v), slope))
        elif kinds == {"L", "T"}:
            if slope is None or not lo2 < slope < hi2:
                bad.append(((u, v), slope))
        elif kinds == {"R", "T"}:
            if slope is None or not -hi2 < slope < -lo2:
                bad.append(((u, v), slope))
    return bad
