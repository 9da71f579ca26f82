"""Drawings and exact certification: crossing counts, good-drawing audit,
grid bounds, anchor edges and SVG export.

All arithmetic is on Python ints and Fractions; a numpy int64 prefilter is
used only when every coordinate is a small integer, and never decides a
degenerate case on its own.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .graph import Edge, Graph, norm

Number = Union[int, Fraction]
Point = tuple[Number, Number]


class DrawingError(ValueError):
    pass


class DegenerateOverlap(DrawingError):
    pass


class VertexOnEdge(DrawingError):
    pass


def _num(x) -> Number:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (list, tuple)):
        return _num(Fraction(int(x[0]), int(x[1])))
    if isinstance(x, (int, np.integer)):
        return int(x)
    raise TypeError(f"coordinate {x!r} is neither int nor rational")


def _enc(x: Number):
    if isinstance(x, Fraction) and x.denominator != 1:
        return [x.numerator, x.denominator]
    return int(x)


@dataclass
class Drawing:
    """Vertex positions plus per-edge interior bend points.

    Bends of edge (u, v), u < v, are listed in order from u to v.
    """

    positions: list[Point]
    bends: dict[Edge, list[Point]] = field(default_factory=dict)
    edges: list[Edge] = field(default_factory=list)
    claimed_crossings: int | None = None

    @classmethod
    def straight(cls, positions: Sequence[Point], edges: Iterable[Edge]) -> "Drawing":
        es = sorted(norm(*e) for e in edges)
        return cls([(_num(x), _num(y)) for x, y in positions], {}, es)

    def polyline(self, e: Edge) -> list[Point]:
        u, v = e
        return [self.positions[u], *self.bends.get(e, ()), self.positions[v]]

    @property
    def is_straight_line(self) -> bool:
        return not any(self.bends.get(e) for e in self.edges)

    def without_edges(self, remove: Iterable[Edge]) -> "Drawing":
        drop = {norm(*e) for e in remove}
        return Drawing(
            list(self.positions),
            {e: b for e, b in self.bends.items() if e not in drop},
            [e for e in self.edges if e not in drop],
        )

    def to_json(self) -> dict:
        d = {
            "vertices": [[_enc(x), _enc(y)] for x, y in self.positions],
            "edges": [
                {"u": u, "v": v, "bends": [[_enc(x), _enc(y)] for x, y in self.bends.get((u, v), [])]}
                for u, v in self.edges
            ],
        }
        if self.claimed_crossings is not None:
            d["claimed_crossings"] = self.claimed_crossings
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "Drawing":
        pos = [(_num(x), _num(y)) for x, y in d["vertices"]]
        bends: dict[Edge, list[Point]] = {}
        edges = []
        for item in d["edges"]:
            u, v = int(item["u"]), int(item["v"])
            pts = [(_num(x), _num(y)) for x, y in item.get("bends", [])]
            if u > v:
                u, v = v, u
                pts.reverse()
            edges.append((u, v))
            if pts:
                bends[(u, v)] = pts
        return cls(pos, bends, sorted(edges), d.get("claimed_crossings"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# Exact primitives
# ---------------------------------------------------------------------------


def orient(a: Point, b: Point, c: Point) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """p lies on the closed segment ab."""
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _key(p: Point) -> tuple[Fraction, Fraction]:
    return (Fraction(p[0]), Fraction(p[1]))


def intersection_point(a: Point, b: Point, c: Point, d: Point) -> tuple[Fraction, Fraction]:
    """Intersection of lines ab and cd (assumed non-parallel)."""
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    den = r[0] * s[1] - r[1] * s[0]
    t = Fraction((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / den
    return (a[0] + t * r[0], a[1] + t * r[1])


def _half(d: Point) -> int:
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _angle_sort(dirs: list[tuple[Point, str]]) -> list[tuple[Point, str]]:
    from functools import cmp_to_key

    def cmp(p, q):
        a, b = p[0], q[0]
        ha, hb = _half(a), _half(b)
        if ha != hb:
            return ha - hb
        c = a[0] * b[1] - a[1] * b[0]
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(dirs, key=cmp_to_key(cmp))


def _same_dir(a: Point, b: Point) -> bool:
    return a[0] * b[1] - a[1] * b[0] == 0 and a[0] * b[0] + a[1] * b[1] > 0


# ---------------------------------------------------------------------------
# Crossing report
# ---------------------------------------------------------------------------


@dataclass
class CrossingReport:
    total: int
    weighted_total: int
    pairs: dict[tuple[Edge, Edge], int]
    points: list[tuple[Edge, Edge, tuple[Fraction, Fraction]]]
    violations: list[dict]

    @property
    def is_good(self) -> bool:
        return not self.violations

    def crossed_edges(self) -> set[Edge]:
        out: set[Edge] = set()
        for a, b in self.pairs:
            out.add(a)
            out.add(b)
        return out

    def violation_counts(self) -> dict[str, int]:
        c: dict[str, int] = defaultdict(int)
        for v in self.violations:
            c[v["kind"]] += 1
        return dict(c)

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "weighted_total": self.weighted_total,
            "pairs": [
                {"e1": list(a), "e2": list(b), "count": k} for (a, b), k in sorted(self.pairs.items())
            ],
            "violations": self.violations,
            "good": self.is_good,
        }


def _segments(drawing: Drawing) -> list[tuple[int, Point, Point, int]]:
    segs = []
    for ei, e in enumerate(drawing.edges):
        pts = drawing.polyline(e)
        for k in range(len(pts) - 1):
            if pts[k] == pts[k + 1]:
                raise DrawingError(f"edge {e} has a zero-length segment")
            segs.append((ei, pts[k], pts[k + 1], k))
    return segs


def _small_int_coords(segs) -> bool:
    lim = 1 << 28
    for _, a, b, _ in segs:
        for x in (a[0], a[1], b[0], b[1]):
            if not isinstance(x, int) or abs(x) >= lim:
                return False
    return True


def _candidate_pairs(segs) -> Iterable[tuple[int, int]]:
    """Index pairs (i<j) of segments of distinct edges whose closed bounding
    boxes meet and which are not strictly separated by a line through one."""
    m = len(segs)
    if m < 2:
        return []
    if _small_int_coords(segs):
        arr = np.array([[a[0], a[1], b[0], b[1]] for _, a, b, _ in segs], dtype=np.int64)
        eid = np.array([s[0] for s in segs], dtype=np.int64)
        out = []
        chunk = max(1, 4_000_000 // m)
        for lo in range(0, m, chunk):
            hi = min(m, lo + chunk)
            A = arr[lo:hi, None, :]
            B = arr[None, :, :]
            ax, ay, bx, by = A[..., 0], A[..., 1], A[..., 2], A[..., 3]
            cx, cy, dx, dy = B[..., 0], B[..., 1], B[..., 2], B[..., 3]
            o1 = np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
            o2 = np.sign((bx - ax) * (dy - ay) - (by - ay) * (dx - ax))
            o3 = np.sign((dx - cx) * (ay - cy) - (dy - cy) * (ax - cx))
            o4 = np.sign((dx - cx) * (by - cy) - (dy - cy) * (bx - cx))
            sep = (o1 * o2 > 0) | (o3 * o4 > 0)
            box = (
                (np.minimum(ax, bx) <= np.maximum(cx, dx))
                & (np.minimum(cx, dx) <= np.maximum(ax, bx))
                & (np.minimum(ay, by) <= np.maximum(cy, dy))
                & (np.minimum(cy, dy) <= np.maximum(ay, by))
            )
            idx = np.arange(lo, hi)[:, None]
            jdx = np.arange(m)[None, :]
            keep = box & ~sep & (jdx > idx) & (eid[lo:hi, None] != eid[None, :])
            ii, jj = np.nonzero(keep)
            out.extend(zip((ii + lo).tolist(), jj.tolist()))
        return out
    return (
        (i, j)
        for i in range(m)
        for j in range(i + 1, m)
        if segs[i][0] != segs[j][0]
    )


def _local_rays(pts: list[Point], p: tuple[Fraction, Fraction]) -> list[Point]:
    """Directions leaving point p along a polyline that passes through it."""
    for k in range(len(pts)):
        if _key(pts[k]) == p:
            rays = []
            if k > 0:
                rays.append((pts[k - 1][0] - p[0], pts[k - 1][1] - p[1]))
            if k < len(pts) - 1:
                rays.append((pts[k + 1][0] - p[0], pts[k + 1][1] - p[1]))
            return rays
    for k in range(len(pts) - 1):
        if on_segment(p, pts[k], pts[k + 1]):
            d = (pts[k + 1][0] - pts[k][0], pts[k + 1][1] - pts[k][1])
            return [d, (-d[0], -d[1])]
    raise AssertionError("point not on polyline")


def _transverse(ra: list[Point], rb: list[Point]) -> bool | None:
    """True if curve b crosses curve a at their common interior point,
    False for a touch, None for a collinear overlap."""
    for x in ra:
        for y in rb:
            if _same_dir(x, y):
                return None
    order = _angle_sort([(d, "a") for d in ra] + [(d, "b") for d in rb])
    tags = [t for _, t in order]
    return tags in (["a", "b", "a", "b"], ["b", "a", "b", "a"])


def count_crossings(drawing: Drawing, graph: Graph | None = None, weighted: bool = False) -> CrossingReport:
    """Exact crossing count with a good-drawing audit.

    Adjacent-edge crossings are reported as violations and left out of the
    total; multiple crossings of one pair and triple points are counted but
    flagged.  Collinear overlaps and vertices lying on non-incident edges
    raise.
    """
    edges = drawing.edges
    pos = drawing.positions
    segs = _segments(drawing)
    # Vertices on non-incident edges.
    vkeys = {_key(p): v for v, p in enumerate(pos)}
    if len(vkeys) != len(pos):
        raise DrawingError("two vertices share a position")
    for ei, a, b, _ in segs:
        u, v = edges[ei]
        for w, p in enumerate(pos):
            if w in (u, v):
                continue
            if min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
                if on_segment(p, a, b):
                    raise VertexOnEdge(f"vertex {w} lies on edge {(u, v)}")

    proper: list[tuple[int, int, tuple[Fraction, Fraction]]] = []
    touches: set[tuple[int, int, tuple[Fraction, Fraction]]] = set()
    for i, j in _candidate_pairs(segs):
        ei, a, b, _ = segs[i]
        ej, c, d, _ = segs[j]
        o1, o2 = orient(a, b, c), orient(a, b, d)
        o3, o4 = orient(c, d, a), orient(c, d, b)
        if o1 * o2 < 0 and o3 * o4 < 0:
            proper.append((ei, ej, intersection_point(a, b, c, d)))
            continue
        if o1 == o2 == o3 == o4 == 0:
            pts = [p for p in (a, b) if on_segment(p, c, d)] + [p for p in (c, d) if on_segment(p, a, b)]
            keys = {_key(p) for p in pts}
            if len(keys) > 1:
                raise DegenerateOverlap(f"edges {edges[ei]} and {edges[ej]} overlap")
            for k in keys:
                touches.add((min(ei, ej), max(ei, ej), k))
            continue
        for p, (s, t) in ((a, (c, d)), (b, (c, d)), (c, (a, b)), (d, (a, b))):
            if on_segment(p, s, t):
                touches.add((min(ei, ej), max(ei, ej), _key(p)))

    events: list[tuple[int, int, tuple[Fraction, Fraction]]] = []
    violations: list[dict] = []
    for ei, ej, p in proper:
        events.append((min(ei, ej), max(ei, ej), p))
    for ei, ej, p in sorted(touches):
        e, f = edges[ei], edges[ej]
        if p in vkeys:
            continue  # shared endpoint; other cases raised above
        t = _transverse(_local_rays(drawing.polyline(e), p), _local_rays(drawing.polyline(f), p))
        if t is None:
            raise DegenerateOverlap(f"edges {e} and {f} overlap at {p}")
        if t:
            events.append((ei, ej, p))
        else:
            violations.append({"kind": "TangentialTouch", "e1": list(e), "e2": list(f), "at": _pt_json(p)})

    pairs: dict[tuple[Edge, Edge], int] = defaultdict(int)
    points = []
    at_point: dict[tuple[Fraction, Fraction], set[int]] = defaultdict(set)
    for ei, ej, p in events:
        e, f = edges[ei], edges[ej]
        if set(e) & set(f):
            violations.append({"kind": "AdjacentCross", "e1": list(e), "e2": list(f), "at": _pt_json(p)})
            continue
        pairs[(e, f)] += 1
        points.append((e, f, p))
        at_point[p].update((ei, ej))
    for (e, f), k in sorted(pairs.items()):
        if k > 1:
            violations.append({"kind": "DoubleCross", "e1": list(e), "e2": list(f), "count": k})
    for p, es in sorted(at_point.items()):
        if len(es) > 2:
            violations.append({"kind": "TriplePoint", "at": _pt_json(p), "edges": sorted(list(edges[i]) for i in es)})
    total = sum(pairs.values())
    wtotal = total
    if weighted:
        if graph is None:
            raise ValueError("weighted count needs the graph")
        wtotal = sum(graph.weight(*e) * graph.weight(*f) * k for (e, f), k in pairs.items())
    return CrossingReport(total, wtotal, dict(pairs), sorted(points), violations)


def _pt_json(p) -> list:
    return [_enc(_num(p[0])), _enc(_num(p[1]))]


def check_edges_match(drawing: Drawing, graph: Graph) -> None:
    if set(drawing.edges) != set(graph.edges) or len(drawing.positions) != graph.n:
        raise DrawingError("drawing does not match graph")


# ---------------------------------------------------------------------------
# Bounds and anchors
# ---------------------------------------------------------------------------


def all_points(drawing: Drawing) -> list[Point]:
    pts = list(drawing.positions)
    for e in drawing.edges:
        pts.extend(drawing.bends.get(e, ()))
    return pts


def check_grid_bounds(
    drawing: Drawing, box: tuple[Number, Number, Number, Number], open_interval: bool = True
) -> bool:
    """All points integral and inside the box (strictly, by default)."""
    xmin, xmax, ymin, ymax = box
    for x, y in all_points(drawing):
        if not (isinstance(x, int) and isinstance(y, int)):
            return False
        if open_interval:
            if not (xmin < x < xmax and ymin < y < ymax):
                return False
        elif not (xmin <= x <= xmax and ymin <= y <= ymax):
            return False
    return True


def anchor_edge_set(clusters) -> set[Edge]:
    out: set[Edge] = set()
    for c in clusters:
        a = sorted(c.anchor)
        for i in range(len(a)):
            for j in range(i + 1, len(a)):
                out.add((a[i], a[j]))
    return out


def check_anchor_edges(drawing: Drawing, clusters, report: CrossingReport) -> bool:
    return not (anchor_edge_set(clusters) & report.crossed_edges())


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def render_svg(
    drawing: Drawing,
    report: CrossingReport | None = None,
    vertex_colors: Mapping[int, str] | None = None,
    size: int = 800,
) -> str:
    pts = all_points(drawing)
    if pts:
        xs = [float(p[0]) for p in pts]
        ys = [float(p[1]) for p in pts]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0 = y0 = 0.0
        x1 = y1 = 1.0
    span = max(x1 - x0, y1 - y0, 1e-9)
    pad = 20
    scale = (size - 2 * pad) / span

    def tx(p) -> str:
        x = pad + (float(p[0]) - x0) * scale
        y = pad + (y1 - float(p[1])) * scale
        return f"{x:.3f},{y:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<g id="edges" fill="none" stroke="#333" stroke-width="1">',
    ]
    for e in drawing.edges:
        line = " ".join(tx(p) for p in drawing.polyline(e))
        out.append(f'<polyline data-edge="{e[0]}-{e[1]}" points="{line}"/>')
    out.append("</g>")
    out.append('<g id="crossings" fill="#d22">')
    if report is not None:
        for e, f, p in report.points:
            x, y = tx(p).split(",")
            out.append(f'<rect x="{float(x) - 2:.3f}" y="{float(y) - 2:.3f}" width="4" height="4"/>')
    out.append("</g>")
    out.append('<g id="vertices" stroke="#000">')
    for v, p in enumerate(drawing.positions):
        x, y = tx(p).split(",")
        color = (vertex_colors or {}).get(v, "#fff")
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="{color}"><title>{v}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
