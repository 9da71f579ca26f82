"""2-approximation for general pathwidth-3 graphs.

Pipeline: blocks glued at cut vertices; inside a block, degree-2 non-anchor
vertices are stripped and reinserted next to an uncrossed edge; graphs that
are 3-traceable are drawn by maximize/draw/delete on the reversed
decomposition; otherwise the block is split at the lowest missing type-II
edge and the right part is mapped affinely into a thin empty triangle
flanking the separation pair in the drawing of the left part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .decomposition import (
    AlternatingDecomposition,
    Disconnected,
    PathDecomposition,
    check_alternating,
    extract_clusters,
    maximize,
    reverse,
    to_alternating,
    validate_decomposition,
)
from .drawing import Drawing, Point, count_crossings, on_segment, orient
from .exact import WrongWidth, cluster_term, layout_exact
from .graph import Edge, Graph, biconnected_components, is_connected, norm


class Not3Traceable(ValueError):
    pass


class EdgePresent(ValueError):
    pass


class NotBiconnected(ValueError):
    pass


class EdgeCrossedInInput(ValueError):
    pass


class EdgeNotOnHull(ValueError):
    pass


# ---------------------------------------------------------------------------
# 3-traceability and the lower bound
# ---------------------------------------------------------------------------


def non_anchor_vertices(ad: AlternatingDecomposition) -> list[int]:
    """Vertices that occur in exactly one bag (v_1, v_n and singletons)."""
    count: dict[int, int] = {}
    for b in ad.bags:
        for v in b:
            count[v] = count.get(v, 0) + 1
    return sorted((v for v, c in count.items() if c == 1), key=ad.age)


def type2_edges(ad: AlternatingDecomposition) -> list[tuple[int, int, int]]:
    """(i, x+_{i-1}, x-_i) for i = 1..kappa, with x+_0 = v_2."""
    clusters = extract_clusters(ad)
    out = []
    prev_plus = ad.age_order[1]
    for c in clusters:
        out.append((c.index, prev_plus, c.lost))
        prev_plus = c.emerging
    return out


def is_3_traceable(graph: Graph, ad: AlternatingDecomposition) -> tuple[bool, dict | None]:
    if ad.width != 3:
        raise WrongWidth(f"decomposition has width {ad.width}, expected 3")
    if graph.n <= 4:
        low = [v for v in range(graph.n) if len(graph.neighbors(v)) < 3]
        return (not low, {"vertex": low[0]} if low else None)
    for v in non_anchor_vertices(ad):
        if len(graph.neighbors(v)) < 3:
            return False, {"vertex": v, "degree": len(graph.neighbors(v))}
    for i, xp, xm in type2_edges(ad):
        if not graph.has_edge(xp, xm):
            return False, {"missing_index": i, "edge": [xp, xm]}
    return True, None


def lower_bound_pw3(ad: AlternatingDecomposition) -> Fraction:
    if ad.width != 3:
        raise WrongWidth(f"decomposition has width {ad.width}, expected 3")
    if len(ad.bags) <= 1:
        return Fraction(0)
    return Fraction(sum(cluster_term(c.size) for c in extract_clusters(ad)), 2)


# ---------------------------------------------------------------------------
# Geometry on partial drawings
# ---------------------------------------------------------------------------


@dataclass
class Sketch:
    """Straight-line drawing of a vertex subset, keyed by vertex id."""

    pos: dict[int, Point]
    edges: set[Edge] = field(default_factory=set)

    def segments(self) -> list[tuple[Point, Point, Edge]]:
        return [(self.pos[u], self.pos[v], (u, v)) for u, v in self.edges]

    def to_drawing(self, n: int) -> Drawing:
        return Drawing.straight([self.pos[v] for v in range(n)], self.edges)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _tidy(p) -> Point:
    x, y = Fraction(p[0]), Fraction(p[1])
    return (x.numerator if x.denominator == 1 else x, y.numerator if y.denominator == 1 else y)


def _segments_meet(a, b, c, d) -> bool:
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return on_segment(c, a, b) or on_segment(d, a, b) or on_segment(a, c, d) or on_segment(b, c, d)


def _in_closed_triangle(z, a, b, c) -> bool:
    o = orient(a, b, c)
    return orient(a, b, z) * o >= 0 and orient(b, c, z) * o >= 0 and orient(c, a, z) * o >= 0


def _triangle_empty(sk: Sketch, p: int, q: int, apex: Point, skip: Edge | None = None) -> bool:
    """Closed triangle (p, q, apex) meets the sketch only in p, q and the
    segment pq itself."""
    P, Q = sk.pos[p], sk.pos[q]
    for v, z in sk.pos.items():
        if v in (p, q):
            continue
        if _in_closed_triangle(z, P, Q, apex):
            return False
    for a, b, e in sk.segments():
        if e == skip:
            continue
        for s, t in ((P, apex), (apex, Q)):
            if not _segments_meet(a, b, s, t):
                continue
            # Allowed only when the sole contact is the shared corner p or q.
            pts = []
            for corner in (P, Q):
                if corner in (a, b) and corner in (s, t):
                    pts.append(corner)
            if not pts:
                return False
            corner = pts[0]
            other = b if a == corner else a
            far = t if s == corner else s
            if orient(corner, far, other) == 0 and (
                (other[0] - corner[0]) * (far[0] - corner[0]) + (other[1] - corner[1]) * (far[1] - corner[1]) > 0
            ):
                return False
            if on_segment(other, s, t) or on_segment(far, a, b):
                return False
    return True


def _hull_side(sk: Sketch, p: int, q: int) -> int:
    """0 if pq is not on the hull, else the orientation sign of the side
    that holds the other vertices."""
    P, Q = sk.pos[p], sk.pos[q]
    signs = {orient(P, Q, z) for v, z in sk.pos.items() if v not in (p, q)}
    signs.discard(0)
    if len(signs) == 1:
        return signs.pop()
    return 0


def thin_triangle(sk: Sketch, p: int, q: int, allowed_sides: Sequence[int] = (1, -1)) -> Point:
    """Apex of an empty thin triangle on segment pq, inside the convex hull;
    the apex sits at the midpoint displaced by |pq|/K along the normal, K
    doubling."""
    P, Q = sk.pos[p], sk.pos[q]
    mx, my = (_frac(P[0]) + Q[0]) / 2, (_frac(P[1]) + Q[1]) / 2
    nx, ny = -(_frac(Q[1]) - P[1]), _frac(Q[0]) - P[0]
    skip = norm(p, q) if norm(p, q) in sk.edges else None
    corners = _hull_corners(sk.pos.values())
    K = 2
    for _ in range(200):
        for side in allowed_sides:
            apex = (mx + side * nx / K, my + side * ny / K)
            if _inside_hull(apex, corners) and _triangle_empty(sk, p, q, apex, skip):
                return _tidy(apex)
        K *= 2
    raise RuntimeError(f"no empty region beside ({p},{q})")


def _affine_from(src: Sequence[Point], dst: Sequence[Point]):
    """Affine map sending the three src points to the three dst points."""
    (x1, y1), (x2, y2), (x3, y3) = [(_frac(a), _frac(b)) for a, b in src]
    (u1, v1), (u2, v2), (u3, v3) = [(_frac(a), _frac(b)) for a, b in dst]
    det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)
    if det == 0:
        raise ValueError("degenerate source triangle")

    def solve(w1, w2, w3):
        # w = a*x + b*y + c
        a = ((w2 - w1) * (y3 - y1) - (w3 - w1) * (y2 - y1)) / det
        b = ((x2 - x1) * (w3 - w1) - (x3 - x1) * (w2 - w1)) / det
        return a, b, w1 - a * x1 - b * y1

    ax, bx, cx = solve(u1, u2, u3)
    ay, by, cy = solve(v1, v2, v3)
    return lambda p: _tidy((ax * p[0] + bx * p[1] + cx, ay * p[0] + by * p[1] + cy))


def _crossed_edges(sk: Sketch) -> set[Edge]:
    ids = sorted(sk.pos)
    local = {v: k for k, v in enumerate(ids)}
    d = Drawing.straight([sk.pos[v] for v in ids], [(local[u], local[v]) for u, v in sk.edges])
    rep = count_crossings(d)
    return {norm(ids[a], ids[b]) for a, b in rep.crossed_edges()}


def _triangle_hull(sk: Sketch, p: int, q: int) -> int:
    """Third corner r with every vertex inside triangle (p, q, r)."""
    P, Q = sk.pos[p], sk.pos[q]
    for r, R in sk.pos.items():
        if r in (p, q) or orient(P, Q, R) == 0:
            continue
        if all(_in_closed_triangle(z, P, Q, R) for z in sk.pos.values()):
            return r
    raise EdgeNotOnHull(f"({p},{q}) is not a side of a triangular convex hull")


def _merge_sketches(outer: Sketch, inner: Sketch, p: int, q: int, check: bool = True) -> Sketch:
    shared = set(outer.pos) & set(inner.pos)
    if shared != {p, q}:
        raise ValueError(f"drawings share {sorted(shared)}, expected {{{p},{q}}}")
    if check:
        for name, sk in (("outer", outer), ("inner", inner)):
            if norm(p, q) in _crossed_edges(sk):
                raise EdgeCrossedInInput(f"({p},{q}) is crossed in the {name} drawing")
    r = _triangle_hull(inner, p, q)
    side = _hull_side(outer, p, q)
    apex = thin_triangle(outer, p, q, (side,) if side else (1, -1))
    f = _affine_from([inner.pos[p], inner.pos[q], inner.pos[r]], [outer.pos[p], outer.pos[q], apex])
    pos = dict(outer.pos)
    for v, z in inner.pos.items():
        if v not in (p, q):
            pos[v] = f(z)
    return Sketch(pos, outer.edges | inner.edges)


def merge_at_edge(
    outer: Drawing,
    inner: Drawing,
    p: int,
    q: int,
    drop_pq: bool = False,
    inner_map: dict[int, int] | None = None,
) -> Drawing:
    """Map `inner` into a thin empty triangle beside (p, q) of `outer`.

    Inner ids are translated by `inner_map` (default: p and q keep their ids,
    other inner vertices are numbered after the outer ones)."""
    n1 = len(outer.positions)
    if inner_map is None:
        inner_map = {}
        nxt = n1
        for v in range(len(inner.positions)):
            if v in (p, q):
                inner_map[v] = v
            else:
                inner_map[v] = nxt
                nxt += 1
    so = Sketch({v: z for v, z in enumerate(outer.positions)}, set(outer.edges))
    si = Sketch(
        {inner_map[v]: z for v, z in enumerate(inner.positions)},
        {norm(inner_map[u], inner_map[v]) for u, v in inner.edges},
    )
    m = _merge_sketches(so, si, p, q)
    if drop_pq:
        m.edges.discard(norm(p, q))
    n = max(m.pos) + 1
    return m.to_drawing(n)


# ---------------------------------------------------------------------------
# Base case
# ---------------------------------------------------------------------------


def _small_sketch(g: Graph, hull_req: Iterable[int]) -> tuple[Sketch, tuple[int, ...]]:
    """Planar drawing of a graph on at most 4 vertices with hull_req on the hull."""
    req = list(hull_req)
    vs = req + [v for v in range(g.n) if v not in req]
    corners = [(0, 0), (12, 0), (0, 12)]
    pos: dict[int, Point] = {}
    for v, c in zip(vs[:3], corners):
        pos[v] = c
    if len(vs) == 4:
        pos[vs[3]] = (3, 3)
    return Sketch(pos, set(g.edges)), tuple(vs[:3])


def _traceable_sketch(
    g: Graph, ad: AlternatingDecomposition, keep: set[Edge], H: Iterable[int] | None = None
) -> tuple[Sketch, tuple[int, int, int]]:
    """Maximize, draw on the reversed decomposition so that v_1, v_2, v_3
    form the outer triangle, delete the added edges.  Other heads and apex
    choices (and the unreversed order) are tried until every edge of `keep`
    is uncrossed and H lies on the outer triangle."""
    gm, _ = maximize(g, ad)
    need = set(H if H is not None else ad.age_order[:3])
    v4 = ad.age_order[3]
    last_bag = ad.bags[-1]
    (vn,) = last_bag - ad.bags[-2]
    orders = [reverse(ad, head) for head in permutations(sorted(last_bag - {vn}))] + [ad]
    tried = 0
    for rad in orders:
        anchors = extract_clusters(rad)[-1].anchor
        for apex in sorted(anchors, key=lambda v: v != v4):
            lay = layout_exact(gm, rad, apex=apex)
            tried += 1
            if not need <= set(lay.hull):
                continue
            sk = Sketch({v: z for v, z in enumerate(lay.drawing.positions)}, set(g.edges))
            if keep & lay.crossable and keep & _crossed_edges(sk):
                continue
            return sk, lay.hull
    raise RuntimeError(f"none of {tried} layouts keeps {sorted(keep)} uncrossed with {sorted(need)} on the hull")


def draw_3_traceable(graph: Graph, ad: AlternatingDecomposition) -> Drawing:
    ok, why = is_3_traceable(graph, ad)
    if not ok:
        raise Not3Traceable(str(why))
    check_alternating(ad)
    validate_decomposition(graph, ad)
    if graph.n <= 4:
        sk, _ = _small_sketch(graph, ad.age_order[:3])
    else:
        sk, _ = _traceable_sketch(graph, ad, set())
    return sk.to_drawing(graph.n)


# ---------------------------------------------------------------------------
# Splitting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitResult:
    p: int
    q: int
    j: int  # 0-based index of the common 4-bag
    left_vertices: frozenset[int]
    right_vertices: frozenset[int]
    left_bags: tuple[frozenset[int], ...]
    right_bags: tuple[frozenset[int], ...]
    pq_added_left: bool
    pq_added_right: bool
    left_edges: frozenset[Edge]
    right_edges: frozenset[Edge]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "common_bag": self.j + 1,
            "left_vertices": sorted(self.left_vertices),
            "right_vertices": sorted(self.right_vertices),
            "pq_added_left": self.pq_added_left,
            "pq_added_right": self.pq_added_right,
        }


def _is_biconnected(edges: Iterable[Edge], vertices: Iterable[int]) -> bool:
    vs = sorted(set(vertices))
    if len(vs) <= 2:
        return True
    local = {v: k for k, v in enumerate(vs)}
    g = Graph.from_edges(len(vs), [(local[u], local[v]) for u, v in edges])
    if not is_connected(g):
        return False
    blocks, cuts = biconnected_components(g)
    return not cuts


def split_at_missing_edge(graph: Graph, ad: AlternatingDecomposition, i: int) -> SplitResult:
    clusters = extract_clusters(ad)
    if not 2 <= i <= len(clusters):
        raise ValueError(f"cluster index {i} out of range 2..{len(clusters)}")
    cur, prev = clusters[i - 1], clusters[i - 2]
    xm, xp = cur.lost, prev.emerging
    if graph.has_edge(xm, xp):
        raise EdgePresent(f"edge ({xp},{xm}) is present")
    j = cur.first_bag
    p, q = sorted(ad.bags[j] - {xm, xp})
    lb = ad.bags[: j - 1]
    rb = ad.bags[j + 2 :]
    lv = frozenset().union(*lb)
    rv = frozenset().union(*rb)
    pq = norm(p, q)
    le = {e for e in graph.edges if e[0] in lv and e[1] in lv}
    re = {e for e in graph.edges if e[0] in rv and e[1] in rv}
    if (le | re) != set(graph.edges) or (le & re) - {pq}:
        raise AssertionError("split does not partition the edges")
    add_l, add_r = pq not in le, pq not in re
    le.add(pq)
    re.add(pq)
    if not (_is_biconnected(le, lv) and _is_biconnected(re, rv)):
        raise NotBiconnected("a side of the split is not 2-connected")
    return SplitResult(p, q, j, lv, rv, tuple(lb), tuple(rb), add_l, add_r, frozenset(le), frozenset(re))


# ---------------------------------------------------------------------------
# Recursive block drawing
# ---------------------------------------------------------------------------


@dataclass
class _Piece:
    sketch: Sketch
    hull: tuple[int, ...]
    lower: Fraction


def _sub(vertices: Iterable[int], edges: Iterable[Edge], bags: Iterable[Iterable[int]]):
    """Relabel a vertex subset to 0..k-1; returns graph, decomposition, old ids."""
    old = sorted(set(vertices))
    new = {v: k for k, v in enumerate(old)}
    g = Graph.from_edges(len(old), [(new[u], new[v]) for u, v in edges])
    bs = [frozenset(new[v] for v in b if v in new) for b in bags]
    bs = [b for b in bs if b]
    return g, PathDecomposition(3, tuple(bs)), old, new


def _lift(piece: _Piece, old: Sequence[int]) -> _Piece:
    sk = piece.sketch
    return _Piece(
        Sketch({old[v]: z for v, z in sk.pos.items()}, {norm(old[u], old[v]) for u, v in sk.edges}),
        tuple(old[v] for v in piece.hull),
        piece.lower,
    )


def _draw_block(g: Graph, pd: PathDecomposition, H: frozenset[int], keep: frozenset[Edge]) -> _Piece:
    if g.n <= 4:
        sk, hull = _small_sketch(g, sorted(H))
        return _Piece(sk, hull, Fraction(0))
    ad = to_alternating(g, pd, prefer_old=H)
    low = [w for w in non_anchor_vertices(ad) if len(g.neighbors(w)) == 2]
    if low:
        return _strip_degree_two(g, ad, H, keep, low)
    ok, why = is_3_traceable(g, ad)
    if ok:
        sk, hull = _traceable_sketch(g, ad, set(keep), H)
        return _Piece(sk, hull, lower_bound_pw3(ad))
    assert why is not None and "missing_index" in why, why
    sp = split_at_missing_edge(g, ad, why["missing_index"])
    pq = norm(sp.p, sp.q)
    keep_l = {e for e in keep if e in sp.left_edges} | {pq}
    keep_r = {e for e in keep if e in sp.right_edges and e not in keep_l}
    gl, pdl, oldl, newl = _sub(sp.left_vertices, sp.left_edges, sp.left_bags)
    gr, pdr, oldr, newr = _sub(sp.right_vertices, sp.right_edges, sp.right_bags)
    left = _lift(
        _draw_block(gl, pdl, frozenset(newl[v] for v in H), frozenset(norm(newl[u], newl[v]) for u, v in keep_l)),
        oldl,
    )
    right = _lift(
        _draw_block(
            gr,
            pdr,
            frozenset((newr[sp.p], newr[sp.q])),
            frozenset(norm(newr[u], newr[v]) for u, v in keep_r),
        ),
        oldr,
    )
    merged = _merge_sketches(left.sketch, right.sketch, sp.p, sp.q, check=False)
    if not g.has_edge(sp.p, sp.q):
        merged.edges.discard(pq)
    return _Piece(merged, left.hull, left.lower + right.lower)


def _strip_degree_two(
    g: Graph, ad: AlternatingDecomposition, H: frozenset[int], keep: frozenset[Edge], low: list[int]
) -> _Piece:
    v1 = ad.age_order[0]
    special = v1 in low and v1 in H
    pairs = {w: tuple(sorted(g.neighbors(w))) for w in low}
    extra = {norm(*pairs[w]) for w in low} - set(g.edges)
    rest = [v for v in range(g.n) if v not in pairs]
    edges = [e for e in g.edges if e[0] not in pairs and e[1] not in pairs] + sorted(extra)
    gg, pdd, old, new = _sub(rest, edges, ad.bags)
    if special:
        Hn = frozenset(new[v] for v in pairs[v1])
    else:
        Hn = frozenset(new[v] for v in H)
    keep_n = {e for e in keep if e[0] in new and e[1] in new}
    keep_n |= {norm(*pairs[w]) for w in low if not (special and w == v1)}
    inner = _lift(_draw_block(gg, pdd, Hn, frozenset(norm(new[u], new[v]) for u, v in keep_n)), old)
    sk = inner.sketch
    hull = inner.hull
    for w in low:
        if special and w == v1:
            continue
        a, b = pairs[w]
        side = _hull_side(sk, a, b)
        apex = thin_triangle(sk, a, b, (side,) if side else (1, -1))
        sk.pos[w] = apex
        sk.edges.add(norm(w, a))
        sk.edges.add(norm(w, b))
    if special:
        a, b = pairs[v1]
        (r,) = [v for v in hull if v not in (a, b)]
        R, A, B = sk.pos[r], sk.pos[a], sk.pos[b]
        mid = ((_frac(A[0]) + B[0]) / 2, (_frac(A[1]) + B[1]) / 2)
        sk.pos[v1] = _tidy((2 * R[0] - mid[0], 2 * R[1] - mid[1]))
        sk.edges.add(norm(v1, a))
        sk.edges.add(norm(v1, b))
        hull = (v1, a, b)
    for e in extra:
        sk.edges.discard(e)
    return _Piece(sk, hull, inner.lower)


# ---------------------------------------------------------------------------
# Cut vertices and the full pipeline
# ---------------------------------------------------------------------------


def _hull_corners(points: Iterable[Point]) -> list[Point]:
    """Convex hull corners, counterclockwise (exact monotone chain)."""
    pts = sorted(set((_frac(x), _frac(y)) for x, y in points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list = []
        for z in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], z) <= 0:
                out.pop()
            out.append(z)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _inside_hull(z: Point, corners: list[Point]) -> bool:
    if len(corners) < 3:
        return True
    z = (_frac(z[0]), _frac(z[1]))
    return all(orient(corners[k], corners[(k + 1) % len(corners)], z) >= 0 for k in range(len(corners)))


def _same_ray(a, b) -> bool:
    return a[0] * b[1] - a[1] * b[0] == 0 and a[0] * b[0] + a[1] * b[1] > 0


def _in_cone(d, lo, hi) -> bool:
    """d in the closed convex cone spanned by lo and hi."""
    c1 = lo[0] * d[1] - lo[1] * d[0]
    c2 = d[0] * hi[1] - d[1] * hi[0]
    return (c1 >= 0 and c2 >= 0) or _same_ray(d, lo) or _same_ray(d, hi)


def _triangle_empty_at(sk: Sketch, v: int, a: Point, b: Point) -> bool:
    V = sk.pos[v]
    for u, z in sk.pos.items():
        if u != v and _in_closed_triangle(z, V, a, b):
            return False
    for s, t, e in sk.segments():
        if v in e:
            other = t if s == V else s
            if on_segment(a, V, other) or on_segment(b, V, other) or _segments_meet(s, t, a, b):
                return False
            continue
        if _segments_meet(s, t, V, a) or _segments_meet(s, t, a, b) or _segments_meet(s, t, b, V):
            return False
    return True


def _sector_triangle(sk: Sketch, v: int) -> tuple[Point, Point]:
    """Two points spanning an empty thin triangle with corner v, inside the
    convex hull of the sketch whenever that hull is two-dimensional."""
    V = (_frac(sk.pos[v][0]), _frac(sk.pos[v][1]))
    dirs = sorted(
        {(_frac(sk.pos[b if a == v else a][0]) - V[0], _frac(sk.pos[b if a == v else a][1]) - V[1])
         for a, b in sk.edges if v in (a, b)}
    )
    corners = _hull_corners(sk.pos.values())
    bases = dirs or [(Fraction(1), Fraction(0))]
    blockers = list(dirs)
    if len(corners) >= 3 and V in corners:
        k = corners.index(V)
        for c in (corners[k - 1], corners[(k + 1) % len(corners)]):
            blockers.append((c[0] - V[0], c[1] - V[1]))
    for base in bases:
        for turn in (1, -1):
            rot = (-turn * base[1], turn * base[0])
            delta = Fraction(1, 4)
            for _ in range(60):
                d1 = (base[0] + delta * rot[0], base[1] + delta * rot[1])
                d2 = (base[0] + 2 * delta * rot[0], base[1] + 2 * delta * rot[1])
                lo, hi = (base, d2) if turn == 1 else (d2, base)
                if not any(not _same_ray(d, base) and _in_cone(d, lo, hi) for d in blockers):
                    break
                delta /= 2
            else:
                continue
            eps = Fraction(1, 2)
            for _ in range(200):
                a = _tidy((V[0] + eps * d1[0], V[1] + eps * d1[1]))
                b = _tidy((V[0] + eps * d2[0], V[1] + eps * d2[1]))
                if _inside_hull(a, corners) and _inside_hull(b, corners) and _triangle_empty_at(sk, v, a, b):
                    return a, b
                if not (_inside_hull(a, corners) and _inside_hull(b, corners)) and eps < Fraction(1, 1 << 20):
                    break
                eps /= 2
    raise RuntimeError(f"no empty sector at vertex {v}")


def _enclosing_triangle(sk: Sketch, v: int) -> tuple[Point, Point, Point]:
    """Triangle with corner v containing every vertex of the sketch; v must
    be a convex hull corner."""
    V = (_frac(sk.pos[v][0]), _frac(sk.pos[v][1]))
    corners = _hull_corners(sk.pos.values())
    if V not in corners:
        raise EdgeNotOnHull(f"vertex {v} is not a hull corner")
    if len(corners) == 1:
        raise ValueError("single point")
    if len(corners) == 2:
        (other,) = [c for c in corners if c != V]
        u1 = (other[0] - V[0], other[1] - V[1])
        u2 = (-u1[1], u1[0])
    else:
        k = corners.index(V)
        nxt, prv = corners[(k + 1) % len(corners)], corners[k - 1]
        u1 = (nxt[0] - V[0], nxt[1] - V[1])
        u2 = (prv[0] - V[0], prv[1] - V[1])
    det = u1[0] * u2[1] - u1[1] * u2[0]
    t = Fraction(0)
    for z in sk.pos.values():
        dx, dy = _frac(z[0]) - V[0], _frac(z[1]) - V[1]
        alpha = (dx * u2[1] - dy * u2[0]) / det
        beta = (u1[0] * dy - u1[1] * dx) / det
        t = max(t, alpha + beta)
    t = max(t, Fraction(1)) * 2
    return V, (V[0] + t * u1[0], V[1] + t * u1[1]), (V[0] + t * u2[0], V[1] + t * u2[1])


def _glue(total: Sketch, piece: _Piece, v: int) -> None:
    """Map `piece` (which contains v on its hull) into an empty sector at v."""
    sk = piece.sketch
    if len(sk.pos) == 1:
        return
    a, b = _sector_triangle(total, v)
    src = _enclosing_triangle(sk, v)
    f = _affine_from(src, [total.pos[v], a, b])
    for u, z in sk.pos.items():
        if u != v:
            total.pos[u] = f(z)
    total.edges |= sk.edges


def _draw_connected(g: Graph, bags: Sequence[frozenset[int]], p: int) -> _Piece:
    """Drawing of a connected graph with p on the convex hull; cut-components
    of a cut vertex are drawn separately and glued at it."""
    pd = PathDecomposition(3, tuple(bags))
    if g.n <= 2:
        return _draw_block(g, pd, frozenset({p}), frozenset())
    blocks, cuts = biconnected_components(g)
    if not cuts:
        return _draw_block(g, pd, frozenset({p}), frozenset())
    v = p if p in cuts else min(cuts)
    rest = [u for u in range(g.n) if u != v]
    # Components of g - v.
    comp: dict[int, int] = {}
    for s in rest:
        if s in comp:
            continue
        comp[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y != v and y not in comp:
                    comp[y] = s
                    stack.append(y)
    groups: dict[int, list[int]] = {}
    for u in rest:
        groups.setdefault(comp[u], []).append(u)
    parts = sorted((sorted(vs) + [v] for vs in groups.values()), key=lambda vs: (p not in vs, min(vs)))
    j = next(k for k, b in enumerate(bags) if v in b)
    total: Sketch | None = None
    hull: tuple[int, ...] = ()
    lower = Fraction(0)
    for idx, vs in enumerate(parts):
        vset = frozenset(vs)
        sub = []
        for h, b in enumerate(bags):
            x = b & vset
            if x and h < j and idx > 0:
                x = x | {v}
            if x:
                sub.append(x)
        edges = [e for e in g.edges if e[0] in vset and e[1] in vset]
        gs, pds, old, new = _sub(vset, edges, sub)
        validate_decomposition(gs, pds)
        target = p if idx == 0 else v
        piece = _lift(_draw_connected(gs, pds.bags, new[target]), old)
        lower += piece.lower
        if total is None:
            total, hull = piece.sketch, piece.hull
        else:
            _glue(total, piece, v)
    assert total is not None
    return _Piece(total, hull, lower)


@dataclass
class ApproxResult:
    drawing: Drawing
    lower_bound: Fraction
    crossings: int
    blocks: list[dict]

    @property
    def ratio(self) -> Fraction | None:
        return Fraction(self.crossings) / self.lower_bound if self.lower_bound else None

    def certificate(self) -> dict:
        return {
            "crossings": self.crossings,
            "lower_bound": [self.lower_bound.numerator, self.lower_bound.denominator],
            "ratio_bound_claimed": 2,
            "ratio": None if self.ratio is None else [self.ratio.numerator, self.ratio.denominator],
            "within_bound": self.lower_bound == 0 or self.crossings <= 2 * self.lower_bound,
        }


def draw_approx_pw3(graph: Graph, pd: PathDecomposition) -> ApproxResult:
    if pd.width != 3:
        raise WrongWidth(f"decomposition has width {pd.width}, expected 3")
    validate_decomposition(graph, pd)
    if not is_connected(graph):
        raise Disconnected("graph is not connected")
    bags = [b for b in pd.bags if b]
    p = min(bags[0]) if bags else 0
    piece = _draw_connected(graph, bags, p)
    d = piece.sketch.to_drawing(graph.n)
    rep = count_crossings(d)
    d.claimed_crossings = rep.total
    return ApproxResult(d, piece.lower, rep.total, [])
