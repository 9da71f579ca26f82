"""Path decompositions, alternating normal form, age-order and clusters."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graph import Edge, Graph, is_clique, is_connected, norm


class DecompositionError(ValueError):
    pass


class EdgeNotCovered(DecompositionError):
    pass


class IntervalBroken(DecompositionError):
    pass


class WidthExceeded(DecompositionError):
    pass


class TooLarge(ValueError):
    pass


class Disconnected(DecompositionError):
    pass


class GraphTooSmall(DecompositionError):
    pass


class PreferredNotInFirstBag(DecompositionError):
    pass


@dataclass(frozen=True)
class PathDecomposition:
    width: int
    bags: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, bags: Iterable[Iterable[int]], width: int | None = None) -> "PathDecomposition":
        bs = tuple(frozenset(b) for b in bags)
        if width is None:
            width = max((len(b) for b in bs), default=0) - 1
        return cls(width, bs)

    def to_json(self) -> dict:
        return {"width": self.width, "bags": [sorted(b) for b in self.bags]}

    @classmethod
    def from_json(cls, d: Mapping) -> "PathDecomposition":
        if "age_order" in d:
            return AlternatingDecomposition.from_json(d)
        return cls.of(d["bags"], d.get("width"))


@dataclass(frozen=True)
class AlternatingDecomposition(PathDecomposition):
    age_order: tuple[int, ...] = ()
    _age: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_age", {v: i for i, v in enumerate(self.age_order)})

    def age(self, v: int) -> int:
        """0-based age rank (v_1 has age 0)."""
        return self._age[v]

    @property
    def xi(self) -> int:
        return len(self.bags)

    def to_json(self) -> dict:
        d = super().to_json()
        d["age_order"] = list(self.age_order)
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "AlternatingDecomposition":
        bags = tuple(frozenset(b) for b in d["bags"])
        width = d.get("width", max(len(b) for b in bags) - 1)
        ad = cls(width, bags, tuple(d["age_order"]))
        check_alternating(ad)
        return ad


def dumps(pd: PathDecomposition) -> str:
    return json.dumps(pd.to_json(), sort_keys=True)


def validate_decomposition(graph: Graph, pd: PathDecomposition) -> None:
    """Raise on the first violated decomposition property."""
    for i, bag in enumerate(pd.bags):
        if len(bag) > pd.width + 1:
            raise WidthExceeded(f"bag {i} has {len(bag)} > {pd.width + 1} vertices")
        for v in bag:
            if not 0 <= v < graph.n:
                raise DecompositionError(f"bag {i} holds unknown vertex {v}")
    where: dict[int, list[int]] = {}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            where.setdefault(v, []).append(i)
    for v in range(graph.n):
        idx = where.get(v)
        if not idx:
            raise EdgeNotCovered(f"vertex {v} appears in no bag")
        if idx[-1] - idx[0] + 1 != len(idx):
            raise IntervalBroken(f"bags of vertex {v} are not contiguous: {idx}")
    for u, v in sorted(graph.edges):
        a, b = where[u], where[v]
        if max(a[0], b[0]) > min(a[-1], b[-1]):
            raise EdgeNotCovered(f"edge ({u},{v}) is in no bag")


def is_valid_decomposition(graph: Graph, pd: PathDecomposition) -> bool:
    try:
        validate_decomposition(graph, pd)
    except DecompositionError:
        return False
    return True


def check_alternating(ad: AlternatingDecomposition) -> None:
    """Raise DecompositionError unless the alternating invariants hold."""
    w = ad.width
    bags = ad.bags
    verts = set().union(*bags) if bags else set()
    n = len(verts)
    if len(bags) != 2 * n - 2 * w - 1:
        raise DecompositionError(f"{len(bags)} bags, expected {2 * n - 2 * w - 1}")
    for i, bag in enumerate(bags):
        want = w + 1 if i % 2 == 0 else w
        if len(bag) != want:
            raise DecompositionError(f"bag {i + 1} has size {len(bag)}, expected {want}")
        if i % 2 == 1 and not (bag < bags[i - 1] and bag < bags[i + 1]):
            raise DecompositionError(f"bag {i + 1} is not the intersection of its neighbours")
    if sorted(ad.age_order) != sorted(verts) or len(ad.age_order) != n:
        raise DecompositionError("age_order is not a permutation of the vertices")
    if age_order_for(bags, ad.age_order[1 : w + 1]) != ad.age_order:
        raise DecompositionError("age_order does not follow bag introduction order")


def age_order_for(bags: Sequence[frozenset[int]], head: Sequence[int] | None = None) -> tuple[int, ...]:
    """Age-order of an alternating bag sequence; `head` fixes v_2..v_{w+1}."""
    first = bags[0]
    if len(bags) == 1:
        return tuple(sorted(first))
    (v1,) = first - bags[1]
    rest = sorted(first - {v1})
    if head is not None:
        assert set(head) == set(rest)
        rest = list(head)
    order = [v1, *rest]
    for i in range(2, len(bags), 2):
        (v,) = bags[i] - bags[i - 1]
        order.append(v)
    return tuple(order)


# ---------------------------------------------------------------------------
# Exact pathwidth (vertex separation number, subset DP)
# ---------------------------------------------------------------------------


def compute_pathwidth_exact(graph: Graph, limit_n: int = 20) -> tuple[int, PathDecomposition]:
    n = graph.n
    if n > limit_n:
        raise TooLarge(f"n={n} exceeds limit {limit_n}")
    if n == 0:
        return 0, PathDecomposition(0, ())
    if graph.m == 0:
        return 0, PathDecomposition.of([[v] for v in range(n)], 0)
    full = (1 << n) - 1
    subsets = np.arange(1 << n, dtype=np.int64)
    boundary = np.zeros(1 << n, dtype=np.int16)
    for v in range(n):
        nb = 0
        for u in graph.neighbors(v):
            nb |= 1 << u
        inside = (subsets >> v) & 1
        escapes = (nb & ~subsets) != 0
        boundary += (inside & escapes).astype(np.int16)
    popcount = np.zeros(1 << n, dtype=np.int8)
    for v in range(n):
        popcount += ((subsets >> v) & 1).astype(np.int8)
    big = np.int16(n + 1)
    best = np.full(1 << n, big, dtype=np.int16)
    best[0] = 0
    for k in range(1, n + 1):
        layer = subsets[popcount == k]
        cand = np.full(layer.shape, big, dtype=np.int16)
        for v in range(n):
            has = ((layer >> v) & 1).astype(bool)
            prev = best[layer[has] ^ (1 << v)]
            cand[has] = np.minimum(cand[has], prev)
        best[layer] = np.maximum(cand, boundary[layer])
    width = int(best[full])
    # Walk back to an optimal vertex ordering.
    order: list[int] = []
    s = full
    while s:
        for v in range(n):
            if s >> v & 1 and max(int(best[s ^ (1 << v)]), int(boundary[s])) == best[s]:
                order.append(v)
                s ^= 1 << v
                break
    order.reverse()
    return width, decomposition_from_order(graph, order)


def decomposition_from_order(graph: Graph, order: Sequence[int]) -> PathDecomposition:
    pos = {v: i for i, v in enumerate(order)}
    last_nb = {v: max((pos[u] for u in graph.neighbors(v)), default=pos[v]) for v in order}
    bags = []
    for i, v in enumerate(order):
        bag = {v} | {u for u in order[:i] if last_nb[u] >= i}
        bags.append(bag)
    return PathDecomposition.of(bags)


# ---------------------------------------------------------------------------
# Alternating normal form
# ---------------------------------------------------------------------------


def to_alternating(
    graph: Graph,
    pd: PathDecomposition,
    prefer_old: Iterable[int] | None = None,
) -> AlternatingDecomposition:
    """Normalize a valid decomposition into alternating form.

    The big bags are a sliding window of w+1 vertices over the introduction
    order: each step drops one vertex whose true interval has already ended
    (lowest id first) and adds the next introduced vertex.
    """
    validate_decomposition(graph, pd)
    w = pd.width
    n = graph.n
    if n <= w + 1:
        raise GraphTooSmall(f"n={n} must exceed w+1={w + 1}")
    if not is_connected(graph):
        raise Disconnected("graph is not connected")
    bags = [b for b in pd.bags if b]
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i, b in enumerate(bags):
        for v in b:
            first.setdefault(v, i)
            last[v] = i
    # Event sequence: at bag i, introduce new vertices (ascending id), then
    # retire vertices whose last bag is i.  A vertex is dead once retired.
    preferred = set(prefer_old or ())
    if not preferred <= bags[0]:
        raise PreferredNotInFirstBag(f"{sorted(preferred)} not in first bag")
    intro = sorted(range(n), key=lambda v: (first[v], v not in preferred, v))
    window = set(intro[: w + 1])
    big = [frozenset(window)]
    dropped_first: int | None = None
    for k in range(w + 1, n):
        u = intro[k]
        # Vertices whose true interval ended strictly before u's first bag.
        dead = [x for x in window if last[x] < first[u]]
        if not dead:
            raise DecompositionError("no vertex can be forgotten; decomposition inconsistent")
        if dropped_first is None:
            # Keep preferred vertices for v_2, v_3 when there is a choice.
            dead.sort(key=lambda x: (x in preferred, x))
            x = dead[0]
            dropped_first = x
        else:
            x = min(dead)
        window.remove(x)
        window.add(u)
        big.append(frozenset(window))
    out: list[frozenset[int]] = []
    for i, b in enumerate(big):
        if i:
            out.append(big[i - 1] & b)
        out.append(b)
    head = None
    if len(out) > 1:
        (v1,) = out[0] - out[1]
        rest = sorted(out[0] - {v1}, key=lambda v: (v not in preferred, v))
        head = rest
    ad = AlternatingDecomposition(w, tuple(out), age_order_for(out, head))
    check_alternating(ad)
    return ad


def reverse(ad: AlternatingDecomposition, head: Sequence[int] | None = None) -> AlternatingDecomposition:
    """Reversed bag sequence; `head` optionally fixes the new v_2..v_{w+1}."""
    bags = tuple(reversed(ad.bags))
    return AlternatingDecomposition(ad.width, bags, age_order_for(bags, head))


def restrict(ad: AlternatingDecomposition, lo: int, hi: int) -> PathDecomposition:
    """Plain decomposition made of bags lo..hi (0-based, inclusive)."""
    return PathDecomposition(ad.width, ad.bags[lo : hi + 1])


# ---------------------------------------------------------------------------
# Maximality
# ---------------------------------------------------------------------------


def bag_edges(pd: PathDecomposition) -> set[Edge]:
    out: set[Edge] = set()
    for b in pd.bags:
        out.update(norm(u, v) for u, v in combinations(sorted(b), 2))
    return out


def maximize(graph: Graph, pd: PathDecomposition) -> tuple[Graph, list[Edge]]:
    added = sorted(bag_edges(pd) - graph.edges)
    return graph.with_edges(add=added), added


def is_maximal(graph: Graph, pd: PathDecomposition) -> bool:
    return all(is_clique(graph, b) for b in pd.bags)


# ---------------------------------------------------------------------------
# Clusters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cluster:
    index: int
    anchor: frozenset[int]
    first_bag: int
    last_bag: int
    lost: int | None
    emerging: int | None
    singletons: tuple[int, ...]
    vertices: frozenset[int]
    introduced: tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def introduced_count(self) -> int:
        return len(self.introduced)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "anchor": sorted(self.anchor),
            "bags": [self.first_bag + 1, self.last_bag + 1],
            "lost": self.lost,
            "emerging": self.emerging,
            "singletons": list(self.singletons),
            "size": self.size,
            "introduced_count": self.introduced_count,
        }


def extract_clusters(ad: AlternatingDecomposition) -> list[Cluster]:
    """Cluster sequence; width 3 uses size-3 bags, wider decompositions use
    the three-oldest anchor-triplet rule.  Bag indices are 0-based."""
    if ad.width == 3:
        return _clusters_w3(ad)
    return _clusters_general(ad)


def _clusters_w3(ad: AlternatingDecomposition) -> list[Cluster]:
    bags = ad.bags
    out: list[Cluster] = []
    i = 1
    while i < len(bags):
        y = bags[i]
        lo = i - 1
        hi = i + 1
        while hi + 2 < len(bags) and y <= bags[hi + 2]:
            hi += 2
        (lost,) = bags[lo] - bags[lo + 1]
        (emerging,) = bags[hi] - bags[hi - 1]
        verts = frozenset().union(*bags[lo : hi + 1])
        singles = tuple(
            sorted(verts - y - {lost, emerging}, key=ad.age)
        )
        out.append(Cluster(len(out) + 1, y, lo, hi, lost, emerging, singles, verts))
        i = hi + 1
    return out


def _clusters_general(ad: AlternatingDecomposition) -> list[Cluster]:
    bags = ad.bags
    anchors: list[frozenset[int]] = []
    for bag in bags[1:]:
        t = frozenset(sorted(bag, key=ad.age)[:3])
        if t not in anchors:
            anchors.append(t)
    raw = []
    for t in anchors:
        idx = [i for i, b in enumerate(bags) if t <= b]
        raw.append((idx[0], idx[-1], t))
    raw.sort(key=lambda r: (r[0], r[1]))
    base = set(ad.age_order[: ad.width + 1])
    owner: dict[int, int] = {}
    for k in sorted(range(len(raw)), key=lambda k: (raw[k][1], raw[k][0])):
        lo, hi, _ = raw[k]
        for v in frozenset().union(*bags[lo : hi + 1]):
            if v not in base and v not in owner:
                owner[v] = k
    out = []
    for k, (lo, hi, t) in enumerate(raw):
        verts = frozenset().union(*bags[lo : hi + 1])
        intro = tuple(sorted((v for v, o in owner.items() if o == k), key=ad.age))
        lost = next(iter(bags[lo] - bags[lo + 1])) if lo % 2 == 0 and lo + 1 < len(bags) else None
        emerging = next(iter(bags[hi] - bags[hi - 1])) if hi % 2 == 0 and hi > 0 else None
        out.append(Cluster(k + 1, t, lo, hi, lost, emerging, (), verts, intro))
    return out


def singleton_count(clusters: Sequence[Cluster]) -> int:
    return sum(len(c.singletons) for c in clusters)
