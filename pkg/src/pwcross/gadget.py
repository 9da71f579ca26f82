"""Weighted cycle-and-chords gadget built from a Partition instance."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .decomposition import PathDecomposition, TooLarge, is_maximal, validate_decomposition
from .drawing import Drawing, count_crossings
from .graph import Graph
from .oracle import OddTotal, partition_bruteforce


@dataclass(frozen=True)
class PartitionInstance:
    a: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.a or any(x <= 0 for x in self.a):
            raise ValueError("entries must be positive and nonempty")

    @classmethod
    def parse(cls, text: str) -> "PartitionInstance":
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def total(self) -> int:
        return sum(self.a)

    @property
    def S(self) -> int:
        if self.total % 2:
            raise OddTotal(f"total {self.total} is odd")
        return self.total // 2

    @property
    def c(self) -> int:
        # sum a_i^2 has the parity of sum a_i, so this is exact for even totals
        return sum(x * x for x in self.a) // 2


def wcr_threshold(inst: PartitionInstance) -> int:
    return inst.S ** 2 - inst.c


def formula(inst: PartitionInstance, J: Iterable[int]) -> int:
    """Pairwise products within J plus within its complement (J 1-based)."""
    inside = set(J)
    a = inst.a
    out = 0
    for i, j in combinations(range(1, inst.n + 1), 2):
        if (i in inside) == (j in inside):
            out += a[i - 1] * a[j - 1]
    return out


def x_id(i: int) -> int:
    return i


def y_id(inst_n: int, i: int) -> int:
    return inst_n + 1 + i


@dataclass(frozen=True)
class WeightedGadget:
    instance: PartitionInstance
    graph: Graph
    threshold: int
    decomposition: PathDecomposition

    @property
    def cycle(self) -> list[int]:
        n = self.instance.n
        return [x_id(i) for i in range(n + 1)] + [y_id(n, i) for i in range(n + 1)]

    def to_json(self) -> dict:
        return {
            "a": list(self.instance.a),
            "S": self.instance.S,
            "c": self.instance.c,
            "threshold": self.threshold,
            "graph": self.graph.to_json(),
            "decomposition": self.decomposition.to_json(),
            "bags_are_cliques": is_maximal(self.graph, self.decomposition),
        }


def build_gadget(inst: PartitionInstance) -> WeightedGadget:
    n = inst.n
    S = inst.S
    heavy = 2 * S + 1
    cyc = [x_id(i) for i in range(n + 1)] + [y_id(n, i) for i in range(n + 1)]
    edges = []
    weights = {}
    for k in range(len(cyc)):
        u, v = cyc[k], cyc[(k + 1) % len(cyc)]
        edges.append((u, v))
        weights[(min(u, v), max(u, v))] = heavy
    for i in range(1, n + 1):
        u, v = x_id(i), y_id(n, i)
        edges.append((u, v))
        weights[(u, v)] = inst.a[i - 1]
    g = Graph.from_edges(2 * n + 2, edges, weights)
    x0, y0 = x_id(0), y_id(n, 0)
    if n == 1:
        bags = [{x0, y0, x_id(1), y_id(n, 1)}]
    else:
        bags = []
        for k in range(1, n):
            bags.append({x0, y0, x_id(k), x_id(k + 1), y_id(n, k)})
            bags.append({x0, y0, x_id(k + 1), y_id(n, k), y_id(n, k + 1)})
    pd = PathDecomposition.of(bags, 4)
    validate_decomposition(g, pd)
    return WeightedGadget(inst, g, wcr_threshold(inst), pd)


def _dist(k: int) -> int:
    # Irregular spacing keeps three chords from meeting in one point.
    return k * k + 3 * k


def draw_from_partition(gadget: WeightedGadget, J: Iterable[int]) -> Drawing:
    """X-shaped straight-line drawing: chords in J join the upper legs,
    the others the lower legs; x_0 sits at the centre and y_0 high above."""
    inst = gadget.instance
    n = inst.n
    inside = set(J)
    pos: dict[int, tuple[int, int]] = {}
    pos[x_id(0)] = (0, 0)
    for i in range(1, n + 1):
        up = 1 if i in inside else -1
        dl = _dist(i)
        dr = _dist(n + 1 - i)
        pos[x_id(i)] = (-dl, up * dl)
        pos[y_id(n, i)] = (dr, up * dr)
    far = _dist(n + 1)
    pos[y_id(n, 0)] = (0, 4 * far * far)
    d = Drawing.straight([pos[v] for v in range(2 * n + 2)], gadget.graph.edges)
    d.claimed_crossings = formula(inst, inside)
    return d


def check_instance(inst: PartitionInstance) -> dict:
    if inst.n > 24:
        raise TooLarge("instance too large for exhaustive checking")
    if inst.total % 2:
        return {"a": list(inst.a), "yes": False, "reason": "odd total", "ok": True}
    gadget = build_gadget(inst)
    yes, J = partition_bruteforce(list(inst.a))
    K = gadget.threshold
    if yes:
        assert J is not None
        d = draw_from_partition(gadget, J)
        rep = count_crossings(d, gadget.graph, weighted=True)
        ok = rep.weighted_total == K and rep.is_good
        return {"a": list(inst.a), "yes": True, "J": sorted(J), "threshold": K, "wcr": rep.weighted_total, "ok": ok}
    best = min(
        formula(inst, J2)
        for size in range(inst.n + 1)
        for J2 in combinations(range(1, inst.n + 1), size)
    )
    return {"a": list(inst.a), "yes": False, "threshold": K, "min_formula": best, "ok": best > K}
