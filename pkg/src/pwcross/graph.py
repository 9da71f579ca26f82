"""Simple undirected graphs with dense integer vertex ids."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Base class for structural validation failures."""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class EndpointOutOfRange(GraphError):
    pass


class NonpositiveWeight(GraphError):
    pass


Edge = tuple[int, int]


def norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    weights: Mapping[Edge, int] | None = None
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if 0 <= u < self.n and 0 <= v < self.n:
                adj[u].add(v)
                adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Iterable[int]],
        weights: Mapping[Edge, int] | None = None,
    ) -> "Graph":
        """Build and validate a graph; raises on loops, duplicates or bad ids."""
        seen: set[Edge] = set()
        for e in edges:
            u, v = e
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise EndpointOutOfRange(f"edge ({u},{v}) with n={n}")
            key = norm(u, v)
            if key in seen:
                raise DuplicateEdge(f"duplicate edge {key}")
            seen.add(key)
        w = None
        if weights is not None:
            w = {norm(*k): int(val) for k, val in weights.items()}
        g = cls(n, frozenset(seen), w)
        validate(g)
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, combinations(range(n), 2))

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def weight(self, u: int, v: int) -> int:
        if self.weights is None:
            return 1
        return self.weights[norm(u, v)]

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def with_edges(self, add: Iterable[Edge] = (), remove: Iterable[Edge] = ()) -> "Graph":
        es = set(self.edges)
        es.difference_update(norm(*e) for e in remove)
        es.update(norm(*e) for e in add)
        return Graph.from_edges(self.n, es)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to 0..k-1; returns (graph, new->old map)."""
        old = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(old)}
        es = [(idx[u], idx[v]) for u, v in self.edges if u in idx and v in idx]
        return Graph.from_edges(len(old), es), old

    def to_json(self) -> dict:
        d: dict = {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}
        if self.weights is not None:
            d["weights"] = {f"{u},{v}": self.weights[(u, v)] for u, v in self.sorted_edges()}
        return d

    @classmethod
    def from_json(cls, d: Mapping) -> "Graph":
        weights = None
        if "weights" in d and d["weights"] is not None:
            weights = {}
            for key, val in d["weights"].items():
                a, b = (int(t) for t in key.split(","))
                weights[norm(a, b)] = val
        return cls.from_edges(int(d["n"]), [tuple(e) for e in d["edges"]], weights)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def validate(graph: Graph) -> None:
    """Raise the first invariant violation found, otherwise return None."""
    for u, v in sorted(graph.edges):
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if not (0 <= u < graph.n and 0 <= v < graph.n):
            raise EndpointOutOfRange(f"edge ({u},{v}) with n={graph.n}")
        if u > v:
            raise DuplicateEdge(f"edge ({u},{v}) not normalized")
    if graph.weights is not None:
        for e in sorted(graph.edges):
            w = graph.weights.get(e)
            if w is None or w < 1:
                raise NonpositiveWeight(f"edge {e} has weight {w}")


def degree(graph: Graph, v: int) -> int:
    if not 0 <= v < graph.n:
        raise EndpointOutOfRange(f"vertex {v} with n={graph.n}")
    return len(graph.neighbors(v))


def is_clique(graph: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    for v in vs:
        if not 0 <= v < graph.n:
            raise EndpointOutOfRange(f"vertex {v} with n={graph.n}")
    return all(graph.has_edge(u, v) for u, v in combinations(vs, 2))


def is_connected(graph: Graph, vertices: Iterable[int] | None = None) -> bool:
    vs = set(range(graph.n)) if vertices is None else set(vertices)
    if not vs:
        return True
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in graph.neighbors(u):
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


def connected_components(graph: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in range(graph.n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in graph.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def biconnected_components(graph: Graph) -> tuple[list[frozenset[Edge]], set[int]]:
    """Block decomposition by Hopcroft-Tarjan (iterative DFS).

    Returns the edge sets of the blocks and the set of cut vertices.
    """
    n = graph.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[frozenset[Edge]] = []
    cuts: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: list[Edge] = []
        stack = [(root, -1, iter(sorted(graph.neighbors(root))))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append(norm(u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, u, iter(sorted(graph.neighbors(w)))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append(norm(u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                target = norm(parent, u)
                block = set()
                while True:
                    e = edge_stack.pop()
                    block.add(e)
                    if e == target:
                        break
                blocks.append(frozenset(block))
        if root_children > 1:
            cuts.add(root)
    return blocks, cuts
