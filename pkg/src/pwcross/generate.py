"""Seeded random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .decomposition import AlternatingDecomposition, PathDecomposition, bag_edges, to_alternating
from .graph import Edge, Graph


@dataclass(frozen=True)
class Instance:
    graph: Graph
    decomposition: AlternatingDecomposition


def random_maximal(n: int, w: int, seed: int | None = None, shuffle: bool = True) -> Instance:
    """Maximal graph of pathwidth w on n > w+1 vertices: a random sliding
    window of w+1 vertices, every window turned into a clique."""
    if n <= w + 1:
        raise ValueError(f"need n > w+1 (n={n}, w={w})")
    rng = random.Random(seed)
    ids = list(range(n))
    if shuffle:
        rng.shuffle(ids)
    window = ids[: w + 1]
    bags = [frozenset(window)]
    for k in range(w + 1, n):
        window = list(window)
        window.pop(rng.randrange(len(window)))
        window.append(ids[k])
        bags.append(frozenset(window))
    pd = PathDecomposition(w, tuple(bags))
    g = Graph.from_edges(n, sorted(bag_edges(pd)))
    return Instance(g, to_alternating(g, pd))


def random_subgraph(inst: Instance, keep: float, seed: int | None = None, connected: bool = True) -> Graph:
    """Delete each edge with probability 1-keep, retrying until connected."""
    from .graph import is_connected

    rng = random.Random(seed)
    edges = inst.graph.sorted_edges()
    for _ in range(1000):
        chosen: list[Edge] = [e for e in edges if rng.random() < keep]
        g = Graph.from_edges(inst.graph.n, chosen)
        if not connected or is_connected(g):
            return g
    raise RuntimeError("could not sample a connected subgraph")
