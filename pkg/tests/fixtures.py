"""Shared test instances (vertex ids are the running example's labels minus one)."""

from __future__ import annotations

from itertools import combinations

from pwcross.decomposition import PathDecomposition, to_alternating
from pwcross.graph import Graph

# Running example: 10 vertices, 13 bags, clusters {2,3,4} and {2,3,8} (1-based).
EX10_BAGS_1BASED = [
    {1, 2, 3, 4}, {2, 3, 4}, {2, 3, 4, 5}, {2, 3, 4}, {2, 3, 4, 6}, {2, 3, 4}, {2, 3, 4, 7},
    {2, 3, 4}, {2, 3, 4, 8}, {2, 3, 8}, {2, 3, 8, 9}, {2, 3, 8}, {2, 3, 8, 10},
]
EX10_BAGS = [frozenset(v - 1 for v in b) for b in EX10_BAGS_1BASED]


def ex10_graph() -> Graph:
    edges = {tuple(sorted(e)) for b in EX10_BAGS for e in combinations(b, 2)}
    return Graph.from_edges(10, sorted(edges))


def ex10_pd() -> PathDecomposition:
    return PathDecomposition.of(EX10_BAGS, 3)


def ex10_ad():
    return to_alternating(ex10_graph(), ex10_pd())


def single_cluster(n: int) -> tuple[Graph, PathDecomposition]:
    """Maximal pathwidth-3 graph whose decomposition is one cluster on n vertices."""
    assert n >= 5
    core = {1, 2, 3}
    bags = [frozenset({0, 1, 2, 3}), frozenset(core)]
    for v in range(4, n):
        bags += [frozenset(core | {v}), frozenset(core)]
    bags.pop()
    edges = {tuple(sorted(e)) for b in bags for e in combinations(b, 2)}
    return Graph.from_edges(n, sorted(edges)), PathDecomposition.of(bags, 3)


def _canonical(n: int, edges: list[tuple[int, int]]) -> tuple:
    from itertools import permutations

    return min(tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges)) for p in permutations(range(n)))


def maximal_pw3_corpus(nmax: int = 7) -> list[tuple[Graph, PathDecomposition]]:
    """Every maximal pathwidth-3 graph on 5..nmax vertices, up to isomorphism,
    from all alternating bag skeletons."""
    from itertools import product

    seen: dict[tuple, tuple[Graph, PathDecomposition]] = {}
    for n in range(5, nmax + 1):
        for choices in product(range(4), repeat=n - 5):
            cur = [0, 1, 2, 3]
            bags = [frozenset(cur)]
            for k, v in enumerate(range(4, n)):
                cur = sorted(cur)
                cur.pop(choices[k - 1] if k else 0)
                bags.append(frozenset(cur))
                cur.append(v)
                bags.append(frozenset(cur))
            edges = sorted({e for b in bags for e in combinations(sorted(b), 2)})
            key = (n, _canonical(n, edges))
            if key not in seen:
                seen[key] = (Graph.from_edges(n, edges), PathDecomposition.of(bags, 3))
    return list(seen.values())
