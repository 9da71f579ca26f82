from __future__ import annotations

import pytest

from pwcross.graph import (
    EndpointOutOfRange,
    Graph,
    GraphError,
    SelfLoop,
    biconnected_components,
    connected_components,
    degree,
    is_clique,
    is_connected,
    validate,
)


def _checked(n, edges):
    g = Graph.from_edges(n, edges)
    validate(g)
    return g


def test_k4_valid():
    validate(Graph.complete(4))


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        _checked(4, [(2, 2)])


def test_endpoint_out_of_range():
    with pytest.raises(EndpointOutOfRange):
        _checked(4, [(0, 5)])


def test_errors_share_base():
    assert issubclass(SelfLoop, GraphError)


def test_degrees():
    assert all(degree(Graph.complete(4), v) == 3 for v in range(4))
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert degree(path, 1) == 2
    assert degree(Graph.from_edges(2, []), 0) == 0


def test_biconnected_two_triangles():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    blocks, cuts = biconnected_components(g)
    assert len(blocks) == 2 and cuts == {2}


def test_biconnected_k4_and_path():
    blocks, cuts = biconnected_components(Graph.complete(4))
    assert len(blocks) == 1 and not cuts
    blocks, cuts = biconnected_components(Graph.from_edges(3, [(0, 1), (1, 2)]))
    assert sorted(map(sorted, blocks)) == [[(0, 1)], [(1, 2)]] and cuts == {1}


def test_is_clique():
    assert is_clique(Graph.complete(4), range(4))
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert not is_clique(c4, range(4))
    assert is_clique(c4, [2]) and is_clique(c4, [])


def test_connectivity():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not is_connected(g)
    assert sorted(map(sorted, connected_components(g))) == [[0, 1], [2, 3]]


def test_json_roundtrip_with_weights():
    g = Graph.from_edges(3, [(0, 1), (1, 2)], {(0, 1): 3, (1, 2): 5})
    h = Graph.from_json(g.to_json())
    assert h.sorted_edges() == g.sorted_edges() and h.weight(1, 2) == 5
