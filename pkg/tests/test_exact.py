from __future__ import annotations

import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import ex10_ad, ex10_graph, single_cluster
from pwcross.decomposition import PathDecomposition, extract_clusters, to_alternating
from pwcross.drawing import check_anchor_edges, check_grid_bounds, count_crossings
from pwcross.exact import (
    NotMaximal,
    cluster_term,
    cr_exact,
    draw_exact,
    grid_box,
    layout_exact,
    slope_violations,
    zarankiewicz,
)
from pwcross.generate import random_maximal
from pwcross.graph import Graph


def test_zarankiewicz_values():
    assert zarankiewicz(3, 3) == 1
    assert zarankiewicz(3, 6) == 6
    assert all(zarankiewicz(1, m) == 0 for m in range(10))
    assert zarankiewicz(4, 5) == zarankiewicz(5, 4) == 8


def test_cluster_term_is_half_biclique():
    for size in range(5, 30):
        assert cluster_term(size) == (size - 3) // 2 * ((size - 4) // 2)
        assert 2 * cluster_term(size) >= zarankiewicz(3, size - 3)


def test_ex10_value_and_drawing():
    g, ad = ex10_graph(), ex10_ad()
    assert cr_exact(g, ad) == 5
    d = draw_exact(g, ad)
    rep = count_crossings(d, g)
    assert rep.total == 5 and rep.is_good
    assert check_grid_bounds(d, grid_box(10))
    assert check_anchor_edges(d, extract_clusters(ad), rep)


@pytest.mark.parametrize("n,value", [(5, 0), (6, 1), (7, 2), (8, 4), (9, 6)])
def test_single_cluster(n, value):
    g, pd = single_cluster(n)
    ad = to_alternating(g, pd)
    assert cr_exact(g, ad) == value
    assert count_crossings(draw_exact(g, ad), g).total == value


def test_single_cluster_7_crossing_pairs():
    g, pd = single_cluster(7)
    ad = to_alternating(g, pd)
    (c,) = extract_clusters(ad)
    rep = count_crossings(draw_exact(g, ad), g)
    assert rep.total == 2
    singles = set(c.singletons) | {c.emerging}
    special = tuple(sorted((c.lost, ad.age_order[1])))
    for e, f in rep.pairs:
        touched = [x for x in (e, f) if set(x) & singles]
        assert touched, (e, f)
        assert len(touched) == 2 or special in (e, f)


def test_k4_planar():
    g = Graph.complete(4)
    from pwcross.decomposition import AlternatingDecomposition

    ad = AlternatingDecomposition(3, (frozenset(range(4)),), (0, 1, 2, 3))
    assert cr_exact(g, ad) == 0
    assert count_crossings(draw_exact(g, ad), g).total == 0


def test_not_maximal_rejected():
    g = ex10_graph().with_edges(remove=[(1, 2)])
    with pytest.raises(NotMaximal):
        draw_exact(g, to_alternating(g, PathDecomposition.of(ex10_ad().bags, 3)))


@settings(max_examples=60, deadline=None)
@given(st.integers(5, 60), st.integers(0, 10**6))
def test_random_maximal_exact(n, seed):
    inst = random_maximal(n, 3, seed)
    g = inst.graph
    ad = to_alternating(g, inst.decomposition)
    lay = layout_exact(g, ad)
    rep = count_crossings(lay.drawing, g)
    assert rep.total == cr_exact(g, ad)
    assert rep.is_good
    assert check_grid_bounds(lay.drawing, grid_box(n))
    assert check_anchor_edges(lay.drawing, extract_clusters(ad), rep)
    assert not slope_violations(lay.drawing, lay.groups)


def test_large_single_cluster_fast():
    g, pd = single_cluster(200)
    ad = to_alternating(g, pd)
    t = time.perf_counter()
    value = cr_exact(g, ad)
    assert time.perf_counter() - t < 1.0
    assert value == cluster_term(200)
    assert count_crossings(draw_exact(g, ad), g).total == value
