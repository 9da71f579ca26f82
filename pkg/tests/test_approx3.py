from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import EX10_BAGS, ex10_ad, ex10_graph, single_cluster
from pwcross.approx3 import (
    EdgePresent,
    draw_3_traceable,
    draw_approx_pw3,
    is_3_traceable,
    lower_bound_pw3,
    merge_at_edge,
    split_at_missing_edge,
    type2_edges,
)
from pwcross.decomposition import AlternatingDecomposition, PathDecomposition, extract_clusters, to_alternating
from pwcross.drawing import Drawing, count_crossings
from pwcross.exact import cr_exact, draw_exact, layout_exact
from pwcross.generate import random_maximal, random_subgraph
from pwcross.graph import Graph


def _ad_for(g: Graph) -> AlternatingDecomposition:
    return to_alternating(g, PathDecomposition.of(EX10_BAGS, 3))


def test_ex10_type2_edges():
    assert [(i, *sorted((a, b))) for i, a, b in type2_edges(ex10_ad())] == [(1, 0, 1), (2, 3, 7)]


def test_maximal_is_traceable():
    assert is_3_traceable(ex10_graph(), ex10_ad()) == (True, None)
    for seed in range(20):
        inst = random_maximal(8 + seed, 3, seed)
        assert is_3_traceable(inst.graph, to_alternating(inst.graph, inst.decomposition))[0]


def test_missing_type2_edge_witness():
    g = ex10_graph().with_edges(remove=[(3, 7)])
    ok, why = is_3_traceable(g, _ad_for(g))
    assert not ok and why["missing_index"] == 2 and sorted(why["edge"]) == [3, 7]


def test_low_degree_witness():
    g = ex10_graph().with_edges(remove=[(1, 4)])
    ok, why = is_3_traceable(g, _ad_for(g))
    assert not ok and why["vertex"] == 4


def test_draw_3_traceable():
    g = ex10_graph()
    assert count_crossings(draw_3_traceable(g, ex10_ad()), g).total == 5
    h = g.with_edges(remove=[(1, 2)])
    ad = _ad_for(h)
    assert is_3_traceable(h, ad)[0]
    rep = count_crossings(draw_3_traceable(h, ad), h)
    assert rep.is_good and rep.total <= 5


def test_draw_3_traceable_k4():
    g = Graph.complete(4)
    ad = AlternatingDecomposition(3, (frozenset(range(4)),), (0, 1, 2, 3))
    assert count_crossings(draw_3_traceable(g, ad), g).total == 0


def test_lower_bounds():
    assert lower_bound_pw3(ex10_ad()) == Fraction(5, 2)
    g, pd = single_cluster(6)
    assert lower_bound_pw3(to_alternating(g, pd)) == Fraction(1, 2)
    g, pd = single_cluster(5)
    assert lower_bound_pw3(to_alternating(g, pd)) == 0


def test_split_ex10():
    g = ex10_graph().with_edges(remove=[(3, 7)])
    sp = split_at_missing_edge(g, _ad_for(g), 2)
    assert {sp.p, sp.q} == {1, 2}
    assert sp.left_vertices == set(range(7))
    assert sp.right_vertices == {1, 2, 7, 8, 9}


def test_split_rejects_present_edge():
    ad = ex10_ad()
    with pytest.raises(EdgePresent):
        split_at_missing_edge(ex10_graph(), ad, 2)


def test_merge_planar_k4s():
    k4 = Drawing.straight([(0, 0), (12, 0), (0, 12), (3, 3)], Graph.complete(4).edges)
    merged = merge_at_edge(k4, k4, 0, 1)
    assert len(merged.positions) == 6
    assert count_crossings(merged).total == 0


def test_merge_adds_crossings():
    g, ad = ex10_graph(), ex10_ad()
    outer = draw_exact(g, ad)
    h, pd = single_cluster(6)
    lay = layout_exact(h, to_alternating(h, pd))
    inner = lay.drawing
    # Glue an uncrossed anchor edge of the outer drawing to a side of the
    # inner drawing's outer triangle.
    (c1, _) = extract_clusters(ad)
    p, q = sorted(c1.anchor)[:2]
    _, a, b = lay.hull
    mapping = {a: p, b: q}
    nxt = 10
    for v in range(6):
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    merged = merge_at_edge(outer, inner, p, q, inner_map=mapping)
    assert count_crossings(merged).total == 6


def test_pipeline_maximal_is_exact():
    g, ad = ex10_graph(), ex10_ad()
    res = draw_approx_pw3(g, PathDecomposition.of(EX10_BAGS, 3))
    assert res.crossings == cr_exact(g, ad) == 5


def test_pipeline_cut_vertex_additive():
    g1, pd1 = single_cluster(7)
    g2, pd2 = single_cluster(6)
    # Identify vertex 0 of the second copy with vertex 6 (the last vertex) of the first.
    off = 7 - 1
    relabel = {v: (6 if v == 0 else v + off) for v in range(6)}
    edges = list(g1.edges) + [tuple(sorted((relabel[u], relabel[v]))) for u, v in g2.edges]
    g = Graph.from_edges(12, edges)
    bags = list(pd1.bags) + [frozenset(relabel[v] for v in b) for b in pd2.bags]
    res = draw_approx_pw3(g, PathDecomposition.of(bags, 3))
    assert res.crossings == 2 + 1
    assert count_crossings(res.drawing, g).is_good


def test_pipeline_split_no_worse_than_pieces():
    g = ex10_graph().with_edges(remove=[(3, 7)])
    ad = _ad_for(g)
    sp = split_at_missing_edge(g, ad, 2)
    res = draw_approx_pw3(g, PathDecomposition.of(EX10_BAGS, 3))
    pieces = 0
    for vs, es in ((sp.left_vertices, sp.left_edges), (sp.right_vertices, sp.right_edges)):
        old = sorted(vs)
        new = {v: k for k, v in enumerate(old)}
        h = Graph.from_edges(len(old), [(new[a], new[b]) for a, b in es])
        bags = [frozenset(new[v] for v in b if v in new) for b in EX10_BAGS]
        pieces += draw_approx_pw3(h, PathDecomposition.of([b for b in bags if b], 3)).crossings
    assert res.crossings <= pieces
    assert res.crossings <= 2 * res.lower_bound


@settings(max_examples=60, deadline=None)
@given(st.integers(6, 30), st.sampled_from([0.35, 0.5, 0.7, 0.85]), st.integers(0, 10**6))
def test_random_subgraphs_within_ratio(n, keep, seed):
    inst = random_maximal(n, 3, seed)
    try:
        g = random_subgraph(inst, keep, seed)
    except RuntimeError:
        return
    res = draw_approx_pw3(g, inst.decomposition)
    rep = count_crossings(res.drawing, g)
    assert rep.is_good
    assert rep.total == res.crossings <= 2 * res.lower_bound


@settings(max_examples=25, deadline=None)
@given(st.integers(5, 40), st.integers(0, 10**6))
def test_random_maximal_reproduces_exact(n, seed):
    inst = random_maximal(n, 3, seed)
    res = draw_approx_pw3(inst.graph, inst.decomposition)
    assert res.crossings == cr_exact(inst.graph, to_alternating(inst.graph, inst.decomposition))
