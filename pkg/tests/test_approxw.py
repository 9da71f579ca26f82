from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwcross.approxw import (
    PredecessorList,
    WidthTooSmall,
    bounds_for,
    clique_decomposition,
    layout_maximal_pww,
    lower_bound_pww,
    mu,
    per_vertex_crossing_bound,
    per_vertex_crossing_bound_coarse,
    pww_box,
    ratio_guarantee,
    upper_bound_pww,
)
from pwcross.decomposition import PathDecomposition, extract_clusters, to_alternating
from pwcross.drawing import check_grid_bounds, count_crossings
from pwcross.generate import random_maximal
from pwcross.graph import Graph
from pwcross.oracle import rectilinear_cr_bruteforce


def w4_single_cluster() -> tuple[Graph, object]:
    bags = [{0, 1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4, 5}]
    g = Graph.from_edges(6, sorted({e for b in bags for e in combinations(sorted(b), 2)}))
    return g, to_alternating(g, PathDecomposition.of(bags, 4))


def restricted_membership(ad) -> Counter:
    """For each 4-set: clusters containing it with exactly two members in the anchor."""
    cnt: Counter = Counter()
    for c in extract_clusters(ad):
        for s in combinations(sorted(c.vertices), 4):
            if len(set(s) & c.anchor) == 2:
                cnt[s] += 1
    return cnt


def test_mu_and_ratio():
    assert mu(4) == 3 and mu(5) == 5
    assert ratio_guarantee(4) == 2 * 3 * 2 * 4
    assert all(ratio_guarantee(w) <= 4 * w**3 for w in range(4, 12))
    with pytest.raises(WidthTooSmall):
        upper_bound_pww([], 3)


def test_upper_bound_examples():
    g, ad = w4_single_cluster()
    assert upper_bound_pww(extract_clusters(ad), 4) == 17
    g, ad = clique_decomposition(4)
    assert upper_bound_pww(extract_clusters(ad), 4) == 5


def test_lower_bound_examples():
    g, ad = clique_decomposition(4)
    assert lower_bound_pww(extract_clusters(ad), 4) == Fraction(1, 4)
    g, ad = clique_decomposition(5)
    assert lower_bound_pww(extract_clusters(ad), 5) == Fraction(comb(6, 4), 5) / 6


def test_per_vertex_bound():
    p = PredecessorList(9, (0, 1, 2, 3), (4, 4, 5, 5))
    assert per_vertex_crossing_bound(p, 4) == 9 == per_vertex_crossing_bound_coarse(p, 4)
    flat = PredecessorList(9, (0, 1, 2, 3), (2, 2, 2, 2))
    assert per_vertex_crossing_bound(flat, 4) == 0


@pytest.mark.parametrize("w", [4, 5, 6])
def test_clique_crossings(w):
    g, ad = clique_decomposition(w)
    lay = layout_maximal_pww(g, ad)
    rep = count_crossings(lay.drawing, g)
    assert rep.total == lay.counted == comb(w + 1, 4)
    assert rep.is_good


def test_w4_single_cluster_between_oracle_and_bound():
    g, ad = w4_single_cluster()
    lay = layout_maximal_pww(g, ad)
    assert lay.counted <= 17
    assert lay.counted >= rectilinear_cr_bruteforce(g, 5)[0]


def test_width5_tight_example():
    inst = random_maximal(14, 5, 7)
    ad = to_alternating(inst.graph, inst.decomposition)
    cnt = restricted_membership(ad)
    assert cnt[(3, 4, 12, 13)] == 5 == mu(5)
    assert max(cnt.values()) == 5
    b = bounds_for(ad)
    lay = layout_maximal_pww(inst.graph, ad)
    assert lay.counted <= b.upper


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 5, 6]), st.integers(0, 30), st.integers(0, 10**6))
def test_membership_never_exceeds_mu(w, extra, seed):
    inst = random_maximal(w + 2 + extra, w, seed)
    cnt = restricted_membership(to_alternating(inst.graph, inst.decomposition))
    assert max(cnt.values(), default=0) <= mu(w)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 5]), st.integers(0, 34), st.integers(0, 10**6))
def test_random_maximal_pww(w, extra, seed):
    n = w + 2 + extra
    inst = random_maximal(n, w, seed)
    ad = to_alternating(inst.graph, inst.decomposition)
    lay = layout_maximal_pww(inst.graph, ad)
    rep = count_crossings(lay.drawing, inst.graph)
    b = bounds_for(ad)
    assert rep.is_good
    assert rep.total == lay.counted <= b.upper
    assert Fraction(lay.counted) <= b.ratio_guarantee * b.lower
    assert check_grid_bounds(lay.drawing, pww_box(n, w), open_interval=False)
