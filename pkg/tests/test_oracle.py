from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynspanner.errors import NotSubgraph
from dynspanner.graph import DynOrientedGraph
from dynspanner.oracle import (
    StretchVerifier,
    adjacency,
    bfs_distances,
    bounded_distance,
    dijkstra,
    recompute_reference,
    verify_stretch,
    verify_weighted_stretch,
)
from dynspanner.partial import StretchMode
from dynspanner.sampling import CenterSet


def test_identical_graphs_pass():
    g = {(0, 1), (1, 2), (0, 2)}
    assert verify_stretch(g, g, 3).stretch_violations == []


def test_triangle_missing_edge_within_three():
    assert verify_stretch({(0, 1), (1, 2), (0, 2)}, {(0, 1), (1, 2)}, 3).stretch_violations == []


def test_path_missing_middle_edge_is_a_violation():
    g = {(0, 1), (1, 2), (2, 3), (3, 4)}
    report = verify_stretch(g, g - {(1, 2)}, 3)
    assert report.stretch_violations == [((1, 2), math.inf)]


def test_long_cycle_detour_distance_recorded():
    # 5-cycle without one edge: detour has 4 hops
    g = {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}
    assert verify_stretch(g, g - {(0, 4)}, 3).stretch_violations == [((0, 4), 4)]
    assert verify_stretch(g, g - {(0, 4)}, 5).stretch_violations == []


def test_not_subgraph():
    with pytest.raises(NotSubgraph):
        verify_stretch({(0, 1)}, {(0, 2)}, 3)


def test_weighted_oracle():
    g = {(0, 1): 1.0, (1, 2): 1.0, (0, 2): 1.5}
    assert verify_weighted_stretch(g, {(0, 1): 1.0, (1, 2): 1.0}, 2.0) == []
    assert verify_weighted_stretch(g, {(0, 1): 1.0, (1, 2): 1.0}, 1.2) == [((0, 2), 2.0, pytest.approx(1.8))]
    assert dijkstra(adjacency_w(g), 0) == {0: 0.0, 1: 1.0, 2: 1.5}


def adjacency_w(weights):
    adj: dict = {}
    for (u, v), w in weights.items():
        adj.setdefault(u, []).append((v, w))
        adj.setdefault(v, []).append((u, w))
    return adj


def test_empty_graph_reference():
    ref = recompute_reference(DynOrientedGraph(5), CenterSet.from_nodes([1]), 2, StretchMode.THREE)
    assert ref.c == [math.inf] * 5 and ref.a == {} and ref.b == set()


def test_reference_is_deterministic():
    g = DynOrientedGraph.from_edges(12, [(0, 6), (1, 7), (7, 0), (2, 8)])
    cs = CenterSet.from_nodes([0, 7])
    a = recompute_reference(g, cs, 1, StretchMode.FIVE)
    b = recompute_reference(g, cs, 1, StretchMode.FIVE)
    assert (a.c, a.a, a.b, a.in_by_pair) == (b.c, b.a, b.b, b.in_by_pair)


@given(st.integers(2, 16), st.data())
@settings(max_examples=60, deadline=None)
def test_bounded_search_matches_truncated_bfs(n, data):
    pairs = data.draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] < p[1])))
    adj = adjacency(pairs)
    limit = data.draw(st.integers(0, 6))
    for src in range(n):
        full = bfs_distances(adj, src)
        for dst in range(n):
            expected = full.get(dst)
            if expected is not None and expected > limit:
                expected = None
            assert bounded_distance(adj, src, dst, limit) == expected


@given(st.integers(3, 10), st.data())
@settings(max_examples=40, deadline=None)
def test_incremental_verifier_matches_batch(n, data):
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] < p[1])
    steps = data.draw(st.lists(st.tuples(pair, st.booleans()), max_size=40))
    ver = StretchVerifier(3)
    g: set = set()
    h: set = set()
    for e, keep in steps:
        changes = []
        if e in g:
            g.remove(e)
            if e in h:
                h.remove(e)
                changes.append((-1, e))
            ver.observe(-1, e, changes)
        else:
            g.add(e)
            if keep:
                h.add(e)
                changes.append((1, e))
            ver.observe(1, e, changes)
        assert ver.check().stretch_violations == verify_stretch(g, h, 3).stretch_violations
