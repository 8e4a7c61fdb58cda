"""Brute-force ground truth for the incremental structures.

Everything here recomputes from scratch and shares no code path with the
incremental maintenance it is used to check.
"""

from __future__ import annotations

import heapq
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .clustering import INF
from .errors import NotSubgraph
from .graph import DynOrientedGraph, Edge, OpCounter, undirected
from .partial import PartialSpanner, StretchMode
from .sampling import CenterSet


@dataclass
class VerifyReport:
    stretch_violations: list[tuple[Edge, float]] = field(default_factory=list)
    sampling_failures: list[tuple[int, int]] = field(default_factory=list)
    audit_failures: list[str] = field(default_factory=list)
    max_change_log: int = 0
    max_out_deg_b: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.stretch_violations or self.sampling_failures or self.audit_failures)

    def merge(self, other: VerifyReport) -> None:
        self.stretch_violations.extend(other.stretch_violations)
        self.sampling_failures.extend(other.sampling_failures)
        self.audit_failures.extend(other.audit_failures)
        self.max_change_log = max(self.max_change_log, other.max_change_log)
        if len(other.max_out_deg_b) > len(self.max_out_deg_b):
            self.max_out_deg_b.extend([0] * (len(other.max_out_deg_b) - len(self.max_out_deg_b)))
        for i, x in enumerate(other.max_out_deg_b):
            self.max_out_deg_b[i] = max(self.max_out_deg_b[i], x)


# ---- stretch ---------------------------------------------------------------


def adjacency(edges: Iterable[Edge]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = defaultdict(set)
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def bounded_distance(adj: Mapping[int, Iterable[int]], src: int, dst: int, limit: int) -> int | None:
    """Hop distance from *src* to *dst* if it is at most *limit*, else None."""
    if src == dst:
        return 0
    seen = {src}
    frontier = [src]
    for depth in range(1, limit + 1):
        nxt = []
        for x in frontier:
            for y in adj.get(x, ()):
                if y == dst:
                    return depth
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            return None
        frontier = nxt
    return None


def bfs_distances(adj: Mapping[int, Iterable[int]], src: int) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        for y in adj.get(x, ()):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def verify_stretch(
    g_edges: Iterable[Edge],
    h_edges: Iterable[Edge],
    alpha: int,
    *,
    candidates: Iterable[Edge] | None = None,
) -> VerifyReport:
    """Check that every edge of G has an H-path of at most *alpha* hops.

    By the adjacency argument it suffices to look at the edges of G.
    *candidates* restricts the search to a subset of G's edges (edges of
    H itself are trivially fine).
    """
    g_set = {undirected(*e) for e in g_edges}
    h_set = {undirected(*e) for e in h_edges}
    extra = h_set - g_set
    if extra:
        raise NotSubgraph(f"{len(extra)} spanner edges outside the graph, e.g. {min(extra)}")
    adj = adjacency(h_set)
    report = VerifyReport()
    targets = g_set if candidates is None else {undirected(*e) for e in candidates}
    for u, v in sorted(targets):
        if (u, v) in h_set:
            continue
        dist = bounded_distance(adj, u, v, alpha)
        if dist is None:
            full = bfs_distances(adj, u).get(v, INF)
            report.stretch_violations.append(((u, v), full))
    return report


class StretchVerifier:
    """Incremental stretch checker driven by graph and spanner transitions.

    Keeps ``G``, the adjacency of ``H`` and the set of G-edges not in H, so
    a full check costs one bounded search per uncovered edge.
    """

    def __init__(self, alpha: int) -> None:
        self.alpha = alpha
        self.g: set[Edge] = set()
        self.h: set[Edge] = set()
        self.h_adj: dict[int, set[int]] = defaultdict(set)
        self.uncovered: set[Edge] = set()
        self.bad_h: set[Edge] = set()

    def observe(self, g_op: int, g_edge: Edge, h_changes: Iterable[tuple[int, Edge]]) -> None:
        e = undirected(*g_edge)
        if g_op > 0:
            self.g.add(e)
            if e not in self.h:
                self.uncovered.add(e)
        else:
            self.g.discard(e)
            self.uncovered.discard(e)
            if e in self.h:
                self.bad_h.add(e)
        for sign, he in h_changes:
            u, v = he
            if sign > 0:
                self.h.add(he)
                self.h_adj[u].add(v)
                self.h_adj[v].add(u)
                self.uncovered.discard(he)
                if he not in self.g:
                    self.bad_h.add(he)
            else:
                self.h.discard(he)
                self.h_adj[u].discard(v)
                self.h_adj[v].discard(u)
                self.bad_h.discard(he)
                if he in self.g:
                    self.uncovered.add(he)

    def check(self) -> VerifyReport:
        report = VerifyReport()
        if self.bad_h:
            raise NotSubgraph(f"spanner edges outside the graph: {sorted(self.bad_h)[:5]}")
        for u, v in sorted(self.uncovered):
            if bounded_distance(self.h_adj, u, v, self.alpha) is None:
                full = bfs_distances(self.h_adj, u).get(v, INF)
                report.stretch_violations.append(((u, v), full))
        return report


def dijkstra(adj: Mapping[int, Iterable[tuple[int, float]]], src: int, cutoff: float = INF) -> dict[int, float]:
    dist = {src: 0.0}
    heap = [(0.0, src)]
    while heap:
        dx, x = heapq.heappop(heap)
        if dx > dist.get(x, INF) or dx > cutoff:
            continue
        for y, w in adj.get(x, ()):
            nd = dx + w
            if nd < dist.get(y, INF):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def verify_weighted_stretch(
    g_weights: Mapping[Edge, float], h_weights: Mapping[Edge, float], factor: float
) -> list[tuple[Edge, float, float]]:
    """Edges ``e`` of G whose weighted H-distance exceeds ``factor * w(e)``."""
    extra = set(h_weights) - set(g_weights)
    if extra:
        raise NotSubgraph(f"{len(extra)} spanner edges outside the graph")
    adj: dict[int, list[tuple[int, float]]] = defaultdict(list)
    for (u, v), w in h_weights.items():
        adj[u].append((v, w))
        adj[v].append((u, w))
    bad = []
    for (u, v), w in sorted(g_weights.items()):
        limit = factor * w
        dist = dijkstra(adj, u, cutoff=limit).get(v, INF)
        if dist > limit * (1 + 1e-12):
            bad.append(((u, v), dist, limit))
    return bad


# ---- reference recomputation -------------------------------------------------


def reference_clustering(
    graph: DynOrientedGraph,
    centers: CenterSet,
    *,
    exclude: Edge | None = None,
    extra: Edge | None = None,
) -> tuple[list, dict, dict]:
    """``(c, In(v,i), In(i,j))`` evaluated straight from the definitions.

    *exclude* / *extra* describe the graph one oriented edge away from the
    current one, for checking pre-update state.
    """
    edges = [e for e in graph.oriented_edges() if e != exclude]
    if extra is not None:
        edges.append(extra)
    c: list = [INF] * graph.n
    for u, v in edges:
        iu = centers.index.get(u)
        if iu is not None and iu < c[v]:
            c[v] = iu
        iv = centers.index.get(v)
        if iv is not None and iv < c[u]:
            c[u] = iv
    nodes: dict = defaultdict(list)
    pairs: dict = defaultdict(list)
    for u, v in edges:
        nodes[(v, c[u])].append(u)
        pairs[(c[v], c[u])].append((u, v))
    return (
        c,
        {key: tuple(sorted(val)) for key, val in nodes.items()},
        {key: tuple(sorted(val)) for key, val in pairs.items()},
    )


@dataclass
class Reference:
    c: list
    in_by_node: dict
    in_by_pair: dict
    a: dict[Edge, int]
    b: set[Edge]

    @property
    def spanner(self) -> set[Edge]:
        return set(self.a) | {undirected(*e) for e in self.b}


def recompute_reference(
    graph: DynOrientedGraph,
    centers: CenterSet,
    d: int,
    mode: StretchMode,
    ops: OpCounter | None = None,
) -> Reference:
    """Evaluate the A/B rules from scratch with the incremental tie-breaks.

    When *ops* is given it is charged one unit per elementary set
    operation, which is how the naive recompute baseline is costed.
    """
    c, nodes, pairs = reference_clustering(graph, centers)
    a: dict[Edge, int] = defaultdict(int)
    b: set[Edge] = set()
    cost = 0
    nbrs: dict[int, list[int]] = defaultdict(list)
    for u, v in graph.oriented_edges():
        nbrs[u].append(v)
        nbrs[v].append(u)
        cost += 4  # two neighbor inserts, one In(v,i) and one In(i,j) insert
    for u, lst in nbrs.items():
        lst.sort()
        for v in lst[:d]:
            b.add((u, v))
        cost += min(d, len(lst))
    for v in range(graph.n):
        if c[v] != INF:
            a[undirected(v, centers.center(c[v]))] += 1
            cost += 1
    if StretchMode(mode) is StretchMode.THREE:
        for (v, i), members in nodes.items():
            if i != INF and c[v] != INF:
                a[undirected(members[0], v)] += 1
                cost += 1
    else:
        for (i, j), members in pairs.items():
            if i != j and i != INF and j != INF:
                a[undirected(*members[0])] += 1
                cost += 1
    if ops is not None:
        ops.count += cost + graph.n
    return Reference(c, nodes, pairs, dict(a), b)


def compare_with_reference(ps: PartialSpanner) -> list[str]:
    """Field-by-field mismatches between *ps* and a from-scratch evaluation."""
    ref = recompute_reference(ps.graph, ps.centers, ps.d, ps.mode)
    c, nodes, pairs = ps.cluster.snapshot()
    out = []
    if c != ref.c:
        out.append("cluster vector")
    if nodes != ref.in_by_node:
        out.append("In(v,i)")
    if ps.cluster.track_pairs and pairs != ref.in_by_pair:
        out.append("In(i,j)")
    if ps.a.counts() != ref.a:
        out.append("A")
    if ps.b != ref.b:
        out.append("B")
    return out


def sampling_failures(graph: DynOrientedGraph, centers: CenterSet, d: int) -> list[int]:
    """Nodes with more than *d* neighbors and no center among them."""
    return [
        u
        for u in range(graph.n)
        if graph.degree(u) > d and not any(x in centers for x in graph.neighbors(u))
    ]
