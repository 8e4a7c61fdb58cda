"""Radius-1 clustering with incoming-edge indices, maintained under updates.

For centers ``s_1 < ... < s_k`` every node ``v`` is assigned to
``c[v] = min{i : s_i adjacent to v}`` (``INF`` when no center is adjacent).
Two families of buckets index the oriented edges by cluster:

* ``In(v, i)``: in-neighbors ``u`` of ``v`` with ``c[u] == i``;
* ``In(i, j)``: oriented edges ``(u, v)`` with ``c[v] == i`` and ``c[u] == j``.

Both include ``INF`` as a regular index.  When a node changes cluster, all
its outgoing edges are re-filed; with pair buckets enabled its incoming
edges are re-filed too, since the head's cluster is part of the pair key.
"""

from __future__ import annotations

import math
from typing import Union

from sortedcontainers import SortedList

from .errors import InconsistentState
from .graph import DynOrientedGraph, Edge, OpCounter
from .sampling import CenterSet

INF = math.inf
ClusterIndex = Union[int, float]  # int in 1..k, or INF


class ChangeReport:
    """What one update did to the clustering.

    ``recluster`` lists ``(node, old, new)`` per cluster change in order.
    ``node_before`` / ``pair_before`` map every bucket key touched by the
    update to its minimum *before* the update (``None`` if it was empty).
    """

    __slots__ = ("recluster", "node_before", "pair_before")

    def __init__(self) -> None:
        self.recluster: list[tuple[int, ClusterIndex, ClusterIndex]] = []
        self.node_before: dict[tuple[int, ClusterIndex], int | None] = {}
        self.pair_before: dict[tuple[ClusterIndex, ClusterIndex], Edge | None] = {}


class ClusterState:
    def __init__(
        self,
        centers: CenterSet,
        graph: DynOrientedGraph,
        *,
        track_pairs: bool = True,
        ops: OpCounter | None = None,
        debug: bool = False,
    ) -> None:
        self.centers = centers
        self.graph = graph
        self.track_pairs = track_pairs
        self.ops = ops if ops is not None else graph.ops
        self.debug = debug
        self.c: list[ClusterIndex] = [INF] * graph.n
        self.center_nbrs: dict[int, SortedList] = {}
        self.in_by_node: dict[int, dict[ClusterIndex, SortedList]] = {}
        self.in_by_pair: dict[tuple[ClusterIndex, ClusterIndex], SortedList] = {}
        self._report = ChangeReport()

    @property
    def k(self) -> int:
        return len(self.centers)

    # ---- bucket primitives -------------------------------------------------

    def _node_add(self, v: int, i: ClusterIndex, u: int) -> None:
        buckets = self.in_by_node.get(v)
        if buckets is None:
            buckets = self.in_by_node[v] = {}
        bucket = buckets.get(i)
        key = (v, i)
        if key not in self._report.node_before:
            self._report.node_before[key] = bucket[0] if bucket else None
        if bucket is None:
            bucket = buckets[i] = SortedList()
        bucket.add(u)
        self.ops.count += 1

    def _node_remove(self, v: int, i: ClusterIndex, u: int) -> None:
        buckets = self.in_by_node[v]
        bucket = buckets[i]
        key = (v, i)
        if key not in self._report.node_before:
            self._report.node_before[key] = bucket[0]
        bucket.remove(u)
        self.ops.count += 1
        if not bucket:
            del buckets[i]
            if not buckets:
                del self.in_by_node[v]

    def _pair_add(self, key: tuple[ClusterIndex, ClusterIndex], edge: Edge) -> None:
        bucket = self.in_by_pair.get(key)
        if key not in self._report.pair_before:
            self._report.pair_before[key] = bucket[0] if bucket else None
        if bucket is None:
            bucket = self.in_by_pair[key] = SortedList()
        bucket.add(edge)
        self.ops.count += 1

    def _pair_remove(self, key: tuple[ClusterIndex, ClusterIndex], edge: Edge) -> None:
        bucket = self.in_by_pair[key]
        if key not in self._report.pair_before:
            self._report.pair_before[key] = bucket[0]
        bucket.remove(edge)
        self.ops.count += 1
        if not bucket:
            del self.in_by_pair[key]

    def _recluster(self, w: int, new: ClusterIndex) -> None:
        c = self.c
        old = c[w]
        c[w] = new
        self._report.recluster.append((w, old, new))
        for x in self.graph.out_neighbors(w):
            self._node_remove(x, old, w)
            self._node_add(x, new, w)
            if self.track_pairs:
                cx = c[x]
                self._pair_remove((cx, old), (w, x))
                self._pair_add((cx, new), (w, x))
        if self.track_pairs:
            for y in self.graph.in_neighbors(w):
                cy = c[y]
                self._pair_remove((old, cy), (y, w))
                self._pair_add((new, cy), (y, w))

    def _attach_center(self, node: int, center_idx: int) -> None:
        cn = self.center_nbrs.get(node)
        if cn is None:
            cn = self.center_nbrs[node] = SortedList()
        cn.add(center_idx)
        self.ops.count += 1
        if center_idx < self.c[node]:
            self._recluster(node, center_idx)

    def _detach_center(self, node: int, center_idx: int) -> None:
        cn = self.center_nbrs[node]
        cn.remove(center_idx)
        self.ops.count += 1
        if not cn:
            del self.center_nbrs[node]
        if self.c[node] == center_idx:
            self._recluster(node, cn[0] if cn else INF)

    # ---- updates -----------------------------------------------------------

    def insert(self, u: int, v: int) -> ChangeReport:
        """Account for the oriented edge ``(u, v)`` just added to the graph."""
        if self.debug:
            self._assert_consistent(exclude=(u, v))
        self._report = ChangeReport()
        cu = self.c[u]
        self._node_add(v, cu, u)
        if self.track_pairs:
            self._pair_add((self.c[v], cu), (u, v))
        index = self.centers.index
        iu = index.get(u)
        if iu is not None:
            self._attach_center(v, iu)
        iv = index.get(v)
        if iv is not None:
            self._attach_center(u, iv)
        return self._report

    def delete(self, u: int, v: int) -> ChangeReport:
        """Account for the oriented edge ``(u, v)`` just removed from the graph."""
        if self.debug:
            self._assert_consistent(extra=(u, v))
        self._report = ChangeReport()
        cu = self.c[u]
        self._node_remove(v, cu, u)
        if self.track_pairs:
            self._pair_remove((self.c[v], cu), (u, v))
        index = self.centers.index
        iu = index.get(u)
        if iu is not None:
            self._detach_center(v, iu)
        iv = index.get(v)
        if iv is not None:
            self._detach_center(u, iv)
        return self._report

    # ---- read access -------------------------------------------------------

    def cluster_of(self, v: int) -> ClusterIndex:
        return self.c[v]

    def in_node(self, v: int, i: ClusterIndex) -> list[int]:
        bucket = self.in_by_node.get(v, {}).get(i)
        return list(bucket) if bucket else []

    def in_pair(self, i: ClusterIndex, j: ClusterIndex) -> list[Edge]:
        bucket = self.in_by_pair.get((i, j))
        return list(bucket) if bucket else []

    def node_min(self, v: int, i: ClusterIndex) -> int | None:
        bucket = self.in_by_node.get(v, {}).get(i)
        return bucket[0] if bucket else None

    def pair_min(self, i: ClusterIndex, j: ClusterIndex) -> Edge | None:
        bucket = self.in_by_pair.get((i, j))
        return bucket[0] if bucket else None

    def center_neighbors(self, v: int) -> list[int]:
        return list(self.center_nbrs.get(v, ()))

    def is_free(self, v: int) -> bool:
        return self.c[v] == INF

    def snapshot(self) -> tuple[list[ClusterIndex], dict, dict]:
        """``(c, In(v,i), In(i,j))`` as plain containers for comparison."""
        nodes = {
            (v, i): tuple(bucket)
            for v, buckets in self.in_by_node.items()
            for i, bucket in buckets.items()
        }
        pairs = {key: tuple(bucket) for key, bucket in self.in_by_pair.items()}
        return list(self.c), nodes, pairs

    def _assert_consistent(self, exclude: Edge | None = None, extra: Edge | None = None) -> None:
        from .oracle import reference_clustering

        ref = reference_clustering(self.graph, self.centers, exclude=exclude, extra=extra)
        mine = self.snapshot()
        if not self.track_pairs:
            ref, mine = ref[:2], mine[:2]
        if tuple(mine) != tuple(ref):
            raise InconsistentState("clustering disagrees with its definition before update")


def snapshot_check(st: ClusterState, g: DynOrientedGraph | None = None) -> bool:
    """Recompute the clustering of *g* from scratch and compare with *st*."""
    from .oracle import reference_clustering

    ref = reference_clustering(g if g is not None else st.graph, st.centers)
    mine = st.snapshot()
    if not st.track_pairs:
        return tuple(mine[:2]) == tuple(ref[:2])
    return tuple(mine) == tuple(ref)
