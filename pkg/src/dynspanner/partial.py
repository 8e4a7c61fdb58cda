"""Partial 3- and 5-spanners over an oriented graph.

One instance maintains two subgraphs:

* ``A`` (undirected, reference counted): for every clustered node the edge
  to its center, plus one representative edge per incoming cluster bucket.
  Three mode nominates ``{min In(v, i), v}`` for each clustered ``v`` and
  finite ``i``; five mode nominates ``min In(i, j)`` for each pair of
  distinct finite cluster indices.
* ``B`` (oriented): ``(u, v)`` for each of the ``d`` smallest neighbors
  ``v`` of ``u``.

Every edge outside B has an A-path of at most 3 (resp. 5) hops whenever
every node with more than ``d`` neighbors sees a center.  Each update
changes at most four B edges.
"""

from __future__ import annotations

import enum
from typing import Iterable, NamedTuple, Sequence

from .clustering import INF, ChangeReport, ClusterState
from .edgecount import EdgeCounter
from .errors import ChangeLogOverflow
from .graph import DynOrientedGraph, Edge, Op, OpCounter, UpdateEvent, undirected
from .sampling import CenterSet, SamplingConfig, inclusion_probability, sample_centers, size_bound


class StretchMode(enum.IntEnum):
    THREE = 3
    FIVE = 5


class BChange(NamedTuple):
    op: Op
    tail: int
    head: int


def _canonical_key(ch: BChange) -> tuple[bool, int, int]:
    return (ch.op is Op.INSERT, ch.tail, ch.head)


MAX_B_CHANGES = 4


class PartialSpanner:
    def __init__(
        self,
        n: int,
        d: int,
        mode: StretchMode = StretchMode.THREE,
        sampling: SamplingConfig | None = None,
        *,
        path: Sequence[int] = (),
        sink: EdgeCounter | None = None,
        emit_b: bool = False,
        ops: OpCounter | None = None,
        track_pairs: bool | None = None,
        centers: CenterSet | None = None,
        debug: bool = False,
    ) -> None:
        cfg = sampling if sampling is not None else SamplingConfig(n)
        if cfg.n != n:
            raise ValueError(f"sampling config is for n={cfg.n}, instance has n={n}")
        self.n = n
        self.d = d
        self.mode = StretchMode(mode)
        self.cfg = cfg
        self.path = tuple(path)
        self.graph = DynOrientedGraph(n, ops)
        self.ops = self.graph.ops
        # explicit centers bypass sampling (hand-built examples, tests)
        self.centers = centers if centers is not None else sample_centers(cfg, d, path)
        if track_pairs is None:
            track_pairs = self.mode is StretchMode.FIVE
        if self.mode is StretchMode.FIVE and not track_pairs:
            raise ValueError("five mode needs the In(i, j) buckets")
        self.cluster = ClusterState(self.centers, self.graph, track_pairs=track_pairs, ops=self.ops, debug=debug)
        self.a = EdgeCounter(parent=sink)
        self.b: set[Edge] = set()
        self._b_sink = sink if emit_b else None
        self.failing: set[int] = set()
        self.updates = 0
        self.max_log = 0
        self.sample_size_ok = (
            inclusion_probability(cfg, d) >= 1.0 or len(self.centers) <= size_bound(cfg, d)
        )

    @property
    def k(self) -> int:
        return len(self.centers)

    @property
    def sampling_failure(self) -> bool:
        return bool(self.failing)

    # ---- update ------------------------------------------------------------

    def update(self, event: UpdateEvent) -> list[BChange]:
        """Apply one edge update; return the canonical B change log."""
        delta = self.graph.apply_update(event)
        tail, head = delta.tail, delta.head
        if delta.op is Op.INSERT:
            report = self.cluster.insert(tail, head)
        else:
            report = self.cluster.delete(tail, head)
        self._maintain_a(report)
        log = self._maintain_b(delta.op, tail, head)
        self.updates += 1
        for w in (tail, head):
            if self.graph.degree(w) > self.d and w not in self.cluster.center_nbrs:
                self.failing.add(w)
            else:
                self.failing.discard(w)
        return log

    def _maintain_b(self, op: Op, tail: int, head: int) -> list[BChange]:
        d = self.d
        log: list[BChange] = []
        for a, b in ((tail, head), (head, tail)):
            nbrs = self.graph.neighbors(a)
            r = nbrs.bisect_left(b)
            if op is Op.INSERT:
                if r < d:
                    log.append(BChange(Op.INSERT, a, b))
                    if len(nbrs) > d:
                        log.append(BChange(Op.DELETE, a, nbrs[d]))
            elif r < d:
                log.append(BChange(Op.DELETE, a, b))
                if len(nbrs) >= d:
                    log.append(BChange(Op.INSERT, a, nbrs[d - 1]))
        if len(log) > MAX_B_CHANGES:
            raise ChangeLogOverflow(f"{len(log)} B changes in one update: {log}")
        log.sort(key=_canonical_key)
        if len(log) > self.max_log:
            self.max_log = len(log)
        self.ops.count += 2 + len(log)
        sink = self._b_sink
        for ch in log:
            e = (ch.tail, ch.head)
            if ch.op is Op.INSERT:
                self.b.add(e)
                if sink is not None:
                    sink.add(undirected(*e))
            else:
                self.b.remove(e)
                if sink is not None:
                    sink.remove(undirected(*e))
        return log

    def _maintain_a(self, report: ChangeReport) -> None:
        cluster = self.cluster
        c = cluster.c
        center = self.centers.center
        incs: list[Edge] = []
        decs: list[Edge] = []

        old_c: dict[int, float] = {}
        for w, old, new in report.recluster:
            old_c.setdefault(w, old)
            if old != INF:
                decs.append(undirected(w, center(old)))
            if new != INF:
                incs.append(undirected(w, center(new)))

        if self.mode is StretchMode.THREE:
            before = report.node_before
            keys = [key for key in before if key[1] != INF]
            for w, old in old_c.items():
                if (old == INF) != (c[w] == INF):
                    # rule 2 only applies to clustered heads, so a flip
                    # toggles every bucket of w
                    for i in cluster.in_by_node.get(w, ()):
                        if i != INF and (w, i) not in before:
                            keys.append((w, i))
            for v, i in keys:
                cv = c[v]
                was_clustered = old_c.get(v, cv) != INF
                if was_clustered:
                    old_nom = before[(v, i)] if (v, i) in before else cluster.node_min(v, i)
                else:
                    old_nom = None
                new_nom = cluster.node_min(v, i) if cv != INF else None
                if old_nom != new_nom:
                    if old_nom is not None:
                        decs.append(undirected(old_nom, v))
                    if new_nom is not None:
                        incs.append(undirected(new_nom, v))
        else:
            for (i, j), old_edge in report.pair_before.items():
                if i == j or i == INF or j == INF:
                    continue
                new_edge = cluster.pair_min(i, j)
                if old_edge != new_edge:
                    if old_edge is not None:
                        decs.append(undirected(*old_edge))
                    if new_edge is not None:
                        incs.append(undirected(*new_edge))

        a = self.a
        for e in incs:
            a.add(e)
        for e in decs:
            a.remove(e)
        self.ops.count += len(incs) + len(decs)

    # ---- queries -----------------------------------------------------------

    def n_low(self, u: int) -> list[int]:
        """The ``d`` smallest neighbors of *u*."""
        return list(self.graph.neighbors(u)[: self.d])

    def n_high(self, u: int) -> list[int]:
        return list(self.graph.neighbors(u)[self.d :])

    def a_edges(self) -> set[Edge]:
        return self.a.as_set()

    def b_undirected(self) -> set[Edge]:
        return {undirected(*e) for e in self.b}

    def spanner_edges(self) -> set[Edge]:
        """``A`` together with the undirected projection of ``B``."""
        return self.a.as_set() | self.b_undirected()

    def b_max_out_degree(self) -> int:
        outdeg: dict[int, int] = {}
        for tail, _ in self.b:
            outdeg[tail] = outdeg.get(tail, 0) + 1
        return max(outdeg.values(), default=0)

    def a_size_bound(self) -> int:
        k = self.k
        if self.mode is StretchMode.THREE:
            return self.n + self.n * k
        return self.n + k * k

    def audit(self) -> list[str]:
        """Cheap exact invariants; returns breach descriptions."""
        out = []
        if self.b_max_out_degree() > self.d:
            out.append(f"instance {self.path}: max out-degree of B exceeds d={self.d}")
        if len(self.a) > self.a_size_bound():
            out.append(f"instance {self.path}: |A|={len(self.a)} exceeds {self.a_size_bound()}")
        return out


def ps_spanner_edges(instances: Iterable[PartialSpanner]) -> set[Edge]:
    out: set[Edge] = set()
    for inst in instances:
        out |= inst.spanner_edges()
    return out
