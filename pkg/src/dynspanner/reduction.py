"""Out-degree reduction: split the oriented edges into groups in which no
node has more than ``s`` outgoing edges, and run one partial spanner per
group.  Each update touches exactly one group, so its cost is governed by
``s`` rather than by the out-degree of the whole graph.
"""

from __future__ import annotations

from typing import Sequence

from sortedcontainers import SortedList

from .edgecount import EdgeCounter
from .graph import DynOrientedGraph, Edge, Op, OpCounter, UpdateEvent
from .partial import BChange, PartialSpanner, StretchMode
from .sampling import SamplingConfig


class GroupAssignment:
    """Lowest-free-slot assignment of out-edges to groups ``1, 2, ...``.

    A new edge leaving ``u`` goes to the smallest group in which ``u`` has
    fewer than ``s`` out-edges.  On insert-only streams this is exactly
    group ``ceil(x / s)`` for the x-th edge leaving ``u``.
    """

    def __init__(self, s: int) -> None:
        if s < 1:
            raise ValueError(f"group cap s must be >= 1, got {s}")
        self.s = s
        self.group_of: dict[Edge, int] = {}
        self.count: dict[tuple[int, int], int] = {}
        self._opened: dict[int, int] = {}
        self._not_full: dict[int, SortedList] = {}

    def assign(self, tail: int, head: int) -> int:
        edge = (tail, head)
        if edge in self.group_of:
            raise ValueError(f"edge {edge} already assigned")
        slots = self._not_full.get(tail)
        if slots:
            g = slots[0]
        else:
            g = self._opened.get(tail, 0) + 1
            self._opened[tail] = g
            if slots is None:
                slots = self._not_full[tail] = SortedList()
            slots.add(g)
        cnt = self.count.get((tail, g), 0) + 1
        self.count[(tail, g)] = cnt
        if cnt == self.s:
            slots.remove(g)
        self.group_of[edge] = g
        return g

    def release(self, tail: int, head: int) -> int:
        g = self.group_of.pop((tail, head))
        cnt = self.count[(tail, g)]
        if cnt == self.s:
            self._not_full[tail].add(g)
        if cnt == 1:
            del self.count[(tail, g)]
        else:
            self.count[(tail, g)] = cnt - 1
        return g

    def max_count(self) -> int:
        return max(self.count.values(), default=0)


class DegreeReduction:
    def __init__(
        self,
        n: int,
        s: int,
        d: int,
        mode: StretchMode = StretchMode.THREE,
        sampling: SamplingConfig | None = None,
        *,
        path: Sequence[int] = (),
        sink: EdgeCounter | None = None,
        ops: OpCounter | None = None,
    ) -> None:
        self.n = n
        self.s = s
        self.d = d
        self.mode = StretchMode(mode)
        self.cfg = sampling if sampling is not None else SamplingConfig(n)
        self.path = tuple(path)
        self.sink = sink
        self.ops = ops if ops is not None else OpCounter()
        self.graph = DynOrientedGraph(n)  # routing copy; its ops are not charged
        self.assign = GroupAssignment(s)
        self.instances: dict[int, PartialSpanner] = {}

    def instance(self, g: int) -> PartialSpanner:
        inst = self.instances.get(g)
        if inst is None:
            inst = self.instances[g] = PartialSpanner(
                self.n, self.d, self.mode, self.cfg,
                path=self.path + (g,), sink=self.sink, ops=self.ops,
            )
        return inst

    def update(self, event: UpdateEvent) -> list[BChange]:
        """Route *event* to the owning group; return that group's B log."""
        delta = self.graph.apply_update(event)
        if delta.op is Op.INSERT:
            g = self.assign.assign(delta.tail, delta.head)
        else:
            g = self.assign.release(delta.tail, delta.head)
        self.ops.count += 1
        return self.instance(g).update(UpdateEvent(delta.op, delta.tail, delta.head))

    # ---- aggregate views ---------------------------------------------------

    def spanner_a(self) -> set[Edge]:
        out: set[Edge] = set()
        for inst in self.instances.values():
            out |= inst.a_edges()
        return out

    def b_edges(self) -> set[Edge]:
        out: set[Edge] = set()
        for inst in self.instances.values():
            out |= inst.b
        return out

    @property
    def sampling_failure(self) -> bool:
        return any(inst.failing for inst in self.instances.values())

    def audit(self) -> list[str]:
        out = []
        if self.assign.max_count() > self.s:
            out.append(f"level {self.path}: per-node group out-degree exceeds s={self.s}")
        seen: set[Edge] = set()
        for g, inst in self.instances.items():
            edges = set(inst.graph.oriented_edges())
            if not all(self.assign.group_of.get(e) == g for e in edges):
                out.append(f"level {self.path}: group {g} holds edges assigned elsewhere")
            seen |= edges
            out.extend(inst.audit())
        if seen != set(self.graph.oriented_edges()):
            out.append(f"level {self.path}: groups do not partition the input edges")
        return out
