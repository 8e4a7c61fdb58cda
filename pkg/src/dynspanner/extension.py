"""Unbounded update sequences from an algorithm that tolerates ``4 n^2``.

Two inner stacks own disjoint parts ``G1, G2`` of the graph.  Updates are
grouped into phases of ``n^2``; in each phase one stack is *growing*
(restarted empty at the phase start, receives all inserts) and the other
is *shrinking* (after each update one of its edges migrates to the
growing stack).  The shrinking stack is empty by the end of the phase, so
each stack lives for at most two phases and sees at most ``4 n^2``
updates.
"""

from __future__ import annotations

from typing import Iterator

from sortedcontainers import SortedList

from .edgecount import EdgeCounter
from .errors import DuplicateInsert, InconsistentState, MissingDelete
from .graph import Edge, Op, UpdateEvent, undirected
from .partial import PartialSpanner
from .recursive import ParamSchedule, RecursiveSpanner, UpdateMetrics, Variant, schedule
from .sampling import SamplingConfig


class UpdateExtension:
    def __init__(
        self,
        n: int,
        variant: Variant | str | ParamSchedule = Variant.T7,
        sampling: SamplingConfig | None = None,
        *,
        path: tuple[int, ...] = (),
        sink: EdgeCounter | None = None,
    ) -> None:
        self.n = n
        self.schedule = variant if isinstance(variant, ParamSchedule) else schedule(n, variant)
        self.cfg = sampling if sampling is not None else SamplingConfig(n)
        self.path = tuple(path)
        self.phase_len = n * n
        self.phase = 0
        self.phase_pos = 0
        self.h = EdgeCounter(parent=sink)
        self.restarts = [0, 0]
        self.stacks = [self._fresh(0), self._fresh(1)]
        self.owner: dict[Edge, int] = {}
        self.orient: dict[Edge, Edge] = {}
        self.parts = [SortedList(), SortedList()]
        self.breaches: list[str] = []
        self._retired_size_failures: list[tuple[int, ...]] = []
        self.max_lifetime_updates = 0

    def _fresh(self, slot: int) -> RecursiveSpanner:
        path = self.path + (slot, self.restarts[slot])
        return RecursiveSpanner(self.n, self.schedule, self.cfg, path=path, sink=self.h)

    @property
    def stretch(self) -> int:
        return self.schedule.stretch

    @property
    def growing(self) -> int:
        return self.phase % 2

    @property
    def shrinking(self) -> int:
        return 1 - self.phase % 2

    # ---- update ------------------------------------------------------------

    def _inner(self, slot: int, event: UpdateEvent, metrics: UpdateMetrics) -> None:
        metrics.absorb(self.stacks[slot].update(event))
        key = undirected(event.u, event.v)
        if event.op is Op.INSERT:
            self.owner[key] = slot
            self.orient[key] = (event.u, event.v)
            self.parts[slot].add(key)
        else:
            del self.owner[key]
            del self.orient[key]
            self.parts[slot].remove(key)

    def update(self, event: UpdateEvent) -> UpdateMetrics:
        key = undirected(event.u, event.v)
        present = key in self.owner
        if event.op is Op.INSERT and present:
            raise DuplicateInsert(f"edge {{{event.u}, {event.v}}} already present")
        if event.op is Op.DELETE and not present:
            raise MissingDelete(f"edge {{{event.u}, {event.v}}} not present")
        metrics = UpdateMetrics()
        grow, shrink = self.growing, self.shrinking
        if event.op is Op.INSERT:
            self._inner(grow, event, metrics)
        else:
            self._inner(self.owner[key], event, metrics)
        if self.parts[shrink]:
            moved = self.parts[shrink][0]
            tail, head = self.orient[moved]
            self._inner(shrink, UpdateEvent(Op.DELETE, tail, head), metrics)
            self._inner(grow, UpdateEvent(Op.INSERT, tail, head), metrics)
        self.max_lifetime_updates = max(
            self.max_lifetime_updates, self.stacks[0].updates, self.stacks[1].updates
        )
        self.phase_pos += 1
        if self.phase_pos == self.phase_len:
            self._end_phase()
        return metrics

    def _end_phase(self) -> None:
        shrink = self.shrinking
        if self.parts[shrink]:
            self.breaches.append(
                f"phase {self.phase}: shrinking instance still holds {len(self.parts[shrink])} edges"
            )
            raise InconsistentState(self.breaches[-1])
        if self.stacks[shrink].spanner_size:
            raise InconsistentState("empty shrinking instance still reports spanner edges")
        self.phase += 1
        self.phase_pos = 0
        self._retired_size_failures.extend(self.stacks[shrink].size_failures())
        self.restarts[shrink] += 1
        self.stacks[shrink] = self._fresh(shrink)

    # ---- views -------------------------------------------------------------

    def size_failures(self) -> list[tuple[int, ...]]:
        return self._retired_size_failures + self.stacks[0].size_failures() + self.stacks[1].size_failures()

    def spanner(self) -> set[Edge]:
        return self.h.as_set()

    @property
    def spanner_size(self) -> int:
        return len(self.h)

    def recompute_spanner(self) -> set[Edge]:
        return self.stacks[0].spanner() | self.stacks[1].spanner()

    def edges(self) -> set[Edge]:
        return set(self.owner)

    def instances(self) -> Iterator[PartialSpanner]:
        for stack in self.stacks:
            yield from stack.instances()

    @property
    def sampling_failure(self) -> bool:
        return self.stacks[0].sampling_failure or self.stacks[1].sampling_failure

    def audit(self) -> list[str]:
        out = list(self.breaches)
        g1 = set(self.stacks[0].graph.undirected_edges())
        g2 = set(self.stacks[1].graph.undirected_edges())
        if g1 & g2:
            out.append("inner graphs overlap")
        if g1 | g2 != set(self.owner):
            out.append("inner graphs do not cover the graph")
        for slot, part in enumerate(self.parts):
            if set(part) != (g1, g2)[slot]:
                out.append(f"slot {slot}: edge index disagrees with its stack")
        limit = 4 * self.n * self.n
        for slot, stack in enumerate(self.stacks):
            if stack.updates > limit:
                out.append(f"slot {slot}: {stack.updates} updates since restart > {limit}")
            out.extend(stack.audit())
        if self.h.as_set() != self.recompute_spanner():
            out.append("extension spanner differs from the union of inner spanners")
        return out
