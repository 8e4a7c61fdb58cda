"""Recursive out-degree reduction stacks and their parameter schedules.

Level 1 consumes the input graph; level ``j`` consumes the undirected
projection of level ``j-1``'s B; a full partial spanner (A together with
B) sits on the last projection.  The maintained spanner is the union of
every level's A with the bottom spanner.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .edgecount import EdgeCounter
from .errors import CascadeOverflow
from .graph import Edge, Op, OpCounter, UpdateEvent, undirected
from .partial import PartialSpanner, StretchMode
from .reduction import DegreeReduction
from .sampling import SamplingConfig


class Variant(str, enum.Enum):
    T7 = "t7"  # 3-spanner
    T9 = "t9"  # 5-spanner, sparser
    T10 = "t10"  # 5-spanner, faster

    @property
    def stretch(self) -> int:
        return 3 if self is Variant.T7 else 5

    @property
    def level_mode(self) -> StretchMode:
        return StretchMode.THREE if self is Variant.T7 else StretchMode.FIVE

    @property
    def bottom_mode(self) -> StretchMode:
        return StretchMode.FIVE if self is Variant.T9 else StretchMode.THREE


def s_exponent(variant: Variant, ell: int) -> Fraction:
    if variant is Variant.T7:
        return Fraction(3 * 2**ell - 1, 2 ** (ell + 2) - 2)
    if variant is Variant.T9:
        return Fraction(5 * 3**ell - 2 ** (ell + 1), 3 ** (ell + 2) - 3 * 2 ** (ell + 1))
    return Fraction(3 ** (ell + 1) - 2**ell, 2 * 3 ** (ell + 1) - 2 ** (ell + 2))


def d_exponent(variant: Variant, ell: int, j: int) -> Fraction:
    if not 1 <= j <= ell:
        raise ValueError(f"level {j} outside 1..{ell}")
    if variant is Variant.T7:
        return Fraction(3 * 2**ell - 2 ** (j - 1) - 1, 2 ** (ell + 2) - 2)
    if variant is Variant.T9:
        num = 5 * 3**ell - 3 ** (j - 1) * 2 ** (ell - j + 2) - 2 ** (ell + 1)
        return Fraction(num, 3 ** (ell + 2) - 3 * 2 ** (ell + 1))
    num = 3 ** (ell + 1) - 3**j * 2 ** (ell - j) - 2**ell
    return Fraction(num, 2 * 3 ** (ell + 1) - 2 ** (ell + 2))


def _ceil_clamped(x: float, n: int) -> int:
    # guard against 45.000000001 rounding up to 46
    return min(n, max(1, math.ceil(x * (1 - 1e-12))))


def depth(n: int) -> int:
    return max(1, math.ceil(math.log2(math.log2(n))))


def bottom_threshold(n: int, mode: StretchMode) -> int:
    nlog = n * math.log2(n)
    if mode is StretchMode.THREE:
        return _ceil_clamped(math.sqrt(nlog), n)
    return _ceil_clamped(nlog ** (2 / 3), n)


@dataclass(frozen=True)
class ParamSchedule:
    variant: Variant
    n: int
    ell: int
    s: int
    d: tuple[int, ...]
    bottom_mode: StretchMode
    bottom_d: int
    nominal_ell: int

    @property
    def stretch(self) -> int:
        return self.variant.stretch

    @property
    def level_mode(self) -> StretchMode:
        return self.variant.level_mode

    def as_lines(self) -> list[str]:
        lines = [
            f"variant={self.variant.value}",
            f"n={self.n}",
            f"ell={self.ell}",
            f"nominal_ell={self.nominal_ell}",
            f"s={self.s}",
        ]
        lines += [f"d_{j}={dj}" for j, dj in enumerate(self.d, start=1)]
        lines += [f"bottom_mode={int(self.bottom_mode)}", f"bottom_d={self.bottom_d}"]
        return lines


def schedule(n: int, variant: Variant | str) -> ParamSchedule:
    """Evaluate the closed-form parameters for *variant* at size *n*.

    ``log`` is base 2 throughout and values are rounded up and clamped to
    ``[1, n]``.  Levels from the first one whose ``d_j >= s`` onwards are
    dropped, but at least one level is always kept.
    """
    if n < 4:
        raise ValueError(f"schedule needs n >= 4, got {n}")
    variant = Variant(variant)
    ell = depth(n)
    logn = math.log2(n)
    s = _ceil_clamped(n ** float(s_exponent(variant, ell)) * logn, n)
    ds = [_ceil_clamped(n ** float(d_exponent(variant, ell, j)) * logn, n) for j in range(1, ell + 1)]
    keep = ell
    for j, dj in enumerate(ds, start=1):
        if dj >= s:
            keep = max(1, j - 1)
            break
    mode = variant.bottom_mode
    return ParamSchedule(variant, n, keep, s, tuple(ds[:keep]), mode, bottom_threshold(n, mode), ell)


@dataclass
class UpdateMetrics:
    op_count: int = 0
    cascade: tuple[int, ...] = ()
    b_changes: int = 0
    flags: tuple[str, ...] = ()

    def absorb(self, other: UpdateMetrics) -> None:
        self.op_count += other.op_count
        self.b_changes += other.b_changes
        width = max(len(self.cascade), len(other.cascade))
        a = self.cascade + (0,) * (width - len(self.cascade))
        b = other.cascade + (0,) * (width - len(other.cascade))
        self.cascade = tuple(max(x, y) for x, y in zip(a, b))
        self.flags = tuple(sorted(set(self.flags) | set(other.flags)))


class RecursiveSpanner:
    def __init__(
        self,
        n: int,
        variant: Variant | str | ParamSchedule = Variant.T7,
        sampling: SamplingConfig | None = None,
        *,
        path: Sequence[int] = (),
        sink: EdgeCounter | None = None,
    ) -> None:
        sched = variant if isinstance(variant, ParamSchedule) else schedule(n, variant)
        if sched.n != n:
            raise ValueError(f"schedule is for n={sched.n}, stack has n={n}")
        self.n = n
        self.schedule = sched
        self.cfg = sampling if sampling is not None else SamplingConfig(n)
        self.path = tuple(path)
        self.ops = OpCounter()
        self.h = EdgeCounter(parent=sink)
        self.levels = [
            DegreeReduction(
                n, sched.s, dj, sched.level_mode, self.cfg,
                path=self.path + (j,), sink=self.h, ops=self.ops,
            )
            for j, dj in enumerate(sched.d, start=1)
        ]
        # undirected projection of each level's B, counted over orientations
        self._proj: list[dict[Edge, int]] = [{} for _ in self.levels]
        self.bottom = PartialSpanner(
            n, sched.bottom_d, sched.bottom_mode, self.cfg,
            path=self.path + (sched.ell + 1,), sink=self.h, emit_b=True, ops=self.ops,
        )
        self.updates = 0

    @property
    def stretch(self) -> int:
        return self.schedule.stretch

    def update(self, event: UpdateEvent) -> UpdateMetrics:
        start = self.ops.count
        events = [event]
        cascade = []
        b_changes = 0
        for j, level in enumerate(self.levels, start=1):
            proj = self._proj[j - 1]
            nxt: list[UpdateEvent] = []
            for ev in events:
                log = level.update(ev)
                b_changes += len(log)
                for op, tail, head in log:
                    key = undirected(tail, head)
                    cnt = proj.get(key, 0)
                    if op is Op.INSERT:
                        proj[key] = cnt + 1
                        if cnt == 0:
                            nxt.append(UpdateEvent(Op.INSERT, tail, head))
                    elif cnt == 1:
                        del proj[key]
                        nxt.append(UpdateEvent(Op.DELETE, tail, head))
                    else:
                        proj[key] = cnt - 1
            if len(nxt) > 4**j:
                raise CascadeOverflow(f"level {j} emitted {len(nxt)} > {4**j} changes")
            cascade.append(len(nxt))
            events = nxt
        for ev in events:
            b_changes += len(self.bottom.update(ev))
        self.updates += 1
        flags = ("sampling_failure",) if self.sampling_failure else ()
        return UpdateMetrics(self.ops.count - start, tuple(cascade), b_changes, flags)

    # ---- views -------------------------------------------------------------

    @property
    def graph(self):
        return self.levels[0].graph

    def instances(self) -> Iterator[PartialSpanner]:
        for level in self.levels:
            yield from level.instances.values()
        yield self.bottom

    @property
    def sampling_failure(self) -> bool:
        return any(inst.failing for inst in self.instances())

    def size_failures(self) -> list[tuple[int, ...]]:
        """Paths of instances whose center sample exceeded ``3 x n / d``."""
        return [inst.path for inst in self.instances() if not inst.sample_size_ok]

    def spanner(self) -> set[Edge]:
        return self.h.as_set()

    @property
    def spanner_size(self) -> int:
        return len(self.h)

    def recompute_spanner(self) -> set[Edge]:
        """Union of every level's A and the bottom's A and B, from the parts."""
        out: set[Edge] = set()
        for level in self.levels:
            out |= level.spanner_a()
        return out | self.bottom.spanner_edges()

    def level_input(self, j: int) -> set[Edge]:
        """Undirected edges consumed by level *j* (``len(levels)+1`` = bottom)."""
        if j == len(self.levels) + 1:
            return set(self.bottom.graph.undirected_edges())
        return set(self.levels[j - 1].graph.undirected_edges())

    def audit(self) -> list[str]:
        out = []
        for j, level in enumerate(self.levels, start=1):
            out.extend(level.audit())
            expected: dict[Edge, int] = {}
            for e in level.b_edges():
                key = undirected(*e)
                expected[key] = expected.get(key, 0) + 1
            if expected != self._proj[j - 1]:
                out.append(f"level {j}: cached B projection is stale")
            if self.level_input(j + 1) != set(expected):
                out.append(f"level {j + 1}: input differs from level {j} B")
        out.extend(self.bottom.audit())
        if self.h.as_set() != self.recompute_spanner():
            out.append("spanner union differs from its parts")
        return out
