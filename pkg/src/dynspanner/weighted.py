"""Weighted spanners by geometric weight binning.

Edges with weight in ``[w_min (1+eps)^b, w_min (1+eps)^(b+1))`` form bin
``b``; each bin runs its own unweighted pipeline.  Inside a bin weights
differ by less than a factor ``1 + eps``, so an ``alpha``-hop path in the
bin's spanner weighs less than ``(1 + eps) * alpha * w(e)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .edgecount import EdgeCounter
from .errors import DuplicateInsert, InvalidUpdate, MissingDelete, WeightBelowMinimum
from .extension import UpdateExtension
from .graph import Edge, Op, UpdateEvent, undirected
from .recursive import ParamSchedule, UpdateMetrics, Variant, schedule
from .sampling import SamplingConfig


@dataclass(frozen=True)
class WeightedConfig:
    eps: float
    w_min: float = 1.0
    ratio: float | None = None  # W: cap on largest / smallest weight

    def __post_init__(self) -> None:
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if not self.w_min > 0:
            raise ValueError(f"w_min must be positive, got {self.w_min}")
        if self.ratio is not None and self.ratio < 1:
            raise ValueError(f"weight ratio W must be >= 1, got {self.ratio}")

    def max_bins(self) -> int | None:
        if self.ratio is None:
            return None
        return math.ceil(math.log(self.ratio) / math.log1p(self.eps)) + 1


def bin_index(w: float, cfg: WeightedConfig) -> int:
    if w < cfg.w_min:
        raise WeightBelowMinimum(f"weight {w} below w_min={cfg.w_min}")
    if cfg.ratio is not None and w > cfg.w_min * cfg.ratio:
        raise InvalidUpdate(f"weight {w} above w_min * W = {cfg.w_min * cfg.ratio}")
    b = math.floor(math.log(w / cfg.w_min) / math.log1p(cfg.eps))
    # floating log can land on the wrong side of an exact bin boundary
    if cfg.w_min * (1 + cfg.eps) ** (b + 1) <= w:
        b += 1
    elif b > 0 and cfg.w_min * (1 + cfg.eps) ** b > w:
        b -= 1
    return b


class WeightedEvent(NamedTuple):
    op: Op
    u: int
    v: int
    weight: float | None = None


class BinnedSpanner:
    def __init__(
        self,
        n: int,
        cfg: WeightedConfig,
        variant: Variant | str | ParamSchedule = Variant.T7,
        sampling: SamplingConfig | None = None,
    ) -> None:
        self.n = n
        self.cfg = cfg
        self.schedule = variant if isinstance(variant, ParamSchedule) else schedule(n, variant)
        self.sampling = sampling if sampling is not None else SamplingConfig(n)
        self.h = EdgeCounter()
        self.bins: dict[int, UpdateExtension] = {}
        self.edge_bin: dict[Edge, int] = {}
        self.weight: dict[Edge, float] = {}

    @property
    def stretch(self) -> int:
        return self.schedule.stretch

    def pipeline(self, b: int) -> UpdateExtension:
        ext = self.bins.get(b)
        if ext is None:
            ext = self.bins[b] = UpdateExtension(
                self.n, self.schedule, self.sampling, path=(1000 + b,), sink=self.h
            )
        return ext

    def update(self, event: WeightedEvent) -> UpdateMetrics:
        key = undirected(event.u, event.v)
        if event.op is Op.INSERT:
            if key in self.edge_bin:
                raise DuplicateInsert(f"edge {{{event.u}, {event.v}}} already present")
            if event.weight is None:
                raise InvalidUpdate("weighted insert without a weight")
            b = bin_index(event.weight, self.cfg)
            metrics = self.pipeline(b).update(UpdateEvent(Op.INSERT, event.u, event.v))
            self.edge_bin[key] = b
            self.weight[key] = event.weight
            return metrics
        if key not in self.edge_bin:
            raise MissingDelete(f"edge {{{event.u}, {event.v}}} not present")
        b = self.edge_bin.pop(key)
        del self.weight[key]
        return self.bins[b].update(UpdateEvent(Op.DELETE, event.u, event.v))

    def set_weight(self, u: int, v: int, w: float) -> UpdateMetrics:
        """A weight change is a delete followed by an insert."""
        metrics = self.update(WeightedEvent(Op.DELETE, u, v))
        metrics.absorb(self.update(WeightedEvent(Op.INSERT, u, v, w)))
        return metrics

    def spanner(self) -> dict[Edge, float]:
        return {e: self.weight[e] for e in self.h}

    @property
    def spanner_size(self) -> int:
        return len(self.h)

    def edges(self) -> dict[Edge, float]:
        return dict(self.weight)

    def nonempty_bins(self) -> list[int]:
        return sorted({b for b in self.edge_bin.values()})

    def size_failures(self) -> list[tuple[int, ...]]:
        return [p for ext in self.bins.values() for p in ext.size_failures()]

    def instances(self):
        for ext in self.bins.values():
            yield from ext.instances()

    @property
    def sampling_failure(self) -> bool:
        return any(ext.sampling_failure for ext in self.bins.values())

    def audit(self) -> list[str]:
        out = []
        for b, ext in sorted(self.bins.items()):
            out.extend(f"bin {b}: {msg}" for msg in ext.audit())
            ws = [self.weight[e] for e in ext.edges()]
            if ws and max(ws) >= min(ws) * (1 + self.cfg.eps):
                out.append(f"bin {b}: weight spread reaches 1 + eps")
        return out
