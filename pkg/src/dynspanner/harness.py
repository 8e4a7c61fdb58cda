"""Replay driver, metrics records, verification and the scaling benchmark."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, TextIO

import numpy as np

from .extension import UpdateExtension
from .graph import DynOrientedGraph, Op, OpCounter, UpdateEvent
from .oracle import StretchVerifier, VerifyReport, recompute_reference, verify_weighted_stretch
from .partial import StretchMode
from .recursive import RecursiveSpanner, Variant, bottom_threshold, schedule
from .sampling import DEFAULT_A, SamplingConfig, sample_centers
from .streams import Generator, StreamSpec, gen_stream
from .weighted import BinnedSpanner, WeightedConfig, WeightedEvent

log = logging.getLogger(__name__)

METRIC_FIELDS = ("update", "op_count", "cascade", "spanner_size", "b_changes", "flags")


@dataclass
class MetricsRecord:
    update: int
    op_count: int
    cascade: tuple[int, ...]
    spanner_size: int
    b_changes: int
    flags: tuple[str, ...] = ()

    def as_row(self) -> list[str]:
        return [
            str(self.update),
            str(self.op_count),
            ";".join(map(str, self.cascade)),
            str(self.spanner_size),
            str(self.b_changes),
            "|".join(self.flags),
        ]

    def as_json(self) -> str:
        return json.dumps(
            {
                "update": self.update,
                "op_count": self.op_count,
                "cascade": list(self.cascade),
                "spanner_size": self.spanner_size,
                "b_changes": self.b_changes,
                "flags": list(self.flags),
            }
        )


class MetricsWriter:
    def __init__(self, fh: TextIO, fmt: str = "csv") -> None:
        if fmt not in ("csv", "json"):
            raise ValueError(f"unknown metrics format {fmt!r}")
        self.fh = fh
        self.fmt = fmt
        if fmt == "csv":
            self._csv = csv.writer(fh, lineterminator="\n")
            self._csv.writerow(METRIC_FIELDS)

    def write(self, rec: MetricsRecord) -> None:
        if self.fmt == "csv":
            self._csv.writerow(rec.as_row())
        else:
            self.fh.write(rec.as_json() + "\n")

    def summary(self, check: str, passed: bool, detail: str = "") -> None:
        status = "pass" if passed else "fail"
        if self.fmt == "csv":
            self.fh.write(f"# check {check} {status} {detail}".rstrip() + "\n")
        else:
            self.fh.write(json.dumps({"check": check, "status": status, "detail": detail}) + "\n")


@dataclass
class RunConfig:
    variant: Variant = Variant.T7
    algseed: int = 0
    a: float = DEFAULT_A
    extend: bool | None = None  # None: on iff the stream is longer than 4 n^2
    verify: str = "none"  # none | sampled | full
    verify_every: int = 64
    audit: bool | None = None  # None: with verify=full and n <= 256
    eps: float = 0.25
    w_min: float = 1.0

    def __post_init__(self) -> None:
        self.variant = Variant(self.variant)
        if self.verify not in ("none", "sampled", "full"):
            raise ValueError(f"unknown verify mode {self.verify!r}")


@dataclass
class RunResult:
    records: list[MetricsRecord]
    report: VerifyReport
    spanner: set | dict
    extended: bool
    sampling_failure_updates: int = 0
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)


def build_pipeline(n: int, cfg: RunConfig, length: int, weighted: bool):
    sampling = SamplingConfig(n, seed=cfg.algseed, a=cfg.a)
    if weighted:
        return BinnedSpanner(n, WeightedConfig(cfg.eps, cfg.w_min), cfg.variant, sampling), True
    extend = cfg.extend if cfg.extend is not None else length > 4 * n * n
    if extend:
        return UpdateExtension(n, cfg.variant, sampling), True
    return RecursiveSpanner(n, cfg.variant, sampling), False


def run(
    n: int,
    events: Sequence[UpdateEvent | WeightedEvent],
    cfg: RunConfig | None = None,
    *,
    writer: MetricsWriter | None = None,
    on_update: Callable[[int, object], None] | None = None,
) -> RunResult:
    """Replay *events*, recording one metrics line per update.

    Stretch violations on updates where some instance reports a sampling
    failure are tallied as warnings, not failures.
    """
    cfg = cfg or RunConfig()
    weighted = bool(events) and isinstance(events[0], WeightedEvent)
    pipe, extended = build_pipeline(n, cfg, len(events), weighted)
    alpha = pipe.stretch
    verifier = None
    if cfg.verify != "none" and not weighted:
        pipe.h.journal = []
        verifier = StretchVerifier(alpha)
    audit = cfg.audit if cfg.audit is not None else (cfg.verify == "full" and n <= 256)
    report = VerifyReport()
    warnings = 0
    failure_updates = 0
    records = []
    for idx, ev in enumerate(events, start=1):
        m = pipe.update(ev)
        rec = MetricsRecord(idx, m.op_count, m.cascade, pipe.spanner_size, m.b_changes, m.flags)
        sampling_failed = "sampling_failure" in m.flags
        failure_updates += sampling_failed
        due = cfg.verify == "full" or (cfg.verify == "sampled" and (idx % cfg.verify_every == 0 or idx == len(events)))
        if verifier is not None:
            verifier.observe(1 if ev.op is Op.INSERT else -1, (ev.u, ev.v), pipe.h.drain_journal())
        if due:
            if weighted:
                bad = verify_weighted_stretch(pipe.edges(), pipe.spanner(), (1 + cfg.eps) * alpha)
                part = VerifyReport(stretch_violations=[(e, dist) for e, dist, _ in bad])
            else:
                part = verifier.check()
            if part.stretch_violations:
                # a failure in a stack this update did not touch still counts
                if sampling_failed or pipe.sampling_failure:
                    warnings += len(part.stretch_violations)
                    rec.flags = tuple(sorted(set(rec.flags) | {"stretch_warning"}))
                else:
                    report.stretch_violations.extend(part.stretch_violations)
                    rec.flags = tuple(sorted(set(rec.flags) | {"stretch_violation"}))
            if audit:
                breaches = pipe.audit()
                if breaches:
                    report.audit_failures.extend(f"update {idx}: {b}" for b in breaches)
                    rec.flags = tuple(sorted(set(rec.flags) | {"audit_failure"}))
        records.append(rec)
        if writer is not None:
            writer.write(rec)
        if on_update is not None:
            on_update(idx, pipe)
    size_failures = pipe.size_failures()
    report.max_change_log = max((inst.max_log for inst in pipe.instances()), default=0)
    report.max_out_deg_b = [max((inst.b_max_out_degree() for inst in pipe.instances()), default=0)]
    checks = [
        ("stretch", not report.stretch_violations, f"violations={len(report.stretch_violations)} warnings={warnings}"),
        ("audit", not report.audit_failures, f"breaches={len(report.audit_failures)}"),
        ("center_sample_size", not size_failures, f"oversized={len(size_failures)}"),
        ("sampling", True, f"updates_with_failure={failure_updates}"),
    ]
    if cfg.verify == "none":
        checks = checks[2:]
    if writer is not None and cfg.verify != "none":
        for name, passed, detail in checks:
            writer.summary(name, passed, detail)
    spanner = pipe.spanner()
    return RunResult(records, report, spanner, extended, failure_updates, checks)


def metrics_text(records: Iterable[MetricsRecord], fmt: str = "csv") -> str:
    buf = io.StringIO()
    w = MetricsWriter(buf, fmt)
    for r in records:
        w.write(r)
    return buf.getvalue()


# ---- benchmark ----------------------------------------------------------------


class NaiveRecompute:
    """Baseline that rebuilds a 3-spanner from scratch after every update.

    Its per-update cost is the operation count of a full rebuild, which
    depends only on the current graph; ``cost()`` evaluates it on demand.
    """

    def __init__(self, n: int, sampling: SamplingConfig) -> None:
        self.graph = DynOrientedGraph(n)
        self.d = bottom_threshold(n, StretchMode.THREE)
        self.centers = sample_centers(sampling, self.d, path=(99,))

    def update(self, event: UpdateEvent) -> None:
        self.graph.apply_update(event)

    def cost(self) -> int:
        ops = OpCounter()
        recompute_reference(self.graph, self.centers, self.d, StretchMode.THREE, ops)
        return ops.count


@dataclass
class BenchRow:
    n: int
    max_ops: int
    p99_ops: float
    baseline_max_ops: int | None


@dataclass
class BenchResult:
    rows: list[BenchRow]
    slope: float | None
    baseline_slope: float | None

    def table(self) -> str:
        lines = ["n\tmax_ops\tp99_ops\tbaseline_max_ops"]
        for r in self.rows:
            base = "-" if r.baseline_max_ops is None else str(r.baseline_max_ops)
            lines.append(f"{r.n}\t{r.max_ops}\t{r.p99_ops:.1f}\t{base}")
        if self.slope is not None:
            lines.append(f"slope\t{self.slope:.4f}")
        if self.baseline_slope is not None:
            lines.append(f"baseline_slope\t{self.baseline_slope:.4f}")
        return "\n".join(lines)


def loglog_slope(ns: Sequence[int], values: Sequence[float]) -> float | None:
    if len(ns) < 2:
        return None
    slope, _ = np.polyfit(np.log(np.asarray(ns, dtype=float)), np.log(np.asarray(values, dtype=float)), 1)
    return float(slope)


def bench(
    n_list: Sequence[int],
    variant: Variant | str = Variant.T7,
    reps: int = 1,
    *,
    generator: Generator | str = Generator.UNIFORM,
    length_factor: int = 8,
    seed: int = 0,
    algseed: int = 0,
    a: float = DEFAULT_A,
    baseline: bool = True,
    baseline_checkpoints: int = 8,
) -> BenchResult:
    """Max and p99 per-update operation counts of the raw stack per ``n``.

    The baseline's cost is evaluated every ``length / baseline_checkpoints``
    updates and after the last one.
    """
    if list(n_list) != sorted(n_list):
        raise ValueError("n_list must be ascending")
    variant = Variant(variant)
    rows = []
    for n in n_list:
        length = length_factor * n
        max_ops, p99s, base_max = 0, [], 0
        for rep in range(reps):
            events = gen_stream(StreamSpec(Generator(generator), n, length, seed=seed + rep))
            sampling = SamplingConfig(n, seed=algseed + rep, a=a)
            stack = RecursiveSpanner(n, schedule(n, variant), sampling)
            naive = NaiveRecompute(n, sampling) if baseline else None
            every = max(1, length // max(1, baseline_checkpoints))
            counts = np.empty(length, dtype=np.int64)
            for i, ev in enumerate(events):
                counts[i] = stack.update(ev).op_count
                if naive is not None:
                    naive.update(ev)
                    if (i + 1) % every == 0 or i + 1 == length:
                        base_max = max(base_max, naive.cost())
            max_ops = max(max_ops, int(counts.max()) if length else 0)
            p99s.append(float(np.percentile(counts, 99)) if length else 0.0)
            log.info("bench n=%d rep=%d max_ops=%d", n, rep, max_ops)
        rows.append(BenchRow(n, max_ops, max(p99s), base_max if baseline else None))
    ns = [r.n for r in rows]
    slope = loglog_slope(ns, [max(1, r.max_ops) for r in rows])
    base_slope = loglog_slope(ns, [max(1, r.baseline_max_ops) for r in rows]) if baseline else None
    return BenchResult(rows, slope, base_slope)

