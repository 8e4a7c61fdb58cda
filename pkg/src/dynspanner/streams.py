"""Update streams: oblivious-adversary generators and the text format.

Format, one event per line::

    # comment
    n 64
    i 3 7
    d 7 3
    i 1 2 4.5      (weighted streams carry a weight on inserts)

Generators track the simulated edge set, so every stream they produce is
valid: no insert of a present edge, no delete of an absent one.  They draw
from their own seed, unrelated to any algorithm seed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .errors import StreamFormatError
from .graph import Edge, Op, UpdateEvent, undirected
from .weighted import WeightedEvent


class Generator(str, enum.Enum):
    UNIFORM = "uniform-random"
    INSERT_HEAVY = "insert-heavy"
    CHURN = "churn"
    CLIQUE = "clique-build-teardown"


@dataclass(frozen=True)
class StreamSpec:
    generator: Generator
    n: int
    length: int
    seed: int = 0
    window: int | None = None  # churn: max simultaneous edges (default 2n)
    clique: int | None = None  # clique-build-teardown: clique size
    weights: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "generator", Generator(self.generator))
        if self.n < 2:
            raise ValueError("streams need at least two nodes")
        if self.length < 0:
            raise ValueError("stream length must be non-negative")


class _EdgePool:
    """Present edges with O(1) random choice and removal."""

    def __init__(self) -> None:
        self.items: list[Edge] = []
        self.pos: dict[Edge, int] = {}

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, e: Edge) -> bool:
        return e in self.pos

    def add(self, e: Edge) -> None:
        self.pos[e] = len(self.items)
        self.items.append(e)

    def remove(self, e: Edge) -> None:
        i = self.pos.pop(e)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i


def _random_pair(rng: np.random.Generator, n: int) -> tuple[int, int]:
    u, v = rng.choice(n, size=2, replace=False)
    return int(u), int(v)


def _random_absent(rng: np.random.Generator, n: int, pool: _EdgePool) -> tuple[int, int] | None:
    if len(pool) >= n * (n - 1) // 2:
        return None
    while True:
        u, v = _random_pair(rng, n)
        if undirected(u, v) not in pool:
            return u, v


def _uniform(spec: StreamSpec, rng: np.random.Generator) -> list[UpdateEvent]:
    pool = _EdgePool()
    out = []
    for _ in range(spec.length):
        u, v = _random_pair(rng, spec.n)
        e = undirected(u, v)
        if e in pool:
            pool.remove(e)
            out.append(UpdateEvent(Op.DELETE, u, v))
        else:
            pool.add(e)
            out.append(UpdateEvent(Op.INSERT, u, v))
    return out


def _insert_heavy(spec: StreamSpec, rng: np.random.Generator) -> list[UpdateEvent]:
    # deletes are capped at a tenth of the stream so that inserts dominate
    budget = spec.length // 10
    pool = _EdgePool()
    out = []
    for _ in range(spec.length):
        pair = _random_absent(rng, spec.n, pool)
        want_delete = budget > 0 and len(pool) > 0 and rng.random() < 0.2
        if pair is None or want_delete:
            e = pool.items[int(rng.integers(len(pool)))]
            pool.remove(e)
            budget -= 1
            out.append(UpdateEvent(Op.DELETE, *e))
        else:
            pool.add(undirected(*pair))
            out.append(UpdateEvent(Op.INSERT, *pair))
    return out


def _churn(spec: StreamSpec, rng: np.random.Generator) -> list[UpdateEvent]:
    window = spec.window if spec.window is not None else 2 * spec.n
    window = max(1, min(window, spec.n * (spec.n - 1) // 2))
    pool = _EdgePool()
    fifo: list[Edge] = []
    head = 0
    out = []
    for _ in range(spec.length):
        if len(pool) >= window:
            e = fifo[head]
            head += 1
            pool.remove(e)
            out.append(UpdateEvent(Op.DELETE, *e))
        else:
            u, v = _random_absent(rng, spec.n, pool)
            pool.add(undirected(u, v))
            fifo.append(undirected(u, v))
            out.append(UpdateEvent(Op.INSERT, u, v))
    return out


def default_clique_size(n: int, length: int) -> int:
    return min(n, max(3, math.isqrt(max(length, 1))))


def _clique(spec: StreamSpec, rng: np.random.Generator) -> list[UpdateEvent]:
    q = spec.clique if spec.clique is not None else default_clique_size(spec.n, spec.length)
    q = min(max(q, 2), spec.n)
    out: list[UpdateEvent] = []
    while len(out) < spec.length:
        nodes = sorted(int(x) for x in rng.choice(spec.n, size=q, replace=False))
        pairs = [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1 :]]
        order = rng.permutation(len(pairs))
        built = []
        for idx in order:
            a, b = pairs[idx]
            if rng.random() < 0.5:
                a, b = b, a
            built.append((a, b))
            out.append(UpdateEvent(Op.INSERT, a, b))
        for idx in rng.permutation(len(built)):
            out.append(UpdateEvent(Op.DELETE, *built[idx]))
    return out[: spec.length]


_GENERATORS = {
    Generator.UNIFORM: _uniform,
    Generator.INSERT_HEAVY: _insert_heavy,
    Generator.CHURN: _churn,
    Generator.CLIQUE: _clique,
}


def gen_stream(spec: StreamSpec) -> list[UpdateEvent]:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed, spawn_key=(7,))))
    return _GENERATORS[spec.generator](spec, rng)


def gen_weighted_stream(spec: StreamSpec) -> list[WeightedEvent]:
    """Like :func:`gen_stream`, with uniform weights on inserts."""
    lo, hi = spec.weights if spec.weights is not None else (1.0, 1.0)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed, spawn_key=(11,))))
    out = []
    for ev in gen_stream(spec):
        if ev.op is Op.INSERT:
            w = round(float(rng.uniform(lo, hi)), 6)
            out.append(WeightedEvent(Op.INSERT, ev.u, ev.v, w))
        else:
            out.append(WeightedEvent(Op.DELETE, ev.u, ev.v))
    return out


# ---- text format -------------------------------------------------------------


def format_event(ev: UpdateEvent | WeightedEvent) -> str:
    w = getattr(ev, "weight", None)
    if w is None:
        return f"{ev.op.value} {ev.u} {ev.v}"
    return f"{ev.op.value} {ev.u} {ev.v} {w!r}"


def write_stream(fh: TextIO, n: int, events: Iterable[UpdateEvent | WeightedEvent], header: str | None = None) -> None:
    if header:
        for line in header.splitlines():
            fh.write(f"# {line}\n")
    fh.write(f"n {n}\n")
    for ev in events:
        fh.write(format_event(ev) + "\n")


def dump_stream(path: str | Path, n: int, events, header: str | None = None) -> None:
    with open(path, "w") as fh:
        write_stream(fh, n, events, header)


@dataclass
class ParsedStream:
    n: int
    events: list
    weighted: bool


def parse_stream(lines: Iterable[str], *, validate: bool = True) -> ParsedStream:
    """Parse the text format; errors name the offending line."""
    n: int | None = None
    events: list = []
    weighted = False
    present: set[Edge] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise StreamFormatError(lineno, raw, "expected header 'n <count>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise StreamFormatError(lineno, raw, "node count is not an integer") from None
            if n < 1:
                raise StreamFormatError(lineno, raw, "node count must be positive")
            continue
        if parts[0] not in ("i", "d") or len(parts) not in (3, 4):
            raise StreamFormatError(lineno, raw, "expected 'i <u> <v> [w]' or 'd <u> <v>'")
        try:
            u, v = int(parts[1]), int(parts[2])
            w = float(parts[3]) if len(parts) == 4 else None
        except ValueError:
            raise StreamFormatError(lineno, raw, "malformed number") from None
        op = Op(parts[0])
        if op is Op.DELETE and w is not None:
            raise StreamFormatError(lineno, raw, "deletes carry no weight")
        if validate:
            if not (0 <= u < n and 0 <= v < n):
                raise StreamFormatError(lineno, raw, f"node outside [0, {n})")
            if u == v:
                raise StreamFormatError(lineno, raw, "self-loop")
            e = undirected(u, v)
            if op is Op.INSERT:
                if e in present:
                    raise StreamFormatError(lineno, raw, "insert of a present edge")
                present.add(e)
            else:
                if e not in present:
                    raise StreamFormatError(lineno, raw, "delete of an absent edge")
                present.discard(e)
        if w is not None:
            weighted = True
        events.append((op, u, v, w))
    if n is None:
        raise StreamFormatError(0, "", "missing header 'n <count>'")
    if weighted:
        if any(op is Op.INSERT and w is None for op, _, _, w in events):
            raise StreamFormatError(0, "", "weighted stream has an insert without weight")
        out = [WeightedEvent(op, u, v, w) for op, u, v, w in events]
    else:
        out = [UpdateEvent(op, u, v) for op, u, v, _ in events]
    return ParsedStream(n, out, weighted)


def read_stream(path: str | Path, *, validate: bool = True) -> ParsedStream:
    with open(path) as fh:
        return parse_stream(fh, validate=validate)
