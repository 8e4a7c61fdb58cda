"""Seedable randomness and the hitting-set center sampler.

Every algorithm instance draws from its own PCG64 substream, derived from
the master seed and the instance's position in the pipeline (its "path").
Stream generation uses a separate seed entirely, so the update sequence is
independent of the algorithm's coin flips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

DEFAULT_A = 2.0


@dataclass(frozen=True)
class SamplingConfig:
    n: int
    seed: int = 0
    a: float = DEFAULT_A

    def __post_init__(self) -> None:
        if self.a < 1:
            raise ValueError(f"error exponent a must be >= 1, got {self.a}")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @property
    def x(self) -> float:
        return hitting_x(self.n, self.a)


def hitting_x(n: int, a: float) -> float:
    """``a * ln(4 n^5) + 1``: the oversampling factor for the union bound."""
    return a * (math.log(4) + 5 * math.log(n)) + 1


def inclusion_probability(cfg: SamplingConfig, d: int) -> float:
    return min(cfg.x / d, 1.0)


def size_bound(cfg: SamplingConfig, q: int) -> float:
    """Upper bound ``3 x n / q`` on the sample size that holds whp."""
    return 3 * cfg.x * cfg.n / q


def substream(seed: int, path: Sequence[int] = ()) -> np.random.Generator:
    """Independent generator for the instance at *path* under *seed*."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=tuple(path))))


@dataclass(frozen=True)
class CenterSet:
    """Sorted cluster centers; ``index[s_i] == i`` with 1-based i."""

    centers: tuple[int, ...]
    index: dict[int, int] = field(compare=False, repr=False)

    @classmethod
    def from_nodes(cls, nodes: Iterable[int]) -> CenterSet:
        ordered = tuple(sorted(set(nodes)))
        return cls(ordered, {s: i for i, s in enumerate(ordered, start=1)})

    def __len__(self) -> int:
        return len(self.centers)

    def __contains__(self, node: object) -> bool:
        return node in self.index

    def center(self, i: int) -> int:
        """The node s_i (1-based)."""
        return self.centers[i - 1]


def sample_centers(cfg: SamplingConfig, d: int, path: Sequence[int] = ()) -> CenterSet:
    """Include each node independently with probability ``min(x/d, 1)``."""
    if not 1 <= d <= cfg.n:
        raise ValueError(f"degree threshold d={d} outside [1, {cfg.n}]")
    p = inclusion_probability(cfg, d)
    if p >= 1.0:
        return CenterSet.from_nodes(range(cfg.n))
    draws = substream(cfg.seed, path).random(cfg.n)
    return CenterSet.from_nodes(np.flatnonzero(draws < p).tolist())


class HittingCheck(NamedTuple):
    hit: bool
    size_ok: bool


def check_hitting(
    centers: CenterSet, sets: Iterable[Iterable[int]], q: int, cfg: SamplingConfig
) -> HittingCheck:
    hit = all(any(x in centers for x in s) for s in sets)
    return HittingCheck(hit, len(centers) <= size_bound(cfg, q))
