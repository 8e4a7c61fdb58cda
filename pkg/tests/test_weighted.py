from __future__ import annotations

import random

import pytest

from dynspanner.errors import DuplicateInsert, WeightBelowMinimum
from dynspanner.graph import Op
from dynspanner.oracle import verify_weighted_stretch
from dynspanner.sampling import SamplingConfig
from dynspanner.weighted import BinnedSpanner, WeightedConfig, WeightedEvent, bin_index

from .helpers import random_stream


@pytest.mark.parametrize("w, b", [(1.0, 0), (1.4, 0), (10.0, 5)])
def test_bin_examples(w, b):
    assert bin_index(w, WeightedConfig(0.5)) == b


@pytest.mark.parametrize("eps", [0.1, 0.25, 0.5, 1.0])
@pytest.mark.parametrize("k", [0, 1, 3, 7, 20])
def test_exact_powers_land_on_their_bin(eps, k):
    cfg = WeightedConfig(eps, w_min=2.0)
    assert bin_index(2.0 * (1 + eps) ** k, cfg) == k


def test_weight_below_minimum():
    with pytest.raises(WeightBelowMinimum):
        bin_index(0.5, WeightedConfig(0.25))


def test_equal_weights_behave_like_unweighted():
    n = 16
    cfg = SamplingConfig(n, seed=1)
    ws = BinnedSpanner(n, WeightedConfig(0.25), "t7", cfg)
    events = random_stream(n, 200, seed=1)
    for ev in events:
        ws.update(WeightedEvent(ev.op, ev.u, ev.v, 3.0 if ev.op is Op.INSERT else None))
    assert ws.nonempty_bins() in ([], [bin_index(3.0, ws.cfg)])
    assert set(ws.spanner()) <= set(ws.edges())


def test_two_bins_union():
    ws = BinnedSpanner(8, WeightedConfig(0.25), "t7")
    ws.update(WeightedEvent(Op.INSERT, 0, 1, 1.0))
    ws.update(WeightedEvent(Op.INSERT, 2, 3, 50.0))
    assert ws.nonempty_bins() == [0, bin_index(50.0, ws.cfg)]
    assert ws.spanner() == {(0, 1): 1.0, (2, 3): 50.0}


def test_set_weight_moves_bins_and_rejects_duplicates():
    ws = BinnedSpanner(8, WeightedConfig(0.25), "t7")
    ws.update(WeightedEvent(Op.INSERT, 0, 1, 1.0))
    ws.set_weight(1, 0, 9.0)
    assert ws.edges() == {(0, 1): 9.0}
    with pytest.raises(DuplicateInsert):
        ws.update(WeightedEvent(Op.INSERT, 0, 1, 2.0))


def test_random_weighted_stretch():
    n = 16
    ws = BinnedSpanner(n, WeightedConfig(0.25), "t10", SamplingConfig(n, seed=6))
    rng = random.Random(6)
    for ev in random_stream(n, 300, seed=6):
        w = round(rng.uniform(1, 100), 3) if ev.op is Op.INSERT else None
        ws.update(WeightedEvent(ev.op, ev.u, ev.v, w))
        assert verify_weighted_stretch(ws.edges(), ws.spanner(), 1.25 * 5) == []
    assert ws.audit() == []
