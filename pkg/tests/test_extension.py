from __future__ import annotations

import pytest

from dynspanner.errors import DuplicateInsert
from dynspanner.extension import UpdateExtension
from dynspanner.graph import UpdateEvent
from dynspanner.oracle import verify_stretch
from dynspanner.sampling import SamplingConfig

from .helpers import random_stream


def test_phase_length_is_n_squared():
    assert UpdateExtension(4, "t7").phase_len == 16


def test_insert_only_stream_drains_into_growing_instance():
    ext = UpdateExtension(6, "t7")
    pairs = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    for u, v in pairs:
        ext.update(UpdateEvent.insert(u, v))
        assert len(ext.parts[ext.shrinking]) == 0
    assert len(ext.parts[ext.growing]) == len(pairs)
    assert ext.audit() == []


def test_phase_swap_restarts_shrinking_instance():
    n = 4
    ext = UpdateExtension(n, "t7")
    events = random_stream(n, 5 * n * n, seed=1)
    for ev in events:
        ext.update(ev)
    assert ext.phase == 5
    assert sum(ext.restarts) == 5
    assert ext.max_lifetime_updates <= 4 * n * n
    assert ext.audit() == []


def test_spanner_is_union_of_inner_spanners():
    ext = UpdateExtension(8, "t10")
    for ev in random_stream(8, 100, seed=2):
        ext.update(ev)
    assert ext.spanner() == ext.stacks[0].spanner() | ext.stacks[1].spanner()


def test_one_empty_instance_contributes_nothing():
    ext = UpdateExtension(8, "t7")
    ext.update(UpdateEvent.insert(1, 2))
    assert ext.stacks[ext.shrinking].spanner() == set()
    assert ext.spanner() == {(1, 2)}


def test_duplicate_insert_rejected_before_routing():
    ext = UpdateExtension(8, "t7")
    ext.update(UpdateEvent.insert(1, 2))
    with pytest.raises(DuplicateInsert):
        ext.update(UpdateEvent.insert(2, 1))
    assert ext.phase_pos == 1


@pytest.mark.parametrize("variant", ["t7", "t9", "t10"])
def test_n8_long_stream_audit_and_stretch(variant):
    n = 8
    ext = UpdateExtension(n, variant, SamplingConfig(n, seed=3))
    for ev in random_stream(n, 10 * n * n, seed=3):
        before = [st.updates for st in ext.stacks]
        m = ext.update(ev)
        # a restart replaces a stack, so count from zero in that case
        assert all(st.updates - (b if st.updates >= b else 0) <= 2 for st, b in zip(ext.stacks, before))
        assert ext.audit() == []
        g = ext.edges()
        assert verify_stretch(g, ext.spanner(), ext.stretch).stretch_violations == []
        assert all(c <= 2 * 4**j for j, c in enumerate(m.cascade, start=1))
