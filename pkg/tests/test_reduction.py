from __future__ import annotations

import math

from hypothesis import given, settings
from hypothesis import strategies as st

from dynspanner.edgecount import EdgeCounter
from dynspanner.graph import UpdateEvent
from dynspanner.oracle import recompute_reference
from dynspanner.partial import MAX_B_CHANGES, StretchMode
from dynspanner.reduction import DegreeReduction, GroupAssignment
from dynspanner.sampling import SamplingConfig

from .helpers import random_stream, streams


def test_lowest_free_slot_on_fresh_edges():
    ga = GroupAssignment(2)
    assert [ga.assign(0, v) for v in range(1, 6)] == [1, 1, 2, 2, 3]


def test_released_slot_is_reused():
    ga = GroupAssignment(2)
    for v in range(1, 6):
        ga.assign(0, v)
    assert ga.release(0, 1) == 1
    assert ga.assign(0, 9) == 1


def test_large_cap_keeps_one_group():
    ga = GroupAssignment(10)
    assert {ga.assign(0, v) for v in range(1, 10)} == {1}


def test_group_count_formula():
    # t = ceil(max out-degree / s) groups suffice on insert-only streams
    ga = GroupAssignment(3)
    groups = {ga.assign(0, v) for v in range(1, 11)}
    assert max(groups) == math.ceil(10 / 3) == 4


def test_fresh_insert_touches_one_instance():
    dr = DegreeReduction(8, 2, 2)
    dr.update(UpdateEvent.insert(0, 1))
    assert list(dr.instances) == [1]
    assert dr.instances[1].updates == 1


def test_delete_hits_only_owning_group():
    dr = DegreeReduction(8, 1, 2)
    for v in (1, 2, 3):
        dr.update(UpdateEvent.insert(0, v))
    before = {g: inst.updates for g, inst in dr.instances.items()}
    dr.update(UpdateEvent.delete(3, 0))
    after = {g: inst.updates for g, inst in dr.instances.items()}
    assert after == {1: before[1], 2: before[2], 3: before[3] + 1}
    assert (0, 3) not in dr.assign.group_of


def test_random_partition_audit():
    n, s = 64, 4
    dr = DegreeReduction(n, s, 3, sampling=SamplingConfig(n))
    for ev in random_stream(n, 1000, seed=2):
        log = dr.update(ev)
        assert len(log) <= MAX_B_CHANGES
        assert dr.assign.max_count() <= s
    assert dr.audit() == []


def test_a_union_matches_per_group_reference():
    n = 64
    sink = EdgeCounter()
    dr = DegreeReduction(n, 3, 60, StretchMode.THREE, SamplingConfig(n, seed=1, a=1.0), sink=sink)
    for ev in random_stream(n, 800, seed=3):
        dr.update(ev)
    expected = set()
    for inst in dr.instances.values():
        expected |= set(recompute_reference(inst.graph, inst.centers, inst.d, inst.mode).a)
    assert dr.spanner_a() == expected == sink.as_set()


@given(streams(n_min=3, n_max=12, max_len=60), st.integers(1, 3), st.integers(1, 3), st.sampled_from(list(StretchMode)))
@settings(max_examples=60, deadline=None)
def test_reduction_invariants(data, s, d, mode):
    n, events = data
    dr = DegreeReduction(n, s, min(d, n), mode)
    for ev in events:
        assert len(dr.update(ev)) <= MAX_B_CHANGES
        assert dr.audit() == []
    bound = sum(inst.a_size_bound() for inst in dr.instances.values())
    assert len(dr.spanner_a()) <= bound
