from __future__ import annotations

from fractions import Fraction

import pytest

from dynspanner.errors import MissingDelete
from dynspanner.graph import UpdateEvent
from dynspanner.oracle import recompute_reference, verify_stretch
from dynspanner.partial import StretchMode
from dynspanner.recursive import (
    RecursiveSpanner,
    Variant,
    bottom_threshold,
    d_exponent,
    depth,
    s_exponent,
    schedule,
)
from dynspanner.sampling import SamplingConfig
from dynspanner.streams import Generator, StreamSpec, gen_stream

from .helpers import random_stream


def test_t7_exponents_at_depth_two():
    assert s_exponent(Variant.T7, 2) == Fraction(11, 14)
    assert d_exponent(Variant.T7, 2, 1) == Fraction(10, 14)
    assert d_exponent(Variant.T7, 2, 2) == Fraction(9, 14)


def test_t9_t10_exponents_at_depth_two():
    assert s_exponent(Variant.T9, 2) == Fraction(37, 57)
    assert s_exponent(Variant.T10, 2) == Fraction(23, 38)


@pytest.mark.parametrize("variant, limit", [(Variant.T7, Fraction(3, 4)), (Variant.T9, Fraction(5, 9)), (Variant.T10, Fraction(1, 2))])
def test_exponents_approach_limits(variant, limit):
    gaps = [abs(s_exponent(variant, ell) - limit) for ell in range(1, 30)]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < Fraction(1, 10**5)


@pytest.mark.parametrize("variant", list(Variant))
def test_d_exponents_decrease_below_s(variant):
    for ell in range(1, 8):
        ds = [d_exponent(variant, ell, j) for j in range(1, ell + 1)]
        assert all(a > b for a, b in zip(ds, ds[1:]))
        assert ds[0] < s_exponent(variant, ell)


def test_bottom_threshold_at_256():
    assert bottom_threshold(256, StretchMode.THREE) == 46


def test_depth():
    assert depth(16) == 2 and depth(256) == 3 and depth(4) == 1


def test_schedule_t10_at_256():
    sc = schedule(256, "t10")
    assert (sc.ell, sc.s, sc.d, sc.bottom_d) == (3, 181, (108, 84, 57), 46)
    assert sc.bottom_mode is StretchMode.THREE
    assert "d_3=57" in sc.as_lines()


def test_schedule_truncates_but_keeps_one_level():
    sc = schedule(1024, "t7")
    assert sc.nominal_ell == 4 and sc.ell == 1 and sc.s == 1024


def test_schedule_rejects_tiny_n():
    with pytest.raises(ValueError):
        schedule(3, "t7")


@pytest.mark.parametrize("variant", list(Variant))
def test_single_insert_cascades_one_edge_per_level(variant):
    stack = RecursiveSpanner(256, variant)
    m = stack.update(UpdateEvent.insert(4, 9))
    assert m.cascade == (1,) * stack.schedule.ell
    assert stack.spanner() == {(4, 9)}


def test_empty_stack_has_empty_spanner():
    assert RecursiveSpanner(16, "t7").spanner() == set()


def test_delete_of_missing_edge_is_rejected():
    stack = RecursiveSpanner(16, "t9")
    with pytest.raises(MissingDelete):
        stack.update(UpdateEvent.delete(1, 2))
    assert stack.updates == 0 and stack.spanner() == set()


def test_t7_spanner_matches_oracle_union():
    n = 128
    stack = RecursiveSpanner(n, "t7", SamplingConfig(n, seed=4))
    for ev in random_stream(n, 1000, seed=4):
        stack.update(ev)
    expected = set()
    for inst in stack.instances():
        ref = recompute_reference(inst.graph, inst.centers, inst.d, inst.mode)
        expected |= set(ref.a)
    bottom = stack.bottom
    expected |= recompute_reference(bottom.graph, bottom.centers, bottom.d, bottom.mode).spanner
    assert stack.spanner() == expected
    assert stack.audit() == []


@pytest.mark.parametrize("variant", list(Variant))
def test_dense_stream_stretch(variant):
    # cliques of 40 nodes push degrees past every threshold at n = 64
    n = 64
    events = gen_stream(StreamSpec(Generator.CLIQUE, n, 3000, seed=5, clique=40))
    stack = RecursiveSpanner(n, variant, SamplingConfig(n, seed=5, a=1.0))
    dropped = 0
    for i, ev in enumerate(events):
        m = stack.update(ev)
        dropped = max(dropped, stack.graph.num_edges - stack.spanner_size)
        assert all(c <= 4**j for j, c in enumerate(m.cascade, start=1))
        if i % 50 == 0 and not stack.sampling_failure:
            g = set(stack.graph.undirected_edges())
            assert verify_stretch(g, stack.spanner(), stack.stretch).stretch_violations == []
    assert stack.audit() == []
    assert dropped > 0
