from __future__ import annotations

import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynspanner.errors import StreamFormatError
from dynspanner.graph import DynOrientedGraph, Op
from dynspanner.streams import (
    Generator,
    StreamSpec,
    default_clique_size,
    gen_stream,
    gen_weighted_stream,
    parse_stream,
    write_stream,
)


def _text(n, events):
    buf = io.StringIO()
    write_stream(buf, n, events)
    return buf.getvalue()


@pytest.mark.parametrize("gen", list(Generator))
def test_same_spec_same_stream(gen):
    spec = StreamSpec(gen, 20, 300, seed=4)
    assert _text(20, gen_stream(spec)) == _text(20, gen_stream(spec))


@given(st.sampled_from(list(Generator)), st.integers(2, 24), st.integers(0, 400), st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_generated_streams_replay_cleanly(gen, n, length, seed):
    events = gen_stream(StreamSpec(gen, n, length, seed=seed))
    assert len(events) == length
    g = DynOrientedGraph(n)
    for ev in events:
        g.apply_update(ev)


def test_insert_heavy_ratio():
    length = 2000
    events = gen_stream(StreamSpec(Generator.INSERT_HEAVY, 64, length, seed=1))
    assert sum(ev.op is Op.INSERT for ev in events) >= 0.9 * length


@pytest.mark.parametrize("window", [1, 5, 40])
def test_churn_window(window):
    edges = 0
    for ev in gen_stream(StreamSpec(Generator.CHURN, 30, 500, seed=2, window=window)):
        edges += 1 if ev.op is Op.INSERT else -1
        assert edges <= window


def test_clique_size_default():
    assert default_clique_size(64, 640) == 25
    assert default_clique_size(8, 10_000) == 8


def test_weighted_stream_round_trip():
    spec = StreamSpec(Generator.UNIFORM, 10, 50, seed=3, weights=(1.0, 100.0))
    events = gen_weighted_stream(spec)
    assert all(1.0 <= ev.weight <= 100.0 for ev in events if ev.op is Op.INSERT)
    parsed = parse_stream(_text(10, events).splitlines())
    assert parsed.weighted and parsed.events == events


def test_unweighted_round_trip_with_comments():
    events = gen_stream(StreamSpec(Generator.CHURN, 12, 40, seed=1))
    text = "# header\n\n" + _text(12, events)
    parsed = parse_stream(text.splitlines())
    assert parsed.n == 12 and not parsed.weighted and parsed.events == events


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("n 4\ni 0 1\nx 1 2\n", 3),
        ("n 4\ni 0 1\ni 1 0\n", 3),
        ("n 4\nd 0 1\n", 2),
        ("n 4\ni 0 9\n", 2),
        ("n 4\ni 2 2\n", 2),
        ("# c\ni 0 1\n", 2),
        ("n 4\ni 0 one\n", 2),
        ("n 4\ni 0 1\nd 0 1 3.0\n", 3),
    ],
)
def test_parse_errors_name_the_line(text, lineno):
    with pytest.raises(StreamFormatError) as info:
        parse_stream(text.splitlines())
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_missing_header():
    with pytest.raises(StreamFormatError):
        parse_stream(["# nothing"])
