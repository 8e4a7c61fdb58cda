from __future__ import annotations

import random

from hypothesis import strategies as st

from dynspanner.graph import Op, UpdateEvent, undirected


def toggle_stream(n: int, pairs) -> list[UpdateEvent]:
    """Insert each pair if absent, delete it if present (orientation as drawn)."""
    present: set = set()
    out = []
    for u, v in pairs:
        e = undirected(u, v)
        if e in present:
            present.remove(e)
            out.append(UpdateEvent(Op.DELETE, u, v))
        else:
            present.add(e)
            out.append(UpdateEvent(Op.INSERT, u, v))
    return out


def random_stream(n: int, length: int, seed: int) -> list[UpdateEvent]:
    rng = random.Random(seed)
    pairs = []
    for _ in range(length):
        u, v = rng.sample(range(n), 2)
        pairs.append((u, v))
    return toggle_stream(n, pairs)


@st.composite
def streams(draw, n_min: int = 2, n_max: int = 12, max_len: int = 80):
    n = draw(st.integers(n_min, n_max))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    pairs = draw(st.lists(pair, max_size=max_len))
    return n, toggle_stream(n, pairs)
