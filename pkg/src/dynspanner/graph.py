"""Dynamic simple graph on a fixed node set, with one orientation per edge.

Nodes are the integers ``0 .. n-1`` and the node order is their numeric
order.  Every undirected edge ``{u, v}`` is stored together with the
direction it was inserted with: an insert event ``(u, v)`` creates the
oriented edge ``u -> v``.  Neighbor sets are kept as sorted lists so that
``min``, successor and rank queries are logarithmic.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator, NamedTuple

from sortedcontainers import SortedList

from .errors import DuplicateInsert, MissingDelete, NodeOutOfRange, SelfLoop

Edge = tuple[int, int]


class Op(str, enum.Enum):
    INSERT = "i"
    DELETE = "d"


class UpdateEvent(NamedTuple):
    op: Op
    u: int
    v: int

    @classmethod
    def insert(cls, u: int, v: int) -> UpdateEvent:
        return cls(Op.INSERT, u, v)

    @classmethod
    def delete(cls, u: int, v: int) -> UpdateEvent:
        return cls(Op.DELETE, u, v)


class OrientedEdgeDelta(NamedTuple):
    """The oriented edge that an update added or removed."""

    op: Op
    tail: int
    head: int


def undirected(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class OpCounter:
    """Tally of elementary ordered-set operations (the cost model)."""

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0


class DynOrientedGraph:
    __slots__ = ("n", "ops", "_adj", "_out", "_in", "_orient")

    def __init__(self, n: int, ops: OpCounter | None = None) -> None:
        if n < 1:
            raise ValueError(f"need at least one node, got n={n}")
        self.n = n
        self.ops = ops if ops is not None else OpCounter()
        # created lazily: most instances in a recursion touch few nodes
        self._adj: dict[int, SortedList] = {}
        self._out: dict[int, set[int]] = {}
        self._in: dict[int, set[int]] = {}
        self._orient: dict[Edge, Edge] = {}

    # ---- validation --------------------------------------------------------

    def _check_pair(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise NodeOutOfRange(f"edge ({u}, {v}) outside [0, {self.n})")
        if u == v:
            raise SelfLoop(f"self-loop on node {u}")

    def validate(self, event: UpdateEvent) -> None:
        """Raise the matching InvalidUpdate subclass if *event* cannot apply."""
        u, v = event.u, event.v
        self._check_pair(u, v)
        present = undirected(u, v) in self._orient
        if event.op is Op.INSERT and present:
            raise DuplicateInsert(f"edge {{{u}, {v}}} already present")
        if event.op is Op.DELETE and not present:
            raise MissingDelete(f"edge {{{u}, {v}}} not present")

    # ---- mutation ----------------------------------------------------------

    def apply_update(self, event: UpdateEvent) -> OrientedEdgeDelta:
        self.validate(event)
        if event.op is Op.INSERT:
            self._link(event.u, event.v)
            return OrientedEdgeDelta(Op.INSERT, event.u, event.v)
        tail, head = self._orient[undirected(event.u, event.v)]
        self._unlink(tail, head)
        return OrientedEdgeDelta(Op.DELETE, tail, head)

    def insert(self, u: int, v: int) -> OrientedEdgeDelta:
        return self.apply_update(UpdateEvent(Op.INSERT, u, v))

    def delete(self, u: int, v: int) -> OrientedEdgeDelta:
        return self.apply_update(UpdateEvent(Op.DELETE, u, v))

    def _link(self, tail: int, head: int) -> None:
        self._orient[undirected(tail, head)] = (tail, head)
        for a, b in ((tail, head), (head, tail)):
            nbrs = self._adj.get(a)
            if nbrs is None:
                nbrs = self._adj[a] = SortedList()
                self._out[a] = set()
                self._in[a] = set()
            nbrs.add(b)
        self._out[tail].add(head)
        self._in[head].add(tail)
        self.ops.count += 2

    def _unlink(self, tail: int, head: int) -> None:
        del self._orient[undirected(tail, head)]
        self._adj[tail].remove(head)
        self._adj[head].remove(tail)
        self._out[tail].discard(head)
        self._in[head].discard(tail)
        self.ops.count += 2

    # ---- queries -----------------------------------------------------------

    _EMPTY: SortedList = SortedList()

    def neighbors(self, u: int) -> SortedList:
        """Sorted neighbor list of *u*. Treat as read-only."""
        return self._adj.get(u, self._EMPTY)

    def out_neighbors(self, u: int) -> set[int]:
        return self._out.get(u, set())

    def in_neighbors(self, u: int) -> set[int]:
        return self._in.get(u, set())

    def degree(self, u: int) -> int:
        nbrs = self._adj.get(u)
        return len(nbrs) if nbrs is not None else 0

    def outdeg(self, u: int) -> int:
        out = self._out.get(u)
        return len(out) if out is not None else 0

    def has_edge(self, u: int, v: int) -> bool:
        return undirected(u, v) in self._orient

    def orientation(self, u: int, v: int) -> Edge:
        return self._orient[undirected(u, v)]

    def min_neighbor(self, u: int) -> int | None:
        nbrs = self._adj.get(u)
        return nbrs[0] if nbrs else None

    def successor(self, u: int, x: int) -> int | None:
        """Smallest neighbor of *u* strictly greater than *x*."""
        nbrs = self._adj.get(u)
        if not nbrs:
            return None
        pos = nbrs.bisect_right(x)
        return nbrs[pos] if pos < len(nbrs) else None

    def rank(self, u: int, x: int) -> int:
        """Number of neighbors of *u* smaller than *x*."""
        nbrs = self._adj.get(u)
        return nbrs.bisect_left(x) if nbrs else 0

    def max_out_degree(self) -> int:
        return max((len(out) for out in self._out.values()), default=0)

    @property
    def num_edges(self) -> int:
        return len(self._orient)

    def oriented_edges(self) -> Iterator[Edge]:
        return iter(self._orient.values())

    def undirected_edges(self) -> Iterator[Edge]:
        return iter(self._orient.keys())

    def __len__(self) -> int:
        return len(self._orient)

    def __contains__(self, edge: object) -> bool:
        if not isinstance(edge, tuple) or len(edge) != 2:
            return False
        return undirected(*edge) in self._orient

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> DynOrientedGraph:
        g = cls(n)
        for u, v in edges:
            g.insert(u, v)
        return g
