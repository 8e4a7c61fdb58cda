"""Reference-counted undirected edge sets that can feed a parent set."""

from __future__ import annotations

from typing import Iterator

from .graph import Edge


class EdgeCounter:
    """Multiset of undirected edges; an edge is present while its count > 0.

    Presence transitions (0 -> 1 and 1 -> 0) are forwarded to ``parent`` so
    a pipeline can maintain the union of its parts without recomputation,
    and are optionally journaled for incremental verification.
    """

    __slots__ = ("_count", "parent", "journal")

    def __init__(self, parent: EdgeCounter | None = None, *, journal: bool = False) -> None:
        self._count: dict[Edge, int] = {}
        self.parent = parent
        self.journal: list[tuple[int, Edge]] | None = [] if journal else None

    def add(self, edge: Edge) -> None:
        c = self._count.get(edge, 0)
        self._count[edge] = c + 1
        if c == 0:
            if self.parent is not None:
                self.parent.add(edge)
            if self.journal is not None:
                self.journal.append((1, edge))

    def remove(self, edge: Edge) -> None:
        c = self._count[edge]
        if c == 1:
            del self._count[edge]
            if self.parent is not None:
                self.parent.remove(edge)
            if self.journal is not None:
                self.journal.append((-1, edge))
        else:
            self._count[edge] = c - 1

    def count(self, edge: Edge) -> int:
        return self._count.get(edge, 0)

    def drain_journal(self) -> list[tuple[int, Edge]]:
        out = self.journal or []
        self.journal = []
        return out

    def as_set(self) -> set[Edge]:
        return set(self._count)

    def counts(self) -> dict[Edge, int]:
        return dict(self._count)

    def __contains__(self, edge: object) -> bool:
        return edge in self._count

    def __len__(self) -> int:
        return len(self._count)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._count)
