"""Exception hierarchy shared by every layer of the pipeline."""

from __future__ import annotations


class SpannerError(Exception):
    """Base class for all errors raised by dynspanner."""


class InvalidUpdate(SpannerError, ValueError):
    """An update event violates the stream contract. State is untouched."""


class DuplicateInsert(InvalidUpdate):
    pass


class MissingDelete(InvalidUpdate):
    pass


class SelfLoop(InvalidUpdate):
    pass


class NodeOutOfRange(InvalidUpdate):
    pass


class InconsistentState(SpannerError, AssertionError):
    """Internal bookkeeping disagrees with its own definition (bug trap)."""


class ChangeLogOverflow(InconsistentState):
    """A single partial-spanner update changed more than four B edges."""


class CascadeOverflow(InconsistentState):
    """A recursion level emitted more than 4**j B changes for one update."""


class NotSubgraph(SpannerError, ValueError):
    """The spanner handed to the verifier contains an edge outside the graph."""


class WeightBelowMinimum(InvalidUpdate):
    pass


class StreamFormatError(SpannerError, ValueError):
    """A stream file line could not be parsed."""

    def __init__(self, lineno: int, line: str, reason: str) -> None:
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno
        self.line = line
        self.reason = reason
