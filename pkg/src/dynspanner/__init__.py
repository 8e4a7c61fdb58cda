"""Fully dynamic 3- and 5-spanners with worst-case per-update cost."""

from __future__ import annotations

from .errors import (
    CascadeOverflow,
    ChangeLogOverflow,
    DuplicateInsert,
    InconsistentState,
    InvalidUpdate,
    MissingDelete,
    NodeOutOfRange,
    NotSubgraph,
    SelfLoop,
    SpannerError,
    StreamFormatError,
    WeightBelowMinimum,
)
from .extension import UpdateExtension
from .graph import DynOrientedGraph, Op, UpdateEvent
from .partial import PartialSpanner, StretchMode
from .recursive import ParamSchedule, RecursiveSpanner, Variant, schedule
from .sampling import SamplingConfig, sample_centers
from .weighted import BinnedSpanner, WeightedConfig, WeightedEvent

__all__ = [
    "BinnedSpanner",
    "CascadeOverflow",
    "ChangeLogOverflow",
    "DuplicateInsert",
    "DynOrientedGraph",
    "InconsistentState",
    "InvalidUpdate",
    "MissingDelete",
    "NodeOutOfRange",
    "NotSubgraph",
    "Op",
    "ParamSchedule",
    "PartialSpanner",
    "RecursiveSpanner",
    "SamplingConfig",
    "SelfLoop",
    "SpannerError",
    "StreamFormatError",
    "StretchMode",
    "UpdateEvent",
    "UpdateExtension",
    "Variant",
    "WeightBelowMinimum",
    "WeightedConfig",
    "WeightedEvent",
    "sample_centers",
    "schedule",
]
