"""Trace parsing, format detection and prefix tree construction."""

from src.ingestion.trace_formats import (
    FORMAT_NAMES,
    IOTrace,
    LabeledWord,
    TraceKind,
    TraceSet,
    detect_format,
    format_traces,
    parse_traces,
)
from src.ingestion.pta_builder import build_pta, observations_to_io_traces, pta_edge_mass, pta_states

__all__ = [
    "FORMAT_NAMES",
    "IOTrace",
    "LabeledWord",
    "TraceKind",
    "TraceSet",
    "detect_format",
    "format_traces",
    "parse_traces",
    "build_pta",
    "observations_to_io_traces",
    "pta_edge_mass",
    "pta_states",
]
