"""
Trace file formats.

Three formats are supported:

* IO traces: one JSON array per line. Mealy ``[["i1","o1"],["i2","o2"]]``,
  Moore ``["o0",["i1","o1"],...]`` (initial output first).
* Abbadingo labeled words: header ``<num_words> <alphabet_size>``, then one
  ``<label> <len> <sym_1> ... <sym_len>`` line per word.
* Observations: one trace per line, whitespace-separated symbols (a JSON
  array of strings per line is accepted as well).
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from src.exceptions import AmbiguousFormat, UnparseableInput
from src.utils.logger import get_logger

logger = get_logger(__name__)


class TraceKind(str, Enum):
    IO_TRACES = "io_traces"
    LABELED_WORDS = "labeled_words"
    OBSERVATIONS = "observations"


# CLI spelling of the formats
FORMAT_NAMES = {
    "io-traces": TraceKind.IO_TRACES,
    "abbadingo": TraceKind.LABELED_WORDS,
    "observations": TraceKind.OBSERVATIONS,
}


class IOTrace(NamedTuple):
    """An input/output trace; ``initial_output`` is set for Moore traces only."""
    initial_output: Optional[str]
    steps: Tuple[Tuple[str, str], ...]


class LabeledWord(NamedTuple):
    """An input word with the single output observed after it."""
    word: Tuple[str, ...]
    label: str


Trace = Union[IOTrace, LabeledWord, Tuple[str, ...]]


@dataclass
class TraceSet:
    """
    A collection of traces of one kind.

    Attributes:
        kind: Trace kind shared by all traces
        traces: IOTrace, LabeledWord or observation tuples, depending on kind
        alphabet_size: Abbadingo header value, kept for byte-exact round trips
    """
    kind: TraceKind
    traces: List[Trace] = field(default_factory=list)
    alphabet_size: Optional[int] = None

    def __len__(self) -> int:
        return len(self.traces)

    @property
    def total_symbols(self) -> int:
        """Number of steps (IO pairs, word symbols or observations) in the set."""
        if self.kind is TraceKind.IO_TRACES:
            return sum(len(trace.steps) for trace in self.traces)
        if self.kind is TraceKind.LABELED_WORDS:
            return sum(len(entry.word) for entry in self.traces)
        return sum(len(trace) for trace in self.traces)

    @property
    def is_moore(self) -> bool:
        """True if IO traces carry initial outputs."""
        return self.kind is TraceKind.IO_TRACES and any(
            trace.initial_output is not None for trace in self.traces
        )

    @classmethod
    def from_sequences(cls, data: Iterable[Sequence[Any]], kind: Optional[TraceKind] = None) -> "TraceSet":
        """
        Build a trace set from plain Python sequences.

        Accepts ``[["N", ("d","A"), ...], ...]`` (Moore), ``[[("x","a"), ...], ...]``
        (Mealy), ``[(("0","1"), "1"), ...]`` (labeled words) and
        ``[["a","b"], ...]`` (observations).

        Args:
            data: Traces as nested sequences
            kind: Force a trace kind instead of guessing it

        Returns:
            TraceSet
        """
        data = [list(entry) if not isinstance(entry, tuple) else entry for entry in data]
        if kind is None:
            kind = _guess_kind(data)

        if kind is TraceKind.IO_TRACES:
            return cls(kind, [_io_trace_from_items(list(entry)) for entry in data])
        if kind is TraceKind.LABELED_WORDS:
            return cls(kind, [LabeledWord(tuple(str(s) for s in entry[0]), str(entry[1])) for entry in data])
        return cls(kind, [tuple(str(s) for s in entry) for entry in data])


def _is_pair(item: Any) -> bool:
    return isinstance(item, (list, tuple)) and len(item) == 2 and all(_is_scalar(x) for x in item)


def _is_scalar(item: Any) -> bool:
    return isinstance(item, (str, int)) and not isinstance(item, bool)


def _guess_kind(data: List[Sequence[Any]]) -> TraceKind:
    if data and all(
        len(entry) == 2 and isinstance(entry[0], (list, tuple)) and _is_scalar(entry[1])
        for entry in data
    ):
        return TraceKind.LABELED_WORDS
    if any(any(_is_pair(item) for item in entry) for entry in data):
        return TraceKind.IO_TRACES
    return TraceKind.OBSERVATIONS


def _io_trace_from_items(items: List[Any]) -> IOTrace:
    initial = None
    if items and _is_scalar(items[0]):
        initial = str(items[0])
        items = items[1:]
    steps = []
    for item in items:
        if not _is_pair(item):
            raise UnparseableInput(f"Expected an [input, output] pair, got {item!r}")
        steps.append((str(item[0]), str(item[1])))
    return IOTrace(initial, tuple(steps))


# ----------------------------------------------------------------------
# Grammars
# ----------------------------------------------------------------------

def _content_lines(text: str) -> List[Tuple[int, str]]:
    return [(number, line.strip()) for number, line in enumerate(text.splitlines(), start=1) if line.strip()]


def parse_io_traces(text: str) -> TraceSet:
    """
    Parse IO traces, one JSON array per line.

    Args:
        text: File contents

    Returns:
        TraceSet of kind io_traces

    Raises:
        UnparseableInput: If a line is not a valid trace or Moore and Mealy
            traces are mixed
    """
    traces: List[IOTrace] = []
    for number, line in _content_lines(text):
        try:
            items = json.loads(line)
        except json.JSONDecodeError as e:
            raise UnparseableInput(f"line {number}: not JSON ({e.msg})") from e
        if not isinstance(items, list):
            raise UnparseableInput(f"line {number}: expected a JSON array")
        try:
            traces.append(_io_trace_from_items(items))
        except UnparseableInput as e:
            raise UnparseableInput(f"line {number}: {e}") from e

    moore_flags = {trace.initial_output is not None for trace in traces}
    if len(moore_flags) > 1:
        raise UnparseableInput("Moore traces (with initial output) and Mealy traces are mixed")
    return TraceSet(TraceKind.IO_TRACES, traces)


def parse_abbadingo(text: str) -> TraceSet:
    """
    Parse an Abbadingo labeled-word file.

    Args:
        text: File contents

    Returns:
        TraceSet of kind labeled_words with the header's alphabet size

    Raises:
        UnparseableInput: If the header or a word line is malformed
    """
    lines = _content_lines(text)
    if not lines:
        raise UnparseableInput("empty Abbadingo file")

    header = lines[0][1].split()
    if len(header) != 2 or not all(token.isdigit() for token in header):
        raise UnparseableInput("line 1: expected header '<num_words> <alphabet_size>'")
    num_words, alphabet_size = int(header[0]), int(header[1])

    words: List[LabeledWord] = []
    for number, line in lines[1:]:
        tokens = line.split()
        if len(tokens) < 2 or tokens[0] not in ("0", "1") or not tokens[1].isdigit():
            raise UnparseableInput(f"line {number}: expected '<label> <len> <symbols...>'")
        length = int(tokens[1])
        symbols = tokens[2:]
        if len(symbols) != length:
            raise UnparseableInput(f"line {number}: declared length {length}, found {len(symbols)} symbols")
        if not all(symbol.isdigit() for symbol in symbols):
            raise UnparseableInput(f"line {number}: symbols must be non-negative integers")
        words.append(LabeledWord(tuple(symbols), tokens[0]))

    if len(words) != num_words:
        raise UnparseableInput(f"header announces {num_words} words, found {len(words)}")
    return TraceSet(TraceKind.LABELED_WORDS, words, alphabet_size=alphabet_size)


def parse_observations(text: str) -> TraceSet:
    """
    Parse observation sequences.

    Args:
        text: File contents

    Returns:
        TraceSet of kind observations

    Raises:
        UnparseableInput: If a line is neither a flat symbol list nor a JSON
            array of strings
    """
    traces: List[Tuple[str, ...]] = []
    for number, line in _content_lines(text):
        if line.startswith("["):
            try:
                items = json.loads(line)
            except json.JSONDecodeError as e:
                raise UnparseableInput(f"line {number}: not JSON ({e.msg})") from e
            if not isinstance(items, list) or not all(isinstance(item, str) for item in items):
                raise UnparseableInput(f"line {number}: expected a JSON array of strings")
            traces.append(tuple(items))
        else:
            tokens = line.split()
            if any(token[0] in '["' for token in tokens):
                raise UnparseableInput(f"line {number}: unexpected JSON fragment")
            traces.append(tuple(tokens))
    return TraceSet(TraceKind.OBSERVATIONS, traces)


_PARSERS = {
    TraceKind.IO_TRACES: parse_io_traces,
    TraceKind.LABELED_WORDS: parse_abbadingo,
    TraceKind.OBSERVATIONS: parse_observations,
}


def detect_format(raw: str) -> TraceKind:
    """
    Detect the trace format of a file's contents.

    The Abbadingo grammar is the most specific one (counted header); when it
    matches, the flat observation grammar is not considered.

    Args:
        raw: File contents

    Returns:
        The matching TraceKind

    Raises:
        UnparseableInput: If the text is empty or no grammar matches
        AmbiguousFormat: If more than one grammar matches
    """
    if not raw.strip():
        raise UnparseableInput("empty input")

    matches = []
    for kind, parser in _PARSERS.items():
        try:
            parser(raw)
        except UnparseableInput:
            continue
        matches.append(kind)

    if TraceKind.LABELED_WORDS in matches and TraceKind.OBSERVATIONS in matches:
        matches.remove(TraceKind.OBSERVATIONS)

    if not matches:
        raise UnparseableInput("input matches none of: io-traces, abbadingo, observations")
    if len(matches) > 1:
        raise AmbiguousFormat([kind.value for kind in matches])

    logger.debug(f"Detected trace format: {matches[0].value}")
    return matches[0]


def parse_traces(raw: str, data_format: Union[str, TraceKind] = "auto") -> TraceSet:
    """
    Parse trace text in the given or detected format.

    Args:
        raw: File contents
        data_format: 'auto', a CLI format name or a TraceKind

    Returns:
        TraceSet
    """
    if isinstance(data_format, TraceKind):
        kind = data_format
    elif data_format == "auto":
        kind = detect_format(raw)
    elif data_format in FORMAT_NAMES:
        kind = FORMAT_NAMES[data_format]
    else:
        kind = TraceKind(data_format)
    return _PARSERS[kind](raw)


# ----------------------------------------------------------------------
# Writers
# ----------------------------------------------------------------------

def format_io_traces(traces: TraceSet) -> str:
    """Serialize IO traces as JSON lines."""
    lines = []
    for trace in traces.traces:
        items: List[Any] = [] if trace.initial_output is None else [trace.initial_output]
        items.extend([list(step) for step in trace.steps])
        lines.append(json.dumps(items, separators=(",", ":"), ensure_ascii=False))
    return "".join(line + "\n" for line in lines)


def format_abbadingo(traces: TraceSet) -> str:
    """Serialize labeled words in the Abbadingo format."""
    alphabet_size = traces.alphabet_size
    if alphabet_size is None:
        symbols = {int(symbol) for entry in traces.traces for symbol in entry.word}
        alphabet_size = max(symbols) + 1 if symbols else 0
    lines = [f"{len(traces.traces)} {alphabet_size}"]
    for entry in traces.traces:
        lines.append(" ".join([entry.label, str(len(entry.word)), *entry.word]))
    return "".join(line + "\n" for line in lines)


def format_observations(traces: TraceSet) -> str:
    """Serialize observation sequences, one whitespace-separated line each."""
    return "".join(" ".join(trace) + "\n" for trace in traces.traces)


def format_traces(traces: TraceSet) -> str:
    """Serialize a trace set in the format matching its kind."""
    if traces.kind is TraceKind.IO_TRACES:
        return format_io_traces(traces)
    if traces.kind is TraceKind.LABELED_WORDS:
        return format_abbadingo(traces)
    return format_observations(traces)
