"""
Test suite for trace parsing and prefix tree construction.
"""

import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.automata.tree_state import BehaviorConfig, TIME_STEP_INPUT, UNKNOWN_OUTPUT
from src.exceptions import (
    AmbiguousFormat,
    ConflictingLabels,
    InconsistentInitialOutput,
    MissingInitialOutput,
    NondeterminismInData,
    UnparseableInput,
    UnsupportedData,
)
from src.ingestion.pta_builder import build_pta, observations_to_io_traces, pta_states
from src.ingestion.trace_formats import (
    IOTrace,
    LabeledWord,
    TraceKind,
    TraceSet,
    detect_format,
    format_traces,
    parse_abbadingo,
    parse_io_traces,
    parse_traces,
)

MEALY_DET = BehaviorConfig.of("mealy", "deterministic")
MOORE_DET = BehaviorConfig.of("moore", "deterministic")
MOORE_STOCH = BehaviorConfig.of("moore", "stochastic")

ABBADINGO = "3 2\n1 2 0 1\n0 1 1\n1 0\n"


class TestDetectFormat:
    """Test trace format detection."""

    def test_abbadingo(self):
        """Test an Abbadingo header with word lines."""
        assert detect_format(ABBADINGO) is TraceKind.LABELED_WORDS

    def test_io_traces(self):
        """Test a Moore IO trace line."""
        assert detect_format('["N",["d","A"],["d","A"]]\n') is TraceKind.IO_TRACES

    def test_observations(self):
        """Test flat symbol lines."""
        assert detect_format("a b a a\nb b\n") is TraceKind.OBSERVATIONS

    def test_empty_input(self):
        """Test that empty text is rejected."""
        with pytest.raises(UnparseableInput):
            detect_format("  \n")

    def test_ambiguous(self):
        """Test text matching the IO and observation grammars."""
        with pytest.raises(AmbiguousFormat) as info:
            detect_format('["N"]\n')
        assert set(info.value.candidates) == {"io_traces", "observations"}

    def test_unparseable(self):
        """Test text matching no grammar."""
        with pytest.raises(UnparseableInput):
            detect_format('[["x","a"]\n')


class TestParsers:
    """Test the individual grammars."""

    def test_moore_and_mealy_traces(self):
        """Test initial outputs on Moore traces only."""
        moore = parse_io_traces('["N",["l","N"]]\n')
        assert moore.traces == [IOTrace("N", (("l", "N"),))]
        assert moore.is_moore

        mealy = parse_io_traces('[["x","a"],["y","b"]]\n')
        assert mealy.traces[0].initial_output is None
        assert not mealy.is_moore

    def test_mixed_moore_and_mealy(self):
        """Test that mixed trace styles are rejected."""
        with pytest.raises(UnparseableInput):
            parse_io_traces('["N",["l","N"]]\n[["l","N"]]\n')

    def test_abbadingo_words(self):
        """Test word and label extraction."""
        data = parse_abbadingo(ABBADINGO)
        assert data.traces == [LabeledWord(("0", "1"), "1"), LabeledWord(("1",), "0"), LabeledWord((), "1")]
        assert data.alphabet_size == 2

    @pytest.mark.parametrize("text", [
        "2 2\n1 1 0\n",
        "1 2\n1 2 0\n",
        "1 2\n2 1 0\n",
        "1 2\n1 1 a\n",
    ])
    def test_abbadingo_errors(self, text):
        """Test count, length, label and symbol checks."""
        with pytest.raises(UnparseableInput):
            parse_abbadingo(text)

    def test_json_observations(self):
        """Test observation lines given as JSON arrays."""
        data = parse_traces('["a","b"]\n', "observations")
        assert data.traces == [("a", "b")]

    def test_round_trip_is_byte_identical(self):
        """Test that parse then format reproduces the text."""
        for text in (ABBADINGO, '["N",["l","N"],["d","A"]]\n', "a b a\nb\n"):
            assert format_traces(parse_traces(text)) == text

    def test_from_sequences_guesses_kind(self):
        """Test building trace sets from Python data."""
        assert TraceSet.from_sequences([["N", ("d", "A")]]).kind is TraceKind.IO_TRACES
        assert TraceSet.from_sequences([[("x", "a")]]).kind is TraceKind.IO_TRACES
        assert TraceSet.from_sequences([(("0", "1"), "1")]).kind is TraceKind.LABELED_WORDS
        assert TraceSet.from_sequences([["a", "b"]]).kind is TraceKind.OBSERVATIONS


class TestBuildPta:
    """Test prefix tree construction."""

    def test_example_pta(self, example1_traces):
        """Test the six-state PTA with BFS ids."""
        root = build_pta(TraceSet.from_sequences(example1_traces), MEALY_DET)
        states = root.get_all_states()
        assert [state.id for state in states] == list(range(6))
        assert [state.get_prefix() for state in states] == [
            (),
            (("x", "a"),),
            (("y", "b"),),
            (("x", "a"), ("x", "a")),
            (("x", "a"), ("x", "a"), ("x", "a")),
            (("x", "a"), ("x", "a"), ("y", "b")),
        ]
        assert root.transitions["x"]["a"].count == 2
        assert root.transitions["y"]["b"].count == 1

    def test_empty_trace_set(self):
        """Test that no traces give a single root."""
        root = build_pta(TraceSet(TraceKind.IO_TRACES, []), MEALY_DET)
        assert root.get_all_states() == [root]
        assert root.transitions == {}

    def test_shared_prefix_counts(self):
        """Test prefix grouping."""
        root = build_pta(TraceSet.from_sequences([[("x", "a")], [("x", "a")]]), MEALY_DET)
        assert len(root.get_all_states()) == 2
        info = root.transitions["x"]["a"]
        assert info.count == info.original_count == 2
        assert info.original_target is info.target

    def test_nondeterminism_reports_prefix(self):
        """Test deterministic learning on nondeterministic data."""
        traces = [[("x", "a"), ("y", "b")], [("x", "a"), ("y", "c")]]
        with pytest.raises(NondeterminismInData) as info:
            build_pta(TraceSet.from_sequences(traces), MEALY_DET)
        assert info.value.prefix == (("x", "a"),)
        assert info.value.input_symbol == "y"

    def test_moore_root_output(self):
        """Test that the initial output becomes the root output."""
        root = build_pta(TraceSet.from_sequences([["N", ("d", "A")]]), MOORE_DET)
        assert root.output == "N"
        assert root.transitions["d"]["A"].target.output == "A"

    def test_inconsistent_initial_output(self):
        """Test Moore traces with different initial outputs."""
        with pytest.raises(InconsistentInitialOutput):
            build_pta(TraceSet.from_sequences([["N", ("d", "A")], ["A", ("d", "A")]]), MOORE_DET)

    def test_missing_initial_output(self):
        """Test Moore learning on Mealy traces."""
        with pytest.raises(MissingInitialOutput):
            build_pta(TraceSet.from_sequences([[("d", "A")]]), MOORE_DET)

    def test_mealy_drops_initial_output(self):
        """Test Mealy learning on Moore traces."""
        root = build_pta(TraceSet.from_sequences([["N", ("d", "A")]]), MEALY_DET)
        assert root.output is None

    def test_labeled_words(self):
        """Test the tree over words with state labels."""
        root = build_pta(parse_abbadingo(ABBADINGO), MOORE_DET)
        assert root.output == "1"
        zero = root.transitions["0"][UNKNOWN_OUTPUT].target
        assert zero.output == UNKNOWN_OUTPUT
        assert zero.transitions["1"]["1"].target.output == "1"
        assert root.transitions["1"]["0"].count == 1

    def test_conflicting_labels(self):
        """Test one word with two labels."""
        data = TraceSet(TraceKind.LABELED_WORDS, [LabeledWord(("0",), "1"), LabeledWord(("0",), "0")])
        with pytest.raises(ConflictingLabels):
            build_pta(data, MOORE_DET)

    def test_labeled_words_need_dfa_behavior(self):
        """Test labeled words with stochastic behavior."""
        with pytest.raises(UnsupportedData):
            build_pta(parse_abbadingo(ABBADINGO), MOORE_STOCH)

    def test_observations(self):
        """Test observation sequences over the time-step input."""
        data = parse_traces("a b b\na b\n", "observations")
        converted = observations_to_io_traces(data)
        assert converted.traces[0] == IOTrace("a", ((TIME_STEP_INPUT, "b"), (TIME_STEP_INPUT, "b")))

        root = build_pta(data, MOORE_STOCH)
        assert root.output == "a"
        assert root.transitions[TIME_STEP_INPUT]["b"].count == 2
        assert len(pta_states(root)) == 3

        with pytest.raises(UnsupportedData):
            build_pta(data, MOORE_DET)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
