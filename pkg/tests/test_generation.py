"""
Test suite for synthetic trace generation.
"""

import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.exceptions import GenerationError
from src.extraction.learned_model import LearnedModel, ModelFamily, ModelState, ModelTransition
from src.generation.trace_sampler import TraceSampler, trace_kind_for
from src.ingestion.trace_formats import IOTrace, LabeledWord, TraceKind, format_traces, parse_traces


def small_dfa():
    """Two-state Dfa over {0, 1} accepting words with an odd number of 1s."""
    states = [ModelState(0, False), ModelState(1, True)]
    transitions = [
        ModelTransition(0, "0", False, 0),
        ModelTransition(0, "1", True, 1),
        ModelTransition(1, "0", True, 1),
        ModelTransition(1, "1", False, 0),
    ]
    return LearnedModel(ModelFamily.DFA, states, 0, transitions)


def coin_chain():
    """Markov chain alternating between heads and tails at random."""
    states = [ModelState(0, "H"), ModelState(1, "T")]
    transitions = [
        ModelTransition(source, "tick", output, target, 0.5)
        for source in (0, 1)
        for output, target in (("H", 0), ("T", 1))
    ]
    return LearnedModel(ModelFamily.MARKOV_CHAIN, states, 0, transitions)


class TestTraceSampler:
    """Test random walks over reference models."""

    def test_same_seed_same_traces(self, faulty_car_alarm, config):
        """Test reproducibility under a fixed seed."""
        first = TraceSampler(faulty_car_alarm, seed=7, config=config).sample(50, 5, 10)
        second = TraceSampler(faulty_car_alarm, seed=7, config=config).sample(50, 5, 10)
        assert format_traces(first) == format_traces(second)

    def test_different_seeds_differ(self, car_alarm, config):
        """Test that the seed drives the walk."""
        first = TraceSampler(car_alarm, seed=1, config=config).sample(20, 10, 10)
        second = TraceSampler(car_alarm, seed=2, config=config).sample(20, 10, 10)
        assert first.traces != second.traces

    def test_lengths_and_outputs(self, car_alarm, config):
        """Test trace lengths and agreement with the model."""
        data = TraceSampler(car_alarm, seed=0, config=config).sample(30, 3, 6)
        assert data.kind is TraceKind.IO_TRACES
        assert len(data.traces) == 30
        for trace in data.traces:
            assert trace.initial_output == "N"
            assert 3 <= len(trace.steps) <= 6
            inputs = [in_sym for in_sym, _ in trace.steps]
            assert car_alarm.replay(inputs) == [out for _, out in trace.steps]

    def test_stochastic_frequencies(self, faulty_car_alarm, config):
        """Test that the faulty transition fires with its probability."""
        sampler = TraceSampler(faulty_car_alarm, seed=3, config=config)
        outcomes = [sampler.model.step(6, "d", sampler.rng)[0] for _ in range(5000)]
        assert outcomes.count("A") / len(outcomes) == pytest.approx(0.9, abs=0.02)

    def test_noise_flips_outputs(self, car_alarm, config):
        """Test that noisy outputs disagree with the model."""
        sampler = TraceSampler(car_alarm, seed=4, noise_rate=0.2, config=config)
        data = sampler.sample(100, 10, 10)
        mismatches = 0
        for trace in data.traces:
            expected = car_alarm.replay([in_sym for in_sym, _ in trace.steps])
            mismatches += sum(out != exp for (_, out), exp in zip(trace.steps, expected))
        assert mismatches == sampler.flips
        assert 100 < mismatches < 300

    def test_invalid_noise_rate(self, car_alarm, config):
        """Test a noise rate out of range."""
        with pytest.raises(GenerationError):
            TraceSampler(car_alarm, noise_rate=1.0, config=config)

    def test_invalid_lengths(self, car_alarm, config):
        """Test a maximal length below the minimal length."""
        with pytest.raises(GenerationError):
            TraceSampler(car_alarm, config=config).sample(5, 10, 3)

    def test_model_without_transitions(self, config):
        """Test sampling from a model with nothing to walk."""
        model = LearnedModel(ModelFamily.MOORE_MACHINE, [ModelState(0, "N")], 0, [])
        with pytest.raises(GenerationError):
            TraceSampler(model, config=config).sample(1, 1, 1)

    def test_markov_chain_observations(self, config):
        """Test observation sequences from a Markov chain."""
        data = TraceSampler(coin_chain(), seed=5, config=config).sample(10, 4, 4)
        assert data.kind is TraceKind.OBSERVATIONS
        assert all(len(trace) == 5 and trace[0] == "H" for trace in data.traces)
        assert parse_traces(format_traces(data)).traces == data.traces


class TestEnumerate:
    """Test exhaustive generation."""

    def test_all_words(self, car_alarm, config):
        """Test the number of words up to length 3."""
        data = TraceSampler(car_alarm, config=config).enumerate(3)
        assert len(data.traces) == 2 + 4 + 8
        assert data.traces[0] == IOTrace("N", (("d", "A"),))

    def test_dfa_words(self, config):
        """Test labeled words including the empty word."""
        data = TraceSampler(small_dfa(), config=config).enumerate(2)
        assert data.kind is TraceKind.LABELED_WORDS
        assert data.alphabet_size == 2
        assert data.traces[:3] == [LabeledWord((), "0"), LabeledWord(("0",), "0"), LabeledWord(("1",), "1")]
        assert LabeledWord(("1", "1"), "0") in data.traces
        assert format_traces(data).startswith("7 2\n0 0\n")

    def test_nondeterministic_rejected(self, faulty_car_alarm, config):
        """Test exhaustive generation from a stochastic model."""
        with pytest.raises(GenerationError):
            TraceSampler(faulty_car_alarm, config=config).enumerate(2)

    def test_trace_kinds(self, car_alarm):
        """Test the file format chosen per family."""
        assert trace_kind_for(car_alarm) is TraceKind.IO_TRACES
        assert trace_kind_for(small_dfa()) is TraceKind.LABELED_WORDS
        assert trace_kind_for(coin_chain()) is TraceKind.OBSERVATIONS


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
