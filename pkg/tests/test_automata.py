"""
Test suite for the internal automaton representation.
"""

import random

import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.automata.structure import count_edges, count_states, is_deterministic, is_moore, normalize
from src.automata.tree_state import (
    BehaviorConfig,
    TransitionInfo,
    TreeState,
    node_order,
    shortlex_key,
    state_id_key,
)
from src.exceptions import StructureViolation
from src.ingestion.pta_builder import build_pta, pta_edge_mass
from src.ingestion.trace_formats import TraceSet
from src.learning.state_merging import EngineConfig, GeneralizedStateMerging

MEALY_DET = BehaviorConfig.of("mealy", "deterministic")
MEALY_ND = BehaviorConfig.of("mealy", "nondeterministic")


def add_edge(source: TreeState, in_sym: str, out_sym: str, target: TreeState, count: int = 1) -> TreeState:
    source.transitions.setdefault(in_sym, {})[out_sym] = TransitionInfo(target, count, target, count)
    return target


class FakePrefix:
    def __init__(self, prefix):
        self.prefix = tuple(prefix)

    def get_prefix(self):
        return self.prefix


def random_prefix(rng: random.Random):
    return [(rng.choice("xyz"), rng.choice("ab")) for _ in range(rng.randint(0, 4))]


def random_traces(rng: random.Random, count: int = 15, max_length: int = 6):
    return [
        [(rng.choice("xy"), rng.choice("ab")) for _ in range(rng.randint(1, max_length))]
        for _ in range(count)
    ]


class TestNodeOrder:
    """Test shortlex ordering of states."""

    def test_root_is_minimal(self, example1_traces):
        """Test that the root precedes its children."""
        root = build_pta(TraceSet.from_sequences(example1_traces), MEALY_DET)
        child = root.transitions["x"]["a"].target
        assert node_order(root, child) == -1

    def test_promotion_order(self, example2_traces):
        """Test that the x/a child precedes the y/b child."""
        root = build_pta(TraceSet.from_sequences(example2_traces), MEALY_DET)
        q2 = root.transitions["x"]["a"].target
        q3 = root.transitions["y"]["b"].target
        assert node_order(q2, q3) == -1
        assert node_order(q3, q2) == 1
        assert node_order(q2, q2) == 0

    def test_pointwise_comparison(self):
        """Test equal-length prefixes compared pair by pair."""
        a = FakePrefix([("x", "a"), ("x", "a")])
        b = FakePrefix([("x", "a"), ("y", "b")])
        assert node_order(a, b) == -1

    def test_ids_match_shortlex(self):
        """Test that BFS ids agree with shortlex order of prefixes."""
        rng = random.Random(3)
        root = build_pta(TraceSet.from_sequences(random_traces(rng)), MEALY_ND)
        states = root.get_all_states()
        assert sorted(states, key=shortlex_key) == sorted(states, key=state_id_key)

    @pytest.mark.parametrize("seed", range(5))
    def test_total_order_properties(self, seed):
        """Test antisymmetry, transitivity and trichotomy on random prefixes."""
        rng = random.Random(seed)
        for _ in range(200):
            a, b, c = (FakePrefix(random_prefix(rng)) for _ in range(3))
            ab, ba = node_order(a, b), node_order(b, a)
            assert ab == -ba
            assert (ab == 0) == (a.prefix == b.prefix)
            if ab <= 0 and node_order(b, c) <= 0:
                assert node_order(a, c) <= 0


class TestStructure:
    """Test structural predicates."""

    def test_pta_is_deterministic(self, example1_traces):
        """Test that the example PTA is deterministic."""
        root = build_pta(TraceSet.from_sequences(example1_traces), MEALY_DET)
        assert is_deterministic(root)

    def test_two_outputs_for_one_input(self):
        """Test a direct determinism violation."""
        root = TreeState(0)
        add_edge(root, "x", "a", TreeState(1, "a"))
        add_edge(root, "x", "b", TreeState(2, "b"))
        assert not is_deterministic(root)

    def test_fresh_pta_is_moore(self):
        """Test that a PTA always has Moore behavior."""
        rng = random.Random(11)
        root = build_pta(TraceSet.from_sequences(random_traces(rng)), MEALY_ND)
        assert is_moore(root)

    def test_moore_violation_through_partition(self):
        """Test two states with different incoming outputs in one partition."""
        root = TreeState(0, "a")
        u = add_edge(root, "x", "a", TreeState(1, "a"))
        v = add_edge(root, "y", "b", TreeState(2, "b"))
        block = u.shallow_copy()
        assert is_moore(root)
        assert not is_moore(root, {u: block, v: block})

    def test_unknown_output_matches(self):
        """Test that the unknown output does not violate Moore behavior."""
        root = TreeState(0, "1")
        u = add_edge(root, "0", "unknown", TreeState(1, "unknown"))
        v = add_edge(root, "1", "1", TreeState(2, "1"))
        block = u.shallow_copy()
        assert not is_moore(root, {u: block, v: block})
        assert is_moore(root, {u: block, v: block}, unknown_output="unknown")

    def test_merged_example_is_moore(self, config):
        """Test the merged Moore model where the first block is entered by the initial output."""
        traces = [["a", *trace] for trace in
                  [[("x", "a"), ("x", "a"), ("x", "a")], [("x", "a"), ("x", "a"), ("y", "b")], [("y", "b")]]]
        engine_config = EngineConfig.from_config(config, behavior=BehaviorConfig.of("moore", "deterministic"))
        learner = GeneralizedStateMerging(engine_config, config)
        root = build_pta(TraceSet.from_sequences(traces), engine_config.behavior)
        learner.red = [root]
        learner.compute_blue()
        q2 = root.transitions["x"]["a"].target
        learner.apply_merge(root, learner.try_merge(root, q2))
        assert count_states(root) == 2
        assert is_moore(root)
        assert is_deterministic(root)

    def test_tree_property(self):
        """Test edges = states - 1 on random PTAs."""
        rng = random.Random(5)
        for _ in range(20):
            root = build_pta(TraceSet.from_sequences(random_traces(rng)), MEALY_ND)
            assert count_edges(root) == count_states(root) - 1
            prefixes = [state.get_prefix() for state in root.get_all_states()]
            assert len(set(prefixes)) == len(prefixes)


class TestNormalize:
    """Test frequency normalization."""

    def test_three_to_one(self):
        """Test counts 3 and 1 on one input."""
        traces = [[("x", "a")]] * 3 + [[("x", "b")]]
        root = build_pta(TraceSet.from_sequences(traces), MEALY_ND)
        dist = normalize(root)[(root, "x")]
        probabilities = {out: p for (out, _), p in dist.items()}
        assert probabilities == {"a": 0.75, "b": 0.25}

    def test_single_outcome(self):
        """Test a single-outcome distribution."""
        root = build_pta(TraceSet.from_sequences([[("x", "a")]] * 5), MEALY_ND)
        assert list(normalize(root)[(root, "x")].values()) == [1.0]

    def test_zero_total_rejected(self):
        """Test that an input group with total count 0 is rejected."""
        root = TreeState(0)
        add_edge(root, "x", "a", TreeState(1, "a"), count=0)
        with pytest.raises(StructureViolation):
            normalize(root)

    @pytest.mark.parametrize("seed", range(5))
    def test_distributions_sum_to_one(self, seed):
        """Test that every distribution sums to one."""
        rng = random.Random(seed)
        root = build_pta(TraceSet.from_sequences(random_traces(rng, count=40)), MEALY_ND)
        for dist in normalize(root).values():
            assert abs(sum(dist.values()) - 1.0) < 1e-9
            assert all(p >= 0 for p in dist.values())


class TestFrequencyMass:
    """Test that PTA frequencies survive merging."""

    @pytest.mark.parametrize("seed", range(5))
    def test_mass_preserved(self, seed, config):
        """Test that merged counts add up to the PTA edge mass."""
        rng = random.Random(seed)
        data = TraceSet.from_sequences(random_traces(rng, count=30))
        engine_config = EngineConfig.from_config(config, behavior=MEALY_ND)
        learner = GeneralizedStateMerging(engine_config, config)
        root = build_pta(data, MEALY_ND)
        mass = pta_edge_mass(root)

        root = learner.learn(root)
        merged = sum(info.count for state in root.get_all_states() for _, _, info in state.iter_transitions())
        assert merged == mass
        assert pta_edge_mass(root) == mass
        assert mass == data.total_symbols


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
