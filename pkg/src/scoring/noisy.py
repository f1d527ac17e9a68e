"""
Deterministic learning from noisy data.

Learning runs with nondeterministic transition behavior. A candidate is
rated by how likely the observed number of outputs that differ from the
dominant output is under a per-step error rate; the final model keeps only
the dominant transitions.
"""

from typing import Any, Dict, Mapping

from scipy.stats import binom

from src.automata.tree_state import TransitionInfo, TreeState
from src.scoring.score_calculation import Score, ScoreCalculation
from src.utils.logger import get_logger

logger = get_logger(__name__)


def get_main_output(transitions: Dict[str, TransitionInfo]) -> str:
    """Output with the highest count; ties go to the textually smallest output."""
    return min(transitions, key=lambda out_sym: (-transitions[out_sym].count, out_sym))


def binomial_tail(mismatches: int, total: int, error_rate: float) -> float:
    """
    Probability of observing at least ``mismatches`` errors in ``total`` steps.

    Args:
        mismatches: Observed number of non-dominant outputs
        total: Number of observations
        error_rate: Per-step mislabeling probability

    Returns:
        P(X >= mismatches) for X ~ Binomial(total, error_rate)
    """
    if mismatches <= 0:
        return 1.0
    return float(binom.sf(mismatches - 1, total, error_rate))


def noisy_nd_score(partition: Mapping[Any, Any], error_rate: float, threshold: float) -> Score:
    """
    Rate a partition by the binomial tail of its output mismatches.

    Args:
        partition: Mapping of states to partition states
        error_rate: Per-step mislabeling probability
        threshold: Significance level below which the merge is rejected

    Returns:
        False if the tail probability is below ``threshold``, the probability otherwise
    """
    mismatches = 0
    total = 0
    seen = set()
    for part in partition.values():
        if id(part) in seen:
            continue
        seen.add(id(part))
        for out_map in part.transitions.values():
            main_out = get_main_output(out_map)
            for out_sym, info in out_map.items():
                if out_sym != main_out:
                    mismatches += info.count
                total += info.count

    probability = binomial_tail(mismatches, total, error_rate)
    if probability < threshold:
        return False
    return probability


class NoisyDeterministicScore(ScoreCalculation):
    """Score calculation for learning deterministic models from noisy traces."""

    def __init__(self, error_rate: float = 0.01, threshold: float = 0.05):
        super().__init__()
        self.error_rate = error_rate
        self.threshold = threshold

    def score_function(self, partition: Mapping[Any, Any]) -> Score:
        return noisy_nd_score(partition, self.error_rate, self.threshold)


def dominant_output_postprocess(root: TreeState) -> TreeState:
    """
    Keep only the dominant output of every (state, input).

    Transition maps are replaced, never edited in place, so PTA transitions
    stay intact. States that become unreachable drop out of the model.

    Args:
        root: Initial state of the learned model

    Returns:
        The same root, now deterministic
    """
    before = len(root.get_all_states())
    for state in root.get_all_states():
        state.transitions = {
            in_sym: {main_out: out_map[main_out]}
            for in_sym, out_map in state.transitions.items()
            for main_out in [get_main_output(out_map)]
        }
    after = len(root.get_all_states())
    if after < before:
        logger.debug(f"Dominant-output pruning removed {before - after} unreachable states")
    return root
