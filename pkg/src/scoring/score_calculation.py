"""
Merge strategies: local compatibility, partition scoring and reset.

A ``ScoreCalculation`` drives candidate evaluation in the red-blue loop.
``local_compatibility(a, b)`` is asked for every pair of states that a
candidate merge joins (or, with futures evaluation, for every pair of states
reached by shared steps), and ``score_function(partition)`` rates the
resulting partition. A score of ``True`` accepts a candidate immediately,
``False`` rejects it; any other value is a number and larger is better.
"""

import copy
import math
from typing import Any, Callable, Mapping, Optional, Union

Score = Union[bool, int, float]
LocalCompatibility = Callable[[Any, Any], bool]
ScoreFunction = Callable[[Mapping[Any, Any]], Score]


class ScoreCalculation:
    """
    Pluggable merge strategy.

    The default strategy accepts every structurally valid merge, which makes
    the red-blue loop behave like RPNI.
    """

    def __init__(self, local_compatibility: Optional[LocalCompatibility] = None,
                 score_function: Optional[ScoreFunction] = None):
        """
        Initialize the strategy.

        Args:
            local_compatibility: Pair predicate; defaults to always compatible
            score_function: Partition scorer; defaults to immediate acceptance
        """
        if local_compatibility is not None:
            self.local_compatibility = local_compatibility
        if score_function is not None:
            self.score_function = score_function

    def reset(self) -> None:
        """Clear per-candidate state. Called once before each candidate."""

    def local_compatibility(self, a: Any, b: Any) -> bool:
        return True

    def score_function(self, partition: Mapping[Any, Any]) -> Score:
        return True

    def clone(self) -> "ScoreCalculation":
        """Independent copy for evaluating candidates in parallel."""
        return copy.copy(self)


def score_value(score: Score) -> float:
    """
    Map a score onto the extended reals.

    Args:
        score: Value returned by a score function

    Returns:
        +inf for True, -inf for False, the number otherwise
    """
    if score is True:
        return math.inf
    if score is False:
        return -math.inf
    return float(score)


def edsm_score(partition: Mapping[Any, Any]) -> int:
    """Evidence of a merge: number of merged states minus number of partitions."""
    partitions = {id(state) for state in partition.values()}
    return len(partition) - len(partitions)


def conjoin(*predicates: LocalCompatibility) -> LocalCompatibility:
    """
    Combine pair predicates with logical and.

    Args:
        *predicates: Predicates over (a, b)

    Returns:
        Predicate that holds iff all given predicates hold
    """
    def combined(a: Any, b: Any) -> bool:
        return all(predicate(a, b) for predicate in predicates)

    return combined


def local_to_global_compatibility(compat: LocalCompatibility) -> ScoreFunction:
    """
    Turn a local compatibility check into a score function.

    The returned function checks every state of the assignment against the
    partition state it is mapped to.

    Args:
        compat: Pair predicate ``compat(state, partition_state)``

    Returns:
        Score function returning True (accept) or False (reject)
    """
    def score(partition: Mapping[Any, Any]) -> bool:
        return all(compat(state, part) for state, part in partition.items())

    return score
