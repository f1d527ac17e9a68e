"""
IOAlergia compatibility and its variants.

Two output distributions are compatible when, for every output, the observed
frequencies do not differ by more than the Hoeffding bound for the given
epsilon.
"""

import math
from functools import partial
from typing import Any, Sequence

from src.scoring.score_calculation import (
    ScoreCalculation,
    conjoin,
    edsm_score,
    local_to_global_compatibility,
)

DEFAULT_EPSILON = 0.05


def hoeffding_bound(n1: int, n2: int, epsilon: float) -> float:
    """Maximal frequency difference accepted for sample sizes n1 and n2."""
    return math.sqrt(0.5 * math.log(2.0 / epsilon)) * (1.0 / math.sqrt(n1) + 1.0 / math.sqrt(n2))


def hoeffding_compat(f1: int, n1: int, f2: int, n2: int, epsilon: float) -> bool:
    """
    Hoeffding test on two observed frequencies.

    Args:
        f1: Occurrences in the first sample
        n1: Size of the first sample
        f2: Occurrences in the second sample
        n2: Size of the second sample
        epsilon: Significance parameter in (0, 1]

    Returns:
        True if the frequencies are compatible (always for empty samples)
    """
    if n1 == 0 or n2 == 0:
        return True
    return abs(f1 / n1 - f2 / n2) < hoeffding_bound(n1, n2, epsilon)


def ioalergia_compat(a: Any, b: Any, epsilon: float = DEFAULT_EPSILON,
                     use_original_counts: bool = True) -> bool:
    """
    Compare the output distributions of two states on their shared inputs.

    Args:
        a: First state (TreeState, partition state or PTA view)
        b: Second state
        epsilon: Hoeffding parameter
        use_original_counts: Use PTA counts (``original_count``) instead of
            the counts of the current model (``count``)

    Returns:
        True if all distributions pass the Hoeffding test
    """
    field = "original_count" if use_original_counts else "count"
    for in_sym in a.transitions.keys() & b.transitions.keys():
        a_trans = a.transitions[in_sym]
        b_trans = b.transitions[in_sym]
        a_total = sum(getattr(info, field) for info in a_trans.values())
        b_total = sum(getattr(info, field) for info in b_trans.values())
        for out_sym in a_trans.keys() | b_trans.keys():
            a_count = getattr(a_trans[out_sym], field) if out_sym in a_trans else 0
            b_count = getattr(b_trans[out_sym], field) if out_sym in b_trans else 0
            if not hoeffding_compat(a_count, a_total, b_count, b_total, epsilon):
                return False
    return True


def parity_compat(a: Any, b: Any, symbols: Sequence[str] = ("l", "d")) -> bool:
    """
    Domain constraint: the number of occurrences of each given input in the
    states' prefixes must agree modulo 2.
    """
    def parity(state: Any):
        prefix = state.get_prefix()
        return [sum(in_sym == symbol for in_sym, _ in prefix) % 2 for symbol in symbols]

    return parity(a) == parity(b)


class IOAlergia(ScoreCalculation):
    """IOAlergia compatibility, meant to be evaluated on futures in the PTA."""

    def __init__(self, epsilon: float = DEFAULT_EPSILON):
        super().__init__()
        self.epsilon = epsilon

    def local_compatibility(self, a: Any, b: Any) -> bool:
        return ioalergia_compat(a, b, self.epsilon)


class IOAlergiaOnPartition(ScoreCalculation):
    """
    IOAlergia evaluated globally: every state against its partition state,
    with the frequencies of the current model.
    """

    def __init__(self, epsilon: float = DEFAULT_EPSILON):
        super().__init__()
        self.epsilon = epsilon

    def count_compatibility(self, state: Any, part: Any) -> bool:
        return ioalergia_compat(state, part, self.epsilon, use_original_counts=False)

    def score_function(self, partition):
        return local_to_global_compatibility(self.count_compatibility)(partition)


class IOAlergiaWithEDSM(ScoreCalculation):
    """IOAlergia compatibility with the number of compatibility checks as score."""

    def __init__(self, epsilon: float = DEFAULT_EPSILON):
        super().__init__()
        self.epsilon = epsilon
        self.evidence = 0

    def reset(self) -> None:
        self.evidence = 0

    def local_compatibility(self, a: Any, b: Any) -> bool:
        self.evidence += 1
        return ioalergia_compat(a, b, self.epsilon)

    def score_function(self, partition) -> int:
        return self.evidence


class IOAlergiaEDSMOnPartition(IOAlergiaOnPartition):
    """Partition-wide IOAlergia check; accepted partitions are scored by EDSM evidence."""

    def score_function(self, partition):
        if not super().score_function(partition):
            return False
        return edsm_score(partition)


class IOAlergiaWithParity(IOAlergia):
    """IOAlergia conjoined with the prefix parity constraint on the given inputs."""

    def __init__(self, epsilon: float = DEFAULT_EPSILON, symbols: Sequence[str] = ("l", "d")):
        super().__init__(epsilon)
        self.symbols = tuple(symbols)

    def local_compatibility(self, a: Any, b: Any) -> bool:
        compat = conjoin(
            partial(parity_compat, symbols=self.symbols),
            partial(ioalergia_compat, epsilon=self.epsilon),
        )
        return compat(a, b)
