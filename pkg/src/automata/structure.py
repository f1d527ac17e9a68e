"""
Structural predicates and probability normalization for IO frequency automata.

All functions here are read-only. A model can optionally be viewed through a
partition (any mapping from model states to partition states); states missing
from the mapping stand for themselves.
"""

from collections import deque
from typing import Dict, Iterator, Mapping, Optional, Tuple

from src.automata.tree_state import Symbol, TreeState, UNKNOWN_OUTPUT
from src.exceptions import StructureViolation

PartitionView = Optional[Mapping[TreeState, TreeState]]
Distribution = Dict[Tuple[Symbol, TreeState], float]


def _resolve(state: TreeState, partition: PartitionView) -> TreeState:
    if partition is None:
        return state
    return partition.get(state, state)


def iter_view_states(root: TreeState, partition: PartitionView = None) -> Iterator[TreeState]:
    """
    Yield every state reachable from ``root``, seen through ``partition``.

    Args:
        root: Initial state of the model
        partition: Optional mapping of model states to partition states

    Yields:
        Distinct (partition) states in BFS order
    """
    start = _resolve(root, partition)
    seen = {id(start)}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        yield state
        for _, _, info in state.iter_transitions():
            target = _resolve(info.target, partition)
            if id(target) not in seen:
                seen.add(id(target))
                queue.append(target)


def find_nondeterminism(root: TreeState, partition: PartitionView = None) -> Optional[TreeState]:
    """Return a state with two outputs for one input, or None."""
    for state in iter_view_states(root, partition):
        for out_map in state.transitions.values():
            if len(out_map) > 1:
                return state
    return None


def is_deterministic(root: TreeState, partition: PartitionView = None) -> bool:
    """
    Check that every state has at most one output per input.

    Args:
        root: Initial state of the model
        partition: Optional partition view

    Returns:
        True if the (viewed) model is deterministic
    """
    return find_nondeterminism(root, partition) is None


def _outputs_agree(first: Optional[Symbol], second: Optional[Symbol],
                   unknown_output: Optional[Symbol]) -> bool:
    if first == second:
        return True
    return unknown_output is not None and unknown_output in (first, second)


def find_moore_violation(root: TreeState, partition: PartitionView = None,
                         unknown_output: Optional[Symbol] = None) -> Optional[TreeState]:
    """Return a state entered with two different outputs, or None."""
    incoming: Dict[int, Symbol] = {}

    def record(state: TreeState, output: Optional[Symbol]) -> bool:
        if output is None:
            return True
        key = id(state)
        seen = incoming.get(key)
        if seen is None or seen == unknown_output:
            incoming[key] = output
            return True
        return _outputs_agree(seen, output, unknown_output)

    start = _resolve(root, partition)
    if not record(start, root.output):
        return start
    for state in iter_view_states(root, partition):
        for _, out_sym, info in state.iter_transitions():
            target = _resolve(info.target, partition)
            if not record(target, out_sym):
                return target
    return None


def is_moore(root: TreeState, partition: PartitionView = None,
             unknown_output: Optional[Symbol] = None) -> bool:
    """
    Check that all transitions into any state carry the same output.

    The root's initial output counts as an incoming transition.

    Args:
        root: Initial state of the model
        partition: Optional partition view
        unknown_output: Output treated as "don't care" (labeled-word trees)

    Returns:
        True if the (viewed) model has Moore behavior
    """
    return find_moore_violation(root, partition, unknown_output) is None


def normalize(root: TreeState) -> Dict[Tuple[TreeState, Symbol], Distribution]:
    """
    Turn frequencies into probability distributions.

    p(q, i)(o, q') = count(q, i, o) / sum over o' of count(q, i, o')

    Args:
        root: Initial state of the model

    Returns:
        Mapping (state, input) -> {(output, target): probability}

    Raises:
        StructureViolation: If a (state, input) group has total count 0
    """
    distributions: Dict[Tuple[TreeState, Symbol], Distribution] = {}
    for state in root.get_all_states():
        for in_sym in sorted(state.transitions):
            out_map = state.transitions[in_sym]
            total = sum(info.count for info in out_map.values())
            if total <= 0:
                raise StructureViolation(
                    "positive_counts", state.id, f"input '{in_sym}' has total count {total}"
                )
            distributions[(state, in_sym)] = {
                (out_sym, out_map[out_sym].target): out_map[out_sym].count / total
                for out_sym in sorted(out_map)
            }
    return distributions


def count_states(root: TreeState) -> int:
    """Number of states reachable from ``root``."""
    return len(root.get_all_states())


def count_edges(root: TreeState) -> int:
    """Number of (state, input, output) transitions reachable from ``root``."""
    return sum(
        len(out_map)
        for state in root.get_all_states()
        for out_map in state.transitions.values()
    )


__all__ = [
    "UNKNOWN_OUTPUT",
    "iter_view_states",
    "find_nondeterminism",
    "is_deterministic",
    "find_moore_violation",
    "is_moore",
    "normalize",
    "count_states",
    "count_edges",
]
