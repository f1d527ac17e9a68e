"""Internal IO frequency automaton representation and structural predicates."""

from src.automata.tree_state import (
    BehaviorConfig,
    OutputBehavior,
    PtaStateView,
    TIME_STEP_INPUT,
    TransitionBehavior,
    TransitionInfo,
    TreeState,
    UNKNOWN_OUTPUT,
    node_order,
    shortlex_key,
    state_id_key,
)
from src.automata.structure import (
    count_edges,
    count_states,
    is_deterministic,
    is_moore,
    iter_view_states,
    normalize,
)

__all__ = [
    "BehaviorConfig",
    "OutputBehavior",
    "PtaStateView",
    "TIME_STEP_INPUT",
    "TransitionBehavior",
    "TransitionInfo",
    "TreeState",
    "UNKNOWN_OUTPUT",
    "node_order",
    "shortlex_key",
    "state_id_key",
    "count_edges",
    "count_states",
    "is_deterministic",
    "is_moore",
    "iter_view_states",
    "normalize",
]
