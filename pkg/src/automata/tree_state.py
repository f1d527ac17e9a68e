"""
Universal internal representation: IO frequency automata.

Every learned automaton type is represented internally as a tree of
``TreeState`` objects while it is being learned. Each state maps an input
symbol to the outputs observed for it, and each (input, output) pair to a
``TransitionInfo`` holding the unique target (observable nondeterminism)
and the observation count.
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

Symbol = str
IOPair = Tuple[Symbol, Symbol]
Prefix = Tuple[IOPair, ...]

# Output carried by inner states of a labeled-word tree that have no label.
UNKNOWN_OUTPUT = "unknown"

# Single input used when observation sequences are learned as Markov chains.
TIME_STEP_INPUT = "tick"


class OutputBehavior(str, Enum):
    MOORE = "moore"
    MEALY = "mealy"


class TransitionBehavior(str, Enum):
    DETERMINISTIC = "deterministic"
    NONDETERMINISTIC = "nondeterministic"
    STOCHASTIC = "stochastic"


@dataclass(frozen=True)
class BehaviorConfig:
    """
    Output and transition behavior of the automaton family to learn.

    Dfa and Markov chains are views on (moore, deterministic) and
    (moore, stochastic) selected at extraction time.
    """
    output_behavior: OutputBehavior = OutputBehavior.MOORE
    transition_behavior: TransitionBehavior = TransitionBehavior.DETERMINISTIC

    @classmethod
    def of(cls, output_behavior: str, transition_behavior: str) -> "BehaviorConfig":
        """Build a config from plain strings such as ``("moore", "stochastic")``."""
        return cls(OutputBehavior(output_behavior), TransitionBehavior(transition_behavior))

    @property
    def is_moore(self) -> bool:
        return self.output_behavior is OutputBehavior.MOORE

    @property
    def is_deterministic(self) -> bool:
        return self.transition_behavior is TransitionBehavior.DETERMINISTIC

    @property
    def is_stochastic(self) -> bool:
        return self.transition_behavior is TransitionBehavior.STOCHASTIC


class TransitionInfo:
    """Target and frequency of one (state, input, output) transition."""

    __slots__ = ("target", "count", "original_target", "original_count")

    def __init__(self, target: "TreeState", count: int,
                 original_target: Optional["TreeState"], original_count: int):
        self.target = target
        self.count = count
        self.original_target = original_target
        self.original_count = original_count

    def copy(self) -> "TransitionInfo":
        return TransitionInfo(self.target, self.count, self.original_target, self.original_count)

    def __repr__(self) -> str:
        target = self.target.id if self.target is not None else None
        return f"TransitionInfo(target={target}, count={self.count}, original_count={self.original_count})"


TransitionMap = Dict[Symbol, Dict[Symbol, TransitionInfo]]


class TreeState:
    """
    A state of the internal IO frequency automaton.

    Attributes:
        id: Stable integer id, assigned in BFS order when the PTA is built
        output: State output used for Moore semantics (output of the incoming
            PTA edge; the initial output for the root)
        transitions: input -> output -> TransitionInfo (current model)
        original_transitions: transitions of this state in the unmerged PTA
        predecessor: parent state in the PTA, None for the root
        incoming: (input, output) label of the PTA edge from the predecessor
        origin: for partition states, the model state they stand for
    """

    __slots__ = ("id", "output", "transitions", "original_transitions",
                 "predecessor", "incoming", "origin")

    def __init__(self, state_id: int, output: Optional[Symbol] = None,
                 predecessor: Optional["TreeState"] = None,
                 incoming: Optional[IOPair] = None):
        self.id = state_id
        self.output = output
        self.transitions: TransitionMap = {}
        self.original_transitions: TransitionMap = self.transitions
        self.predecessor = predecessor
        self.incoming = incoming
        self.origin: Optional[TreeState] = None

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    def get_prefix(self) -> Prefix:
        """Return the (input, output) pairs leading from the PTA root to this state."""
        pairs: List[IOPair] = []
        state = self
        while state.predecessor is not None:
            pairs.append(state.incoming)
            state = state.predecessor
        pairs.reverse()
        return tuple(pairs)

    def iter_transitions(self) -> Iterator[Tuple[Symbol, Symbol, TransitionInfo]]:
        """Yield (input, output, info) in textual symbol order."""
        for in_sym in sorted(self.transitions):
            out_map = self.transitions[in_sym]
            for out_sym in sorted(out_map):
                yield in_sym, out_sym, out_map[out_sym]

    def get_all_states(self) -> List["TreeState"]:
        """Return all states reachable from this one in BFS order (sorted edges)."""
        seen = {id(self)}
        ordered = [self]
        queue = deque([self])
        while queue:
            state = queue.popleft()
            for _, _, info in state.iter_transitions():
                target = info.target
                if id(target) not in seen:
                    seen.add(id(target))
                    ordered.append(target)
                    queue.append(target)
        return ordered

    def shallow_copy(self) -> "TreeState":
        """
        Copy this state for use as a partition state.

        Transition maps and infos are copied one level deep so that the copy
        can be modified without touching the model; targets are shared.
        """
        copy = TreeState(self.id, self.output, self.predecessor, self.incoming)
        copy.transitions = {
            in_sym: {out_sym: info.copy() for out_sym, info in out_map.items()}
            for in_sym, out_map in self.transitions.items()
        }
        copy.original_transitions = self.original_transitions
        copy.origin = self.origin if self.origin is not None else self
        return copy

    def pta_view(self) -> "PtaStateView":
        """View of this state as it was in the unmerged PTA."""
        return PtaStateView(self)

    def __repr__(self) -> str:
        return f"TreeState(q{self.id}, output={self.output!r})"


class PtaStateView:
    """
    Read-only view of a state restricted to its original PTA transitions.

    Compatibility functions can use it like a ``TreeState``; ``transitions``
    returns the PTA transitions and successors are resolved through
    ``original_target``.
    """

    __slots__ = ("state",)

    def __init__(self, state: TreeState):
        self.state = state

    @property
    def id(self) -> int:
        return self.state.id

    @property
    def output(self) -> Optional[Symbol]:
        return self.state.output

    @property
    def transitions(self) -> TransitionMap:
        return self.state.original_transitions

    @property
    def predecessor(self) -> Optional[TreeState]:
        return self.state.predecessor

    def get_prefix(self) -> Prefix:
        return self.state.get_prefix()

    def __repr__(self) -> str:
        return f"PtaStateView(q{self.state.id})"


# ----------------------------------------------------------------------
# Node order
# ----------------------------------------------------------------------

def shortlex_key(state: Any) -> Tuple[int, Prefix]:
    """Shortlex key of a state's prefix: length first, then pairwise text order."""
    prefix = state.get_prefix()
    return len(prefix), prefix


def state_id_key(state: Any) -> int:
    """Key on PTA ids; equal to shortlex order because ids are assigned in BFS order."""
    return state.id


def node_order(a: Any, b: Any, key: Callable[[Any], Any] = shortlex_key) -> int:
    """
    Compare two states of the same PTA.

    Args:
        a: First state
        b: Second state
        key: Ordering key (shortlex of the prefix by default)

    Returns:
        -1 if a precedes b, 0 if both have the same prefix, 1 otherwise
    """
    key_a, key_b = key(a), key(b)
    if key_a < key_b:
        return -1
    if key_a > key_b:
        return 1
    return 0
