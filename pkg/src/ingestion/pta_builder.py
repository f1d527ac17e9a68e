"""
Prefix tree automaton (PTA) construction.

The PTA contains one state per distinct trace prefix. Transition counts are the
number of traces that continue with the transition's (input, output) step.
State ids are assigned in BFS order with children visited in textual
(input, output) order, so that ids coincide with the shortlex order of
prefixes.
"""

from collections import deque
from typing import Dict, Iterable, List, Optional, Tuple

from tqdm import tqdm

from src.automata.tree_state import (
    BehaviorConfig,
    TIME_STEP_INPUT,
    TransitionInfo,
    TreeState,
    UNKNOWN_OUTPUT,
)
from src.exceptions import (
    ConflictingLabels,
    InconsistentInitialOutput,
    MissingInitialOutput,
    NondeterminismInData,
    UnsupportedData,
)
from src.ingestion.trace_formats import IOTrace, TraceKind, TraceSet
from src.utils.logger import get_logger

logger = get_logger(__name__)


def observations_to_io_traces(traces: TraceSet) -> TraceSet:
    """
    View observation sequences as Moore IO traces over a single time-step input.

    ``a b c`` becomes ``["a", ["tick","b"], ["tick","c"]]``.

    Args:
        traces: TraceSet of kind observations

    Returns:
        TraceSet of kind io_traces
    """
    converted = []
    for trace in traces.traces:
        if not trace:
            continue
        steps = tuple((TIME_STEP_INPUT, symbol) for symbol in trace[1:])
        converted.append(IOTrace(trace[0], steps))
    return TraceSet(TraceKind.IO_TRACES, converted)


def _child(state: TreeState, in_sym: str, out_sym: str, deterministic: bool) -> TreeState:
    out_map = state.transitions.setdefault(in_sym, {})
    info = out_map.get(out_sym)
    if info is None:
        if deterministic and out_map:
            raise NondeterminismInData(state.get_prefix(), in_sym, [*out_map, out_sym])
        target = TreeState(-1, out_sym, predecessor=state, incoming=(in_sym, out_sym))
        info = TransitionInfo(target, 0, target, 0)
        out_map[out_sym] = info
    info.count += 1
    info.original_count += 1
    return info.target


def _assign_ids(root: TreeState) -> int:
    states = root.get_all_states()
    for state_id, state in enumerate(states):
        state.id = state_id
    return len(states)


def _initial_output(traces: List[IOTrace], behavior: BehaviorConfig) -> Optional[str]:
    initials = {trace.initial_output for trace in traces}
    if not behavior.is_moore:
        if initials - {None}:
            logger.warning("Mealy learning requested: initial outputs of Moore traces are ignored")
        return None

    if None in initials:
        raise MissingInitialOutput(
            "Moore learning needs traces that start with the initial output, e.g. [\"o0\", [\"i1\",\"o1\"]]"
        )
    if len(initials) > 1:
        raise InconsistentInitialOutput(f"Traces start with different initial outputs: {sorted(initials)}")
    return next(iter(initials), None)


def _build_io_tree(traces: List[IOTrace], behavior: BehaviorConfig, show_progress: bool) -> TreeState:
    root = TreeState(-1, _initial_output(traces, behavior))
    deterministic = behavior.is_deterministic

    for trace in tqdm(traces, desc="Building PTA", disable=not show_progress, leave=False):
        state = root
        for in_sym, out_sym in trace.steps:
            state = _child(state, in_sym, out_sym, deterministic)
    return root


class _WordNode:
    __slots__ = ("label", "passing", "children")

    def __init__(self):
        self.label: Optional[str] = None
        self.passing = 0
        self.children: Dict[str, "_WordNode"] = {}


def _build_word_tree(words: Iterable[Tuple[Tuple[str, ...], str]], show_progress: bool) -> TreeState:
    trie = _WordNode()
    for word, label in tqdm(list(words), desc="Building PTA", disable=not show_progress, leave=False):
        node = trie
        for symbol in word:
            node = node.children.setdefault(symbol, _WordNode())
            node.passing += 1
        if node.label is not None and node.label != label:
            raise ConflictingLabels(word, [node.label, label])
        node.label = label

    root = TreeState(-1, trie.label if trie.label is not None else UNKNOWN_OUTPUT)
    queue = deque([(trie, root)])
    while queue:
        node, state = queue.popleft()
        for symbol in sorted(node.children):
            child_node = node.children[symbol]
            output = child_node.label if child_node.label is not None else UNKNOWN_OUTPUT
            target = TreeState(-1, output, predecessor=state, incoming=(symbol, output))
            state.transitions[symbol] = {
                output: TransitionInfo(target, child_node.passing, target, child_node.passing)
            }
            queue.append((child_node, target))
    return root


def build_pta(data: TraceSet, behavior: BehaviorConfig, show_progress: bool = False) -> TreeState:
    """
    Build the prefix tree automaton of a trace set.

    Args:
        data: Parsed traces
        behavior: Output and transition behavior the PTA is learned with
        show_progress: Show a tqdm progress bar over the traces

    Returns:
        Root state of the PTA

    Raises:
        UnsupportedData: If the trace kind cannot be learned with ``behavior``
        MissingInitialOutput: If Moore learning gets traces without initial output
        InconsistentInitialOutput: If Moore traces disagree on the initial output
        NondeterminismInData: If deterministic learning gets nondeterministic data
        ConflictingLabels: If a labeled word occurs with two labels
    """
    if data.kind is TraceKind.LABELED_WORDS:
        if not (behavior.is_moore and behavior.is_deterministic):
            raise UnsupportedData("Labeled words can only be learned as deterministic Moore machines (DFA)")
        root = _build_word_tree(data.traces, show_progress)
    else:
        if data.kind is TraceKind.OBSERVATIONS:
            if not behavior.is_stochastic:
                raise UnsupportedData("Observation sequences can only be learned with stochastic behavior")
            data = observations_to_io_traces(data)
        root = _build_io_tree(list(data.traces), behavior, show_progress)

    size = _assign_ids(root)
    logger.info(f"PTA built from {len(data)} traces: {size} states")
    return root


def pta_edge_mass(root: TreeState) -> int:
    """Total original frequency mass of all PTA edges below ``root``."""
    return sum(
        info.original_count
        for state in pta_states(root)
        for out_map in state.original_transitions.values()
        for info in out_map.values()
    )


def pta_states(root: TreeState) -> List[TreeState]:
    """All states of the unmerged PTA, reached through original targets."""
    states = [root]
    index = 0
    while index < len(states):
        state = states[index]
        index += 1
        for in_sym in sorted(state.original_transitions):
            out_map = state.original_transitions[in_sym]
            for out_sym in sorted(out_map):
                states.append(out_map[out_sym].original_target)
    return states

