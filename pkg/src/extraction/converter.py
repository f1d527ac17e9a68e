"""
Conversion of the internal IO frequency automaton into typed automata.

| output \\ transitions | deterministic | nondeterministic | stochastic             |
|-----------------------|---------------|------------------|------------------------|
| moore                 | MooreMachine  | NDMooreMachine   | Mdp                    |
| mealy                 | MealyMachine  | Onfsm            | StochasticMealyMachine |

Dfa and MarkovChain are selected by override on the (moore, deterministic)
and (moore, stochastic) cells.
"""

from typing import Any, Dict, List, Optional

from src.automata.structure import find_moore_violation, find_nondeterminism, normalize
from src.automata.tree_state import (
    BehaviorConfig,
    OutputBehavior,
    TransitionBehavior,
    TreeState,
    UNKNOWN_OUTPUT,
)
from src.exceptions import ConversionError, StructureViolation
from src.extraction.learned_model import LearnedModel, ModelFamily, ModelState, ModelTransition
from src.utils.logger import get_logger

logger = get_logger(__name__)

FAMILY_TABLE = {
    (OutputBehavior.MOORE, TransitionBehavior.DETERMINISTIC): ModelFamily.MOORE_MACHINE,
    (OutputBehavior.MOORE, TransitionBehavior.NONDETERMINISTIC): ModelFamily.ND_MOORE_MACHINE,
    (OutputBehavior.MOORE, TransitionBehavior.STOCHASTIC): ModelFamily.MDP,
    (OutputBehavior.MEALY, TransitionBehavior.DETERMINISTIC): ModelFamily.MEALY_MACHINE,
    (OutputBehavior.MEALY, TransitionBehavior.NONDETERMINISTIC): ModelFamily.ONFSM,
    (OutputBehavior.MEALY, TransitionBehavior.STOCHASTIC): ModelFamily.STOCHASTIC_MEALY_MACHINE,
}

OVERRIDES = {
    "dfa": (ModelFamily.MOORE_MACHINE, ModelFamily.DFA),
    "markov_chain": (ModelFamily.MDP, ModelFamily.MARKOV_CHAIN),
}


def select_family(behavior: BehaviorConfig, family_override: Optional[str] = None) -> ModelFamily:
    """
    Automaton family for a behavior and an optional view override.

    Raises:
        ConversionError: If the override does not fit the behavior
    """
    family = FAMILY_TABLE[(behavior.output_behavior, behavior.transition_behavior)]
    if family_override is None:
        return family
    if family_override not in OVERRIDES:
        raise ConversionError(f"Unknown family override: {family_override}")
    base, view = OVERRIDES[family_override]
    if family is not base:
        raise ConversionError(f"'{family_override}' needs {base.value} behavior, got {family.value}")
    return view


def _dfa_output(output: Any, accept_symbol: str) -> bool:
    return output == accept_symbol or str(output).lower() == "true"


def to_automaton(root: TreeState, behavior: BehaviorConfig,
                 family_override: Optional[str] = None,
                 accept_symbol: str = "1") -> LearnedModel:
    """
    Extract a typed automaton from an internal model.

    Args:
        root: Initial state of the internal model
        behavior: Output and transition behavior of the result
        family_override: 'dfa' or 'markov_chain'
        accept_symbol: Output read as accepting for Dfa extraction

    Returns:
        LearnedModel with states renumbered in BFS order

    Raises:
        StructureViolation: If the model does not satisfy the behavior
        ConversionError: If the family override does not apply
    """
    family = select_family(behavior, family_override)

    if behavior.is_deterministic:
        witness = find_nondeterminism(root)
        if witness is not None:
            raise StructureViolation("deterministic", witness.id, "two outputs for one input")
    if behavior.is_moore:
        unknown = UNKNOWN_OUTPUT if family is ModelFamily.DFA else None
        witness = find_moore_violation(root, unknown_output=unknown)
        if witness is not None:
            raise StructureViolation("moore", witness.id, "transitions into the state carry different outputs")

    states = root.get_all_states()
    numbering = {id(state): index for index, state in enumerate(states)}

    def output_of(symbol: Any) -> Any:
        return _dfa_output(symbol, accept_symbol) if family is ModelFamily.DFA else symbol

    model_states = [
        ModelState(numbering[id(state)], output_of(state.output) if behavior.is_moore else None)
        for state in states
    ]

    distributions = normalize(root) if behavior.is_stochastic else {}

    transitions: List[ModelTransition] = []
    for state in states:
        source = numbering[id(state)]
        for in_sym in sorted(state.transitions):
            out_map = state.transitions[in_sym]
            for out_sym in sorted(out_map):
                info = out_map[out_sym]
                target = numbering[id(info.target)]
                output = model_states[target].output if behavior.is_moore else out_sym
                probability = None
                if behavior.is_stochastic:
                    probability = distributions[(state, in_sym)][(out_sym, info.target)]
                transitions.append(ModelTransition(source, in_sym, output, target, probability))

    if family is ModelFamily.MARKOV_CHAIN and len({t.input for t in transitions}) > 1:
        raise ConversionError("A Markov chain has a single input symbol")

    logger.debug(f"Extracted {family.value} with {len(model_states)} states")
    return LearnedModel(family, model_states, 0, transitions)


def tree_state_to_model(root: TreeState, keep_ids: bool = False) -> LearnedModel:
    """
    Describe the raw internal model (family 'iofa') with its counts.

    Args:
        root: Initial state of the internal model
        keep_ids: Keep the PTA state ids instead of renumbering in BFS order

    Returns:
        LearnedModel keeping state outputs, counts and original counts
    """
    states = root.get_all_states()
    numbering: Dict[int, int] = {
        id(state): state.id if keep_ids else index for index, state in enumerate(states)
    }
    transitions = [
        ModelTransition(
            numbering[id(state)], in_sym, out_sym, numbering[id(info.target)],
            count=info.count, original_count=info.original_count,
        )
        for state in states
        for in_sym, out_sym, info in state.iter_transitions()
    ]
    model_states = [ModelState(numbering[id(state)], state.output) for state in states]
    return LearnedModel(ModelFamily.IOFA, model_states, numbering[id(root)], transitions)

