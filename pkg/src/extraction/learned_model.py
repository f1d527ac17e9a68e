"""
Typed automata extracted from the internal representation.

A ``LearnedModel`` is a flat, family-tagged description of states and
transitions that is easy to serialize, compare and simulate.
"""

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.exceptions import ConversionError


class ModelFamily(str, Enum):
    MOORE_MACHINE = "MooreMachine"
    DFA = "Dfa"
    ND_MOORE_MACHINE = "NDMooreMachine"
    MDP = "Mdp"
    MARKOV_CHAIN = "MarkovChain"
    MEALY_MACHINE = "MealyMachine"
    ONFSM = "Onfsm"
    STOCHASTIC_MEALY_MACHINE = "StochasticMealyMachine"
    IOFA = "iofa"

    @property
    def has_state_outputs(self) -> bool:
        return self in (
            ModelFamily.MOORE_MACHINE, ModelFamily.DFA, ModelFamily.ND_MOORE_MACHINE,
            ModelFamily.MDP, ModelFamily.MARKOV_CHAIN, ModelFamily.IOFA,
        )

    @property
    def is_moore(self) -> bool:
        return self.has_state_outputs and self is not ModelFamily.IOFA

    @property
    def is_deterministic(self) -> bool:
        return self in (ModelFamily.MOORE_MACHINE, ModelFamily.DFA, ModelFamily.MEALY_MACHINE)

    @property
    def is_stochastic(self) -> bool:
        return self in (ModelFamily.MDP, ModelFamily.MARKOV_CHAIN, ModelFamily.STOCHASTIC_MEALY_MACHINE)


@dataclass(frozen=True)
class ModelState:
    id: int
    output: Any = None


@dataclass(frozen=True)
class ModelTransition:
    source: int
    input: str
    output: Any
    target: int
    probability: Optional[float] = None
    count: Optional[int] = None
    original_count: Optional[int] = None


@dataclass
class LearnedModel:
    """
    A learned automaton.

    Attributes:
        family: Automaton family
        states: States in BFS order from the initial state
        initial: Id of the initial state
        transitions: Transitions ordered by (source, input, output)
    """
    family: ModelFamily
    states: List[ModelState] = field(default_factory=list)
    initial: int = 0
    transitions: List[ModelTransition] = field(default_factory=list)

    def __post_init__(self):
        self._index: Optional[Dict[Tuple[int, str], List[ModelTransition]]] = None

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def _outgoing_index(self) -> Dict[Tuple[int, str], List[ModelTransition]]:
        if self._index is None:
            index: Dict[Tuple[int, str], List[ModelTransition]] = {}
            for transition in self.transitions:
                index.setdefault((transition.source, transition.input), []).append(transition)
            self._index = index
        return self._index

    def outgoing(self, state_id: int, input_symbol: str) -> List[ModelTransition]:
        """Transitions leaving ``state_id`` on ``input_symbol``."""
        return self._outgoing_index().get((state_id, input_symbol), [])

    def state(self, state_id: int) -> ModelState:
        for state in self.states:
            if state.id == state_id:
                return state
        raise KeyError(state_id)

    @property
    def initial_output(self) -> Any:
        return self.state(self.initial).output if self.family.has_state_outputs else None

    @property
    def inputs(self) -> List[str]:
        return sorted({transition.input for transition in self.transitions})

    @property
    def outputs(self) -> List[Any]:
        outputs = {transition.output for transition in self.transitions}
        if self.family.has_state_outputs:
            outputs |= {state.output for state in self.states}
        return sorted(outputs, key=str)

    def __len__(self) -> int:
        return len(self.states)

    # ------------------------------------------------------------------
    # Simulation
    # ------------------------------------------------------------------

    def step(self, state_id: int, input_symbol: str,
             rng: Optional[np.random.Generator] = None) -> Optional[Tuple[Any, int]]:
        """
        Execute one step.

        Deterministic families follow their unique transition. Other families
        need ``rng``: stochastic ones sample by probability, nondeterministic
        ones choose uniformly.

        Args:
            state_id: Current state
            input_symbol: Input to execute
            rng: Random generator for non-deterministic families

        Returns:
            (output, next state), or None if the input is undefined
        """
        candidates = self.outgoing(state_id, input_symbol)
        if not candidates:
            return None
        if len(candidates) == 1:
            chosen = candidates[0]
        elif rng is None:
            raise ConversionError(f"{self.family.value} step on input '{input_symbol}' needs a random generator")
        elif self.family.is_stochastic:
            weights = np.array([t.probability for t in candidates], dtype=float)
            chosen = candidates[int(rng.choice(len(candidates), p=weights / weights.sum()))]
        else:
            chosen = candidates[int(rng.integers(len(candidates)))]
        return chosen.output, chosen.target

    def replay(self, inputs: Sequence[str]) -> Optional[List[Any]]:
        """
        Outputs produced by a deterministic model for an input sequence.

        Args:
            inputs: Input word

        Returns:
            Output per step, or None if some input is undefined on the way
        """
        state = self.initial
        outputs = []
        for input_symbol in inputs:
            result = self.step(state, input_symbol)
            if result is None:
                return None
            output, state = result
            outputs.append(output)
        return outputs

    def accepts(self, word: Sequence[str]) -> bool:
        """
        Dfa acceptance; an undefined input rejects.

        Args:
            word: Input word

        Returns:
            True if the word ends in an accepting state
        """
        if self.family is not ModelFamily.DFA:
            raise ConversionError(f"accepts() is defined for Dfa models, not {self.family.value}")
        if not word:
            return bool(self.initial_output)
        outputs = self.replay(word)
        return bool(outputs[-1]) if outputs is not None else False


def models_isomorphic(first: LearnedModel, second: LearnedModel, tolerance: float = 1e-9) -> bool:
    """
    Check that two models are equal up to renaming of states.

    Both models must be observably nondeterministic, so that pairing states
    along (input, output) steps from the initial states determines the
    bijection.

    Args:
        first: First model
        second: Second model
        tolerance: Allowed difference between probabilities

    Returns:
        True if the models are isomorphic
    """
    if first.family is not second.family or len(first.states) != len(second.states):
        return False
    if len(first.transitions) != len(second.transitions):
        return False

    def steps(model: LearnedModel, state_id: int) -> Dict[Tuple[str, str], ModelTransition]:
        return {
            (t.input, str(t.output)): t
            for t in model.transitions if t.source == state_id
        }

    mapping = {first.initial: second.initial}
    reverse = {second.initial: first.initial}
    queue = deque([first.initial])
    while queue:
        a = queue.popleft()
        b = mapping[a]
        if first.family.has_state_outputs and first.state(a).output != second.state(b).output:
            return False
        a_steps, b_steps = steps(first, a), steps(second, b)
        if a_steps.keys() != b_steps.keys():
            return False
        for key, a_trans in a_steps.items():
            b_trans = b_steps[key]
            if first.family.is_stochastic and abs(a_trans.probability - b_trans.probability) > tolerance:
                return False
            mapped = mapping.get(a_trans.target)
            if mapped is None:
                if b_trans.target in reverse:
                    return False
                mapping[a_trans.target] = b_trans.target
                reverse[b_trans.target] = a_trans.target
                queue.append(a_trans.target)
            elif mapped != b_trans.target:
                return False
    return len(mapping) == len(first.states)
