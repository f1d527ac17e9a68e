"""
Synthetic trace generation from reference models.

Traces are sampled by choosing inputs uniformly at random and following the
model (sampling outputs by probability for stochastic models, uniformly for
nondeterministic ones). All randomness comes from one seeded numpy
generator, so equal seeds give equal trace files.
"""

import itertools
from typing import Any, Dict, List, Optional

import numpy as np
from tqdm import tqdm

from src.exceptions import GenerationError
from src.extraction.learned_model import LearnedModel, ModelFamily
from src.ingestion.trace_formats import IOTrace, LabeledWord, TraceKind, TraceSet
from src.utils.config import get_config, get_config_value
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Attempts to find an enabled input before a trace is given up.
MAX_RESAMPLES = 100


def trace_kind_for(model: LearnedModel) -> TraceKind:
    """File format used for traces of a model family."""
    if model.family is ModelFamily.DFA:
        return TraceKind.LABELED_WORDS
    if model.family is ModelFamily.MARKOV_CHAIN:
        return TraceKind.OBSERVATIONS
    return TraceKind.IO_TRACES


class TraceSampler:
    """
    Sample traces from a LearnedModel.
    """

    def __init__(self, model: LearnedModel, seed: Optional[int] = None,
                 noise_rate: Optional[float] = None, config: Dict[str, Any] = None):
        """
        Initialize the sampler.

        Args:
            model: Reference model
            seed: Random seed; defaults to ``generation.seed``
            noise_rate: Per-step probability of replacing an output by a
                different output of the model; defaults to ``generation.noise_rate``
            config: Configuration dictionary. If None, loads from global config.
        """
        self.config = config if config is not None else get_config()
        self.model = model
        self.seed = seed if seed is not None else int(get_config_value(self.config, "generation.seed", 0))
        self.noise_rate = noise_rate if noise_rate is not None else float(
            get_config_value(self.config, "generation.noise_rate", 0.0)
        )
        if not 0.0 <= self.noise_rate < 1.0:
            raise GenerationError(f"noise rate must be in [0, 1), got {self.noise_rate}")
        self.show_progress = bool(get_config_value(self.config, "progress.enabled", False))
        self.rng = np.random.default_rng(self.seed)
        self.inputs = model.inputs
        self.flips = 0

        self._noise_outputs = [] if model.family is ModelFamily.DFA else model.outputs
        if self.noise_rate > 0 and len(self._noise_outputs) < 2:
            logger.warning("Noise requested, but the model has a single output; traces stay clean")

    # ------------------------------------------------------------------
    # Single traces
    # ------------------------------------------------------------------

    def _noisy(self, output: Any) -> Any:
        if self.noise_rate <= 0 or len(self._noise_outputs) < 2 or self.rng.random() >= self.noise_rate:
            return output
        others = [o for o in self._noise_outputs if o != output]
        self.flips += 1
        return others[int(self.rng.integers(len(others)))]

    def sample_steps(self, length: int) -> List[tuple]:
        """
        Sample one walk of ``length`` steps.

        Args:
            length: Number of steps

        Returns:
            List of (input, output) pairs

        Raises:
            GenerationError: If the walk reaches a state without enabled inputs
        """
        state = self.model.initial
        steps = []
        for _ in range(length):
            for _attempt in range(MAX_RESAMPLES):
                in_sym = self.inputs[int(self.rng.integers(len(self.inputs)))]
                result = self.model.step(state, in_sym, self.rng)
                if result is not None:
                    break
            else:
                raise GenerationError(f"No enabled input in state {state} after {MAX_RESAMPLES} attempts")
            output, state = result
            steps.append((in_sym, self._noisy(output)))
        return steps

    # ------------------------------------------------------------------
    # Trace sets
    # ------------------------------------------------------------------

    def sample(self, count: Optional[int] = None, min_length: Optional[int] = None,
               max_length: Optional[int] = None) -> TraceSet:
        """
        Sample a trace set with lengths drawn uniformly from [min_length, max_length].

        Args:
            count: Number of traces; defaults to ``generation.count``
            min_length: Minimal trace length; defaults to ``generation.min_length``
            max_length: Maximal trace length; defaults to ``generation.max_length``

        Returns:
            TraceSet in the format matching the model family
        """
        count = count if count is not None else int(get_config_value(self.config, "generation.count", 200))
        min_length = min_length if min_length is not None else int(
            get_config_value(self.config, "generation.min_length", 10))
        max_length = max_length if max_length is not None else int(
            get_config_value(self.config, "generation.max_length", 20))
        if count < 0 or min_length < 0 or max_length < min_length:
            raise GenerationError(f"invalid sampling range: count={count}, lengths [{min_length}, {max_length}]")
        if not self.inputs and max_length > 0:
            raise GenerationError("the model has no transitions to sample from")

        kind = trace_kind_for(self.model)
        traces = []
        for _ in tqdm(range(count), desc="Sampling traces", disable=not self.show_progress, leave=False):
            length = int(self.rng.integers(min_length, max_length + 1))
            traces.append(self._package(self.sample_steps(length), kind))

        if self.flips:
            logger.info(f"Flipped {self.flips} outputs (noise rate {self.noise_rate})")
        return self._trace_set(traces, kind)

    def enumerate(self, max_length: int) -> TraceSet:
        """
        All input words up to ``max_length`` with the model's outputs.

        The empty word is only listed for Dfa models.
        Words that run into an undefined input are cut at that input.

        Args:
            max_length: Maximal word length

        Returns:
            TraceSet in the format matching the model family

        Raises:
            GenerationError: If the model is not deterministic
        """
        if not self.model.family.is_deterministic:
            raise GenerationError(f"exhaustive generation needs a deterministic model, got {self.model.family.value}")

        kind = trace_kind_for(self.model)
        traces = []
        seen = set()
        shortest = 0 if kind is TraceKind.LABELED_WORDS else 1
        for length in range(shortest, max_length + 1):
            for word in itertools.product(self.inputs, repeat=length):
                outputs = self._replay_prefix(word)
                defined = tuple(zip(word, outputs))
                if defined in seen:
                    continue
                seen.add(defined)
                traces.append(self._package(list(defined), kind))
        return self._trace_set(traces, kind)

    def _replay_prefix(self, word) -> List[Any]:
        state = self.model.initial
        outputs = []
        for in_sym in word:
            result = self.model.step(state, in_sym)
            if result is None:
                break
            output, state = result
            outputs.append(output)
        return outputs

    def _package(self, steps: List[tuple], kind: TraceKind):
        if kind is TraceKind.LABELED_WORDS:
            word = tuple(in_sym for in_sym, _ in steps)
            accepted = steps[-1][1] if steps else self.model.initial_output
            return LabeledWord(word, "1" if accepted else "0")
        if kind is TraceKind.OBSERVATIONS:
            return (str(self.model.initial_output), *(str(out) for _, out in steps))
        initial = str(self.model.initial_output) if self.model.family.has_state_outputs else None
        return IOTrace(initial, tuple((in_sym, str(out)) for in_sym, out in steps))

    def _trace_set(self, traces: List[Any], kind: TraceKind) -> TraceSet:
        alphabet_size = None
        if kind is TraceKind.LABELED_WORDS:
            try:
                alphabet_size = max(int(symbol) for symbol in self.inputs) + 1 if self.inputs else 0
            except ValueError:
                raise GenerationError("Abbadingo files need non-negative integer input symbols") from None
        return TraceSet(kind, traces, alphabet_size=alphabet_size)
