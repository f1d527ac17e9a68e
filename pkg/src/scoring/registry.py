"""
Named learning algorithms.

Each preset fixes the merge strategy, the transition behaviors it can learn,
the compatibility evaluation flags and optional postprocessing.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.automata.tree_state import BehaviorConfig, OutputBehavior, TransitionBehavior, TreeState
from src.exceptions import ConfigurationError
from src.learning.state_merging import EngineConfig
from src.scoring.alergia import (
    DEFAULT_EPSILON,
    IOAlergia,
    IOAlergiaEDSMOnPartition,
    IOAlergiaOnPartition,
    IOAlergiaWithEDSM,
    IOAlergiaWithParity,
)
from src.scoring.noisy import NoisyDeterministicScore, dominant_output_postprocess
from src.scoring.score_calculation import ScoreCalculation, edsm_score
from src.utils.config import get_config, get_config_value
from src.utils.logger import get_logger

logger = get_logger(__name__)

DETERMINISTIC = TransitionBehavior.DETERMINISTIC
NONDETERMINISTIC = TransitionBehavior.NONDETERMINISTIC
STOCHASTIC = TransitionBehavior.STOCHASTIC


@dataclass(frozen=True)
class AlgorithmPreset:
    """
    A named algorithm.

    Attributes:
        name: CLI name
        description: One-line summary
        transitions: Allowed transition behaviors, the first one is the default
        strategy: Factory building the strategy from the parameter dict
        eval_compat_on_pta: Compatibility evaluated on the PTA
        eval_compat_on_futures: Compatibility evaluated on shared futures
        postprocessing: Transformation of the learned root
        extraction_transition: Transition behavior used for conversion
    """
    name: str
    description: str
    transitions: Tuple[TransitionBehavior, ...]
    strategy: Callable[[Dict[str, Any]], ScoreCalculation]
    eval_compat_on_pta: bool = False
    eval_compat_on_futures: bool = False
    postprocessing: Optional[Callable[[TreeState], TreeState]] = None
    extraction_transition: Optional[TransitionBehavior] = None


PRESETS: Dict[str, AlgorithmPreset] = {
    preset.name: preset
    for preset in [
        AlgorithmPreset(
            "rpni", "Merge whenever the structure allows it",
            (DETERMINISTIC, NONDETERMINISTIC),
            lambda params: ScoreCalculation(),
        ),
        AlgorithmPreset(
            "edsm", "Evidence-driven state merging",
            (DETERMINISTIC, NONDETERMINISTIC),
            lambda params: ScoreCalculation(score_function=edsm_score),
        ),
        AlgorithmPreset(
            "alergia", "Alergia on observation sequences (Markov chains)",
            (STOCHASTIC,),
            lambda params: IOAlergia(params["epsilon"]),
            eval_compat_on_pta=True, eval_compat_on_futures=True,
        ),
        AlgorithmPreset(
            "ioalergia", "IOAlergia: Hoeffding test on shared futures in the PTA",
            (STOCHASTIC,),
            lambda params: IOAlergia(params["epsilon"]),
            eval_compat_on_pta=True, eval_compat_on_futures=True,
        ),
        AlgorithmPreset(
            "ioalergia-partition", "Hoeffding test of every state against its partition",
            (STOCHASTIC,),
            lambda params: IOAlergiaOnPartition(params["epsilon"]),
        ),
        AlgorithmPreset(
            "ioalergia-edsm", "IOAlergia scored by the number of compatibility checks",
            (STOCHASTIC,),
            lambda params: IOAlergiaWithEDSM(params["epsilon"]),
            eval_compat_on_pta=True, eval_compat_on_futures=True,
        ),
        AlgorithmPreset(
            "ioalergia-edsm-partition", "Partition-wide Hoeffding test scored by EDSM",
            (STOCHASTIC,),
            lambda params: IOAlergiaEDSMOnPartition(params["epsilon"]),
        ),
        AlgorithmPreset(
            "ioalergia-parity", "IOAlergia restricted to states with equal input parities",
            (STOCHASTIC,),
            lambda params: IOAlergiaWithParity(params["epsilon"], params["parity_inputs"]),
            eval_compat_on_pta=True, eval_compat_on_futures=True,
        ),
        AlgorithmPreset(
            "noisy", "Binomial mismatch test, dominant transitions kept",
            (NONDETERMINISTIC,),
            lambda params: NoisyDeterministicScore(params["error_rate"], params["threshold"]),
            postprocessing=dominant_output_postprocess,
            extraction_transition=DETERMINISTIC,
        ),
    ]
}


def algorithm_names() -> List[str]:
    return list(PRESETS)


def get_preset(name: str) -> AlgorithmPreset:
    """
    Look up a preset.

    Raises:
        ConfigurationError: If no preset has this name
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigurationError(
            f"Unknown algorithm '{name}'; choose one of: {', '.join(PRESETS)}"
        ) from None


def _parameters(config: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    def value(key: str, default: Any) -> Any:
        given = overrides.get(key)
        return given if given is not None else get_config_value(config, f"learning.{key}", default)

    params = {
        "epsilon": float(value("epsilon", DEFAULT_EPSILON)),
        "error_rate": float(value("error_rate", 0.01)),
        "threshold": float(value("threshold", 0.05)),
        "parity_inputs": tuple(value("parity_inputs", ("l", "d"))),
    }
    if not 0.0 < params["epsilon"] <= 1.0:
        raise ConfigurationError(f"epsilon must be in (0, 1], got {params['epsilon']}")
    if not 0.0 <= params["error_rate"] < 1.0:
        raise ConfigurationError(f"error_rate must be in [0, 1), got {params['error_rate']}")
    if not 0.0 < params["threshold"] < 1.0:
        raise ConfigurationError(f"threshold must be in (0, 1), got {params['threshold']}")
    return params


def build_engine_config(algorithm: Optional[str] = None, config: Dict[str, Any] = None,
                        **overrides: Any) -> EngineConfig:
    """
    Engine configuration for a named algorithm.

    Args:
        algorithm: Preset name; defaults to ``learning.algorithm``
        config: Configuration dictionary. If None, loads from global config.
        **overrides: output_behavior, transition_behavior, epsilon,
            error_rate, threshold, parity_inputs and any EngineConfig field;
            None values are ignored

    Returns:
        Validated EngineConfig

    Raises:
        ConfigurationError: On unknown algorithms, out-of-range parameters or
            transition behaviors the algorithm cannot learn
    """
    config = config if config is not None else get_config()
    preset = get_preset(algorithm or get_config_value(config, "learning.algorithm", "rpni"))
    params = _parameters(config, overrides)

    output = overrides.pop("output_behavior", None) or get_config_value(
        config, "learning.output_behavior", OutputBehavior.MOORE.value
    )
    transition = overrides.pop("transition_behavior", None) or get_config_value(
        config, "learning.transition_behavior"
    )
    try:
        transition = TransitionBehavior(transition) if transition else preset.transitions[0]
        behavior = BehaviorConfig(OutputBehavior(output), transition)
    except ValueError as e:
        raise ConfigurationError(str(e)) from e

    if transition not in preset.transitions:
        allowed = ", ".join(t.value for t in preset.transitions)
        raise ConfigurationError(
            f"Algorithm '{preset.name}' cannot learn {transition.value} models (allowed: {allowed})"
        )

    for key in ("epsilon", "error_rate", "threshold", "parity_inputs"):
        overrides.pop(key, None)

    extraction = None
    if preset.extraction_transition is not None:
        extraction = BehaviorConfig(behavior.output_behavior, preset.extraction_transition)

    fields: Dict[str, Any] = {
        "behavior": behavior,
        "strategy": preset.strategy(params),
        "eval_compat_on_pta": preset.eval_compat_on_pta,
        "eval_compat_on_futures": preset.eval_compat_on_futures,
        "postprocessing": preset.postprocessing,
        "extraction_behavior": extraction,
    }
    fields.update({key: value for key, value in overrides.items() if value is not None})
    engine_config = EngineConfig.from_config(config, **fields)
    logger.debug(f"Algorithm '{preset.name}' with {behavior.output_behavior.value}/{transition.value} behavior")
    return engine_config
