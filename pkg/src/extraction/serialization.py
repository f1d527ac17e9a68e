"""
JSON model documents.

Schema::

    {
      "family": "MooreMachine",
      "initial": 0,
      "states": [{"id": 0, "output": "N"}, ...],
      "transitions": [
        {"source": 0, "input": "l", "output": "N", "target": 1,
         "probability": 0.9, "count": 3, "original_count": 3}, ...
      ]
    }

``output`` on states is present for Moore families (booleans for Dfa).
``probability`` is required for stochastic families, ``count`` for iofa.
"""

import json
import math
from collections import defaultdict
from pathlib import Path
from typing import Any, Dict, List, Union

from src.exceptions import SchemaError
from src.extraction.learned_model import LearnedModel, ModelFamily, ModelState, ModelTransition
from src.utils.file_io import read_text, write_text

PROBABILITY_TOLERANCE = 1e-6


def model_to_dict(model: LearnedModel) -> Dict[str, Any]:
    """Plain dictionary form of a model."""
    states = []
    for state in model.states:
        entry: Dict[str, Any] = {"id": state.id}
        if model.family.has_state_outputs:
            entry["output"] = state.output
        states.append(entry)

    transitions = []
    for transition in model.transitions:
        entry = {
            "source": transition.source,
            "input": transition.input,
            "output": transition.output,
            "target": transition.target,
        }
        for key in ("probability", "count", "original_count"):
            value = getattr(transition, key)
            if value is not None:
                entry[key] = value
        transitions.append(entry)

    return {
        "family": model.family.value,
        "initial": model.initial,
        "states": states,
        "transitions": transitions,
    }


def model_to_json(model: LearnedModel) -> str:
    """
    Serialize a model as a JSON document.

    Args:
        model: Model to serialize

    Returns:
        JSON text ending with a newline
    """
    return json.dumps(model_to_dict(model), indent=2, ensure_ascii=False) + "\n"


def _require(document: Dict[str, Any], key: str, path: str) -> Any:
    if not isinstance(document, dict):
        raise SchemaError(path, "expected an object")
    if key not in document:
        raise SchemaError(f"{path}.{key}", "missing field")
    return document[key]


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _check_output(value: Any, family: ModelFamily, path: str) -> None:
    if family is ModelFamily.DFA:
        if not isinstance(value, bool):
            raise SchemaError(path, "Dfa outputs must be true or false")
    elif not isinstance(value, str) or not value:
        raise SchemaError(path, "expected a non-empty string")


def dict_to_model(document: Dict[str, Any]) -> LearnedModel:
    """
    Validate a model document and build the model.

    Args:
        document: Parsed JSON document

    Returns:
        LearnedModel

    Raises:
        SchemaError: With the JSON path of the first offending field
    """
    family_name = _require(document, "family", "$")
    try:
        family = ModelFamily(family_name)
    except ValueError:
        raise SchemaError("$.family", f"unknown family {family_name!r}") from None

    raw_states = _require(document, "states", "$")
    if not isinstance(raw_states, list) or not raw_states:
        raise SchemaError("$.states", "expected a non-empty array")

    states: List[ModelState] = []
    outputs: Dict[int, Any] = {}
    for index, raw in enumerate(raw_states):
        path = f"$.states[{index}]"
        state_id = _require(raw, "id", path)
        if not _is_int(state_id) or state_id < 0:
            raise SchemaError(f"{path}.id", "expected a non-negative integer")
        if state_id in outputs:
            raise SchemaError(f"{path}.id", f"duplicate state id {state_id}")
        output = None
        if family.has_state_outputs:
            output = _require(raw, "output", path)
            if family is not ModelFamily.IOFA or output is not None:
                _check_output(output, family, f"{path}.output")
        outputs[state_id] = output
        states.append(ModelState(state_id, output))

    initial = _require(document, "initial", "$")
    if not _is_int(initial) or initial not in outputs:
        raise SchemaError("$.initial", "must be the id of a state")

    raw_transitions = _require(document, "transitions", "$")
    if not isinstance(raw_transitions, list):
        raise SchemaError("$.transitions", "expected an array")

    transitions: List[ModelTransition] = []
    groups: Dict[tuple, List[int]] = defaultdict(list)
    seen_steps = set()
    for index, raw in enumerate(raw_transitions):
        path = f"$.transitions[{index}]"
        source = _require(raw, "source", path)
        target = _require(raw, "target", path)
        for key, value in (("source", source), ("target", target)):
            if not _is_int(value) or value not in outputs:
                raise SchemaError(f"{path}.{key}", "must be the id of a state")
        in_sym = _require(raw, "input", path)
        if not isinstance(in_sym, str) or not in_sym:
            raise SchemaError(f"{path}.input", "expected a non-empty string")
        output = _require(raw, "output", path)
        _check_output(output, family, f"{path}.output")
        if family.is_moore and output != outputs[target]:
            raise SchemaError(f"{path}.output", "must equal the output of the target state")

        probability = raw.get("probability")
        if family.is_stochastic:
            probability = _require(raw, "probability", path)
            if isinstance(probability, bool) or not isinstance(probability, (int, float)) \
                    or not 0.0 < probability <= 1.0:
                raise SchemaError(f"{path}.probability", "expected a number in (0, 1]")
            probability = float(probability)
        elif probability is not None:
            raise SchemaError(f"{path}.probability", f"not allowed for {family.value}")

        counts = {}
        for key in ("count", "original_count"):
            value = raw.get(key)
            if family is ModelFamily.IOFA and key == "count" and value is None:
                raise SchemaError(f"{path}.count", "missing field")
            if value is not None and (not _is_int(value) or value < 0):
                raise SchemaError(f"{path}.{key}", "expected a non-negative integer")
            counts[key] = value

        step = (source, in_sym, output)
        if step in seen_steps:
            raise SchemaError(path, "duplicate (source, input, output) transition")
        seen_steps.add(step)
        groups[(source, in_sym)].append(index)
        if family.is_deterministic and len(groups[(source, in_sym)]) > 1:
            raise SchemaError(path, "deterministic family with two transitions for one input")

        transitions.append(ModelTransition(source, in_sym, output, target, probability, **counts))

    if family.is_stochastic:
        for (source, in_sym), indices in groups.items():
            total = sum(transitions[i].probability for i in indices)
            if not math.isclose(total, 1.0, abs_tol=PROBABILITY_TOLERANCE):
                raise SchemaError(
                    f"$.transitions[{indices[0]}].probability",
                    f"probabilities of state {source} on input '{in_sym}' sum to {total:.6f}",
                )

    if family is ModelFamily.MARKOV_CHAIN and len({t.input for t in transitions}) > 1:
        raise SchemaError("$.transitions", "a Markov chain has a single input symbol")

    return LearnedModel(family, states, initial, transitions)


def json_to_model(text: str) -> LearnedModel:
    """
    Parse and validate a JSON model document.

    Args:
        text: JSON text

    Returns:
        LearnedModel

    Raises:
        SchemaError: If the text is not JSON or violates the schema
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"not valid JSON ({e.msg} at line {e.lineno})") from e
    return dict_to_model(document)


def save_model(model: LearnedModel, output_path: Union[str, Path]) -> Path:
    """Write a model document."""
    return write_text(model_to_json(model), output_path)


def load_model(input_path: Union[str, Path]) -> LearnedModel:
    """Read and validate a model document."""
    return json_to_model(read_text(input_path))
