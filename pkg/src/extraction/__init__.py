"""Typed automata, conversion from the internal model, JSON and DOT export."""

from src.extraction.learned_model import (
    LearnedModel,
    ModelFamily,
    ModelState,
    ModelTransition,
    models_isomorphic,
)
from src.extraction.converter import select_family, to_automaton, tree_state_to_model
from src.extraction.serialization import (
    dict_to_model,
    json_to_model,
    load_model,
    model_to_dict,
    model_to_json,
    save_model,
)
from src.extraction.dot_export import StyleOptions, red_blue_style, to_dot

__all__ = [
    "LearnedModel",
    "ModelFamily",
    "ModelState",
    "ModelTransition",
    "models_isomorphic",
    "select_family",
    "to_automaton",
    "tree_state_to_model",
    "dict_to_model",
    "json_to_model",
    "load_model",
    "model_to_dict",
    "model_to_json",
    "save_model",
    "StyleOptions",
    "red_blue_style",
    "to_dot",
]
