"""
GraphViz DOT export of learned models and internal states.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Iterator, Optional, Union

from src.automata.tree_state import TreeState
from src.extraction.converter import tree_state_to_model
from src.extraction.learned_model import LearnedModel, ModelFamily, ModelTransition
from src.utils.config import get_config, get_config_value


def _gvquote(text: str) -> str:
    return '"{}"'.format(str(text).replace("\\", "\\\\").replace('"', r'\"'))


@dataclass
class StyleOptions:
    """
    Appearance of an exported graph.

    Attributes:
        red_states: State ids filled with ``red_color``
        blue_states: State ids filled with ``blue_color``
        highlight_states: State ids drawn with a ``highlight_color`` border
        red_color: Fill color of red states
        blue_color: Fill color of blue states
        highlight_color: Border color of highlighted states
        probability_digits: Decimals printed for probabilities
        rankdir: GraphViz layout direction
        show_counts: Print frequency counts on iofa edges
    """
    red_states: FrozenSet[int] = field(default_factory=frozenset)
    blue_states: FrozenSet[int] = field(default_factory=frozenset)
    highlight_states: FrozenSet[int] = field(default_factory=frozenset)
    red_color: str = "lightcoral"
    blue_color: str = "lightblue"
    highlight_color: str = "orange"
    probability_digits: int = 4
    rankdir: str = "LR"
    show_counts: bool = True

    @classmethod
    def from_config(cls, config: Dict[str, Any] = None, **overrides: Any) -> "StyleOptions":
        """
        Build style options from the ``visualization`` config section.

        Args:
            config: Configuration dictionary. If None, loads from global config.
            **overrides: Values taking precedence over the config

        Returns:
            StyleOptions
        """
        config = config if config is not None else get_config()
        values = {
            key: get_config_value(config, f"visualization.{key}")
            for key in ("red_color", "blue_color", "highlight_color", "probability_digits", "rankdir")
        }
        values = {key: value for key, value in values.items() if value is not None}
        for key in ("red_states", "blue_states", "highlight_states"):
            if key in overrides:
                overrides[key] = frozenset(overrides[key])
        values.update(overrides)
        return cls(**values)


def _state_label(model: LearnedModel, state_id: int, output: Any) -> str:
    if model.family is ModelFamily.DFA or not model.family.has_state_outputs or output is None:
        return f"s{state_id}"
    return f"s{state_id}|{output}"


def _edge_label(model: LearnedModel, transition: ModelTransition, style: StyleOptions) -> str:
    family = model.family
    if family.is_stochastic:
        return f"{transition.input}/{transition.output}:{transition.probability:.{style.probability_digits}f}"
    if family in (ModelFamily.MOORE_MACHINE, ModelFamily.DFA):
        return transition.input
    label = f"{transition.input}/{transition.output}"
    if family is ModelFamily.IOFA and style.show_counts and transition.count is not None:
        label += f" [{transition.count}]"
    return label


def _node_attributes(model: LearnedModel, state_id: int, output: Any, style: StyleOptions) -> str:
    attributes = [f"label={_gvquote(_state_label(model, state_id, output))}"]
    shape = "doublecircle" if model.family is ModelFamily.DFA and output else "circle"
    attributes.append(f"shape={shape}")
    if state_id in style.red_states:
        attributes.append(f"style=filled,fillcolor={_gvquote(style.red_color)}")
    elif state_id in style.blue_states:
        attributes.append(f"style=filled,fillcolor={_gvquote(style.blue_color)}")
    if state_id in style.highlight_states:
        attributes.append(f"color={_gvquote(style.highlight_color)},penwidth=2")
    return ",".join(attributes)


def iter_dot_lines(model: LearnedModel, style: StyleOptions) -> Iterator[str]:
    """Yield the lines of the DOT document."""
    yield "digraph {"
    yield f"  rankdir={style.rankdir};"
    yield '  __start [shape=none,label=""];'
    for state in sorted(model.states, key=lambda s: s.id):
        yield f"  s{state.id} [{_node_attributes(model, state.id, state.output, style)}];"
    yield f"  __start -> s{model.initial};"
    ordered = sorted(model.transitions, key=lambda t: (t.source, t.input, str(t.output), t.target))
    for transition in ordered:
        label = _gvquote(_edge_label(model, transition, style))
        yield f"  s{transition.source} -> s{transition.target} [label={label}];"
    yield "}"


def to_dot(model: Union[LearnedModel, TreeState], style: Optional[StyleOptions] = None) -> str:
    """
    Render a model as a DOT digraph.

    Internal states are exported as an iofa model with their PTA ids, so
    that red/blue style sets can refer to them.

    Args:
        model: LearnedModel or root TreeState
        style: Appearance options; plain defaults if None

    Returns:
        DOT text ending with a newline
    """
    if isinstance(model, TreeState):
        model = tree_state_to_model(model, keep_ids=True)
    style = style or StyleOptions()
    return "\n".join(iter_dot_lines(model, style)) + "\n"


def red_blue_style(red: Iterable[TreeState], blue: Iterable[TreeState],
                   config: Dict[str, Any] = None) -> StyleOptions:
    """Style marking the red and blue states of a learner, by PTA id."""
    return StyleOptions.from_config(
        config,
        red_states={state.id for state in red},
        blue_states={state.id for state in blue},
    )
