"""
Passive Automata Learning by Generalized State Merging

This package learns deterministic, nondeterministic and stochastic Mealy and
Moore machines (plus DFAs and Markov chains) from recorded traces with a
configurable red-blue state-merging loop.
"""

__version__ = "1.0.0"

from src.automata.tree_state import BehaviorConfig, OutputBehavior, TransitionBehavior, TreeState
from src.extraction.learned_model import LearnedModel, ModelFamily
from src.ingestion.trace_formats import TraceSet, parse_traces
from src.learning.state_merging import EngineConfig, GeneralizedStateMerging
from src.scoring.score_calculation import ScoreCalculation

__all__ = [
    "BehaviorConfig",
    "OutputBehavior",
    "TransitionBehavior",
    "TreeState",
    "LearnedModel",
    "ModelFamily",
    "TraceSet",
    "parse_traces",
    "EngineConfig",
    "GeneralizedStateMerging",
    "ScoreCalculation",
]
