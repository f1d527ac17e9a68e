"""
Generalized red-blue state merging.

The learner starts from the prefix tree automaton of the data with the
initial state red. In every iteration the blue states (successors of red
states that are not red themselves) are paired with red states and every
pair is evaluated as a merge candidate. A blue state that cannot be merged
with any red state is promoted to red; otherwise the best scoring candidate
is merged. The loop ends when no blue states remain.
"""

import math
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.automata.structure import find_moore_violation, find_nondeterminism
from src.automata.tree_state import (
    BehaviorConfig,
    OutputBehavior,
    TransitionBehavior,
    TreeState,
    UNKNOWN_OUTPUT,
    state_id_key,
)
from src.exceptions import ConfigurationError, StalePartition, StructureViolation
from src.extraction.converter import to_automaton
from src.extraction.learned_model import LearnedModel
from src.ingestion.pta_builder import build_pta
from src.ingestion.trace_formats import TraceKind, TraceSet
from src.learning.instrumentation import Instrumentation
from src.learning.partition import Incompatible, Partition
from src.scoring.score_calculation import ScoreCalculation, score_value
from src.utils.config import get_config, get_config_value
from src.utils.logger import get_logger

logger = get_logger(__name__)

RootTransform = Callable[[TreeState], TreeState]
IncomingEdge = Tuple[TreeState, str, str]


@dataclass
class EngineConfig:
    """
    Configuration of a red-blue run.

    Attributes:
        behavior: Output and transition behavior enforced while merging
        strategy: Compatibility and scoring strategy
        eval_compat_on_pta: Evaluate compatibility on the unmerged PTA
            (requires ``eval_compat_on_futures``)
        eval_compat_on_futures: Evaluate compatibility on shared futures of
            the candidate instead of on the partition
        consider_only_min_blue: Only consider the minimal blue state
        depth_first: Traverse shared futures depth first
        node_order: Sort key over states; PTA ids (shortlex) by default
        pta_processing: Transformation applied to the PTA before merging
        postprocessing: Transformation applied to the learned root
        extraction_behavior: Behavior used for conversion, if it differs
            from ``behavior``
        family_override: 'dfa' or 'markov_chain' to extract those views
        check_structure: Validate determinism / Moore property after every merge
        dfa_accept_symbol: Output read as "accept" when extracting a Dfa
        show_progress: Show tqdm progress bars
    """
    behavior: BehaviorConfig = field(default_factory=BehaviorConfig)
    strategy: ScoreCalculation = field(default_factory=ScoreCalculation)
    eval_compat_on_pta: bool = False
    eval_compat_on_futures: bool = False
    consider_only_min_blue: bool = False
    depth_first: bool = False
    node_order: Callable[[Any], Any] = state_id_key
    pta_processing: Optional[RootTransform] = None
    postprocessing: Optional[RootTransform] = None
    extraction_behavior: Optional[BehaviorConfig] = None
    family_override: Optional[str] = None
    check_structure: bool = False
    dfa_accept_symbol: str = "1"
    show_progress: bool = False

    def validate(self) -> "EngineConfig":
        """
        Reject contradictory settings.

        Returns:
            self

        Raises:
            ConfigurationError: If the flags cannot be combined
        """
        if self.eval_compat_on_pta and not self.eval_compat_on_futures:
            raise ConfigurationError("eval_compat_on_pta requires eval_compat_on_futures")
        if self.family_override not in (None, "dfa", "markov_chain"):
            raise ConfigurationError(f"Unknown family override: {self.family_override}")
        return self

    @classmethod
    def from_config(cls, config: Dict[str, Any] = None, **overrides: Any) -> "EngineConfig":
        """
        Build an engine configuration from the ``learning`` config section.

        Args:
            config: Configuration dictionary. If None, loads from global config.
            **overrides: Field values taking precedence over the config

        Returns:
            EngineConfig
        """
        config = config if config is not None else get_config()
        transition = get_config_value(config, "learning.transition_behavior") or TransitionBehavior.DETERMINISTIC.value
        values: Dict[str, Any] = {
            "behavior": BehaviorConfig.of(
                get_config_value(config, "learning.output_behavior", OutputBehavior.MOORE.value),
                transition,
            ),
            "consider_only_min_blue": bool(get_config_value(config, "learning.consider_only_min_blue", False)),
            "depth_first": bool(get_config_value(config, "learning.depth_first", False)),
            "check_structure": bool(get_config_value(config, "learning.check_structure", False)),
            "dfa_accept_symbol": str(get_config_value(config, "learning.dfa_accept_symbol", "1")),
            "show_progress": bool(get_config_value(config, "progress.enabled", False)),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values).validate()


@dataclass
class RunStatistics:
    """Counters of one run."""
    pta_states: int = 0
    final_states: int = 0
    merges: int = 0
    promotions: int = 0
    candidates: int = 0
    wall_time: float = 0.0

    @property
    def iterations(self) -> int:
        return self.merges + self.promotions


class GeneralizedStateMerging:
    """
    Red-blue state merging over IO frequency automata.
    """

    def __init__(self, engine_config: Optional[EngineConfig] = None,
                 config: Dict[str, Any] = None,
                 instrumentation: Optional[Instrumentation] = None):
        """
        Initialize the learner.

        Args:
            engine_config: Run configuration. If None, built from ``config``.
            config: Configuration dictionary. If None, loads from global config.
            instrumentation: Optional event handler
        """
        self.config = (engine_config or EngineConfig.from_config(config)).validate()
        self.instrumentation = instrumentation or Instrumentation()
        self.stats = RunStatistics()
        self.red: List[TreeState] = []
        self._blue_edges: Dict[TreeState, IncomingEdge] = {}
        self._version = 0
        self._unknown: Optional[str] = None

    # ------------------------------------------------------------------
    # Red / blue
    # ------------------------------------------------------------------

    def compute_blue(self, red: Optional[Iterable[TreeState]] = None) -> List[TreeState]:
        """
        Successors of red states that are not red, in node order.

        Args:
            red: Red states; defaults to the current red set

        Returns:
            Sorted list of blue states
        """
        red = list(self.red if red is None else red)
        red_ids = {id(state) for state in red}
        edges: Dict[TreeState, IncomingEdge] = {}
        for state in red:
            for in_sym, out_sym, info in state.iter_transitions():
                target = info.target
                if id(target) not in red_ids and target not in edges:
                    edges[target] = (state, in_sym, out_sym)
        self._blue_edges = edges
        return sorted(edges, key=self.config.node_order)

    # ------------------------------------------------------------------
    # Candidate evaluation
    # ------------------------------------------------------------------

    def _outputs_clash(self, first: Optional[str], second: Optional[str]) -> bool:
        if first == second:
            return False
        return self._unknown is None or self._unknown not in (first, second)

    def _future_conflict(self, a: TreeState, b: TreeState) -> Optional[Tuple[int, int]]:
        on_pta = self.config.eval_compat_on_pta
        compat = self.config.strategy.local_compatibility
        queue = deque([(a, b)])
        visited = set()
        while queue:
            x, y = queue.pop() if self.config.depth_first else queue.popleft()
            key = (id(x), id(y))
            if key in visited:
                continue
            visited.add(key)

            if on_pta:
                if not compat(x.pta_view(), y.pta_view()):
                    return x.id, y.id
                x_trans, y_trans = x.original_transitions, y.original_transitions
            else:
                if not compat(x, y):
                    return x.id, y.id
                x_trans, y_trans = x.transitions, y.transitions

            for in_sym in sorted(x_trans.keys() & y_trans.keys()):
                x_out, y_out = x_trans[in_sym], y_trans[in_sym]
                for out_sym in sorted(x_out.keys() & y_out.keys()):
                    if on_pta:
                        queue.append((x_out[out_sym].original_target, y_out[out_sym].original_target))
                    else:
                        queue.append((x_out[out_sym].target, y_out[out_sym].target))
        return None

    def check_futures(self, a: TreeState, b: TreeState) -> bool:
        """
        Evaluate local compatibility on two states and all pairs of states
        reached from them by shared (input, output) steps.

        Args:
            a: First state
            b: Second state

        Returns:
            True if every visited pair is compatible
        """
        return self._future_conflict(a, b) is None

    def try_merge(self, red: TreeState, blue: TreeState) -> Union[Partition, Incompatible]:
        """
        Compute the partition of merging ``blue`` into ``red`` with all
        implied merges, and score it. The model is not modified.

        Args:
            red: A red state
            blue: A blue state

        Returns:
            Scored Partition, or Incompatible naming the violated constraint
        """
        behavior = self.config.behavior
        strategy = self.config.strategy
        strategy.reset()

        futures = self.config.eval_compat_on_futures
        if futures:
            witness = self._future_conflict(red, blue)
            if witness is not None:
                return Incompatible("local_compatibility", red.id, blue.id, witness)

        assignment: Dict[TreeState, TreeState] = {}

        def partition_of(state: TreeState) -> TreeState:
            part = assignment.get(state)
            if part is None:
                part = state.shallow_copy()
                assignment[state] = part
            return part

        parent, in_sym, out_sym = self._blue_edges.get(blue) or (blue.predecessor, *blue.incoming)
        partition_of(parent).transitions[in_sym][out_sym].target = red

        pending = deque([(red, blue)])
        while pending:
            r, b = pending.popleft()
            part = partition_of(r)
            assignment[b] = part

            if behavior.is_moore:
                if self._outputs_clash(part.output, b.output):
                    return Incompatible("moore", red.id, blue.id, (r.id, b.id))
                if part.output == self._unknown:
                    part.output = b.output

            if not futures and not strategy.local_compatibility(part, b):
                return Incompatible("local_compatibility", red.id, blue.id, (r.id, b.id))

            for b_in, b_out_map in b.transitions.items():
                part_out_map = part.transitions.setdefault(b_in, {})
                for b_out, b_info in b_out_map.items():
                    part_info = part_out_map.get(b_out)
                    if part_info is None and behavior.is_deterministic and part_out_map:
                        (part_out, part_info), = part_out_map.items()
                        if self._outputs_clash(part_out, b_out):
                            return Incompatible("determinism", red.id, blue.id, (r.id, b.id))
                        if part_out == self._unknown:
                            del part_out_map[part_out]
                            part_out_map[b_out] = part_info
                    if part_info is None:
                        part_out_map[b_out] = b_info.copy()
                    else:
                        pending.append((part_info.target, b_info.target))
                        part_info.count += b_info.count

        partition = Partition(red, blue, assignment, self._version)
        partition.score = strategy.score_function(partition)
        if partition.score is False:
            return Incompatible("score", red.id, blue.id)
        return partition

    # ------------------------------------------------------------------
    # Merge application
    # ------------------------------------------------------------------

    def apply_merge(self, root: TreeState, partition: Partition) -> TreeState:
        """
        Commit a partition to the model.

        Args:
            root: Initial state of the model
            partition: Partition computed by ``try_merge`` on this model

        Returns:
            The root of the merged model

        Raises:
            StalePartition: If the model changed after the partition was computed
            StructureViolation: If ``check_structure`` is set and the merged
                model breaks the enforced behavior
        """
        if partition.version != self._version:
            raise StalePartition(
                f"Partition computed on model version {partition.version}, model is at {self._version}"
            )
        for part in partition.representatives():
            part.origin.transitions = part.transitions
            part.origin.output = part.output
        self._version += 1

        if self.config.check_structure:
            self._check_structure(root)
        return root

    def _check_structure(self, root: TreeState) -> None:
        behavior = self.config.behavior
        if behavior.is_deterministic:
            witness = find_nondeterminism(root)
            if witness is not None:
                raise StructureViolation("deterministic", witness.id)
        if behavior.is_moore:
            witness = find_moore_violation(root, unknown_output=self._unknown)
            if witness is not None:
                raise StructureViolation("moore", witness.id)

    # ------------------------------------------------------------------
    # Main loop
    # ------------------------------------------------------------------

    def _select(self, blue: Sequence[TreeState]) -> Tuple[Optional[Partition], Optional[TreeState]]:
        best: Optional[Partition] = None
        best_value = -math.inf
        for b in blue:
            mergeable = False
            for r in self.red:
                result = self.try_merge(r, b)
                self.stats.candidates += 1
                self.instrumentation.candidate_evaluated(r, b, result)
                if isinstance(result, Incompatible):
                    continue
                mergeable = True
                value = score_value(result.score)
                if value == math.inf:
                    return result, None
                if best is None or value > best_value:
                    best, best_value = result, value
            if not mergeable:
                return None, b
        return best, None

    def learn(self, root: TreeState) -> TreeState:
        """
        Run the red-blue loop on a prefix tree automaton.

        Args:
            root: Root of the PTA (modified in place)

        Returns:
            Root of the learned model, after postprocessing
        """
        start = time.perf_counter()
        self.stats = RunStatistics(pta_states=len(root.get_all_states()))
        self._version = 0
        if self.config.pta_processing is not None:
            root = self.config.pta_processing(root)
        self.instrumentation.pta_built(root)

        self.red = [root]
        while True:
            blue = self.compute_blue()
            if not blue:
                break
            if self.config.consider_only_min_blue:
                blue = blue[:1]

            partition, unmergeable = self._select(blue)
            if unmergeable is not None:
                self.red.append(unmergeable)
                self.red.sort(key=self.config.node_order)
                self.stats.promotions += 1
                self.instrumentation.promoted(unmergeable)
                continue

            self.apply_merge(root, partition)
            self.stats.merges += 1
            self.instrumentation.merge_applied(partition.red, partition.blue, partition)

        if self.config.postprocessing is not None:
            root = self.config.postprocessing(root)

        self.stats.final_states = len(root.get_all_states())
        self.stats.wall_time = time.perf_counter() - start
        self.instrumentation.finished(root)
        logger.info(
            f"Learned {self.stats.final_states} states from a {self.stats.pta_states}-state PTA "
            f"({self.stats.merges} merges, {self.stats.promotions} promotions)"
        )
        return root

    def run(self, data: Union[TraceSet, Sequence[Any]], convert: bool = True,
            instrumentation: Optional[Instrumentation] = None) -> Union[LearnedModel, TreeState]:
        """
        Learn an automaton from traces.

        Args:
            data: TraceSet, or traces as plain Python sequences
            convert: Return a typed LearnedModel; the internal root otherwise
            instrumentation: Event handler for this run (overrides the one
                given to the constructor)

        Returns:
            LearnedModel or TreeState
        """
        if instrumentation is not None:
            self.instrumentation = instrumentation
        if not isinstance(data, TraceSet):
            data = TraceSet.from_sequences(data)

        family_override = self.config.family_override
        self._unknown = None
        if data.kind is TraceKind.LABELED_WORDS:
            self._unknown = UNKNOWN_OUTPUT
            family_override = family_override or "dfa"
        elif data.kind is TraceKind.OBSERVATIONS:
            family_override = family_override or "markov_chain"

        root = build_pta(data, self.config.behavior, show_progress=self.config.show_progress)
        root = self.learn(root)
        if not convert:
            return root

        behavior = self.config.extraction_behavior or self.config.behavior
        return to_automaton(
            root,
            behavior,
            family_override=family_override,
            accept_symbol=self.config.dfa_accept_symbol,
        )

