"""
Callbacks for observing a red-blue run.

Handlers only observe; the learned model is the same with or without them.
"""

from pathlib import Path
from typing import Any, Dict, List, Union

from src.automata.tree_state import TreeState
from src.learning.partition import Incompatible, Partition
from src.utils.file_io import save_jsonl
from src.utils.logger import get_logger

logger = get_logger(__name__)

CandidateResult = Union[Partition, Incompatible]


class Instrumentation:
    """Base class with no-op handlers; override the events of interest."""

    def pta_built(self, root: TreeState) -> None:
        pass

    def candidate_evaluated(self, red: TreeState, blue: TreeState, result: CandidateResult) -> None:
        pass

    def promoted(self, state: TreeState) -> None:
        pass

    def merge_applied(self, red: TreeState, blue: TreeState, partition: Partition) -> None:
        pass

    def finished(self, root: TreeState) -> None:
        pass


class InstrumentationChain(Instrumentation):
    """Forward every event to several handlers in order."""

    def __init__(self, *handlers: Instrumentation):
        self.handlers = [handler for handler in handlers if handler is not None]

    def pta_built(self, root):
        for handler in self.handlers:
            handler.pta_built(root)

    def candidate_evaluated(self, red, blue, result):
        for handler in self.handlers:
            handler.candidate_evaluated(red, blue, result)

    def promoted(self, state):
        for handler in self.handlers:
            handler.promoted(state)

    def merge_applied(self, red, blue, partition):
        for handler in self.handlers:
            handler.merge_applied(red, blue, partition)

    def finished(self, root):
        for handler in self.handlers:
            handler.finished(root)


class EventLog(Instrumentation):
    """
    Record events as JSON-serializable dictionaries.

    States are identified by their PTA ids.
    """

    def __init__(self, record_candidates: bool = False):
        """
        Initialize the log.

        Args:
            record_candidates: Also record every evaluated candidate
        """
        self.record_candidates = record_candidates
        self.events: List[Dict[str, Any]] = []

    def pta_built(self, root):
        self.events.append({"event": "pta_built", "states": len(root.get_all_states())})

    def candidate_evaluated(self, red, blue, result):
        if not self.record_candidates:
            return
        event: Dict[str, Any] = {"event": "candidate_evaluated", "red": red.id, "blue": blue.id}
        if isinstance(result, Incompatible):
            event["rejected"] = result.reason
        else:
            score = result.score
            event["score"] = score if isinstance(score, bool) else float(score)
        self.events.append(event)

    def promoted(self, state):
        self.events.append({"event": "promoted", "state": state.id})

    def merge_applied(self, red, blue, partition):
        self.events.append({
            "event": "merge_applied",
            "red": red.id,
            "blue": blue.id,
            "blocks": [block for block in partition.blocks() if len(block) > 1],
        })

    def finished(self, root):
        self.events.append({"event": "finished", "states": len(root.get_all_states())})

    def steps(self) -> List[tuple]:
        """Promotions and merges as compact tuples, e.g. ``("merge", 0, 2)``."""
        steps = []
        for event in self.events:
            if event["event"] == "promoted":
                steps.append(("promote", event["state"]))
            elif event["event"] == "merge_applied":
                steps.append(("merge", event["red"], event["blue"]))
        return steps

    def save(self, output_path: Union[str, Path]) -> Path:
        """Write the log as JSON lines."""
        return save_jsonl(self.events, output_path)


class LoggingInstrumentation(Instrumentation):
    """Forward promotions and merges to the module logger at DEBUG level."""

    def pta_built(self, root):
        logger.debug(f"Learning on PTA with {len(root.get_all_states())} states")

    def promoted(self, state):
        logger.debug(f"Promoted q{state.id}")

    def merge_applied(self, red, blue, partition):
        logger.debug(f"Merged q{blue.id} into q{red.id} (score {partition.score}, {len(partition)} states touched)")

    def finished(self, root):
        logger.debug(f"Finished with {len(root.get_all_states())} states")
