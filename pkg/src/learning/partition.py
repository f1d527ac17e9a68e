"""
Result of evaluating a merge candidate.

A ``Partition`` maps every model state touched by a candidate merge (the
blue state, everything folded into the red side by implied merges and the
blue state's parent) to a partition state. Partition states are shallow
copies of model states carrying the combined transitions; the model itself
is untouched until the partition is applied.
"""

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from src.automata.tree_state import TreeState
from src.scoring.score_calculation import Score


class Partition(Mapping):
    """
    Mapping from model states to partition states.

    Attributes:
        red: Red state of the candidate
        blue: Blue state of the candidate
        assignment: Model state -> partition state
        score: Value returned by the score function
        version: Model version the partition was computed on
    """

    def __init__(self, red: TreeState, blue: TreeState,
                 assignment: Dict[TreeState, TreeState], version: int):
        self.red = red
        self.blue = blue
        self.assignment = assignment
        self.score: Optional[Score] = None
        self.version = version

    def __getitem__(self, state: TreeState) -> TreeState:
        return self.assignment[state]

    def __iter__(self) -> Iterator[TreeState]:
        return iter(self.assignment)

    def __len__(self) -> int:
        return len(self.assignment)

    def representatives(self) -> List[TreeState]:
        """Distinct partition states, ordered by the id of the state they stand for."""
        unique = {id(part): part for part in self.assignment.values()}
        return sorted(unique.values(), key=lambda part: part.id)

    def blocks(self) -> List[List[int]]:
        """Ids of the model states grouped per partition state, smallest first."""
        groups: Dict[int, List[int]] = {}
        for state, part in self.assignment.items():
            groups.setdefault(id(part), []).append(state.id)
        return sorted(sorted(ids) for ids in groups.values())

    def id_assignment(self) -> Dict[int, int]:
        """State id -> id of the representative state."""
        return {state.id: part.id for state, part in self.assignment.items()}

    def __repr__(self) -> str:
        return f"Partition(red={self.red.id}, blue={self.blue.id}, blocks={self.blocks()}, score={self.score})"


@dataclass(frozen=True)
class Incompatible:
    """
    A rejected merge candidate.

    Attributes:
        reason: First violated constraint (moore, determinism,
            local_compatibility or score)
        red: Id of the red state
        blue: Id of the blue state
        witness: Ids of the state pair on which the constraint failed
    """
    reason: str
    red: int
    blue: int
    witness: Optional[Tuple[int, int]] = None
