"""
Run report of a learning command.
"""

from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from src.utils.file_io import save_json


@dataclass
class RunReport:
    """
    Summary of one learning run.

    Attributes:
        algorithm: Preset name
        family: Extracted automaton family (or 'iofa')
        traces: Number of traces
        total_symbols: Number of steps over all traces
        pta_states: Size of the prefix tree
        final_states: Size of the learned model
        merges: Applied merges
        promotions: Promotions to red
        candidates: Evaluated merge candidates
        wall_time: Seconds spent in the red-blue loop
        events: Instrumentation events, if recorded
    """
    algorithm: str
    family: str
    traces: int
    total_symbols: int
    pta_states: int
    final_states: int
    merges: int
    promotions: int
    candidates: int = 0
    wall_time: float = 0.0
    events: Optional[List[Dict[str, Any]]] = field(default=None)

    @property
    def iterations(self) -> int:
        return self.merges + self.promotions

    def to_dict(self, include_time: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        if not include_time:
            data.pop("wall_time")
        if self.events is None:
            data.pop("events")
        return data

    def summary(self) -> str:
        """Human-readable multi-line summary."""
        return "\n".join([
            f"Algorithm:     {self.algorithm}",
            f"Model family:  {self.family}",
            f"Traces:        {self.traces} ({self.total_symbols} steps)",
            f"PTA states:    {self.pta_states}",
            f"Final states:  {self.final_states}",
            f"Iterations:    {self.iterations} ({self.merges} merges, {self.promotions} promotions)",
            f"Candidates:    {self.candidates}",
            f"Time:          {self.wall_time:.3f}s",
        ])

    def save(self, output_path: Union[str, Path]) -> Path:
        return save_json(self.to_dict(), output_path)
