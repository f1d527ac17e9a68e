"""Red-blue state merging engine."""

from src.learning.partition import Incompatible, Partition
from src.learning.instrumentation import (
    EventLog,
    Instrumentation,
    InstrumentationChain,
    LoggingInstrumentation,
)
from src.learning.state_merging import EngineConfig, GeneralizedStateMerging, RunStatistics

__all__ = [
    "Incompatible",
    "Partition",
    "EventLog",
    "Instrumentation",
    "InstrumentationChain",
    "LoggingInstrumentation",
    "EngineConfig",
    "GeneralizedStateMerging",
    "RunStatistics",
]
