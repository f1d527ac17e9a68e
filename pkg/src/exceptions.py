"""
Exception hierarchy for the state-merging toolkit.

Library code raises these; ``main.py`` maps them onto exit codes.
"""

from typing import Optional, Sequence, Tuple


class StateMergingError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------

class IngestionError(StateMergingError):
    """Raised when trace data cannot be turned into a prefix tree."""


class UnparseableInput(IngestionError):
    """No supported trace grammar matches the input text."""


class AmbiguousFormat(IngestionError):
    """More than one trace grammar matches the input text."""

    def __init__(self, candidates: Sequence[str]):
        self.candidates = tuple(candidates)
        super().__init__(
            f"Input matches several trace formats: {', '.join(self.candidates)}; "
            f"pass an explicit format"
        )


class InconsistentInitialOutput(IngestionError):
    """Moore traces disagree on the initial output."""


class MissingInitialOutput(IngestionError):
    """Moore learning was requested but traces carry no initial output."""


class NondeterminismInData(IngestionError):
    """Deterministic learning was requested but the data is nondeterministic."""

    def __init__(self, prefix: Tuple[Tuple[str, str], ...], input_symbol: str, outputs: Sequence[str]):
        self.prefix = tuple(prefix)
        self.input_symbol = input_symbol
        self.outputs = tuple(outputs)
        super().__init__(
            f"Traces disagree after prefix {list(self.prefix)} on input "
            f"'{input_symbol}': outputs {sorted(self.outputs)}"
        )


class ConflictingLabels(IngestionError):
    """A labeled word occurs with two different labels."""

    def __init__(self, word: Tuple[str, ...], labels: Sequence[str]):
        self.word = tuple(word)
        self.labels = tuple(labels)
        super().__init__(f"Word {list(self.word)} has conflicting labels {sorted(self.labels)}")


class UnsupportedData(IngestionError):
    """The trace kind cannot be learned with the requested behavior."""


# ---------------------------------------------------------------------------
# Configuration / engine
# ---------------------------------------------------------------------------

class ConfigurationError(StateMergingError):
    """Invalid or contradictory learning configuration."""


class StalePartition(StateMergingError):
    """A partition is applied to a model that changed after it was computed."""


# ---------------------------------------------------------------------------
# Extraction
# ---------------------------------------------------------------------------

class ConversionError(StateMergingError):
    """The internal model cannot be converted to the requested automaton."""


class StructureViolation(ConversionError):
    """A structural predicate (determinism, Moore property, ...) failed."""

    def __init__(self, predicate: str, witness: Optional[int], detail: str = ""):
        self.predicate = predicate
        self.witness = witness
        message = f"Structure check '{predicate}' failed at state {witness}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class SchemaError(StateMergingError):
    """A model document does not follow the JSON model schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------

class GenerationError(StateMergingError):
    """A trace cannot be sampled from the reference model."""
