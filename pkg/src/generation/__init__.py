"""Synthetic trace generation from reference models."""

from src.generation.trace_sampler import TraceSampler, trace_kind_for

__all__ = ["TraceSampler", "trace_kind_for"]
