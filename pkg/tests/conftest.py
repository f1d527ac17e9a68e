"""
Shared fixtures: example traces, car alarm reference models and the
``--run-slow`` switch for long-running scenarios.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.automata.tree_state import BehaviorConfig
from src.extraction.serialization import load_model
from src.learning.state_merging import EngineConfig
from src.utils.config import load_config

DATA_DIR = Path(__file__).parent.parent / "data"

# Three Mealy traces whose PTA has states q1..q6 (ids 0..5)
EXAMPLE1_TRACES = [
    [("x", "a"), ("x", "a"), ("x", "a")],
    [("x", "a"), ("x", "a"), ("y", "b")],
    [("y", "b")],
]

# Same traces with the last step of the second one emitting a
EXAMPLE2_TRACES = [
    [("x", "a"), ("x", "a"), ("x", "a")],
    [("x", "a"), ("x", "a"), ("y", "a")],
    [("y", "b")],
]


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False, help="run slow acceptance scenarios")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance scenario (needs --run-slow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def config():
    """Project configuration with progress bars switched off."""
    config = load_config()
    config.setdefault("progress", {})["enabled"] = False
    return config


@pytest.fixture
def mealy_det(config):
    """Engine configuration for deterministic Mealy learning (RPNI)."""
    return EngineConfig.from_config(config, behavior=BehaviorConfig.of("mealy", "deterministic"))


@pytest.fixture
def example1_traces():
    return [list(trace) for trace in EXAMPLE1_TRACES]


@pytest.fixture
def example2_traces():
    return [list(trace) for trace in EXAMPLE2_TRACES]


@pytest.fixture
def car_alarm():
    """Deterministic Moore car alarm with 6 states."""
    return load_model(DATA_DIR / "models" / "car_alarm.json")


@pytest.fixture
def faulty_car_alarm():
    """Car alarm MDP with a faulty state (d leads to the alarm with 0.9)."""
    return load_model(DATA_DIR / "models" / "faulty_car_alarm.json")
