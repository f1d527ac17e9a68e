"""
Test suite for utility modules.
"""

import json
import logging

import pytest
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.utils.config import load_config, get_config_value, get_project_root, get_section
from src.utils.file_io import load_json, read_text, save_json, save_jsonl, write_text
from src.utils.logger import get_logger, setup_logger
from src.utils.report import RunReport


class TestConfig:
    """Test configuration utilities."""

    def test_get_project_root(self):
        """Test getting project root directory."""
        root = get_project_root()
        assert root.exists()
        assert (root / "config.yaml").exists()

    def test_load_config(self):
        """Test loading configuration file."""
        config = load_config()
        assert config is not None
        assert 'learning' in config
        assert 'generation' in config
        assert 'visualization' in config

    def test_get_config_value(self):
        """Test getting configuration values."""
        config = load_config()
        assert get_config_value(config, 'learning.epsilon') == 0.05
        assert get_config_value(config, 'generation.count') == 200

        # Test default value
        missing = get_config_value(config, 'nonexistent.key', 'default')
        assert missing == 'default'

    def test_get_section(self):
        """Test section lookup with missing sections."""
        config = {'learning': {'algorithm': 'edsm'}}
        assert get_section(config, 'learning') == {'algorithm': 'edsm'}
        assert get_section(config, 'generation') == {}

    def test_missing_config_file(self, tmp_path):
        """Test loading a config file that does not exist."""
        with pytest.raises(FileNotFoundError):
            load_config(str(tmp_path / "missing.yaml"))


class TestFileIO:
    """Test file helpers."""

    def test_write_creates_parents(self, tmp_path):
        """Test that write_text creates missing directories."""
        path = write_text("abc\n", tmp_path / "a" / "b" / "c.txt")
        assert read_text(path) == "abc\n"

    def test_read_missing_file(self, tmp_path):
        """Test reading a missing file."""
        with pytest.raises(FileNotFoundError):
            read_text(tmp_path / "nope.txt")

    def test_json_helpers(self, tmp_path):
        """Test JSON and JSON-lines helpers."""
        save_json({"a": [1, 2]}, tmp_path / "doc.json")
        assert load_json(tmp_path / "doc.json") == {"a": [1, 2]}

        save_jsonl([{"x": 1}, {"y": 2}], tmp_path / "log.jsonl")
        lines = read_text(tmp_path / "log.jsonl").splitlines()
        assert [json.loads(line) for line in lines] == [{"x": 1}, {"y": 2}]


class TestLogger:
    """Test logger setup."""

    def test_module_loggers_are_children(self):
        """Test that module loggers live under the application logger."""
        assert get_logger("src.learning").name == "gsm.src.learning"
        assert get_logger().name == "gsm"

    def test_setup_logger_level(self):
        """Test that setup_logger applies the level."""
        logger = setup_logger(level="DEBUG", console=False)
        assert logger.level == logging.DEBUG
        setup_logger(level="INFO", console=False)


class TestRunReport:
    """Test run reports."""

    def test_summary_and_dict(self, tmp_path):
        """Test report serialization."""
        report = RunReport("rpni", "MealyMachine", traces=3, total_symbols=7,
                           pta_states=6, final_states=2, merges=3, promotions=1, wall_time=0.5)
        assert report.iterations == 4
        assert "Final states:  2" in report.summary()
        data = report.to_dict(include_time=False)
        assert "wall_time" not in data and "events" not in data

        report.save(tmp_path / "report.json")
        assert load_json(tmp_path / "report.json")["merges"] == 3


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
