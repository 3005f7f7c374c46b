import json
import logging
import os
from unittest.mock import patch

import pytest

from config import DEFAULT_KNIT_CAP, DEFAULT_PRIME, Settings
from errors import ConfigError
from monitoring import PipelineMonitor, monitor_operation, pipeline_monitor, setup_logging


class TestSettings:
    """Test cases for environment settings."""

    @patch.dict(os.environ, {}, clear=True)
    def test_defaults(self):
        """Test defaults when nothing is set."""
        settings = Settings.from_env(load_dotenv_file=False)
        assert settings.knit_cap == DEFAULT_KNIT_CAP
        assert settings.default_prime == DEFAULT_PRIME
        assert settings.log_level == "WARNING"
        assert settings.log_file is None
        assert settings.corpus_path.endswith("corpus.json")

    @patch.dict(os.environ, {"RELEXT_KNIT_CAP": "40", "RELEXT_PRIME": "7", "RELEXT_LOG_LEVEL": "debug",
                             "RELEXT_CORPUS": "/tmp/other.json"}, clear=True)
    def test_overrides(self):
        """Test RELEXT_* variables override the defaults."""
        settings = Settings.from_env(load_dotenv_file=False)
        assert settings.knit_cap == 40
        assert settings.default_prime == 7
        assert settings.log_level == "DEBUG"
        assert settings.corpus_path == "/tmp/other.json"

    @patch.dict(os.environ, {"RELEXT_LENGTH_CAP": "-3"}, clear=True)
    def test_non_positive_cap(self):
        """Test caps must be positive."""
        with pytest.raises(ConfigError):
            Settings.from_env(load_dotenv_file=False)

    @patch.dict(os.environ, {"RELEXT_LOG_LEVEL": "LOUD"}, clear=True)
    def test_bad_log_level(self):
        """Test the log level must name a logging level."""
        with pytest.raises(ConfigError):
            Settings.from_env(load_dotenv_file=False)

    @patch.dict(os.environ, {"RELEXT_SLICE_SEARCH_CAP": ""}, clear=True)
    def test_empty_value_uses_default(self):
        """Test an empty variable falls back to the default."""
        assert Settings.from_env(load_dotenv_file=False).slice_search_cap == Settings().slice_search_cap


class TestMonitoring:
    """Test cases for the pipeline monitor."""

    def setup_method(self):
        """Set up test fixtures."""
        self.monitor = PipelineMonitor()

    def test_empty_stats(self):
        """Test statistics before any operation."""
        assert self.monitor.get_stats() == {"total_operations": 0}

    def test_stats(self):
        """Test totals and failure counts."""
        start = self.monitor.start_operation("knit")
        self.monitor.end_operation("knit", start)
        start = self.monitor.start_operation("slices")
        self.monitor.end_operation("slices", start, success=False)
        stats = self.monitor.get_stats()
        assert stats["total_operations"] == 2
        assert stats["error_count"] == 1
        assert stats["processing_time"]["max"] >= stats["processing_time"]["average"]
        assert stats["peak_memory_mb"] > 0

    def test_export(self, tmp_path):
        """Test metrics are exported as JSON."""
        start = self.monitor.start_operation("check")
        self.monitor.end_operation("check", start)
        target = tmp_path / "metrics.json"
        assert self.monitor.export_metrics(str(target))
        data = json.loads(target.read_text())
        assert data["summary"]["total_operations"] == 1
        assert data["metrics_history"][0]["success"] is True

    def test_export_failure(self, tmp_path):
        """Test an unwritable target returns False."""
        assert not self.monitor.export_metrics(str(tmp_path / "missing" / "metrics.json"))

    def test_reset(self):
        """Test reset clears the history."""
        self.monitor.end_operation("check", self.monitor.start_operation("check"))
        self.monitor.reset()
        assert self.monitor.metrics_history == []

    def test_decorator_records_failures(self):
        """Test the decorator records failed calls and re-raises."""
        pipeline_monitor.reset()

        @monitor_operation("failing")
        def failing():
            raise ConfigError("boom")

        with pytest.raises(ConfigError):
            failing()
        last = pipeline_monitor.metrics_history[-1]
        assert (last.operation, last.success) == ("failing", False)

    def test_setup_logging_to_file(self, tmp_path):
        """Test logging can be routed to a file."""
        log_file = tmp_path / "relext.log"
        setup_logging("INFO", str(log_file))
        logging.getLogger("repmod.knitting").info("knitted 3 modules")
        logging.shutdown()
        assert "knitted 3 modules" in log_file.read_text()
        setup_logging("WARNING")
