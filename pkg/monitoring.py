"""
Pipeline Monitoring

Collects timing and memory metrics for workbench commands and configures
logging for the command-line driver.
"""

import functools
import json
import logging
import time
from dataclasses import asdict, dataclass
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import psutil

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def setup_logging(level: str = "WARNING", log_file: Optional[str] = None) -> None:
    """
    Configure root logging once for the process.

    Args:
        level: Logging level name
        log_file: Optional file receiving the log instead of stderr
    """
    kwargs: Dict[str, Any] = {"level": getattr(logging, level.upper(), logging.WARNING), "format": LOG_FORMAT,
                              "force": True}
    if log_file:
        kwargs["filename"] = log_file
    logging.basicConfig(**kwargs)


@dataclass
class PerformanceMetrics:
    """Metrics of one monitored operation."""
    operation: str
    timestamp: float
    processing_time: float
    memory_mb: float
    success: bool


class PipelineMonitor:
    """Record metrics of monitored operations."""

    def __init__(self):
        self.metrics_history: List[PerformanceMetrics] = []
        self.start_time = time.time()
        self._process = psutil.Process()

    def start_operation(self, operation_name: str) -> float:
        logger.debug(f"Starting operation: {operation_name}")
        return time.perf_counter()

    def end_operation(self, operation_name: str, start_time: float, success: bool = True) -> PerformanceMetrics:
        """Finish timing an operation and store its metrics."""
        processing_time = time.perf_counter() - start_time
        memory_mb = self._process.memory_info().rss / 1024 / 1024
        metrics = PerformanceMetrics(
            operation=operation_name,
            timestamp=time.time(),
            processing_time=processing_time,
            memory_mb=round(memory_mb, 2),
            success=success,
        )
        self.metrics_history.append(metrics)
        status = "SUCCESS" if success else "ERROR"
        logger.info(f"Operation {operation_name} completed: {status} "
                    f"(Time: {processing_time:.2f}s, Memory: {memory_mb:.1f} MB)")
        return metrics

    def get_stats(self) -> Dict[str, Any]:
        """Summary statistics over the recorded operations."""
        if not self.metrics_history:
            return {"total_operations": 0}
        times = [m.processing_time for m in self.metrics_history]
        failures = sum(1 for m in self.metrics_history if not m.success)
        return {
            "total_operations": len(times),
            "processing_time": {
                "total": round(sum(times), 4),
                "average": round(sum(times) / len(times), 4),
                "max": round(max(times), 4),
            },
            "peak_memory_mb": max(m.memory_mb for m in self.metrics_history),
            "error_count": failures,
            "uptime_seconds": round(time.time() - self.start_time, 2),
        }

    def export_metrics(self, filename: str) -> bool:
        """Write the summary and history to a JSON file; returns False when the file cannot be written."""
        export_data = {
            "export_timestamp": datetime.now().isoformat(),
            "summary": self.get_stats(),
            "metrics_history": [asdict(m) for m in self.metrics_history],
        }
        try:
            Path(filename).write_text(json.dumps(export_data, indent=2))
        except OSError as e:
            logger.error(f"Error exporting metrics: {e}")
            return False
        logger.info(f"Metrics exported to {filename}")
        return True

    def reset(self) -> None:
        self.metrics_history = []
        self.start_time = time.time()


pipeline_monitor = PipelineMonitor()


def monitor_operation(operation_name: str):
    """Decorator recording the time and memory of each call."""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start_time = pipeline_monitor.start_operation(operation_name)
            try:
                result = func(*args, **kwargs)
            except Exception:
                pipeline_monitor.end_operation(operation_name, start_time, success=False)
                raise
            pipeline_monitor.end_operation(operation_name, start_time, success=True)
            return result
        return wrapper
    return decorator
