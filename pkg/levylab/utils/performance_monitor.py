"""Performance monitoring utilities for levylab."""

import threading
import time
from collections import deque
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Deque, Dict, Iterator, Optional

import psutil


@dataclass
class PerformanceMetrics:
    """Performance metrics data class."""
    operation_name: str
    start_time: float
    end_time: float
    duration: float
    memory_before: float
    memory_after: float
    memory_delta: float
    success: bool
    error_message: Optional[str] = None


class PerformanceMonitor:
    """Wall-time and memory monitor for experiment runs."""

    def __init__(self, max_history: int = 100):
        """Initialize performance monitor.

        Args:
            max_history: Maximum number of metrics to keep in history
        """
        self.metrics_history: Deque[PerformanceMetrics] = deque(maxlen=max_history)
        self._lock = threading.Lock()

    @contextmanager
    def monitor_operation(self, operation_name: str) -> Iterator[PerformanceMetrics]:
        """Context manager for monitoring operations.

        Args:
            operation_name: Name of the operation being monitored

        Yields:
            PerformanceMetrics object, completed when the block exits
        """
        start_time = time.perf_counter()
        memory_before = self._get_memory_usage()

        metrics = PerformanceMetrics(
            operation_name=operation_name,
            start_time=start_time,
            end_time=0.0,
            duration=0.0,
            memory_before=memory_before,
            memory_after=0.0,
            memory_delta=0.0,
            success=False
        )

        try:
            yield metrics
            metrics.success = True
        except Exception as e:
            metrics.error_message = str(e)
            raise
        finally:
            end_time = time.perf_counter()
            memory_after = self._get_memory_usage()

            metrics.end_time = end_time
            metrics.duration = end_time - start_time
            metrics.memory_after = memory_after
            metrics.memory_delta = memory_after - memory_before

            with self._lock:
                self.metrics_history.append(metrics)

    @staticmethod
    def _get_memory_usage() -> float:
        """Get current memory usage in MB."""
        return psutil.Process().memory_info().rss / (1024 * 1024)

    def get_performance_summary(self, operation_name: Optional[str] = None) -> Dict[str, Any]:
        """Summarize recorded operations, optionally for one name."""
        with self._lock:
            metrics = [m for m in self.metrics_history
                       if operation_name is None or m.operation_name == operation_name]

        if not metrics:
            return {'count': 0}

        durations = [m.duration for m in metrics]
        return {
            'count': len(metrics),
            'total_duration': sum(durations),
            'max_duration': max(durations),
            'max_memory_delta_mb': max(m.memory_delta for m in metrics),
            'failures': sum(1 for m in metrics if not m.success),
        }
