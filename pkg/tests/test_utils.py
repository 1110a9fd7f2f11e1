"""Tests for the logging and performance utilities."""

import logging

import pytest

from levylab.utils.logger import Logger
from levylab.utils.performance_monitor import PerformanceMonitor


class TestPerformanceMonitor:
    """Test cases for PerformanceMonitor."""

    def test_records_successful_operation(self):
        monitor = PerformanceMonitor()
        with monitor.monitor_operation('exp_supremum') as metrics:
            sum(range(1000))

        assert metrics.success
        assert metrics.duration >= 0.0
        assert metrics.error_message is None
        summary = monitor.get_performance_summary('exp_supremum')
        assert summary['count'] == 1
        assert summary['failures'] == 0

    def test_records_failure_and_reraises(self):
        monitor = PerformanceMonitor()
        with pytest.raises(ValueError):
            with monitor.monitor_operation('broken'):
                raise ValueError("boom")

        metrics = monitor.metrics_history[-1]
        assert not metrics.success
        assert metrics.error_message == "boom"
        assert monitor.get_performance_summary()['failures'] == 1

    def test_summary_filters_by_name(self):
        monitor = PerformanceMonitor()
        for name in ('a', 'b', 'a'):
            with monitor.monitor_operation(name):
                pass

        assert monitor.get_performance_summary('a')['count'] == 2
        assert monitor.get_performance_summary()['count'] == 3
        assert monitor.get_performance_summary('missing') == {'count': 0}

    def test_history_is_bounded(self):
        monitor = PerformanceMonitor(max_history=2)
        for _ in range(5):
            with monitor.monitor_operation('op'):
                pass
        assert len(monitor.metrics_history) == 2


class TestLogger:
    """Test cases for Logger."""

    @pytest.fixture(autouse=True)
    def restore_root_level(self):
        root = logging.getLogger()
        level = root.level
        yield
        root.setLevel(level)

    def test_explicit_level_sets_root(self):
        Logger('levylab', level=logging.WARNING)
        assert logging.getLogger().level == logging.WARNING

    def test_module_logger_keeps_configured_level(self):
        Logger('levylab', level=logging.ERROR)
        Logger('levylab.experiments.runner')
        assert logging.getLogger().level == logging.ERROR

    def test_helpers_accept_context(self):
        logger = Logger('levylab.tests', level=logging.CRITICAL)
        logger.log_experiment('exp_supremum', True, {'tests': 2})
        logger.log_performance('batch sup', 0.5, {'replicates': 10})
        logger.log_error(ValueError("bad"), {'command': 'run'})
        logger.critical("stopping", reason='test')
