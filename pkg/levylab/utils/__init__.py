"""Utility modules for levylab."""

from .config import ConfigManager
from .logger import Logger
from .performance_monitor import PerformanceMonitor
from .random_streams import substream
from .validators import Validators

__all__ = [
    "ConfigManager",
    "Logger",
    "PerformanceMonitor",
    "Validators",
    "substream",
]
