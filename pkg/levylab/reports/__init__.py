"""Report writers: results.csv, summary.json, ensembles, excursions, paths."""

from ..utils.exceptions import ReportError
from .base import ReportWriter
from .csv_writers import EnsembleCsvWriter, ExcursionCsvWriter, PathCsvWriter, ResultsCsvWriter
from .json_writer import SummaryJsonWriter

__all__ = [
    "EnsembleCsvWriter",
    "ExcursionCsvWriter",
    "PathCsvWriter",
    "ReportError",
    "ReportWriter",
    "ResultsCsvWriter",
    "SummaryJsonWriter",
]
