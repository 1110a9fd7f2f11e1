"""CSV report writers built on pandas."""

from typing import Any, Mapping, Sequence

import numpy as np
import pandas as pd

from ..paths.grid import PathGrid
from ..stats.checks import TestRow
from ..utils.exceptions import ReportError
from .base import ReportWriter

RESULT_COLUMNS = ['test_id', 'statistic', 'threshold', 'ess', 'pass']
ENSEMBLE_COLUMNS = ['replicate', 'functional_name', 'value', 'weight']
EXCURSION_COLUMNS = ['replicate', 'H', 'zeta', 'lambda', 'clock_total']
PATH_COLUMNS = ['time', 'value', 'is_jump', 'bridge_max']


class ResultsCsvWriter(ReportWriter):
    """results.csv: one verdict row per test."""

    filename = 'results.csv'

    def write(self, data: Sequence[TestRow], name: str = '') -> str:
        frame = pd.DataFrame([row.to_dict() for row in data], columns=RESULT_COLUMNS)
        frame['pass'] = frame['pass'].map({True: 'true', False: 'false'})
        return self._write_frame(frame, name)


class EnsembleCsvWriter(ReportWriter):
    """Raw ensemble of one functional, with importance weights."""

    filename = 'ensemble.csv'

    def write(self, data: Mapping[str, Any], name: str = '') -> str:
        """Args:
            data: ``{'functional_name', 'values', 'weights' (optional)}``
            name: File name suffix
        """
        values = np.asarray(data['values'], dtype=float)
        weights = data.get('weights')
        weights = np.ones_like(values) if weights is None else np.asarray(weights, dtype=float)
        if weights.shape != values.shape:
            raise ReportError("ensemble values and weights differ in length")
        frame = pd.DataFrame({
            'replicate': np.arange(values.size),
            'functional_name': data['functional_name'],
            'value': values,
            'weight': weights,
        }, columns=ENSEMBLE_COLUMNS)
        return self._write_frame(frame, name or str(data['functional_name']))


class ExcursionCsvWriter(ReportWriter):
    """Excursion ensemble: height, duration, time of the maximum, clock."""

    filename = 'excursions.csv'

    def write(self, data: Mapping[str, np.ndarray], name: str = '') -> str:
        missing = set(EXCURSION_COLUMNS[1:]) - set(data)
        if missing:
            raise ReportError(f"excursion columns missing: {sorted(missing)}")
        n = len(data['H'])
        frame = pd.DataFrame({'replicate': np.arange(n),
                              **{c: np.asarray(data[c], dtype=float) for c in EXCURSION_COLUMNS[1:]}},
                             columns=EXCURSION_COLUMNS)
        return self._write_frame(frame, name)


class PathCsvWriter(ReportWriter):
    """One path: grid times, values, jump flags and bridge maxima.

    ``bridge_max`` on a row is the maximum over the interval ending there;
    the first row has none.
    """

    filename = 'path.csv'

    def write(self, data: PathGrid, name: str = '') -> str:
        bridge = np.r_[np.nan, data.bridge_max] if data.n_points > 0 else data.bridge_max
        frame = pd.DataFrame({
            'time': data.times,
            'value': data.values,
            'is_jump': data.is_jump.astype(int),
            'bridge_max': bridge,
        }, columns=PATH_COLUMNS)
        return self._write_frame(frame, name)
