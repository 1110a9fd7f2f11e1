"""Tests for report writers and experiment reports."""

import json
import math
import tempfile
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from levylab.experiments import Ensemble, ExperimentReport
from levylab.paths import PathGrid
from levylab.reports import (
    EnsembleCsvWriter,
    ExcursionCsvWriter,
    PathCsvWriter,
    ReportError,
    ResultsCsvWriter,
    SummaryJsonWriter,
)
from levylab.stats import at_most


@pytest.fixture
def temp_output_dir():
    """Create temporary output directory."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield tmpdir


@pytest.fixture
def rows():
    return [at_most("ks/sup", 0.01, 0.02, ess=1000), at_most("ks/sigma", 0.03, 0.02, ess=1000)]


class TestWriters:
    """Test cases for the individual writers."""

    def test_results_csv(self, temp_output_dir, rows):
        writer = ResultsCsvWriter(temp_output_dir)
        path = writer.write(rows)
        assert Path(path).name == 'results.csv'
        frame = pd.read_csv(path, dtype={'pass': str})
        assert list(frame.columns) == ['test_id', 'statistic', 'threshold', 'ess', 'pass']
        assert list(frame['pass']) == ['true', 'false']
        assert writer.get_write_stats() == {'files_written': 1, 'rows_written': 2, 'errors': 0}

    def test_results_csv_is_reproducible(self, temp_output_dir, rows):
        first = Path(ResultsCsvWriter(temp_output_dir, filename='a.csv').write(rows)).read_bytes()
        second = Path(ResultsCsvWriter(temp_output_dir, filename='b.csv').write(rows)).read_bytes()
        assert first == second

    def test_ensemble_csv(self, temp_output_dir):
        path = EnsembleCsvWriter(temp_output_dir).write(
            {'functional_name': 'sup', 'values': [1.0, 2.0], 'weights': [0.5, 1.0]})
        assert Path(path).name == 'ensemble_sup.csv'
        frame = pd.read_csv(path)
        assert list(frame['weight']) == [0.5, 1.0]
        assert list(frame['replicate']) == [0, 1]

    def test_ensemble_length_mismatch(self, temp_output_dir):
        with pytest.raises(ReportError):
            EnsembleCsvWriter(temp_output_dir).write(
                {'functional_name': 'sup', 'values': [1.0, 2.0], 'weights': [1.0]})

    def test_excursion_csv(self, temp_output_dir):
        table = {'H': np.array([2.0]), 'zeta': np.array([3.0]), 'lambda': np.array([1.0]),
                 'clock_total': np.array([1.5])}
        path = ExcursionCsvWriter(temp_output_dir).write(table, 'williams')
        assert Path(path).name == 'excursions_williams.csv'
        assert pd.read_csv(path)['zeta'].iloc[0] == 3.0
        with pytest.raises(ReportError, match="clock_total"):
            ExcursionCsvWriter(temp_output_dir).write({'H': [1.0], 'zeta': [1.0], 'lambda': [0.5]})

    def test_path_csv(self, temp_output_dir):
        tent = PathGrid.piecewise_linear([0.0, 1.0, 4.0], [0.0, 1.0, -2.0])
        frame = pd.read_csv(PathCsvWriter(temp_output_dir).write(tent))
        assert list(frame['time']) == [0.0, 1.0, 4.0]
        assert list(frame['is_jump']) == [0, 0, 0]
        assert math.isnan(frame['bridge_max'].iloc[0])
        assert frame['bridge_max'].iloc[1] == 1.0

    def test_summary_json_nulls_non_finite(self, temp_output_dir):
        path = SummaryJsonWriter(temp_output_dir).write({'value': math.nan, 'n': np.int64(3),
                                                         'x': np.float64(0.5), 'ok': True})
        data = json.loads(Path(path).read_text())
        assert data == {'value': None, 'n': 3, 'x': 0.5, 'ok': True}


class TestExperimentReport:
    """Test cases for the experiment report."""

    def _report(self, rows):
        return ExperimentReport(
            experiment='exp_supremum', anchor='Eq. (4)',
            model={'drift': -1.0, 'sigma': 1.0, 'jumps': []}, seed=7, tests=rows,
            ensembles=[Ensemble('sup', np.array([0.1, 0.2]))],
            excursions={'williams': {'H': np.ones(2), 'zeta': np.ones(2),
                                     'lambda': np.ones(2), 'clock_total': np.ones(2)}},
        )

    def test_verdict(self, rows):
        report = self._report(rows)
        assert not report.passed
        assert [row.test_id for row in report.failed] == ['ks/sigma']
        assert self._report(rows[:1]).passed
        assert not self._report([]).passed

    def test_summary(self, rows):
        summary = self._report(rows).summary()
        assert summary['pass'] is False
        assert summary['tests'][0]['pass'] is True
        assert summary['seed'] == 7

    def test_write(self, temp_output_dir, rows):
        report = self._report(rows)
        names = sorted(Path(p).name for p in report.write(Path(temp_output_dir)))
        assert names == ['results.csv', 'summary.json']
        names = sorted(Path(p).name for p in report.write(Path(temp_output_dir), write_ensembles=True))
        assert names == ['ensemble_sup.csv', 'excursions_williams.csv', 'results.csv', 'summary.json']
