"""End-to-end experiment runs."""

from pathlib import Path

import pandas as pd
import pytest

from levylab.experiments import ExperimentConfig, get_experiment, list_experiments, run_experiment
from levylab.utils.config import ConfigManager
from levylab.utils.exceptions import ConfigurationError

CONFIG_DIR = Path(__file__).resolve().parents[2] / 'config'
BM = {"drift": -1.0, "sigma": 1.0, "jumps": []}
JD1 = {"drift": -2.0, "sigma": 1.0, "jumps": [{"rate": 1.0, "beta": 3.0, "sign": 1}]}

pytestmark = pytest.mark.integration


def _config(tmp_path, **fields):
    data = {"model": BM, "seed": 7, "replicates": 100, "step": 0.05, "output": str(tmp_path)}
    data.update(fields)
    return ExperimentConfig.from_dict(data)


class TestCatalog:
    """Test cases for the experiment catalog."""

    def test_every_experiment_has_a_shipped_configuration(self):
        shipped = {ExperimentConfig.from_file(p).experiment
                   for p in (CONFIG_DIR / 'experiments').glob('*.json')}
        assert shipped == {e.name for e in list_experiments()}

    def test_unknown_experiment(self):
        with pytest.raises(ConfigurationError, match="available: .*exp_supremum"):
            get_experiment('nope')


class TestRuns:
    """Test cases for small end-to-end runs."""

    def test_exp_supremum(self, tmp_path):
        config = _config(tmp_path, experiment='exp_supremum', replicates=200, levels=[0.5, 1.0])
        report = run_experiment(config, workers=1)

        assert [row.test_id for row in report.tests] == ['ks_sup_vs_exp', 'sup_gt_y0.5', 'sup_gt_y1']
        assert all(row.ess == 200 for row in report.tests)
        assert report.wall_time_s >= 0.0

        written = report.write(config.output, write_ensembles=True)
        assert {Path(p).name for p in written} == {'results.csv', 'summary.json', 'ensemble_sup.csv'}
        assert len(pd.read_csv(config.output / 'ensemble_sup.csv')) == 200

    def test_results_do_not_depend_on_workers(self, tmp_path):
        """Test that one and two workers write identical results.csv."""
        settings = ConfigManager()
        settings.set("parallel.chunk_size", 32)
        outputs = []
        for workers in (1, 2):
            out = tmp_path / f"w{workers}"
            config = _config(out, experiment='quasi_stationarity', levels=[0.5],
                             params={"resample_replicates": 100})
            run_experiment(config, settings, workers=workers).write(out)
            outputs.append((out / 'results.csv').read_bytes())
        assert outputs[0] == outputs[1]

    def test_height_tail_without_enough_exceedances(self, tmp_path):
        config = _config(tmp_path, experiment='height_tail',
                         model={"drift": -0.25, "sigma": 1.0, "jumps": []})
        report = run_experiment(config, workers=1)

        row = report.tests[-1]
        assert row.test_id == 'tail_slope'
        assert not row.passed
        assert not report.passed
        assert set(report.excursions['two_sided']) >= {'H', 'zeta', 'lambda', 'clock_total'}

    def test_quasi_stationarity_compares_conditioned_sup(self, tmp_path):
        config = _config(tmp_path, experiment='quasi_stationarity', replicates=300, levels=[0.5],
                         params={"resample_replicates": 200})
        ids = [row.test_id for row in run_experiment(config, workers=1).tests]
        assert ids == ['sup_gt_y0.5', 'reshift_overshoot_y0.5', 'reshift_undershoot_y0.5',
                       'conditioned_sup_y0.5']

    def test_q_peak_has_its_own_tolerance(self, tmp_path):
        """Test that the 𝒬 peak rows ignore the shared tolerance."""
        config = _config(tmp_path, experiment='q_shift_at_entrance', replicates=200, levels=[0.5],
                         model=JD1, params={"tolerance": 0.9})
        rows = {row.test_id: row for row in run_experiment(config, workers=1).tests}

        assert rows['entrance_overshoot_vs_rho'].threshold == 0.9
        assert set(rows) >= {'peak_vs_exp', 'peak_memoryless_y0.5'}
        assert rows['peak_vs_exp'].threshold < 0.9

    def test_debt_time_needs_effective_size(self, tmp_path):
        """Test that a small importance sample fails the effective-size row."""
        config = _config(tmp_path, experiment='debt_time', x_ladder=[-3.0])
        report = run_experiment(config, workers=1)

        row = next(r for r in report.tests if r.test_id == 'effective_n_x-3')
        assert row.statistic <= 100.0 + 1e-6
        assert row.threshold == 5000
        assert not row.passed
        assert not report.passed

    def test_reversal_pre_max_checks_reversed_value(self, tmp_path):
        config = _config(tmp_path, experiment='reversal_pre_max', replicates=200,
                         params={"reversal_time": 0.25})
        ids = [row.test_id for row in run_experiment(config, workers=1).tests]
        assert ids == ['sigma_vs_last_passage', 'reversed_pre_max_vs_eta_up_t0.25']


@pytest.mark.slow
@pytest.mark.parametrize("path", sorted((CONFIG_DIR / 'experiments').glob('*.json')),
                         ids=lambda p: p.stem)
def test_shipped_experiment_passes(path, tmp_path):
    """Acceptance run of a shipped configuration at full size."""
    config = ExperimentConfig.from_file(path)
    report = run_experiment(config)
    report.write(tmp_path)
    assert report.passed, [row.to_dict() for row in report.failed]
