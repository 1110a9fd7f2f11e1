"""Tests for CLI interface."""

import json
import logging
import tempfile
from pathlib import Path

import pandas as pd
import pytest
import yaml
from click.testing import CliRunner

from levylab import __version__
from levylab.cli import cli

CONFIG_DIR = Path(__file__).resolve().parents[1] / 'config'
BM = {"drift": -1.0, "sigma": 1.0, "jumps": []}


class TestCLI:
    """Test cases for CLI interface."""

    @pytest.fixture
    def runner(self):
        """Create CLI runner."""
        return CliRunner()

    @pytest.fixture
    def temp_output_dir(self):
        """Create temporary output directory."""
        with tempfile.TemporaryDirectory() as tmpdir:
            yield tmpdir

    def _write_json(self, directory, name, data):
        path = Path(directory) / name
        path.write_text(json.dumps(data))
        return str(path)

    def test_cli_help(self, runner):
        """Test CLI help command."""
        result = runner.invoke(cli, ['--help'])

        assert result.exit_code == 0
        assert "levylab" in result.output
        for command in ('run', 'list', 'validate', 'simulate', 'version'):
            assert command in result.output

    def test_version(self, runner):
        result = runner.invoke(cli, ['version'])
        assert result.exit_code == 0
        assert f"levylab version {__version__}" in result.output

    def test_list_json(self, runner):
        """Test the catalog listing as JSON."""
        result = runner.invoke(cli, ['list', '--format', 'json'])

        assert result.exit_code == 0
        entries = json.loads(result.output)
        names = [e['name'] for e in entries]
        assert names == sorted(names)
        assert 'exp_supremum' in names
        assert 'williams_decomposition' in names
        assert all(e['claim'] and e['anchor'] for e in entries)

    def test_list_yaml_and_table(self, runner):
        result = runner.invoke(cli, ['list', '--format', 'yaml'])
        assert result.exit_code == 0
        assert any(e['name'] == 'debt_time' for e in yaml.safe_load(result.output))

        result = runner.invoke(cli, ['list'])
        assert result.exit_code == 0
        assert 'exp_supremum' in result.output

    def test_validate_brownian(self, runner):
        """Test validation of the reference Brownian model."""
        result = runner.invoke(cli, ['validate', '--model', str(CONFIG_DIR / 'models' / 'bm.json')])

        assert result.exit_code == 0
        assert "satisfies the Cramér condition" in result.output
        assert "θ = 2" in result.output
        assert "Φ(1) of the dual = 2.732050808" in result.output

    def test_validate_jump_diffusion(self, runner):
        result = runner.invoke(cli, ['validate', '--model', str(CONFIG_DIR / 'models' / 'jd1.json')])
        assert result.exit_code == 0
        assert "tilted mean = 3" in result.output

    def test_validate_drift_error(self, runner, temp_output_dir):
        """Test that a model drifting upwards is rejected with exit code 2."""
        model = self._write_json(temp_output_dir, 'up.json', {"drift": 1.0, "sigma": 1.0, "jumps": []})
        result = runner.invoke(cli, ['validate', '--model', model])

        assert result.exit_code == 2
        assert "DriftError" in result.output

    def test_simulate_fixed_horizon(self, runner, temp_output_dir):
        out = Path(temp_output_dir) / 'paths' / 'bm.csv'
        result = runner.invoke(cli, ['simulate', '--model', str(CONFIG_DIR / 'models' / 'bm.json'),
                                     '--horizon', '1', '--step', '0.1', '--seed', '3',
                                     '--out', str(out)])
        assert result.exit_code == 0
        frame = pd.read_csv(out)
        assert list(frame.columns) == ['time', 'value', 'is_jump', 'bridge_max']
        assert len(frame) == 11
        assert frame['time'].iloc[-1] == pytest.approx(1.0)

    def test_simulate_is_reproducible(self, runner, temp_output_dir):
        outputs = []
        for name in ('a.csv', 'b.csv'):
            out = Path(temp_output_dir) / name
            runner.invoke(cli, ['simulate', '--model', str(CONFIG_DIR / 'models' / 'jd1.json'),
                                '--adaptive', '--step', '0.05', '--out', str(out)])
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_simulate_needs_one_horizon(self, runner, temp_output_dir):
        model = str(CONFIG_DIR / 'models' / 'bm.json')
        out = str(Path(temp_output_dir) / 'x.csv')
        for extra in ([], ['--horizon', '1', '--adaptive']):
            result = runner.invoke(cli, ['simulate', '--model', model, '--out', out, *extra])
            assert result.exit_code == 2
            assert "exactly one" in result.output

    def test_run_unknown_experiment(self, runner, temp_output_dir):
        """Test that an unknown experiment exits 2 and lists the catalog."""
        config = self._write_json(temp_output_dir, 'cfg.json', {
            "experiment": "no_such_experiment", "model": BM, "seed": 1, "replicates": 100})
        result = runner.invoke(cli, ['run', '--config', config])

        assert result.exit_code == 2
        assert "no_such_experiment" in result.output
        assert "exp_supremum" in result.output

    def test_run_bad_configuration(self, runner, temp_output_dir):
        config = self._write_json(temp_output_dir, 'cfg.json', {
            "experiment": "exp_supremum", "model": BM, "seed": 1, "replicates": 5})
        result = runner.invoke(cli, ['run', '--config', config])
        assert result.exit_code == 2
        assert "replicates" in result.output

    def test_run_bad_workers(self, runner, temp_output_dir):
        config = self._write_json(temp_output_dir, 'cfg.json', {
            "experiment": "exp_supremum", "model": BM, "seed": 1, "replicates": 100})
        result = runner.invoke(cli, ['run', '--config', config, '--workers', '0'])
        assert result.exit_code == 2

    def test_run_small_experiment(self, runner, temp_output_dir):
        """Test a small end-to-end run writes its reports."""
        config = self._write_json(temp_output_dir, 'cfg.json', {
            "experiment": "exp_supremum", "model": BM, "seed": 11, "replicates": 200,
            "step": 0.05, "levels": [0.5]})
        output = Path(temp_output_dir) / 'out'
        result = runner.invoke(cli, ['run', '--config', config, '--output', str(output),
                                     '--workers', '1', '--no-progress'])

        assert result.exit_code in (0, 1), result.output
        assert "Wrote 2 files" in result.output
        frame = pd.read_csv(output / 'results.csv', dtype={'pass': str})
        assert list(frame['test_id']) == ['ks_sup_vs_exp', 'sup_gt_y0.5']
        summary = json.loads((output / 'summary.json').read_text())
        assert summary['experiment'] == 'exp_supremum'
        assert summary['pass'] == (result.exit_code == 0)

    def test_run_wrong_model_for_experiment(self, runner, temp_output_dir):
        config = self._write_json(temp_output_dir, 'cfg.json', {
            "experiment": "exp_supremum", "seed": 1, "replicates": 100,
            "model": json.loads((CONFIG_DIR / 'models' / 'jd1.json').read_text())})
        result = runner.invoke(cli, ['run', '--config', config, '--workers', '1'])
        assert result.exit_code == 2
        assert "positive jumps" in result.output

    def test_run_output_is_a_file(self, runner, temp_output_dir):
        """Test that an output path naming a file is a configuration error."""
        config = self._write_json(temp_output_dir, 'cfg.json', {
            "experiment": "exp_supremum", "model": BM, "seed": 1, "replicates": 100})
        taken = Path(temp_output_dir) / 'taken'
        taken.write_text('x')
        result = runner.invoke(cli, ['run', '--config', config, '--output', str(taken),
                                     '--workers', '1'])

        assert result.exit_code == 2
        assert "not a directory" in result.output
        assert taken.read_text() == 'x'

    def test_simulate_output_parent_is_a_file(self, runner, temp_output_dir):
        taken = Path(temp_output_dir) / 'taken'
        taken.write_text('x')
        result = runner.invoke(cli, ['simulate', '--model', str(CONFIG_DIR / 'models' / 'bm.json'),
                                     '--horizon', '1', '--out', str(taken / 'path.csv')])
        assert result.exit_code == 2

    def test_invalid_settings_file(self, runner, temp_output_dir):
        """Test that settings are validated before any command runs."""
        settings = Path(temp_output_dir) / 'settings.yaml'
        settings.write_text(yaml.safe_dump({'stats': {'null_quantile': 2.0},
                                            'simulation': {'step': -0.5}}))
        result = runner.invoke(cli, ['--config-file', str(settings), 'validate',
                                     '--model', str(CONFIG_DIR / 'models' / 'bm.json')])

        assert result.exit_code == 2
        assert "satisfies" not in result.output

    def test_log_level_from_settings_file(self, runner, temp_output_dir):
        settings = Path(temp_output_dir) / 'settings.yaml'
        settings.write_text(yaml.safe_dump({'defaults': {'log_level': 'ERROR'}}))
        root = logging.getLogger()
        level = root.level
        try:
            result = runner.invoke(cli, ['--config-file', str(settings), 'version'])
            assert result.exit_code == 0
            assert root.level == logging.ERROR
        finally:
            root.setLevel(level)
