"""Experiment report: verdict rows, ensembles and the files they go to."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from ..reports import EnsembleCsvWriter, ExcursionCsvWriter, ResultsCsvWriter, SummaryJsonWriter
from ..stats.checks import TestRow


@dataclass
class Ensemble:
    """Raw values of one functional, with optional importance weights."""
    functional_name: str
    values: np.ndarray
    weights: Optional[np.ndarray] = None


@dataclass
class ExperimentReport:
    """Outcome of one experiment run.

    Attributes:
        experiment: Catalog name
        anchor: Equation or corollary the experiment checks
        model: Model description
        seed: Master seed
        tests: Verdict rows in the order they were produced
        wall_time_s: Wall time of the run
        ensembles: Raw ensembles (written only on request)
        excursions: Excursion tables by construction name
    """
    experiment: str
    anchor: str
    model: Dict[str, Any]
    seed: int
    tests: List[TestRow] = field(default_factory=list)
    wall_time_s: float = 0.0
    ensembles: List[Ensemble] = field(default_factory=list)
    excursions: Dict[str, Dict[str, np.ndarray]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.tests) and all(row.passed for row in self.tests)

    @property
    def failed(self) -> List[TestRow]:
        return [row for row in self.tests if not row.passed]

    def summary(self) -> Dict[str, Any]:
        """Content of summary.json."""
        return {
            'experiment': self.experiment,
            'anchor': self.anchor,
            'model': self.model,
            'seed': self.seed,
            'pass': self.passed,
            'tests': [row.to_dict() for row in self.tests],
            'wall_time_s': self.wall_time_s,
        }

    def write(self, output_dir: Path, write_ensembles: bool = False) -> List[str]:
        """Write results.csv and summary.json; ensembles and excursion tables on request.

        results.csv carries no timing, so identical runs give identical bytes.

        Returns:
            Paths of the written files
        """
        written = [
            ResultsCsvWriter(str(output_dir)).write(self.tests),
            SummaryJsonWriter(str(output_dir)).write(self.summary()),
        ]
        if write_ensembles:
            ensemble_writer = EnsembleCsvWriter(str(output_dir))
            for ensemble in self.ensembles:
                written.append(ensemble_writer.write({
                    'functional_name': ensemble.functional_name,
                    'values': ensemble.values,
                    'weights': ensemble.weights,
                }))
            excursion_writer = ExcursionCsvWriter(str(output_dir))
            for name, table in self.excursions.items():
                written.append(excursion_writer.write(table, name))
        return written
