"""Report writer base class."""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd

from ..utils.exceptions import ReportError

FLOAT_FORMAT = '%.10g'


class ReportWriter(ABC):
    """Base class for report writers.

    Subclasses name their file and turn their input into a table or a
    document; the base class owns the output directory and the statistics.
    """

    filename: str = 'report'

    def __init__(self, output_dir: str, filename: Optional[str] = None):
        """Initialize report writer.

        Args:
            output_dir: Output directory for report files
            filename: Overrides the default file name
        """
        if filename:
            self.filename = filename
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

        self.write_stats = {
            'files_written': 0,
            'rows_written': 0,
            'errors': 0,
        }

    @abstractmethod
    def write(self, data: Any, name: str = '') -> str:
        """Write ``data`` and return the path of the written file.

        Raises:
            ReportError: If writing fails
        """

    def _get_file_path(self, name: str = '') -> Path:
        stem, dot, suffix = self.filename.partition('.')
        return self.output_dir / (f"{stem}_{name}{dot}{suffix}" if name else self.filename)

    def _write_frame(self, frame: pd.DataFrame, name: str = '') -> str:
        """Write a table with a fixed float format, so equal inputs give equal bytes."""
        path = self._get_file_path(name)
        try:
            frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep='nan', lineterminator='\n')
        except OSError as e:
            self.write_stats['errors'] += 1
            raise ReportError(f"Failed to write {path}: {e}")
        self.write_stats['files_written'] += 1
        self.write_stats['rows_written'] += len(frame)
        return str(path)

    def get_write_stats(self) -> Dict[str, int]:
        """Get writer statistics."""
        return dict(self.write_stats)
