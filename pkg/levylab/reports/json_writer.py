"""summary.json writer."""

import json
import math
from typing import Any, Mapping

from ..utils.exceptions import ReportError
from .base import ReportWriter


def _jsonable(value: Any) -> Any:
    """Plain JSON types; non-finite floats become null."""
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return int(value)
    try:
        number = float(value)
    except (TypeError, ValueError):
        return str(value)
    return number if math.isfinite(number) else None


class SummaryJsonWriter(ReportWriter):
    """summary.json: experiment, model, seed, verdict, test rows, wall time."""

    filename = 'summary.json'

    def write(self, data: Mapping[str, Any], name: str = '') -> str:
        path = self._get_file_path(name)
        try:
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(_jsonable(data), f, indent=2, sort_keys=False)
                f.write('\n')
        except (OSError, TypeError) as e:
            self.write_stats['errors'] += 1
            raise ReportError(f"Failed to write {path}: {e}")
        self.write_stats['files_written'] += 1
        return str(path)
