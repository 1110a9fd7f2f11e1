"""Validation utilities for levylab."""

import math
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, Union

from .exceptions import ValidationError


class Validators:
    """Input validation utilities."""

    MODEL_KEYS = {'drift', 'sigma', 'jumps'}
    JUMP_KEYS = {'rate', 'beta', 'sign'}
    MIN_REPLICATES = 100
    MAX_SEED = 2 ** 64 - 1

    @staticmethod
    def validate_real(value: Any, field: str) -> float:
        """Validate a finite real number.

        Args:
            value: Candidate value
            field: Field name used in the error message

        Returns:
            The value as float

        Raises:
            ValidationError: If value is not a finite number
        """
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"{field}: expected a number, got {value!r}")
        if not math.isfinite(value):
            raise ValidationError(f"{field}: must be finite, got {value!r}")
        return float(value)

    @staticmethod
    def validate_positive(value: Any, field: str) -> float:
        """Validate a finite real number > 0."""
        value = Validators.validate_real(value, field)
        if value <= 0:
            raise ValidationError(f"{field}: must be positive, got {value}")
        return value

    @staticmethod
    def validate_model_description(data: Any) -> None:
        """Validate the shape of a model JSON object.

        Only the structure is checked here; the probabilistic assumptions
        are checked by ``levylab.models.validate_model``.

        Raises:
            ValidationError: If a key is missing, unknown or mistyped
        """
        if not isinstance(data, Mapping):
            raise ValidationError("model: expected a JSON object")

        unknown = set(data) - Validators.MODEL_KEYS
        if unknown:
            raise ValidationError(f"model: unknown keys {sorted(unknown)}")
        for key in ('drift', 'sigma'):
            if key not in data:
                raise ValidationError(f"model.{key}: missing")
            Validators.validate_real(data[key], f"model.{key}")

        jumps = data.get('jumps', [])
        if not isinstance(jumps, Sequence) or isinstance(jumps, (str, bytes)):
            raise ValidationError("model.jumps: expected a list")
        for i, jump in enumerate(jumps):
            field = f"model.jumps[{i}]"
            if not isinstance(jump, Mapping):
                raise ValidationError(f"{field}: expected an object")
            missing = Validators.JUMP_KEYS - set(jump)
            if missing:
                raise ValidationError(f"{field}: missing keys {sorted(missing)}")
            unknown = set(jump) - Validators.JUMP_KEYS
            if unknown:
                raise ValidationError(f"{field}: unknown keys {sorted(unknown)}")
            rate = Validators.validate_real(jump['rate'], f"{field}.rate")
            if rate < 0:
                raise ValidationError(f"{field}.rate: must be >= 0, got {rate}")
            Validators.validate_positive(jump['beta'], f"{field}.beta")
            if jump['sign'] not in (1, -1) or isinstance(jump['sign'], bool):
                raise ValidationError(f"{field}.sign: must be +1 or -1, got {jump['sign']!r}")

    @staticmethod
    def validate_seed(seed: Any) -> int:
        """Validate a 64-bit non-negative seed."""
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ValidationError(f"seed: expected an integer, got {seed!r}")
        if not 0 <= seed <= Validators.MAX_SEED:
            raise ValidationError(f"seed: must lie in [0, 2**64), got {seed}")
        return seed

    @staticmethod
    def validate_replicates(replicates: Any) -> int:
        """Validate the replicate count."""
        if isinstance(replicates, bool) or not isinstance(replicates, int):
            raise ValidationError(f"replicates: expected an integer, got {replicates!r}")
        if replicates < Validators.MIN_REPLICATES:
            raise ValidationError(
                f"replicates: must be at least {Validators.MIN_REPLICATES}, got {replicates}")
        return replicates

    @staticmethod
    def validate_x_ladder(x_ladder: Iterable[Any]) -> tuple:
        """Validate a ladder of negative, strictly decreasing start levels."""
        values = tuple(Validators.validate_real(x, "x_ladder") for x in x_ladder)
        for x in values:
            if x >= 0:
                raise ValidationError(f"x_ladder: start levels must be negative, got {x}")
        for a, b in zip(values, values[1:]):
            if not b < a:
                raise ValidationError("x_ladder: must be strictly decreasing")
        return values

    @staticmethod
    def validate_output_directory(path: Union[str, Path]) -> Path:
        """Validate and create the output directory.

        Raises:
            ValidationError: If the directory cannot be created
        """
        path = Path(path)
        if path.exists() and not path.is_dir():
            raise ValidationError(f"output: not a directory: {path}")
        try:
            path.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ValidationError(f"output: cannot create directory {path}: {e}")
        return path

    @staticmethod
    def validate_file_path(file_path: Union[str, Path]) -> Path:
        """Validate that a file exists."""
        path = Path(file_path)
        if not path.exists():
            raise ValidationError(f"File does not exist: {path}")
        if not path.is_file():
            raise ValidationError(f"Path is not a file: {path}")
        return path
