"""Shared fixtures: the reference models."""

import pytest

from levylab.models import LevyModel, validate_model
from levylab.models.levy_model import JumpSpec
from levylab.paths import SimulationSettings


@pytest.fixture
def bm():
    """BM(−1, 1): θ = 2, C = 1, self-dual."""
    return validate_model(LevyModel.brownian(-1.0, 1.0))


@pytest.fixture
def jd1():
    """JD1: drift −2, sigma 1, upward Exp(3) jumps at rate 1; θ = 2."""
    return validate_model(LevyModel(-2.0, 1.0, (JumpSpec(1.0, 3.0, 1),)))


@pytest.fixture
def coarse():
    """Coarse grid for fast statistical unit tests."""
    return SimulationSettings(step=0.02)
