"""Tests for Lamperti clocks and excursions."""

import math

import numpy as np
import pytest

from levylab.lamperti import Excursion, excursion_from_two_sided, excursion_williams, lamperti_clock
from levylab.paths import PathGrid
from levylab.utils.exceptions import LampertiError, ValidationError
from levylab.utils.random_streams import substream

H = 0.01


def _riemann(h, t):
    """Left Riemann sum of ∫_0^t e^{−s} ds on a grid of spacing h."""
    return h * (1.0 - math.exp(-t)) / (1.0 - math.exp(-h))


@pytest.fixture
def descent():
    return PathGrid.piecewise_linear([0.0, 20.0], [0.0, -20.0], step=H)


class TestLampertiClock:
    """Test cases for exponential functionals."""

    def test_total_of_linear_descent(self, descent):
        clock = lamperti_clock(descent)
        assert clock.total == pytest.approx(_riemann(H, 20.0), rel=1e-6)
        assert clock.total == pytest.approx(1.0, abs=H)

    def test_clock_and_inverse(self, descent):
        clock = lamperti_clock(descent)
        assert clock.clock(1.0) == pytest.approx(_riemann(H, 1.0), rel=1e-6)
        assert clock.inverse(0.5) == pytest.approx(-math.log(0.5), abs=2 * H)
        np.testing.assert_allclose(clock.inverse(clock.clock(np.array([0.5, 2.0]))), [0.5, 2.0])

    def test_negative_sign(self):
        path = PathGrid.piecewise_linear([0.0, 1.0], [0.0, -1.0], step=H)
        clock = lamperti_clock(path, sign=-1)
        assert clock.sign == -1
        assert clock.total == pytest.approx(math.e - 1.0, rel=H)

    def test_overflow(self):
        path = PathGrid.piecewise_linear([0.0, 1.0], [1000.0, 1000.0])
        with pytest.raises(LampertiError):
            lamperti_clock(path)

    def test_single_point(self):
        path = PathGrid(np.zeros(1), np.zeros(1), np.zeros(1), np.zeros(0), np.zeros(0))
        with pytest.raises(LampertiError):
            lamperti_clock(path)

    def test_bad_sign(self, descent):
        with pytest.raises(ValidationError):
            lamperti_clock(descent, sign=2)


class TestExcursions:
    """Test cases for both excursion constructions."""

    def test_image_of_tent(self):
        tent = PathGrid.piecewise_linear([0.0, 1.0, 4.0], [0.0, 1.0, -2.0], step=H)
        excursion = excursion_from_two_sided(tent)
        assert excursion.height == pytest.approx(math.e)
        assert excursion.values.max() == pytest.approx(excursion.height)
        assert excursion.duration == pytest.approx(excursion.clocks['I_bar'])
        assert 0.0 < excursion.argmax < excursion.duration
        assert excursion.times[0] == 0.0
        assert excursion.times[-1] == pytest.approx(excursion.duration)

    def test_scaling(self):
        tent = PathGrid.piecewise_linear([0.0, 1.0, 4.0], [0.0, 1.0, -2.0], step=H)
        excursion = excursion_from_two_sided(tent)
        scaled = excursion.scaled(2.0)
        assert scaled.height == pytest.approx(2.0 * excursion.height)
        assert scaled.duration == pytest.approx(2.0 * excursion.duration)
        assert scaled.argmax == pytest.approx(2.0 * excursion.argmax)
        with pytest.raises(ValidationError):
            excursion.scaled(0.0)

    def test_values_must_be_positive(self):
        with pytest.raises(ValidationError):
            Excursion(np.array([0.0, 1.0]), np.array([1.0, 0.0]), 1.0, 1.0, 0.0, 1.0)

    def test_williams_height_is_exact(self, bm, coarse):
        for i in range(5):
            excursion = excursion_williams(bm, 2.0, substream(1, "williams", i), coarse)
            assert excursion.height == 2.0
            assert excursion.values.max() == pytest.approx(2.0)
            assert excursion.argmax == pytest.approx(2.0 * excursion.clocks['I_tilde_up'])
            assert excursion.duration == pytest.approx(2.0 * excursion.clock_total)
            assert np.all(np.diff(excursion.times) > 0)
            assert excursion.times[0] == pytest.approx(0.0)

    def test_williams_endpoints_are_small(self, bm, coarse):
        bound = math.exp(-coarse.margin(bm.theta))
        excursion = excursion_williams(bm, 1.0, substream(2, "williams", 0), coarse)
        start, end = excursion.endpoint_values
        assert start <= bound * (1 + 1e-9)
        assert end <= bound * (1 + 1e-9)

    @pytest.mark.parametrize("y", [0.0, -1.0, math.inf])
    def test_williams_height_must_be_positive(self, bm, y):
        with pytest.raises(ValidationError):
            excursion_williams(bm, y, substream(0, "williams", 0))
