"""Lamperti transform and self-similar excursions."""

from .clock import LampertiClock, lamperti_clock
from .excursions import Excursion, excursion_from_two_sided, excursion_williams

__all__ = [
    "Excursion",
    "LampertiClock",
    "excursion_from_two_sided",
    "excursion_williams",
    "lamperti_clock",
]
