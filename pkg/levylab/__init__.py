"""levylab - Lévy processes conditioned by the Cramér condition: simulation and verification."""

__version__ = "0.1.0"
__author__ = "levylab contributors"
__description__ = "Exact samplers and Monte Carlo checks for Lévy processes drifting to −∞"

from .cli import main

__all__ = ["main", "__version__"]
