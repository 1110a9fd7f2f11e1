"""Samplers for the conditioned and two-sided limit laws."""

from .conditioned import Horizons, fit_horizon, sample_P_down, sample_Ptilde_up, sample_Ptilde_up_from
from .importance import (
    CramerEstimate,
    WeightedPath,
    acceptance_frequency,
    cramer_estimate,
    sample_conditioned_IS,
    sample_conditioned_rejection,
)
from .overshoot import OvershootPair, cramer_constants_from, estimate_cramer_constants, sample_rho, sample_rho_tilde
from .two_sided import sample_script_P, sample_script_Q

__all__ = [
    "CramerEstimate",
    "Horizons",
    "OvershootPair",
    "WeightedPath",
    "acceptance_frequency",
    "cramer_constants_from",
    "cramer_estimate",
    "estimate_cramer_constants",
    "fit_horizon",
    "sample_P_down",
    "sample_Ptilde_up",
    "sample_Ptilde_up_from",
    "sample_conditioned_IS",
    "sample_conditioned_rejection",
    "sample_rho",
    "sample_rho_tilde",
    "sample_script_P",
    "sample_script_Q",
]
