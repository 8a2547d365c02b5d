"""Error analysis of decode-and-forward cooperative NOMA over Nakagami-m fading."""

__version__ = "0.1.0"

from .estimator import CooperativeNomaBER
from .link_sim import SimResult, simulate, simulate_curve
from .noma_analysis import (
    FadingParam,
    PowerSplit,
    SystemConfig,
    User,
    avg_bep,
    bep_dest_far,
    bep_dest_near,
    bep_relay_far,
    bep_relay_near,
    e2e_bep,
    user_e2e,
)
from .oracle import avg_by_quadrature

__all__ = [
    "CooperativeNomaBER",
    "FadingParam",
    "PowerSplit",
    "SimResult",
    "SystemConfig",
    "User",
    "avg_bep",
    "avg_by_quadrature",
    "bep_dest_far",
    "bep_dest_near",
    "bep_relay_far",
    "bep_relay_near",
    "e2e_bep",
    "simulate",
    "simulate_curve",
    "user_e2e",
]
