"""Grid checks of the closed forms: quadrature agreement and branch consistency.

Shared by ``coopnoma validate`` and the test-suite.
"""

import itertools
import math
from dataclasses import dataclass

from .noma_analysis import (
    FadingParam,
    PowerSplit,
    SystemConfig,
    WeightedQSum,
    avg_bep,
    db_to_linear,
    far_coeffs,
    near_coeffs,
)
from .oracle import avg_by_quadrature

__all__ = ["Grid", "Check", "FORMULAS", "closed_form_vs_quadrature", "branch_consistency"]

INTEGER_TOL = 1e-8
NONINTEGER_TOL = 1e-6
BRANCH_TOL = 1e-9


@dataclass(frozen=True)
class Grid:
    m: tuple = (0.5, 1.0, 1.5, 2.0, 3.0)
    rho_db: tuple = (0.0, 10.0, 20.0, 30.0)
    omega_db: tuple = (0.0, 10.0)
    weak_share: tuple = (0.1, 0.2, 0.3)

    def __post_init__(self):
        for name in ("m", "rho_db", "omega_db", "weak_share"):
            if not getattr(self, name):
                raise ValueError(f"grid axis {name!r} is empty")

    def configs(self):
        """One config per grid point, every link and both hops sharing the point."""
        for m, rho_db, omega_db, ws in itertools.product(
            self.m, self.rho_db, self.omega_db, self.weak_share
        ):
            fading = FadingParam(m, db_to_linear(omega_db))
            rho = db_to_linear(rho_db)
            split = PowerSplit(ws)
            yield (m, rho_db, omega_db, ws), SystemConfig(
                split, split, rho, rho, fading, fading, fading
            )


# name -> (coefficient builder, split attr, SNR attr, link attr)
FORMULAS = {
    "relay_far": (far_coeffs, "alpha", "rho_s", "sr"),
    "relay_near": (near_coeffs, "alpha", "rho_s", "sr"),
    "dest_far": (far_coeffs, "beta", "rho_r", "r2"),
    "dest_near": (near_coeffs, "beta", "rho_r", "r1"),
}


@dataclass(frozen=True)
class Check:
    kind: str
    formula: str
    point: tuple
    value: float
    reference: float
    tol: float

    @property
    def error(self):
        return abs(self.value - self.reference)

    @property
    def passed(self):
        return self.error <= self.tol

    def line(self):
        m, rho_db, omega_db, ws = self.point
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.kind} {self.formula} m={m:g} rho_db={rho_db:g} "
            f"omega_db={omega_db:g} weak_share={ws:g} |diff|={self.error:.3e} tol={self.tol:.0e}"
        )


def _perturbed(wqs, perturb):
    if not perturb:
        return wqs
    return WeightedQSum(wqs.weights, tuple(c * (1.0 + perturb) for c in wqs.coeffs))


def _is_integer(m):
    return abs(m - round(m)) < 1e-9


def closed_form_vs_quadrature(grid=Grid(), *, perturb=0.0):
    """Every closed-form hop BEP against the quadrature oracle.

    ``perturb`` scales the closed-form coefficients by ``1 + perturb``; it
    exists so the harness can be shown to catch coefficient errors.
    """
    checks = []
    for point, cfg in grid.configs():
        tol = INTEGER_TOL if _is_integer(point[0]) else NONINTEGER_TOL
        for name, (builder, split, rho, link) in FORMULAS.items():
            wqs = builder(getattr(cfg, split))
            rho_v, fading = getattr(cfg, rho), getattr(cfg, link)
            closed = avg_bep(_perturbed(wqs, perturb), rho_v, fading)
            reference = avg_by_quadrature(wqs, rho_v, fading)
            checks.append(Check("quadrature", name, point, closed, reference, tol))
    return checks


def branch_consistency(grid=Grid()):
    """Binomial vs hypergeometric evaluation at the integer ``m`` of the grid."""
    checks = []
    for point, cfg in grid.configs():
        if not _is_integer(point[0]):
            continue
        for name, (builder, split, rho, link) in FORMULAS.items():
            args = builder(getattr(cfg, split)), getattr(cfg, rho), getattr(cfg, link)
            binomial = avg_bep(*args, branch="binomial")
            hyper = avg_bep(*args, branch="hypergeometric")
            checks.append(Check("branch", name, point, hyper, binomial, BRANCH_TOL))
    return checks


def all_passed(checks):
    return all(c.passed for c in checks) and not any(math.isnan(c.value) for c in checks)
