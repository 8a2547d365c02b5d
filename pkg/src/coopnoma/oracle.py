"""Numerical-integration oracle for the fading-averaged error probabilities.

Integrates a conditional BEP against the Gamma density of the channel power
directly, so it shares nothing with the closed forms except ``cond_bep``.
The semi-infinite range is split at ``g0 = omega / 1000``:

* ``[0, g0]`` with ``gamma = u**(1/m)``, which absorbs the ``gamma**(m-1)``
  factor of the density (singular for ``m < 1``) into ``du``;
* ``[g0, inf)`` with ``gamma = g0 + omega * t / (1 - t)``, ``t`` in ``(0, 1)``.

Both panels go to QUADPACK's adaptive Gauss-Kronrod driver.
"""

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from .noma_analysis import cond_bep

__all__ = ["QuadratureSpec", "QuadratureError", "gamma_pdf", "avg_by_quadrature"]


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_subdivisions: int = 500

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")

    def halved(self):
        return QuadratureSpec(self.abs_tol / 2, self.rel_tol / 2, self.max_subdivisions)


def gamma_pdf(gamma, m, omega):
    """Density of ``|h|^2`` for Nakagami-m fading with ``E[|h|^2] = omega``."""
    if gamma < 0:
        return 0.0
    if gamma == 0:
        return math.inf if m < 1 else (m / omega if m == 1 else 0.0)
    rate = m / omega
    return math.exp(
        m * math.log(rate) + (m - 1) * math.log(gamma) - rate * gamma - math.lgamma(m)
    )


def _quad(f, spec):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, info, *rest = integrate.quad(
            f,
            0.0,
            1.0,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
            full_output=1,
        )
    ier = rest[0] if rest else 0
    if ier not in (0,):
        # ier 2 (roundoff) with a tiny error estimate is still a converged result
        if not (ier == 2 and err <= 10 * max(spec.abs_tol, spec.rel_tol * abs(value))):
            raise QuadratureError(
                f"quadrature did not converge (ier={ier}, err={err:.3g}): {rest[1] if len(rest) > 1 else ''}"
            )
    return value, err


def avg_by_quadrature(wqs, rho, fading, spec=QuadratureSpec(), *, return_error=False):
    """Average ``cond_bep(wqs, rho, gamma)`` over the Gamma channel-power law.

    Returns the probability, or ``(probability, error_estimate)`` when
    ``return_error`` is set.
    """
    m, omega = fading.m, fading.omega
    rate = m / omega
    g0 = omega / 1000.0
    u0 = g0**m
    log_norm = m * math.log(rate) - math.lgamma(m) - math.log(m)

    def head(s):
        # s in [0, 1] -> u = s * u0 -> gamma = u**(1/m); pdf * dgamma/du is smooth
        u = s * u0
        gamma = u ** (1.0 / m)
        return cond_bep(wqs, rho, gamma) * math.exp(log_norm - rate * gamma) * u0

    def tail(t):
        if t >= 1.0:
            return 0.0
        gamma = g0 + omega * t / (1.0 - t)
        jac = omega / (1.0 - t) ** 2
        return cond_bep(wqs, rho, gamma) * gamma_pdf(gamma, m, omega) * jac

    v1, e1 = _quad(head, spec)
    v2, e2 = _quad(tail, spec)
    value, err = v1 + v2, e1 + e2
    return (value, err) if return_error else value
