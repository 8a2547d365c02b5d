"""Scalar special functions used by the closed-form error probabilities.

Only the pieces the BEP expressions need are here: the Gaussian tail
function, the ``mu`` helper, log-gamma, and the Gauss hypergeometric
function restricted to the family ``2F1(1, m + 1/2; m + 1; z)``.
"""

import math
from dataclasses import dataclass

__all__ = [
    "Accuracy",
    "ConvergenceError",
    "DEFAULT_ACCURACY",
    "q_func",
    "mu",
    "ln_gamma",
    "hyp2f1_unit",
    "hyp2f1_unit_series",
]

_SQRT_PI = math.sqrt(math.pi)

# Above this ratio between the correction term and the result, the
# connection formula has lost too many digits and the plain series is used.
_MAX_CANCELLATION = 1e2


class ConvergenceError(ArithmeticError):
    """A series failed to reach its tolerance within the term budget."""


@dataclass(frozen=True)
class Accuracy:
    abs_tol: float = 1e-12
    max_terms: int = 100_000

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_ACCURACY = Accuracy()


def q_func(x):
    """Gaussian tail probability ``Q(x) = P(N(0, 1) > x)``.

    Evaluated through ``erfc`` so both tails keep full relative precision.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"q_func needs a finite argument, got {x}")
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def mu(z):
    """``sqrt(z / (1 + z))`` for ``z >= 0``."""
    z = float(z)
    if not z >= 0:
        raise ValueError(f"mu needs z >= 0, got {z}")
    if math.isinf(z):
        return 1.0
    return math.sqrt(z / (1.0 + z))


def ln_gamma(x):
    x = float(x)
    if not x > 0 or not math.isfinite(x):
        raise ValueError(f"ln_gamma needs a finite x > 0, got {x}")
    return math.lgamma(x)


def _series(b, c, z, accuracy):
    # sum_n (b)_n / (c)_n z^n  ==  2F1(1, b; c; z)
    # Once the term ratio r < 1 it only decreases (c > b), so the remaining
    # tail is bounded by term * r / (1 - r).
    total = 1.0
    term = 1.0
    for n in range(accuracy.max_terms):
        ratio = (b + n) / (c + n) * z
        term *= ratio
        total += term
        if ratio < 1 and term * ratio / (1.0 - ratio) <= accuracy.abs_tol * total:
            return total
    raise ConvergenceError(
        f"2F1(1, {b}; {c}; {z}) did not converge in {accuracy.max_terms} terms"
    )


def hyp2f1_unit_series(m, z, accuracy=DEFAULT_ACCURACY):
    """Plain power series for ``2F1(1, m + 1/2; m + 1; z)``.

    Converges for ``0 <= z < 1`` but needs ``O(1 / (1 - z))`` terms.
    """
    return _series(m + 0.5, m + 1.0, z, accuracy)


def hyp2f1_unit(m, z, accuracy=DEFAULT_ACCURACY, *, one_minus_z=None):
    """Gauss hypergeometric ``2F1(1, m + 1/2; m + 1; z)`` for ``0 <= z < 1``.

    For ``z <= 1/2`` the defining series is summed directly. Above that the
    ``z -> 1 - z`` connection formula is used::

        2F1 = sqrt(pi) G(m+1)/G(m+1/2) z^-m (1-z)^-1/2
              - 2m 2F1(1, m+1/2; 3/2; 1-z)

    whose series argument is below 1/2, so convergence stays geometric all
    the way to ``z -> 1``.

    Parameters
    ----------
    m : float
        Shape parameter, ``m > 0``.
    z : float
        Argument in ``[0, 1)``.
    accuracy : Accuracy
        Relative stopping rule and term budget for the series.
    one_minus_z : float, optional
        ``1 - z`` computed by the caller without cancellation. Near ``z = 1``
        the singular factor ``(1 - z)^-1/2`` needs it for full precision.

    Raises
    ------
    ValueError
        If ``m <= 0`` or ``z`` is outside ``[0, 1)``.
    ConvergenceError
        If the series does not converge within ``accuracy.max_terms``.
    """
    m = float(m)
    z = float(z)
    if not m > 0 or not math.isfinite(m):
        raise ValueError(f"m must be positive and finite, got {m}")
    if one_minus_z is None:
        if not 0 <= z < 1:
            raise ValueError(f"z must lie in [0, 1), got {z}")
        one_minus_z = 1.0 - z
    elif not (0 <= z <= 1 and 0 < one_minus_z <= 1):
        # z itself may round to 1.0; the exact complement decides
        raise ValueError(f"z must lie in [0, 1), got z={z}, 1-z={one_minus_z}")
    if z <= 0.5:
        return _series(m + 0.5, m + 1.0, z, accuracy)

    log_lead = (
        math.log(_SQRT_PI)
        + math.lgamma(m + 1.0)
        - math.lgamma(m + 0.5)
        - m * math.log(z)
        - 0.5 * math.log(one_minus_z)
    )
    lead = math.exp(log_lead)
    correction = 2.0 * m * _series(m + 0.5, 1.5, one_minus_z, accuracy)
    value = lead - correction
    if correction > _MAX_CANCELLATION * value:
        return _series(m + 0.5, m + 1.0, z, accuracy)
    return value
