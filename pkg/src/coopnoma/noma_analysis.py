"""Closed-form bit error probabilities for two-user DF cooperative NOMA.

Every hop is a downlink NOMA link with BPSK on both layers. Conditioned on
the channel power ``gamma`` the error probability of either user is a short
signed mixture of Gaussian tails, ``sum_k w_k Q(sqrt(2 c_k rho gamma))``.
Averaging each tail over a Gamma-distributed ``gamma`` (Nakagami-m
amplitude) has a closed form, which this module evaluates exactly.

All SNRs and channel powers are linear. dB conversion belongs to callers.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum

from .specfun import DEFAULT_ACCURACY, hyp2f1_unit, mu, q_func

__all__ = [
    "PowerSplit",
    "FadingParam",
    "SystemConfig",
    "WeightedQSum",
    "User",
    "far_coeffs",
    "near_coeffs",
    "cond_bep",
    "avg_bep",
    "avg_bep_term",
    "bep_relay_far",
    "bep_relay_near",
    "bep_dest_far",
    "bep_dest_near",
    "e2e_bep",
    "user_e2e",
    "db_to_linear",
]

_SUM_TOL = 1e-12
_RANGE_TOL = 1e-9
INTEGER_M_TOL = 1e-9


def db_to_linear(db):
    return 10.0 ** (float(db) / 10.0)


class User(str, Enum):
    """NEAR is D1 (weak share, decodes with SIC); FAR is D2."""

    NEAR = "near"
    FAR = "far"


@dataclass(frozen=True)
class PowerSplit:
    """Power allocation of one hop: ``weak_share + strong_share == 1``."""

    weak_share: float
    strong_share: float = None

    def __post_init__(self):
        if self.strong_share is None:
            object.__setattr__(self, "strong_share", 1.0 - self.weak_share)
        weak, strong = float(self.weak_share), float(self.strong_share)
        if abs(weak + strong - 1.0) > _SUM_TOL:
            raise ValueError(f"power shares must sum to 1, got {weak} + {strong}")
        if not 0 < weak < strong:
            raise ValueError(
                f"need 0 < weak_share < strong_share, got ({weak}, {strong})"
            )


@dataclass(frozen=True)
class FadingParam:
    """Nakagami shape ``m`` and mean channel power ``omega = E[|h|^2]``."""

    m: float
    omega: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.m) and self.m >= 0.5):
            raise ValueError(f"Nakagami m must be >= 0.5, got {self.m}")
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be positive, got {self.omega}")


@dataclass(frozen=True)
class SystemConfig:
    alpha: PowerSplit
    beta: PowerSplit
    rho_s: float
    rho_r: float
    sr: FadingParam
    r1: FadingParam
    r2: FadingParam

    def __post_init__(self):
        for name in ("rho_s", "rho_r"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value}")

    @classmethod
    def from_db(
        cls,
        alpha1=0.1,
        beta1=0.1,
        rho_db=20.0,
        m_sr=2.0,
        m_r1=2.0,
        m_r2=2.0,
        omega_sr_db=10.0,
        omega_r1_db=10.0,
        omega_r2_db=0.0,
        rho_r_db=None,
    ):
        """Build a config from dB quantities; the relay SNR defaults to the source SNR."""
        if rho_r_db is None:
            rho_r_db = rho_db
        return cls(
            alpha=PowerSplit(alpha1),
            beta=PowerSplit(beta1),
            rho_s=db_to_linear(rho_db),
            rho_r=db_to_linear(rho_r_db),
            sr=FadingParam(m_sr, db_to_linear(omega_sr_db)),
            r1=FadingParam(m_r1, db_to_linear(omega_r1_db)),
            r2=FadingParam(m_r2, db_to_linear(omega_r2_db)),
        )

    def with_rho(self, rho_s, rho_r=None):
        return replace(self, rho_s=rho_s, rho_r=rho_s if rho_r is None else rho_r)


@dataclass(frozen=True)
class WeightedQSum:
    """Conditional BEP ``sum_k weights[k] * Q(sqrt(2 * coeffs[k] * rho * gamma))``."""

    weights: tuple
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if len(self.weights) != len(self.coeffs) or not self.weights:
            raise ValueError("weights and coeffs must be nonempty and equally long")
        if abs(math.fsum(self.weights) - 1.0) > _SUM_TOL:
            raise ValueError(f"weights must sum to 1, got {math.fsum(self.weights)}")
        if any(not c >= 0 for c in self.coeffs):
            raise ValueError(f"coeffs must be nonnegative, got {self.coeffs}")

    def __len__(self):
        return len(self.weights)


def far_coeffs(split):
    """Tail mixture for the high-power symbol, detected with the other layer as noise."""
    s1, s2 = math.sqrt(split.weak_share), math.sqrt(split.strong_share)
    return WeightedQSum((0.5, 0.5), ((s2 - s1) ** 2, (s2 + s1) ** 2))


def near_coeffs(split):
    """Tail mixture for the low-power symbol after SIC of the high-power one.

    The signed terms account for both correct and erroneous cancellation of
    the high-power symbol.
    """
    s1, s2 = math.sqrt(split.weak_share), math.sqrt(split.strong_share)
    return WeightedQSum(
        (-0.5, 0.5, 1.0, 0.5, -0.5),
        (
            (s2 + s1) ** 2,
            (s2 - s1) ** 2,
            split.weak_share,
            (2 * s2 + s1) ** 2,
            (2 * s2 - s1) ** 2,
        ),
    )


def _checked_probability(value, what):
    if not -_RANGE_TOL <= value <= 1 + _RANGE_TOL:
        raise ArithmeticError(f"{what} = {value!r} is not a probability")
    return value


def cond_bep(wqs, rho, gamma):
    """Error probability given the channel power realization ``gamma``."""
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    if not gamma >= 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")
    value = math.fsum(
        w * q_func(math.sqrt(2.0 * c * rho * gamma))
        for w, c in zip(wqs.weights, wqs.coeffs)
    )
    return _checked_probability(value, "conditional BEP")


def _is_integer(m):
    return abs(m - round(m)) < INTEGER_M_TOL


def _avg_q_binomial(snr, m):
    # E[Q(sqrt(2 g))] for g ~ Gamma(m, snr/m), integer m
    root = mu(snr)
    comp = 1.0 / (1.0 + snr)  # 1 - mu^2 without cancellation
    total = 0.0
    term = 1.0
    for l in range(m):
        if l:
            term *= (2 * l) * (2 * l - 1) / (l * l) * comp / 4.0
        total += term
    return 0.5 * (1.0 - root * total)


def _avg_q_hypergeometric(snr, m, accuracy):
    # same average, any real m > 0
    z = 1.0 / (1.0 + snr)
    log_front = (
        0.5 * math.log(snr)
        - (m + 0.5) * math.log1p(snr)
        + math.lgamma(m + 0.5)
        - math.lgamma(m + 1.0)
    )
    f = hyp2f1_unit(m, z, accuracy, one_minus_z=snr / (1.0 + snr))
    return math.exp(log_front) * f / (2.0 * math.sqrt(math.pi))


def avg_bep_term(coeff, rho, fading, *, branch="auto", accuracy=DEFAULT_ACCURACY):
    """Average of ``Q(sqrt(2 coeff rho gamma))`` over ``gamma ~ Gamma(m, omega/m)``.

    ``branch`` is ``"auto"``, ``"binomial"`` (integer ``m`` only) or
    ``"hypergeometric"``.
    """
    m = fading.m
    snr = coeff * rho * fading.omega / m
    if snr == 0:
        return 0.5
    if branch == "auto":
        branch = "binomial" if _is_integer(m) else "hypergeometric"
    if branch == "binomial":
        if not _is_integer(m):
            raise ValueError(f"binomial branch needs integer m, got {m}")
        return _avg_q_binomial(snr, int(round(m)))
    if branch == "hypergeometric":
        return _avg_q_hypergeometric(snr, m, accuracy)
    raise ValueError(f"unknown branch {branch!r}")


def avg_bep(wqs, rho, fading, *, branch="auto", accuracy=DEFAULT_ACCURACY):
    """Conditional BEP ``wqs`` averaged over Nakagami-m fading, in closed form.

    Each tail term is averaged separately and the signed weights recombine
    them. Integer ``m`` (within 1e-9) uses the finite binomial sum, anything
    else the hypergeometric form; both are exact for integer ``m``.
    """
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    if fading.m < 0.5:
        raise ValueError(f"Nakagami m must be >= 0.5, got {fading.m}")
    value = math.fsum(
        w * avg_bep_term(c, rho, fading, branch=branch, accuracy=accuracy)
        for w, c in zip(wqs.weights, wqs.coeffs)
    )
    return _checked_probability(value, "average BEP")


def bep_relay_far(cfg, **kw):
    """Far user's symbol error at the relay (S->R hop)."""
    return avg_bep(far_coeffs(cfg.alpha), cfg.rho_s, cfg.sr, **kw)


def bep_relay_near(cfg, **kw):
    """Near user's symbol error at the relay, after SIC."""
    return avg_bep(near_coeffs(cfg.alpha), cfg.rho_s, cfg.sr, **kw)


def bep_dest_far(cfg, **kw):
    return avg_bep(far_coeffs(cfg.beta), cfg.rho_r, cfg.r2, **kw)


def bep_dest_near(cfg, **kw):
    return avg_bep(near_coeffs(cfg.beta), cfg.rho_r, cfg.r1, **kw)


def e2e_bep(p_hop1, p_hop2):
    """End-to-end error of two independent binary symmetric hops."""
    for p in (p_hop1, p_hop2):
        if not 0 <= p <= 1:
            raise ValueError(f"hop error probability must be in [0, 1], got {p}")
    return p_hop1 * (1.0 - p_hop2) + (1.0 - p_hop1) * p_hop2


def _clip_unit(p):
    # absorbs the +-1e-9 rounding window allowed by _checked_probability
    return min(max(p, 0.0), 1.0)


def user_e2e(cfg, user, **kw):
    user = User(user)
    if user is User.NEAR:
        hops = bep_relay_near(cfg, **kw), bep_dest_near(cfg, **kw)
    else:
        hops = bep_relay_far(cfg, **kw), bep_dest_far(cfg, **kw)
    return e2e_bep(*(_clip_unit(p) for p in hops))
