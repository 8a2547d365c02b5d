"""Exact end-to-end BEP of the simulated chain, without assuming independent hops.

The relay's decision pair (x2_hat, x1_hat) is enumerated for each source
symbol pair; the second hop's error probability depends on whether the two
re-encoded symbols agree in sign. Every piece is a signed sum of Gaussian
tails in a single channel power, averaged term by term.
"""

import math

from coopnoma.noma_analysis import avg_bep_term


def relay_pattern_probs(cfg):
    """P(x2_hat, x1_hat | x1) for x2 = +1, keyed by x1 then (x2_hat, x1_hat)."""
    s1, s2 = math.sqrt(cfg.alpha.weak_share), math.sqrt(cfg.alpha.strong_share)

    def q(d):
        return avg_bep_term(d * d, cfg.rho_s, cfg.sr)

    return {
        +1: {
            (+1, +1): 1 - q(s1),
            (+1, -1): q(s1) - q(s1 + s2),
            (-1, +1): q(s1 + s2) - q(s1 + 2 * s2),
            (-1, -1): q(s1 + 2 * s2),
        },
        -1: {
            (+1, +1): q(s1),
            (+1, -1): 1 - q(s1) - q(s2 - s1),
            (-1, +1): q(s2 - s1) - q(2 * s2 - s1),
            (-1, -1): q(2 * s2 - s1),
        },
    }


def joint_e2e(cfg):
    """(near, far) end-to-end error probabilities of the DF chain."""
    b1, b2 = math.sqrt(cfg.beta.weak_share), math.sqrt(cfg.beta.strong_share)

    def qf(d):
        return avg_bep_term(d * d, cfg.rho_r, cfg.r2)

    def qn(d):
        return avg_bep_term(d * d, cfg.rho_r, cfg.r1)

    # second-hop flip probabilities given the sign agreement of (x1_hat, x2_hat)
    far_flip = {True: qf(b1 + b2), False: qf(b2 - b1)}
    near_flip = {
        True: qn(b1) - qn(b1 + b2) + qn(2 * b2 + b1),
        False: qn(b1) + qn(b2 - b1) - qn(2 * b2 - b1),
    }
    near = far = 0.0
    for x1, patterns in relay_pattern_probs(cfg).items():
        for (x2_hat, x1_hat), p in patterns.items():
            agree = x1_hat == x2_hat
            f, n = far_flip[agree], near_flip[agree]
            far += 0.5 * p * (f if x2_hat == 1 else 1 - f)
            near += 0.5 * p * (n if x1_hat == x1 else 1 - n)
    return near, far


def dest_hop_probs(cfg):
    """(near, far) second-hop error vs the relay's own decisions."""
    b1, b2 = math.sqrt(cfg.beta.weak_share), math.sqrt(cfg.beta.strong_share)

    def qf(d):
        return avg_bep_term(d * d, cfg.rho_r, cfg.r2)

    def qn(d):
        return avg_bep_term(d * d, cfg.rho_r, cfg.r1)

    p_agree = 0.5 * sum(
        p for probs in relay_pattern_probs(cfg).values() for (h2, h1), p in probs.items() if h1 == h2
    )
    far = p_agree * qf(b1 + b2) + (1 - p_agree) * qf(b2 - b1)
    near = p_agree * (qn(b1) - qn(b1 + b2) + qn(2 * b2 + b1)) + (1 - p_agree) * (
        qn(b1) + qn(b2 - b1) - qn(2 * b2 - b1)
    )
    return near, far
