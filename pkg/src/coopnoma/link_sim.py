"""Monte Carlo simulation of the two-phase DF cooperative NOMA chain.

Real-baseband model with coherent BPSK. Noise is ``N(0, 1/2)`` per trial so
that ``P(error | gamma) = Q(sqrt(2 * rho * gamma))`` for a unit-energy
symbol, which is the convention of the closed forms. Fading is i.i.d. per
symbol.

Trials are split into fixed-size chunks. Chunk ``k`` at SNR pair
``(rho_s, rho_r)`` draws from its own counter-based stream keyed by
``(seed, stream_id_for(rho_s, rho_r, k))``, so results are independent of
the worker count and of the order in which SNR points are simulated.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from .fading import RngStream, nakagami_gain, stream_id_for
from .noma_analysis import db_to_linear

__all__ = ["SimResult", "BerCurve", "simulate", "simulate_curve", "DEFAULT_CHUNK_SIZE"]

DEFAULT_CHUNK_SIZE = 1 << 16

_COUNTS = (
    "errors_sr_far",
    "errors_sr_near",
    "errors_rd_far",
    "errors_rd_near",
    "errors_e2e_far",
    "errors_e2e_near",
)


@dataclass
class SimResult:
    """Error counts of one simulated operating point.

    ``sr`` counts relay decisions against source bits, ``rd`` destination
    decisions against the bits the relay sent, ``e2e`` destination
    decisions against source bits.
    """

    trials: int = 0
    errors_sr_far: int = 0
    errors_sr_near: int = 0
    errors_rd_far: int = 0
    errors_rd_near: int = 0
    errors_e2e_far: int = 0
    errors_e2e_near: int = 0
    seed: int = None
    chunk_size: int = DEFAULT_CHUNK_SIZE
    stream_ids: tuple = field(default=(), repr=False)

    def __add__(self, other):
        out = SimResult(
            trials=self.trials + other.trials,
            seed=self.seed,
            chunk_size=self.chunk_size,
            stream_ids=self.stream_ids + other.stream_ids,
        )
        for name in _COUNTS:
            setattr(out, name, getattr(self, name) + getattr(other, name))
        return out

    def ber(self, name):
        """Empirical rate for a count name, e.g. ``ber("e2e_near")``."""
        return getattr(self, f"errors_{name}") / self.trials

    def stderr(self, name):
        p = self.ber(name)
        return math.sqrt(p * (1.0 - p) / self.trials)

    def counts(self):
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name in _COUNTS}


@dataclass
class BerCurve:
    rho_db: list
    results: list

    def __iter__(self):
        return iter(zip(self.rho_db, self.results))


def _sign(y):
    # ties resolve to +1
    return np.where(y >= 0, 1.0, -1.0)


def _downlink(x_near, x_far, split, rho, gain_near, gain_far, noise_near, noise_far):
    """One superposition hop to two receivers.

    The far receiver detects its symbol treating the other layer as noise;
    the near receiver detects the far symbol first, cancels it and then
    detects its own. Returns (near decision, far-symbol decision at near
    receiver, far decision at far receiver).
    """
    a1, a2 = math.sqrt(split.weak_share), math.sqrt(split.strong_share)
    amp = math.sqrt(rho)
    s = a1 * x_near + a2 * x_far

    y_far = amp * s * gain_far + noise_far
    far_at_far = _sign(y_far)

    y_near = amp * s * gain_near + noise_near
    far_at_near = _sign(y_near)
    residual = y_near - amp * a2 * gain_near * far_at_near
    near_at_near = _sign(residual)
    return near_at_near, far_at_near, far_at_far


def _run_chunk(cfg, n, stream):
    gen = stream.generator()
    bits = gen.integers(0, 2, size=(2, n), dtype=np.int8)
    x1 = 1.0 - 2.0 * bits[0]
    x2 = 1.0 - 2.0 * bits[1]
    g_sr = nakagami_gain(cfg.sr, gen, n)
    g_r1 = nakagami_gain(cfg.r1, gen, n)
    g_r2 = nakagami_gain(cfg.r2, gen, n)
    sigma = math.sqrt(0.5)
    n_sr, n_r1, n_r2 = sigma * gen.standard_normal((3, n))

    # hop 1: relay is the "near" receiver of the source broadcast
    x1_hat, x2_hat, _ = _downlink(x1, x2, cfg.alpha, cfg.rho_s, g_sr, g_sr, n_sr, n_sr)

    # hop 2: re-encode the relay's decisions
    d1, _, d2 = _downlink(x1_hat, x2_hat, cfg.beta, cfg.rho_r, g_r1, g_r2, n_r1, n_r2)

    return SimResult(
        trials=n,
        errors_sr_far=int(np.count_nonzero(x2_hat != x2)),
        errors_sr_near=int(np.count_nonzero(x1_hat != x1)),
        errors_rd_far=int(np.count_nonzero(d2 != x2_hat)),
        errors_rd_near=int(np.count_nonzero(d1 != x1_hat)),
        errors_e2e_far=int(np.count_nonzero(d2 != x2)),
        errors_e2e_near=int(np.count_nonzero(d1 != x1)),
        seed=stream.seed,
        chunk_size=n,
        stream_ids=(stream.stream_id,),
    )


def simulate(cfg, trials, seed=0, *, chunk_size=DEFAULT_CHUNK_SIZE, workers=1):
    """Simulate ``trials`` independent symbol pairs through both hops.

    Bit-identical for a given ``(cfg, trials, seed, chunk_size)`` whatever
    ``workers`` is.
    """
    trials = int(trials)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
    sizes = [chunk_size] * (trials // chunk_size)
    if trials % chunk_size:
        sizes.append(trials % chunk_size)
    streams = [
        RngStream(seed, stream_id_for(cfg.rho_s, cfg.rho_r, k)) for k in range(len(sizes))
    ]

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, [cfg] * len(sizes), sizes, streams))
    else:
        parts = [_run_chunk(cfg, n, s) for n, s in zip(sizes, streams)]

    total = SimResult(seed=seed, chunk_size=chunk_size)
    for part in parts:
        total = total + part
    total.chunk_size = chunk_size
    return total


def simulate_curve(cfg, rho_db, trials, seed=0, **kw):
    """Simulate ``cfg`` at each SNR in ``rho_db`` (dB, with ``rho_s == rho_r``)."""
    rho_db = [float(r) for r in rho_db]
    if not rho_db:
        raise ValueError("rho grid is empty")
    results = [
        simulate(cfg.with_rho(db_to_linear(r)), trials, seed, **kw) for r in rho_db
    ]
    return BerCurve(rho_db, results)
