"""Random variates for Nakagami-m channels and Gaussian noise.

Streams are counter-based: a Philox4x64 generator keyed by
``(seed, stream_id)``. Any two keys give statistically independent
sequences, and a stream's output depends on nothing but its key, so Monte
Carlo chunks can run in any order on any number of workers.
"""

import hashlib
import struct
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RngStream",
    "stream_id_for",
    "gamma_sample",
    "nakagami_gain",
    "awgn",
]

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            value = getattr(self, name)
            if not 0 <= value <= _U64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value}")

    def generator(self):
        """A fresh ``numpy.random.Generator`` positioned at the start of the stream."""
        return np.random.Generator(
            np.random.Philox(key=self.seed | (self.stream_id << 64))
        )


def stream_id_for(*parts):
    """Stable 64-bit stream id derived from ints/floats (e.g. SNR and chunk index)."""
    h = hashlib.blake2b(digest_size=8)
    for p in parts:
        if isinstance(p, (int, np.integer)):
            h.update(b"i" + int(p).to_bytes(16, "little", signed=True))
        else:
            h.update(b"f" + struct.pack("<d", float(p)))
    return int.from_bytes(h.digest(), "little")


def _as_generator(rng):
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def _marsaglia_tsang(shape, n, gen):
    # unit-scale Gamma(shape) for shape >= 1
    d = shape - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)
    out = np.empty(n)
    todo = np.arange(n)
    while todo.size:
        x = gen.standard_normal(todo.size)
        v = (1.0 + c * x) ** 3
        u = gen.random(todo.size)
        ok = v > 0
        # squeeze first, log test only where the squeeze fails
        accept = ok & (u < 1.0 - 0.0331 * x**4)
        slow = ok & ~accept
        with np.errstate(divide="ignore", invalid="ignore"):
            accept[slow] = np.log(u[slow]) < 0.5 * x[slow] ** 2 + d * (
                1.0 - v[slow] + np.log(v[slow])
            )
        out[todo[accept]] = d * v[accept]
        todo = todo[~accept]
    return out


def gamma_sample(shape, scale, rng, size=None):
    """Gamma(shape, scale) draws by Marsaglia-Tsang.

    Shapes in ``[0.5, 1)`` are boosted: ``Gamma(a) = Gamma(a + 1) * U**(1/a)``.
    Returns a float when ``size`` is None, else an array of that size.
    """
    shape = float(shape)
    scale = float(scale)
    if not shape >= 0.5:
        raise ValueError(f"shape must be >= 0.5 (Nakagami constraint), got {shape}")
    if not scale > 0:
        raise ValueError(f"scale must be positive, got {scale}")
    gen = _as_generator(rng)
    n = 1 if size is None else int(np.prod(size))
    if shape >= 1.0:
        x = _marsaglia_tsang(shape, n, gen)
    else:
        x = _marsaglia_tsang(shape + 1.0, n, gen)
        x *= gen.random(n) ** (1.0 / shape)
    x *= scale
    if size is None:
        return float(x[0])
    return x.reshape(size)


def nakagami_gain(fading, rng, size=None):
    """Nakagami-m amplitude ``|h|`` with ``E[|h|^2] = fading.omega``.

    The phase is not drawn; coherent receivers with perfect CSI only see
    the amplitude.
    """
    power = gamma_sample(fading.m, fading.omega / fading.m, rng, size)
    return np.sqrt(power) if size is not None else float(np.sqrt(power))


def awgn(rng, size=None):
    """Standard normal draws; the caller scales them to the noise level."""
    gen = _as_generator(rng)
    if size is None:
        return float(gen.standard_normal())
    return gen.standard_normal(size)
