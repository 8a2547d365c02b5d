"""Input validation helpers shared by the estimator and the CLI."""

import math

import numpy as np
from sklearn.utils.validation import check_array

__all__ = ["check_rho_db", "check_weak_share", "check_positive_int", "parse_grid"]


def check_rho_db(X):
    """Coerce an SNR input (dB) to a finite 1-D float array.

    Accepts a scalar, a 1-D sequence or an ``(n, 1)`` column.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim == 0:
        X = X.reshape(1)
    X = check_array(X, ensure_2d=False, dtype=float)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"expected a single SNR column, got shape {X.shape}")
        X = X[:, 0]
    return X


def check_weak_share(value, name="weak share"):
    value = float(value)
    if not 0 < value < 0.5:
        raise ValueError(f"{name} must lie in (0, 0.5), got {value}")
    return value


def check_positive_int(value, name):
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def parse_grid(text):
    """Parse ``"start:stop:step"`` (inclusive), ``"a,b,c"`` or a scalar.

    The stop value is included when it lies within half a step of the last
    grid point. Returns a list of floats; an empty result raises.
    """
    text = str(text).strip()
    if not text:
        raise ValueError("empty grid")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"sweep must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if not step > 0 or not all(map(math.isfinite, (start, stop, step))):
            raise ValueError(f"sweep step must be positive and finite, got {text!r}")
        n = math.floor((stop - start) / step + 0.5)
        if n < 0:
            raise ValueError(f"sweep {text!r} is empty")
        # round away binary noise so e.g. 0.1:0.3:0.1 yields 0.3, not 0.30000000000000004
        return [round(start + k * step, 12) for k in range(n + 1)]
    values = [float(p) for p in text.split(",") if p.strip()]
    if not values or not all(map(math.isfinite, values)):
        raise ValueError(f"invalid grid {text!r}")
    return values
