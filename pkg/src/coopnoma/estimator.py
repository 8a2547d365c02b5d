"""scikit-learn style front end: SNR (dB) in, per-user BER out.

The model has nothing to learn; ``fit`` validates the hyper-parameters and
freezes the scenario so the object drops into pipelines, grid searches and
``clone``.

>>> model = CooperativeNomaBER(m_sr=2, m_r1=3, m_r2=1).fit()
>>> model.predict([30.0]).shape
(1, 2)
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import noma_analysis as na
from .link_sim import DEFAULT_CHUNK_SIZE, simulate
from .validation import check_positive_int, check_rho_db, check_weak_share

__all__ = ["CooperativeNomaBER"]

HOP_COLUMNS = ("relay_near", "relay_far", "dest_near", "dest_far")


class CooperativeNomaBER(BaseEstimator):
    """End-to-end BER of both users of a DF cooperative NOMA link.

    Parameters
    ----------
    alpha1, beta1 : float
        Weak (near-user) power share at the source and at the relay.
    m_sr, m_r1, m_r2 : float
        Nakagami shapes of the S->R, R->D1 and R->D2 links.
    omega_sr_db, omega_r1_db, omega_r2_db : float
        Mean channel powers in dB.
    relay_offset_db : float
        Relay SNR minus source SNR; 0 means equal transmit powers.
    method : {"analytic", "simulate"}
    trials, seed, chunk_size, workers :
        Monte Carlo settings, used when ``method="simulate"``.

    Attributes
    ----------
    config_ : SystemConfig
        Scenario at 0 dB source SNR; ``predict`` rescales it per input row.
    """

    def __init__(
        self,
        alpha1=0.1,
        beta1=0.1,
        m_sr=2.0,
        m_r1=2.0,
        m_r2=2.0,
        omega_sr_db=10.0,
        omega_r1_db=10.0,
        omega_r2_db=0.0,
        relay_offset_db=0.0,
        method="analytic",
        trials=100_000,
        seed=0,
        chunk_size=DEFAULT_CHUNK_SIZE,
        workers=1,
    ):
        self.alpha1 = alpha1
        self.beta1 = beta1
        self.m_sr = m_sr
        self.m_r1 = m_r1
        self.m_r2 = m_r2
        self.omega_sr_db = omega_sr_db
        self.omega_r1_db = omega_r1_db
        self.omega_r2_db = omega_r2_db
        self.relay_offset_db = relay_offset_db
        self.method = method
        self.trials = trials
        self.seed = seed
        self.chunk_size = chunk_size
        self.workers = workers

    def fit(self, X=None, y=None):
        if self.method not in ("analytic", "simulate"):
            raise ValueError(f"method must be 'analytic' or 'simulate', got {self.method!r}")
        check_weak_share(self.alpha1, "alpha1")
        check_weak_share(self.beta1, "beta1")
        if self.method == "simulate":
            check_positive_int(self.trials, "trials")
            check_positive_int(self.chunk_size, "chunk_size")
            check_positive_int(self.workers, "workers")
        self.config_ = na.SystemConfig.from_db(
            alpha1=self.alpha1,
            beta1=self.beta1,
            rho_db=0.0,
            rho_r_db=self.relay_offset_db,
            m_sr=self.m_sr,
            m_r1=self.m_r1,
            m_r2=self.m_r2,
            omega_sr_db=self.omega_sr_db,
            omega_r1_db=self.omega_r1_db,
            omega_r2_db=self.omega_r2_db,
        )
        return self

    def _config_at(self, rho_db):
        return self.config_.with_rho(
            na.db_to_linear(rho_db), na.db_to_linear(rho_db + self.relay_offset_db)
        )

    def predict(self, X):
        """BER per row of ``X`` (source SNR in dB); columns are (near, far)."""
        check_is_fitted(self, "config_")
        rho_db = check_rho_db(X)
        out = np.empty((rho_db.size, 2))
        for i, r in enumerate(rho_db):
            cfg = self._config_at(r)
            if self.method == "analytic":
                out[i] = na.user_e2e(cfg, "near"), na.user_e2e(cfg, "far")
            else:
                res = simulate(
                    cfg, self.trials, self.seed, chunk_size=self.chunk_size, workers=self.workers
                )
                out[i] = res.ber("e2e_near"), res.ber("e2e_far")
        return out

    def predict_hops(self, X):
        """Closed-form per-hop BEPs, columns ordered as ``HOP_COLUMNS``."""
        check_is_fitted(self, "config_")
        rho_db = check_rho_db(X)
        funcs = (na.bep_relay_near, na.bep_relay_far, na.bep_dest_near, na.bep_dest_far)
        return np.array([[f(self._config_at(r)) for f in funcs] for r in rho_db]).reshape(
            rho_db.size, len(funcs)
        )

    def diversity_order(self, rho_db_range=(30.0, 40.0), n_points=11):
        """Negative least-squares slope of log10(BER) per decade of SNR, per user."""
        check_is_fitted(self, "config_")
        r = np.linspace(*rho_db_range, n_points)
        logp = np.log10(self.predict(r))
        return -np.polyfit(r / 10.0, logp, 1)[0]
