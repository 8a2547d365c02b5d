"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line (visible in
``pytest -v`` output) before asserting, so a full run doubles as a report.
"""

import io
import math

import numpy as np
import pytest

from coopnoma import CooperativeNomaBER
from coopnoma import noma_analysis as na
from coopnoma.checks import Grid, all_passed, branch_consistency, closed_form_vs_quadrature
from coopnoma.cli import main
from coopnoma.link_sim import simulate

MC_TRIALS = 10**7
MC_SEED = 2020
MC_RHO_DB = (0.0, 5.0, 10.0, 15.0, 20.0)
MC_FLOOR = 1e-5


@pytest.fixture
def report(capsys):
    def emit(number, passed, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
        return passed

    return emit


def fig2(rho_db):
    return na.SystemConfig.from_db(
        alpha1=0.1, beta1=0.1, rho_db=rho_db, m_sr=2, m_r1=2, m_r2=2,
        omega_sr_db=10, omega_r1_db=10, omega_r2_db=0,
    )


def test_criterion_1_closed_form_vs_quadrature(report):
    checks = closed_form_vs_quadrature(Grid())
    worst = max(checks, key=lambda c: c.error / c.tol)
    ok = all_passed(checks)
    report(1, ok, f"{sum(c.passed for c in checks)}/{len(checks)} within tol; worst {worst.line()}")
    assert ok


def test_criterion_2_branch_consistency(report):
    checks = branch_consistency(Grid())
    ok = all_passed(checks) and {c.point[0] for c in checks} == {1.0, 2.0, 3.0}
    worst = max(c.error for c in checks)
    report(2, ok, f"{len(checks)} integer-m comparisons, max |diff| {worst:.2e}")
    assert ok


def test_criterion_3_monte_carlo_agreement(report):
    hops = {
        "sr_far": na.bep_relay_far,
        "sr_near": na.bep_relay_near,
        "rd_far": na.bep_dest_far,
        "rd_near": na.bep_dest_near,
    }
    misses, compared = [], 0
    for rho_db in MC_RHO_DB:
        cfg = fig2(rho_db)
        res = simulate(cfg, MC_TRIALS, seed=MC_SEED)
        analytic = {name: f(cfg) for name, f in hops.items()}
        analytic["e2e_far"] = na.user_e2e(cfg, "far")
        analytic["e2e_near"] = na.user_e2e(cfg, "near")
        for name, p in analytic.items():
            if p < MC_FLOOR:
                continue
            compared += 1
            z = (res.ber(name) - p) / math.sqrt(p * (1 - p) / res.trials)
            if abs(z) > 3:
                misses.append(f"{name}@{rho_db:g}dB z={z:+.2f}")
    ok = not misses
    report(3, ok, f"{compared - len(misses)}/{compared} within 3 s.e.; misses: {', '.join(misses) or 'none'}")
    assert ok, misses


def test_criterion_4_diversity_order(report):
    model = CooperativeNomaBER(
        alpha1=0.1, beta1=0.1, m_sr=2, m_r1=3, m_r2=1,
        omega_sr_db=10, omega_r1_db=6, omega_r2_db=3,
    ).fit()
    near, far = model.diversity_order((30.0, 40.0))
    ok = abs(near - 2) <= 0.3 and abs(far - 1) <= 0.15
    report(4, ok, f"near order {near:.4f} (2 +/- 0.3), far order {far:.4f} (1 +/- 0.15)")
    assert ok


def test_criterion_5_power_sweep_trends(report):
    shares = np.round(np.arange(0.05, 0.4501, 0.05), 2)
    near = np.empty((shares.size, shares.size))
    far = np.empty_like(near)
    for i, a1 in enumerate(shares):
        for j, b1 in enumerate(shares):
            cfg = na.SystemConfig.from_db(alpha1=a1, beta1=b1, rho_db=20.0)
            near[i, j] = na.user_e2e(cfg, "near")
            far[i, j] = na.user_e2e(cfg, "far")
    # far BER must not rise as either weak share shrinks (index decreasing)
    far_ok = bool(np.all(np.diff(far, axis=0) >= 0) and np.all(np.diff(far, axis=1) >= 0))
    steps = np.sign(np.diff(near, axis=1))
    non_monotone = [a1 for a1, s in zip(shares, steps) if len(set(s[s != 0])) > 1]
    ok = far_ok and bool(non_monotone)
    report(
        5, ok,
        f"far non-increasing along both axes: {far_ok}; "
        f"near non-monotone in beta1 for alpha1 in {[float(a) for a in non_monotone]}",
    )
    assert ok


def test_criterion_6_degenerate_limits(report):
    worst = 0.0
    for m in (0.5, 1.0, 1.5, 2.0, 3.0):
        cfg = na.SystemConfig.from_db(m_sr=m, m_r1=m, m_r2=m).with_rho(1e-20)
        for f in (na.bep_relay_far, na.bep_relay_near, na.bep_dest_far, na.bep_dest_near):
            worst = max(worst, abs(f(cfg) - 0.5))
        for user in ("near", "far"):
            worst = max(worst, abs(na.user_e2e(cfg, user) - 0.5))
    clean = simulate(fig2(0.0).with_rho(1e20), 10**6, seed=MC_SEED)
    errors = sum(clean.counts().values())
    ok = worst <= 1e-9 and errors == 0
    report(6, ok, f"max |BEP - 0.5| at rho=1e-20: {worst:.2e}; noise-free errors over 1e6 trials: {errors}")
    assert ok


def test_criterion_7_reproducible_csv(report):
    def csv(workers):
        out = io.StringIO()
        code = main(
            ["simulate", "--preset", "fig2", "--alpha1", "0.1", "--beta1", "0.1",
             "--rho-db", "0:20:5", "--trials", "200000", "--seed", "7",
             "--chunk-size", "16384", "--workers", str(workers)],
            out=out,
        )
        assert code == 0
        return out.getvalue().encode()

    first = csv(1)
    runs = [csv(1)] + [csv(w) for w in (4, 8)]
    ok = all(r == first for r in runs)
    report(7, ok, f"{len(runs) + 1} CSV runs (workers 1,1,4,8), byte-identical: {ok}")
    assert ok
