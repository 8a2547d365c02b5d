"""Command-line front end.

Subcommands write CSV to stdout, preceded by ``#`` metadata lines::

    coopnoma analytic --rho-db 0:30:5
    coopnoma simulate --rho-db 0:20:5 --trials 1000000 --seed 7
    coopnoma power-sweep --rho-db 20 --alpha1-grid 0.05:0.45:0.05
    coopnoma validate

Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

import argparse
import csv
import math
import sys

from . import __version__
from . import noma_analysis as na
from .checks import Grid, branch_consistency, closed_form_vs_quadrature
from .link_sim import DEFAULT_CHUNK_SIZE, simulate
from .validation import check_weak_share, parse_grid

ANALYTIC_HEADER = [
    "rho_db",
    "analytic_near",
    "analytic_far",
    "relay_near",
    "relay_far",
    "dest_near",
    "dest_far",
]
SIM_HEADER = [
    "rho_db",
    "analytic_near",
    "analytic_far",
    "sim_near",
    "sim_far",
    "sim_trials",
    "stderr_near",
    "stderr_far",
    "agree_near",
    "agree_far",
]
SWEEP_HEADER = ["rho_db", "alpha1", "beta1", "analytic_near", "analytic_far"]
SWEEP_SIM_EXTRA = ["sim_near", "sim_far", "sim_trials", "stderr_near", "stderr_far"]

DEFAULT_SPLIT = 0.1

# Scenario presets; explicit flags override them.
PRESETS = {
    "fig2": dict(m_sr=2, m_r1=2, m_r2=2, omega_sr_db=10, omega_r1_db=10, omega_r2_db=0),
    "fig3-i": dict(m_sr=2, m_r1=3, m_r2=1, omega_sr_db=3, omega_r1_db=3, omega_r2_db=0),
    "fig3-ii": dict(m_sr=2, m_r1=3, m_r2=1, omega_sr_db=6, omega_r1_db=6, omega_r2_db=3),
    "fig3-iii": dict(m_sr=2, m_r1=3, m_r2=1, omega_sr_db=10, omega_r1_db=6, omega_r2_db=3),
    "fig4": dict(m_sr=2, m_r1=2, m_r2=2, omega_sr_db=10, omega_r1_db=10, omega_r2_db=0),
}
_LINK_DEFAULTS = PRESETS["fig2"]


class UsageError(Exception):
    pass


def _fmt(x):
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    return f"{x:.10g}"


def _grid_arg(text):
    try:
        return parse_grid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_scenario_flags(p, rho_default):
    g = p.add_argument_group("scenario")
    g.add_argument("--preset", choices=sorted(PRESETS), help="load the link parameters of a named scenario")
    g.add_argument("--alpha1", type=float, help=f"source weak-user share (default {DEFAULT_SPLIT})")
    g.add_argument("--beta1", type=float, help=f"relay weak-user share (default {DEFAULT_SPLIT})")
    g.add_argument("--rho-db", type=_grid_arg, default=rho_default,
                   help="transmit SNR in dB: scalar, a,b,c or start:stop:step (rho_s = rho_r)")
    for link in ("sr", "r1", "r2"):
        g.add_argument(f"--m-{link}", type=float, dest=f"m_{link}", help=f"Nakagami m of the {link} link")
        g.add_argument(f"--omega-{link}-db", type=float, dest=f"omega_{link}_db",
                       help=f"mean channel power of the {link} link in dB")


def _add_sim_flags(p, trials_default):
    g = p.add_argument_group("simulation")
    g.add_argument("--trials", type=int, default=trials_default, help="Monte Carlo trials per point")
    g.add_argument("--seed", type=int, default=0, help="64-bit master seed (default 0)")
    g.add_argument(
        "--chunk-size", type=int, default=DEFAULT_CHUNK_SIZE, help="trials per random stream"
    )
    g.add_argument("--workers", type=int, default=1, help="threads; output does not depend on it")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coopnoma",
        description="Bit error probability of DF cooperative NOMA over Nakagami-m fading.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="closed-form BER versus SNR")
    _add_scenario_flags(p, parse_grid("0:30:5"))

    p = sub.add_parser("simulate", help="Monte Carlo BER versus SNR next to the closed form")
    _add_scenario_flags(p, parse_grid("0:20:5"))
    _add_sim_flags(p, 100_000)

    p = sub.add_parser("power-sweep", help="BER over a grid of source/relay power splits")
    _add_scenario_flags(p, [20.0])
    p.add_argument(
        "--alpha1-grid", type=_grid_arg, default=parse_grid("0.05:0.45:0.05"),
        help="alpha1 values to sweep (default 0.05:0.45:0.05)",
    )
    p.add_argument(
        "--beta1-grid", type=_grid_arg, default=parse_grid("0.05:0.45:0.05"),
        help="beta1 values to sweep (default 0.05:0.45:0.05)",
    )
    _add_sim_flags(p, 0)

    p = sub.add_parser("validate", help="closed forms against quadrature and across branches")
    defaults = Grid()
    p.add_argument("--m", type=_grid_arg, default=list(defaults.m))
    p.add_argument("--rho-db", type=_grid_arg, default=list(defaults.rho_db))
    p.add_argument("--omega-db", type=_grid_arg, default=list(defaults.omega_db))
    p.add_argument("--weak-share", type=_grid_arg, default=list(defaults.weak_share))
    p.add_argument("--verbose", action="store_true", help="print every check, not only failures")
    # test hook: scale closed-form coefficients to prove the harness detects errors
    p.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def _scenario(args):
    values = dict(_LINK_DEFAULTS)
    if args.preset:
        values.update(PRESETS[args.preset])
    for key in values:
        if getattr(args, key) is not None:
            values[key] = getattr(args, key)
    alpha1 = DEFAULT_SPLIT if args.alpha1 is None else args.alpha1
    beta1 = DEFAULT_SPLIT if args.beta1 is None else args.beta1
    defaulted = args.alpha1 is None and args.beta1 is None
    try:
        check_weak_share(alpha1, "--alpha1")
        check_weak_share(beta1, "--beta1")
        base = na.SystemConfig.from_db(alpha1=alpha1, beta1=beta1, rho_db=0.0, **values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    meta = [
        f"alpha1={_fmt(alpha1)} beta1={_fmt(beta1)}"
        + (" (default power split; not given on the command line)" if defaulted else ""),
        " ".join(f"{k}={_fmt(float(v))}" for k, v in values.items()),
        "rho_s = rho_r = rho",
    ]
    if args.preset:
        meta.append(f"preset={args.preset}")
    return base, meta


def _check_sim_args(args, allow_zero_trials=False):
    if args.trials < (0 if allow_zero_trials else 1):
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    if args.chunk_size < 1:
        raise UsageError(f"--chunk-size must be >= 1, got {args.chunk_size}")
    if args.workers < 1:
        raise UsageError(f"--workers must be >= 1, got {args.workers}")
    if not 0 <= args.seed < 2**64:
        raise UsageError(f"--seed must be an unsigned 64-bit integer, got {args.seed}")


def _emit(out, command, meta, header, rows):
    out.write(f"# coopnoma {__version__} {command}\n")
    for line in meta:
        out.write(f"# {line}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])


def _at(base, rho_db):
    rho = na.db_to_linear(rho_db)
    return base.with_rho(rho, rho)


def cmd_analytic(args, out):
    base, meta = _scenario(args)
    rows = []
    for r in sorted(args.rho_db):
        cfg = _at(base, r)
        rows.append([
            r,
            na.user_e2e(cfg, "near"),
            na.user_e2e(cfg, "far"),
            na.bep_relay_near(cfg),
            na.bep_relay_far(cfg),
            na.bep_dest_near(cfg),
            na.bep_dest_far(cfg),
        ])
    _emit(out, "analytic", meta, ANALYTIC_HEADER, rows)
    return 0


def _sim_columns(cfg, args):
    res = simulate(cfg, args.trials, args.seed, chunk_size=args.chunk_size, workers=args.workers)
    return res, [
        res.ber("e2e_near"),
        res.ber("e2e_far"),
        res.trials,
        res.stderr("e2e_near"),
        res.stderr("e2e_far"),
    ]


def cmd_simulate(args, out):
    base, meta = _scenario(args)
    _check_sim_args(args)
    meta.append(f"seed={args.seed} chunk_size={args.chunk_size} trials={args.trials}")
    meta.append("agree_* = 1 when |sim - analytic| <= 3 * stderr")
    rows = []
    for r in sorted(args.rho_db):
        cfg = _at(base, r)
        near, far = na.user_e2e(cfg, "near"), na.user_e2e(cfg, "far")
        _, (sim_near, sim_far, n, se_near, se_far) = _sim_columns(cfg, args)
        rows.append([
            r, near, far, sim_near, sim_far, n, se_near, se_far,
            abs(sim_near - near) <= 3 * se_near,
            abs(sim_far - far) <= 3 * se_far,
        ])
    _emit(out, "simulate", meta, SIM_HEADER, rows)
    return 0


def cmd_power_sweep(args, out):
    _check_sim_args(args, allow_zero_trials=True)
    if len(args.rho_db) != 1:
        raise UsageError("power-sweep takes a single --rho-db value")
    for name in ("alpha1_grid", "beta1_grid"):
        for v in getattr(args, name):
            try:
                check_weak_share(v, "--" + name.replace("_", "-"))
            except ValueError as exc:
                raise UsageError(str(exc)) from None
    base, meta = _scenario(args)
    meta = meta[1:]  # the split is swept, not fixed
    header = SWEEP_HEADER + (SWEEP_SIM_EXTRA if args.trials else [])
    if args.trials:
        meta.append(f"seed={args.seed} chunk_size={args.chunk_size} trials={args.trials}")
    r = args.rho_db[0]
    rho = na.db_to_linear(r)
    rows = []
    for a1 in sorted(args.alpha1_grid):
        for b1 in sorted(args.beta1_grid):
            cfg = na.SystemConfig(
                na.PowerSplit(a1), na.PowerSplit(b1), rho, rho, base.sr, base.r1, base.r2
            )
            row = [r, a1, b1, na.user_e2e(cfg, "near"), na.user_e2e(cfg, "far")]
            if args.trials:
                row += _sim_columns(cfg, args)[1]
            rows.append(row)
    _emit(out, "power-sweep", meta, header, rows)
    return 0


def cmd_validate(args, out):
    try:
        grid = Grid(
            tuple(args.m), tuple(args.rho_db), tuple(args.omega_db), tuple(args.weak_share)
        )
        for ws in grid.weak_share:
            check_weak_share(ws, "--weak-share")
        if any(not m >= 0.5 for m in grid.m):
            raise ValueError("--m values must be >= 0.5")
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    groups = [
        ("closed-form vs quadrature", closed_form_vs_quadrature(grid, perturb=args.perturb)),
        ("binomial vs hypergeometric branch", branch_consistency(grid)),
    ]
    failed = 0
    for title, checks in groups:
        bad = [c for c in checks if not c.passed]
        for c in checks if args.verbose else bad:
            out.write(c.line() + "\n")
        worst = max((c.error for c in checks), default=0.0)
        status = "PASS" if not bad else "FAIL"
        out.write(f"{status} {title}: {len(checks) - len(bad)}/{len(checks)} within tolerance, "
                  f"max |diff| = {worst:.3e}\n")
        failed += len(bad)
    return 1 if failed else 0


COMMANDS = {
    "analytic": cmd_analytic,
    "simulate": cmd_simulate,
    "power-sweep": cmd_power_sweep,
    "validate": cmd_validate,
}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"coopnoma {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
