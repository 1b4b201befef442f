"""Command-line front end.

Subcommands: run (one simulation), sweep (regime map over fk x rp),
critical (bisect the explosion threshold in fk), semenov (zero-dimensional
balance).  Exit status 0 covers every successful computation including
explosive outcomes; 1 signals configuration or I/O problems; argparse
itself exits 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, SweepSpec, parse_config
from .core import ParameterError
from .driver import CriticalResult, SimConfig, critical_fk, run_simulation, semenov
from .output import emit_outputs, fmt
from .sweep import run_sweep, write_regime_map


def _load_config(path: str) -> SimConfig | SweepSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


def _cmd_run(args) -> int:
    cfg = _load_config(args.config)
    if isinstance(cfg, SweepSpec):
        raise ConfigError(f"{args.config} holds a sweep config; use the sweep command")
    result = run_simulation(cfg)
    out_dir = Path(args.out)
    written = emit_outputs(result, out_dir)
    label = result.label
    print(f"regime = {label.regime.value}")
    print(f"oscillating_explosion = {'true' if label.oscillating_explosion else 'false'}")
    if label.t_explosion is not None:
        print(f"t_explosion = {fmt(label.t_explosion)}")
    print(f"psi_max_final = {fmt(result.series.psi_max[-1])}")
    print(f"theta_max_final = {fmt(result.series.theta_max[-1])}")
    if args.plots:
        from . import plots
        written.update(plots.plot_run(result, out_dir))
    for kind in sorted(written):
        print(f"wrote {kind}: {written[kind]}")
    return 0


def _cmd_sweep(args) -> int:
    spec = _load_config(args.config)
    if not isinstance(spec, SweepSpec):
        raise ConfigError(f"{args.config} holds a single-run config; use the run command")
    records = run_sweep(spec, jobs=args.jobs)
    out_dir = Path(args.out)
    path = write_regime_map(records, out_dir / "regime_map.csv")
    failed = sum(1 for r in records if r.status != "ok")
    print(f"swept {len(records)} points ({failed} failed)")
    if args.plots:
        from . import plots
        for kind, p in plots.plot_regime_map(records, out_dir).items():
            print(f"wrote {kind}: {p}")
    print(f"wrote regime_map: {path}")
    return 0


def _cmd_critical(args) -> int:
    cfg = SimConfig(rp=args.rp, sigma=args.sigma, n=args.n, t_end=args.t_end)
    result: CriticalResult = critical_fk(cfg, lo=args.lo, hi=args.hi, tol=args.tol)
    print(f"rp = {fmt(args.rp)}")
    print(f"sigma = {fmt(args.sigma)}")
    print(f"critical_fk = {fmt(result.fk)}")
    print(f"bracket = {fmt(result.lo)}:{fmt(result.hi)}")
    print(f"t_end = {fmt(result.t_end)}")
    print(f"runs = {result.runs}")
    return 0


def _cmd_semenov(args) -> int:
    t, theta, exploded = semenov(args.lam, dt=args.dt, t_end=args.t_end)
    print(f"lambda = {fmt(args.lam)}")
    print(f"exploded = {'true' if exploded else 'false'}")
    print(f"theta_final = {fmt(theta[-1])}")
    print(f"t_final = {fmt(t[-1])}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermex",
        description="Heat explosion with natural convection in a porous layer.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one simulation from a config file")
    p_run.add_argument("--config", required=True, help="key = value config file")
    p_run.add_argument("--out", default="out", help="output directory")
    p_run.add_argument("--plots", action="store_true",
                       help="also render figures next to the CSV output")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a (fk, rp) regime-map sweep")
    p_sweep.add_argument("--config", required=True, help="sweep config file")
    p_sweep.add_argument("--out", default="out", help="output directory")
    p_sweep.add_argument("--jobs", type=int, default=None,
                         help="concurrent simulations (default: config parallelism)")
    p_sweep.add_argument("--plots", action="store_true",
                         help="also render the regime-map figure")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_crit = sub.add_parser("critical", help="bisect the explosion threshold in fk")
    p_crit.add_argument("--rp", type=float, required=True)
    p_crit.add_argument("--sigma", type=float, default=0.0)
    p_crit.add_argument("--tol", type=float, default=0.01)
    p_crit.add_argument("--lo", type=float, default=0.5)
    p_crit.add_argument("--hi", type=float, default=8.0)
    p_crit.add_argument("--t-end", type=float, default=100.0)
    p_crit.add_argument("--n", type=int, default=64)
    p_crit.set_defaults(func=_cmd_critical)

    p_sem = sub.add_parser("semenov", help="zero-dimensional heat balance")
    p_sem.add_argument("--lambda", dest="lam", type=float, required=True,
                       help="heat loss intensity")
    p_sem.add_argument("--dt", type=float, default=1e-3)
    p_sem.add_argument("--t-end", type=float, default=200.0)
    p_sem.set_defaults(func=_cmd_semenov)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
