"""Regime-diagram sweeps over the (fk, rp) plane.

Each grid point is an independent simulation; failures are captured per
point in the status column and never abort the sweep.  Records are emitted
in row-major order, rp outer and fk inner, whatever the execution order,
so output files are byte-identical for any parallelism.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .config import SweepSpec
from .driver import Regime, SimConfig, run_simulation
from .output import REGIME_MAP_HEADER, _write_text, fmt, sanitize_status


@dataclass(frozen=True)
class RegimeMapRecord:
    fk: float
    rp: float
    sigma: float
    regime: str = ""
    oscillating_explosion: bool = False
    psi_max_final: float | None = None
    theta_max_final: float | None = None
    t_explosion: float | None = None
    status: str = "ok"

    def to_row(self) -> str:
        def opt(v):
            return "" if v is None else fmt(v)

        osc = ""
        if self.status == "ok":
            osc = "true" if self.oscillating_explosion else "false"
        return ",".join((fmt(self.fk), fmt(self.rp), fmt(self.sigma), self.regime,
                         osc, opt(self.psi_max_final), opt(self.theta_max_final),
                         opt(self.t_explosion), self.status))


def run_point(cfg: SimConfig) -> RegimeMapRecord:
    """One sweep cell: run, classify, reduce to a record.  Any exception is
    folded into the status column."""
    try:
        result = run_simulation(cfg)
    except Exception as exc:
        return RegimeMapRecord(fk=cfg.fk, rp=cfg.rp, sigma=cfg.sigma, regime="",
                               status=sanitize_status(f"{type(exc).__name__}: {exc}"))
    series, label = result.series, result.label
    return RegimeMapRecord(
        fk=cfg.fk, rp=cfg.rp, sigma=cfg.sigma,
        regime=label.regime.value,
        oscillating_explosion=label.oscillating_explosion,
        psi_max_final=float(series.psi_max[-1]),
        theta_max_final=float(series.theta_max[-1]),
        t_explosion=label.t_explosion,
    )


def sweep_configs(spec: SweepSpec) -> list[SimConfig]:
    """The sweep's cells in record order: rp outer, fk inner."""
    return [replace(spec.base, fk=fk, rp=rp, sigma=spec.sigma)
            for rp in spec.rp_values() for fk in spec.fk_values()]


def run_sweep(spec: SweepSpec, jobs: int | None = None) -> list[RegimeMapRecord]:
    """Run every cell, up to `jobs` (default spec.parallelism) concurrently.

    The result list order, and therefore the rendered file, is independent
    of jobs and of scheduling.
    """
    configs = sweep_configs(spec)
    jobs = spec.parallelism if jobs is None else jobs
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    if jobs == 1 or len(configs) <= 1:
        return [run_point(cfg) for cfg in configs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_point, configs))


def render_regime_map(records) -> str:
    lines = [REGIME_MAP_HEADER]
    lines.extend(record.to_row() for record in records)
    return "\n".join(lines) + "\n"


def write_regime_map(records, path) -> Path:
    return _write_text(path, render_regime_map(records))
