"""Coupled time integration, regime classification and critical-intensity
search for the heated porous cavity."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .adi import ThermalStepConfig, adi_step, stable_dt
from .core import (BCKind, Grid, ParameterError, ScalarField, max_abs, mean,
                   velocity_from_stream, x_derivative)
from .flow import FlowState, closure_quasistationary, vorticity_euler_step
from .poisson import build_plan, solve_poisson


class Regime(Enum):
    NO_CONVECTION = "NoConvectionStationary"
    STATIONARY = "StationaryConvection"
    OSCILLATORY = "OscillatoryConvection"
    EXPLOSION = "Explosion"


@dataclass(frozen=True)
class RegimeLabel:
    regime: Regime
    oscillating_explosion: bool = False
    t_explosion: float | None = None


@dataclass
class TimeSeries:
    """Sampled diagnostics; t is strictly increasing, omega_max is 0 for the
    quasi-stationary closure.  All values are finite except possibly the
    final sample of a run that blew up."""

    t: np.ndarray
    theta_max: np.ndarray
    theta_mean: np.ndarray
    psi_max: np.ndarray
    psi_mean: np.ndarray
    omega_max: np.ndarray

    def __len__(self):
        return len(self.t)


@dataclass(frozen=True)
class SimConfig:
    """Everything one run needs: governing groups, grid, stepping, initial
    data and classification thresholds.

    sigma = 0 runs the quasi-stationary closure; sigma > 0 the relaxational
    one.  dt is an upper bound on the step; each step also honors the
    advection, source and (sigma > 0) relaxation stability caps.  ic_mode
    "symmetric" seeds only the mirror-symmetric mode, "asymmetric" adds an
    equal-amplitude antisymmetric one.  omega_init picks the initial
    vorticity: "consistent" with the initial temperature, or "zero".
    """

    fk: float = 1.0
    rp: float = 0.0
    sigma: float = 0.0
    n: int = 64
    dt: float = 1e-3
    t_end: float = 100.0
    ic_amplitude: float = 1e-2
    ic_mode: str = "symmetric"
    omega_init: str = "consistent"
    advection_scheme: str = "central"
    theta_cap: float = 15.0
    sample_every: int = 50
    transient_fraction: float = 0.5
    osc_rel_threshold: float = 1e-3
    steady_rel_threshold: float = 1e-6

    def __post_init__(self):
        Grid(self.n)  # n validation lives with the grid
        checks = [
            ("fk", self.fk >= 0.0 and math.isfinite(self.fk)),
            ("rp", self.rp >= 0.0 and math.isfinite(self.rp)),
            ("sigma", self.sigma >= 0.0 and math.isfinite(self.sigma)),
            ("dt", self.dt > 0.0 and math.isfinite(self.dt)),
            ("t_end", self.t_end > 0.0 and math.isfinite(self.t_end)),
            ("ic_amplitude", self.ic_amplitude >= 0.0 and math.isfinite(self.ic_amplitude)),
            ("theta_cap", self.theta_cap > 1.0),
            ("sample_every", self.sample_every >= 1),
            ("transient_fraction", 0.0 < self.transient_fraction < 1.0),
            ("osc_rel_threshold", self.osc_rel_threshold > 0.0),
            ("steady_rel_threshold", self.steady_rel_threshold > 0.0),
            ("ic_mode", self.ic_mode in ("symmetric", "asymmetric")),
            ("omega_init", self.omega_init in ("consistent", "zero")),
            ("advection_scheme", self.advection_scheme in ("central", "upwind")),
        ]
        for name, ok in checks:
            if not ok:
                raise ParameterError(f"invalid {name}: {getattr(self, name)!r}")


@dataclass
class SimResult:
    config: SimConfig
    series: TimeSeries
    label: RegimeLabel
    theta: ScalarField
    psi: ScalarField
    omega: ScalarField | None = None


def initial_temperature(cfg: SimConfig) -> ScalarField:
    grid = Grid(cfg.n)
    eps = cfg.ic_amplitude

    def profile(x, y):
        base = np.sin(np.pi * x / 2.0) * np.sin(np.pi * y / 2.0)
        if cfg.ic_mode == "asymmetric":
            base = base + np.sin(np.pi * x) * np.sin(np.pi * y / 2.0)
        return eps * base

    return ScalarField.from_function(grid, BCKind.THETA_MIXED, profile)


def _initial_flow(plan, theta, cfg: SimConfig) -> FlowState:
    if cfg.sigma == 0.0:
        return closure_quasistationary(plan, theta, cfg.rp)
    if cfg.omega_init == "consistent":
        omega = x_derivative(theta)
        omega.values *= cfg.rp
    else:
        omega = ScalarField.zeros(plan.grid, BCKind.DIRICHLET_ZERO)
    return FlowState(psi=solve_poisson(plan, omega), omega=omega, sigma=cfg.sigma)


def run_simulation(cfg: SimConfig) -> SimResult:
    """March the coupled system to t_end or blow-up and classify the outcome.

    Each step updates the flow from the current temperature, derives nodal
    velocities, and advances the temperature one alternating-direction step;
    diagnostics are sampled every sample_every steps plus the initial and
    final instants.  A repeated call with an equal config reproduces the
    series bitwise.
    """
    grid = Grid(cfg.n)
    plan = build_plan(grid)
    theta = initial_temperature(cfg)
    flow = _initial_flow(plan, theta, cfg)
    vel = velocity_from_stream(flow.psi)

    samples = []

    def record(t):
        omax = max_abs(flow.omega) if flow.omega is not None else 0.0
        samples.append((t, max_abs(theta), mean(theta),
                        max_abs(flow.psi), mean(flow.psi), omax))

    record(0.0)
    t = 0.0
    step_idx = 0
    blew = False
    while t < cfg.t_end:
        dt = stable_dt(grid.h, vel.max_speed(), cfg.fk,
                       float(np.max(theta.values)), cfg.dt)
        if cfg.sigma > 0.0:
            dt = min(dt, 0.5 * cfg.sigma)
        dt = min(dt, cfg.t_end - t)
        if cfg.sigma == 0.0:
            flow = closure_quasistationary(plan, theta, cfg.rp)
        else:
            flow = vorticity_euler_step(plan, flow, theta, cfg.rp, dt)
        vel = velocity_from_stream(flow.psi)
        step_cfg = ThermalStepConfig(dt=dt, advection_scheme=cfg.advection_scheme,
                                     theta_cap=cfg.theta_cap)
        theta, blew = adi_step(theta, vel, cfg.fk, step_cfg)
        t += dt
        step_idx += 1
        if blew or t >= cfg.t_end or step_idx % cfg.sample_every == 0:
            record(t)
        if blew:
            break

    arrays = [np.asarray(col, dtype=np.float64) for col in zip(*samples)]
    series = TimeSeries(*arrays)
    label = classify(series, cfg)
    return SimResult(config=cfg, series=series, label=label,
                     theta=theta, psi=flow.psi, omega=flow.omega)


def _strict_peaks(values: np.ndarray) -> int:
    if len(values) < 3:
        return 0
    inner = values[1:-1]
    return int(np.sum((inner > values[:-2]) & (inner > values[2:])))


def classify(series: TimeSeries, cfg: SimConfig) -> RegimeLabel:
    """Label a sampled run.

    Explosion: theta_max reaches theta_cap (or goes non-finite) at some
    sample; flagged oscillating when at least two strict local maxima of
    psi_max precede it.  Otherwise the first transient_fraction of samples
    is dropped and the tail of psi_max is examined: relative peak-to-peak
    above osc_rel_threshold means oscillatory convection, else a terminal
    psi_max above steady_rel_threshold means stationary convection, else
    no convection.
    """
    exploded = ~np.isfinite(series.theta_max) | (series.theta_max >= cfg.theta_cap)
    if np.any(exploded):
        idx = int(np.argmax(exploded))
        n_peaks = _strict_peaks(series.psi_max[:idx])
        return RegimeLabel(Regime.EXPLOSION, oscillating_explosion=n_peaks >= 2,
                           t_explosion=float(series.t[idx]))
    start = int(len(series) * cfg.transient_fraction)
    tail = series.psi_max[start:]
    if len(tail) == 0:
        tail = series.psi_max[-1:]
    hi, lo = float(tail.max()), float(tail.min())
    rel_pp = (hi - lo) / max(hi, cfg.steady_rel_threshold)
    if rel_pp > cfg.osc_rel_threshold:
        return RegimeLabel(Regime.OSCILLATORY)
    if series.psi_max[-1] > cfg.steady_rel_threshold:
        return RegimeLabel(Regime.STATIONARY)
    return RegimeLabel(Regime.NO_CONVECTION)


# ---------------------------------------------------------------------------
# Zero-dimensional balance: dtheta/dt = exp(theta) - lam * theta

_SEMENOV_CAP = 50.0


def semenov(lam: float, theta0: float = 0.0, dt: float = 1e-3,
            t_end: float = 200.0):
    """Integrate the zero-dimensional balance with RK4.

    Returns (t, theta, exploded); integration stops early once theta passes
    a fixed cap, which is the explosion verdict.  Below lam = e the balance
    always explodes from theta0 = 0; above it the trajectory settles onto
    the lower equilibrium.
    """
    if not (lam >= 0.0 and math.isfinite(lam)):
        raise ParameterError(f"lam must be >= 0 and finite, got {lam!r}")
    if not (dt > 0.0 and t_end > 0.0):
        raise ParameterError("dt and t_end must be positive")

    def f(x):
        # clamp the exponent so a post-cap stage evaluation cannot overflow
        return math.exp(min(x, 700.0)) - lam * x

    steps = int(math.ceil(t_end / dt))
    t_out = np.empty(steps + 1)
    th_out = np.empty(steps + 1)
    t_out[0], th_out[0] = 0.0, theta0
    th = theta0
    exploded = False
    used = steps
    for k in range(steps):
        step = min(dt, t_end - k * dt)
        k1 = f(th)
        k2 = f(th + 0.5 * step * k1)
        k3 = f(th + 0.5 * step * k2)
        k4 = f(th + step * k3)
        th = th + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t_out[k + 1] = min((k + 1) * dt, t_end)
        th_out[k + 1] = th
        if not math.isfinite(th) or th >= _SEMENOV_CAP:
            exploded = True
            used = k + 1
            break
    return t_out[:used + 1], th_out[:used + 1], exploded


@dataclass(frozen=True)
class CriticalResult:
    """Bisected critical intensity with the bracket and horizon that
    produced it (explosion onset depends on the integration horizon, so
    t_end is part of the answer)."""

    fk: float
    lo: float
    hi: float
    t_end: float
    runs: int


def critical_fk(cfg: SimConfig, lo: float, hi: float, tol: float = 0.01) -> CriticalResult:
    """Bisect the explosion boundary in fk at fixed remaining config.

    cfg supplies everything but fk.  The endpoints must straddle the
    boundary (lo bounded, hi exploding); probes run sequentially and the
    midpoint of the final bracket is returned.
    """
    if not (0.0 <= lo < hi):
        raise ParameterError(f"need 0 <= lo < hi, got lo={lo!r} hi={hi!r}")
    if not (tol > 0.0):
        raise ParameterError(f"tol must be positive, got {tol!r}")

    runs = 0

    def explodes(fk):
        nonlocal runs
        runs += 1
        result = run_simulation(replace(cfg, fk=fk))
        return result.label.regime is Regime.EXPLOSION

    if explodes(lo):
        raise ParameterError(f"lower endpoint fk={lo} already explodes")
    if not explodes(hi):
        raise ParameterError(f"upper endpoint fk={hi} does not explode")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if explodes(mid):
            hi = mid
        else:
            lo = mid
    return CriticalResult(fk=0.5 * (lo + hi), lo=lo, hi=hi,
                          t_end=cfg.t_end, runs=runs)
