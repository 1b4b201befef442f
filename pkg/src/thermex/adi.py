"""Alternating-direction time stepping for the reactive advection-diffusion
equation, plus the one-dimensional steady-profile oracle.

The temperature equation

    d(theta)/dt + u d(theta)/dx + v d(theta)/dy
        = laplacian(theta) + fk * exp(theta)

is advanced with a Peaceman-Rachford split: a half-step implicit in x
(diffusion and x-advection in one tridiagonal solve, mirror-ghost closure of
the insulated x walls), then a half-step implicit in y (rows at y = 0, 2
pinned to zero).  The exponential source is applied explicitly, half per
sub-step, frozen at the sub-step's starting temperature.  Runaway growth is
reported through a blow-up flag, never an exception: near criticality that
is the physically expected outcome.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.optimize import brentq

from .core import BCKind, ParameterError, ScalarField, VelocityField


class NoSteadySolutionError(RuntimeError):
    """The steady two-point problem has no solution at this intensity."""


@dataclass(frozen=True)
class ThermalStepConfig:
    """Step size and scheme switches for adi_step.

    advection_scheme is "central" (second order) or "upwind" (first order,
    monotone at any cell Peclet number).  source_treatment names the only
    supported handling of the exponential source and exists to pin that
    contract down explicitly.  theta_cap, when set, makes adi_step flag any
    step whose maximum reaches the cap.
    """

    dt: float
    advection_scheme: str = "central"
    source_treatment: str = "explicit-split"
    theta_cap: float | None = None

    def __post_init__(self):
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise ParameterError(f"dt must be positive and finite, got {self.dt!r}")
        if self.advection_scheme not in ("central", "upwind"):
            raise ParameterError(f"unknown advection scheme {self.advection_scheme!r}")
        if self.source_treatment != "explicit-split":
            raise ParameterError(f"unsupported source treatment {self.source_treatment!r}")
        if self.theta_cap is not None and not self.theta_cap > 0.0:
            raise ParameterError(f"theta_cap must be positive, got {self.theta_cap!r}")


def stable_dt(h: float, speed: float, fk: float, theta_max: float,
              dt_user: float) -> float:
    """Largest admissible step: the user's dt capped by the advection bound
    0.25*h/speed and the explicit-source bound 0.5*exp(-theta_max)/fk.  The
    implicit diffusion sweeps themselves impose no restriction."""
    dt = min(dt_user, 0.25 * h / (speed + 1e-30))
    if fk > 0.0:
        dt = min(dt, 0.5 * math.exp(-theta_max) / fk)
    return dt


@njit(cache=True)
def _sweep_x(theta, u, v, fk, dt, h, upwind, forcing, out):
    """First half-step: implicit in x along each interior row.

    Insulated walls enter through a mirror ghost (theta[-1] = theta[1]), so
    the wall columns are genuine unknowns; rows at y = 0, 2 stay pinned to 0.
    The right side carries the explicit y-terms and half the source, both
    frozen at the starting temperature.
    """
    n1 = theta.shape[0]
    r = 0.5 * dt
    rh2 = r / (h * h)
    rh = r / (2.0 * h)
    ruh = r / h
    diag = 1.0 + 2.0 * rh2
    cp = np.empty(n1)
    dp = np.empty(n1)
    for j in range(n1):
        if j == 0 or j == n1 - 1:
            for i in range(n1):
                out[j, i] = 0.0
            continue
        # forward elimination, wall column i = 0 first
        b = diag
        c = -2.0 * rh2
        if upwind:
            if u[j, 0] >= 0.0:
                b += ruh * u[j, 0]
                c -= ruh * u[j, 0]
            else:
                b -= ruh * u[j, 0]
                c += ruh * u[j, 0]
        ydiff = (theta[j + 1, 0] - 2.0 * theta[j, 0] + theta[j - 1, 0]) / (h * h)
        if upwind:
            if v[j, 0] >= 0.0:
                yadv = v[j, 0] * (theta[j, 0] - theta[j - 1, 0]) / h
            else:
                yadv = v[j, 0] * (theta[j + 1, 0] - theta[j, 0]) / h
        else:
            yadv = v[j, 0] * (theta[j + 1, 0] - theta[j - 1, 0]) / (2.0 * h)
        rhs = theta[j, 0] + r * (ydiff - yadv + fk * np.exp(theta[j, 0]) + forcing[j, 0])
        cp[0] = c / b
        dp[0] = rhs / b
        for i in range(1, n1 - 1):
            if upwind:
                if u[j, i] >= 0.0:
                    a = -rh2 - ruh * u[j, i]
                    b = diag + ruh * u[j, i]
                    c = -rh2
                else:
                    a = -rh2
                    b = diag - ruh * u[j, i]
                    c = -rh2 + ruh * u[j, i]
            else:
                a = -rh2 - rh * u[j, i]
                b = diag
                c = -rh2 + rh * u[j, i]
            ydiff = (theta[j + 1, i] - 2.0 * theta[j, i] + theta[j - 1, i]) / (h * h)
            if upwind:
                if v[j, i] >= 0.0:
                    yadv = v[j, i] * (theta[j, i] - theta[j - 1, i]) / h
                else:
                    yadv = v[j, i] * (theta[j + 1, i] - theta[j, i]) / h
            else:
                yadv = v[j, i] * (theta[j + 1, i] - theta[j - 1, i]) / (2.0 * h)
            rhs = theta[j, i] + r * (ydiff - yadv + fk * np.exp(theta[j, i]) + forcing[j, i])
            den = b - a * cp[i - 1]
            cp[i] = c / den
            dp[i] = (rhs - a * dp[i - 1]) / den
        # wall column i = n, mirror ghost on the other side
        a = -2.0 * rh2
        b = diag
        if upwind:
            if u[j, n1 - 1] >= 0.0:
                a -= ruh * u[j, n1 - 1]
                b += ruh * u[j, n1 - 1]
            else:
                a += ruh * u[j, n1 - 1]
                b -= ruh * u[j, n1 - 1]
        ydiff = (theta[j + 1, n1 - 1] - 2.0 * theta[j, n1 - 1] + theta[j - 1, n1 - 1]) / (h * h)
        if upwind:
            if v[j, n1 - 1] >= 0.0:
                yadv = v[j, n1 - 1] * (theta[j, n1 - 1] - theta[j - 1, n1 - 1]) / h
            else:
                yadv = v[j, n1 - 1] * (theta[j + 1, n1 - 1] - theta[j, n1 - 1]) / h
        else:
            yadv = v[j, n1 - 1] * (theta[j + 1, n1 - 1] - theta[j - 1, n1 - 1]) / (2.0 * h)
        rhs = (theta[j, n1 - 1]
               + r * (ydiff - yadv + fk * np.exp(theta[j, n1 - 1]) + forcing[j, n1 - 1]))
        den = b - a * cp[n1 - 2]
        out[j, n1 - 1] = (rhs - a * dp[n1 - 2]) / den
        for i in range(n1 - 2, -1, -1):
            out[j, i] = dp[i] - cp[i] * out[j, i + 1]


@njit(cache=True)
def _sweep_y(star, u, v, fk, dt, h, upwind, forcing, out):
    """Second half-step: implicit in y along each column, with the explicit
    x-terms (mirror closure at the walls) and the second source half frozen
    at the intermediate temperature."""
    n1 = star.shape[0]
    r = 0.5 * dt
    rh2 = r / (h * h)
    rh = r / (2.0 * h)
    ruh = r / h
    diag = 1.0 + 2.0 * rh2
    cp = np.empty(n1)
    dp = np.empty(n1)
    for i in range(n1):
        for j in range(1, n1 - 1):
            if i == 0:
                xdiff = 2.0 * (star[j, 1] - star[j, 0]) / (h * h)
                if upwind:
                    if u[j, 0] >= 0.0:
                        xadv = u[j, 0] * (star[j, 0] - star[j, 1]) / h
                    else:
                        xadv = u[j, 0] * (star[j, 1] - star[j, 0]) / h
                else:
                    xadv = 0.0
            elif i == n1 - 1:
                xdiff = 2.0 * (star[j, n1 - 2] - star[j, n1 - 1]) / (h * h)
                if upwind:
                    if u[j, i] >= 0.0:
                        xadv = u[j, i] * (star[j, i] - star[j, i - 1]) / h
                    else:
                        xadv = u[j, i] * (star[j, i - 1] - star[j, i]) / h
                else:
                    xadv = 0.0
            else:
                xdiff = (star[j, i + 1] - 2.0 * star[j, i] + star[j, i - 1]) / (h * h)
                if upwind:
                    if u[j, i] >= 0.0:
                        xadv = u[j, i] * (star[j, i] - star[j, i - 1]) / h
                    else:
                        xadv = u[j, i] * (star[j, i + 1] - star[j, i]) / h
                else:
                    xadv = u[j, i] * (star[j, i + 1] - star[j, i - 1]) / (2.0 * h)
            rhs = star[j, i] + r * (xdiff - xadv + fk * np.exp(star[j, i]) + forcing[j, i])
            if upwind:
                if v[j, i] >= 0.0:
                    a = -rh2 - ruh * v[j, i]
                    b = diag + ruh * v[j, i]
                    c = -rh2
                else:
                    a = -rh2
                    b = diag - ruh * v[j, i]
                    c = -rh2 + ruh * v[j, i]
            else:
                a = -rh2 - rh * v[j, i]
                b = diag
                c = -rh2 + rh * v[j, i]
            if j == 1:
                # the a-coefficient multiplies the pinned zero at y = 0
                cp[1] = c / b
                dp[1] = rhs / b
            else:
                den = b - a * cp[j - 1]
                cp[j] = c / den
                dp[j] = (rhs - a * dp[j - 1]) / den
        out[0, i] = 0.0
        out[n1 - 1, i] = 0.0
        out[n1 - 2, i] = dp[n1 - 2]
        for j in range(n1 - 3, 0, -1):
            out[j, i] = dp[j] - cp[j] * out[j + 1, i]


def adi_step(theta: ScalarField, vel: VelocityField, fk: float,
             cfg: ThermalStepConfig, forcing=None, t: float = 0.0):
    """Advance theta by one full step dt; returns (new_field, blew_up).

    blew_up is True when any updated value is non-finite or, with a
    configured theta_cap, the maximum reaches it; the field is returned
    either way so callers can inspect the terminal state.  forcing, when
    given, is a callable of time returning a nodal array added to the
    source; it is sampled at t and t + dt/2 for the two sub-steps (used by
    manufactured-solution tests and external-heating studies).
    """
    if theta.bc is not BCKind.THETA_MIXED:
        raise ParameterError("adi_step expects a theta-mixed temperature field")
    if vel.grid != theta.grid:
        raise ParameterError("velocity grid does not match temperature grid")
    if not (fk >= 0.0 and math.isfinite(fk)):
        raise ParameterError(f"fk must be >= 0 and finite, got {fk!r}")
    shape = theta.grid.shape
    if forcing is None:
        g1 = g2 = np.zeros(shape)
    else:
        g1 = np.asarray(forcing(t), dtype=np.float64)
        g2 = np.asarray(forcing(t + 0.5 * cfg.dt), dtype=np.float64)
        if g1.shape != shape or g2.shape != shape:
            raise ParameterError("forcing arrays do not match the grid")
    upwind = cfg.advection_scheme == "upwind"
    star = np.empty(shape)
    out = np.empty(shape)
    _sweep_x(theta.values, vel.u, vel.v, fk, cfg.dt, theta.grid.h, upwind, g1, star)
    _sweep_y(star, vel.u, vel.v, fk, cfg.dt, theta.grid.h, upwind, g2, out)
    new = ScalarField(theta.grid, BCKind.THETA_MIXED, out)
    blew = not bool(np.all(np.isfinite(out)))
    if not blew and cfg.theta_cap is not None and out.max() >= cfg.theta_cap:
        blew = True
    return new, blew


# ---------------------------------------------------------------------------
# One-dimensional steady-profile oracle
#
# Between the insulated walls the steady problem collapses to
#     theta'' + fk * exp(theta) = 0,   theta(0) = theta(2) = 0,
# solved here by shooting on the initial slope with classical RK4.  This
# shares no machinery with the alternating-direction path above, so it can
# serve as an independent check on it.

_SHOOT_STEPS = 4096
_SLOPE_MAX = 12.0


def _shoot_batch(fk: float, slopes: np.ndarray, steps: int) -> np.ndarray:
    """Terminal residual theta(2) for an array of initial slopes."""
    dy = 2.0 / steps
    th = np.zeros_like(slopes)
    w = slopes.astype(np.float64).copy()
    for _ in range(steps):
        k1t = w
        k1w = -fk * np.exp(th)
        k2t = w + 0.5 * dy * k1w
        k2w = -fk * np.exp(th + 0.5 * dy * k1t)
        k3t = w + 0.5 * dy * k2w
        k3w = -fk * np.exp(th + 0.5 * dy * k2t)
        k4t = w + dy * k3w
        k4w = -fk * np.exp(th + dy * k3t)
        th = th + (dy / 6.0) * (k1t + 2.0 * k2t + 2.0 * k3t + k4t)
        w = w + (dy / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
    return th


def _shoot_scalar(fk: float, slope: float, steps: int, record=None) -> float:
    """Scalar twin of _shoot_batch; optionally records theta every
    (steps // len(record) - 1) sub-steps into the given node array."""
    dy = 2.0 / steps
    th, w = 0.0, slope
    if record is not None:
        per_cell = steps // (len(record) - 1)
        record[0] = 0.0
    for k in range(steps):
        k1t = w
        k1w = -fk * math.exp(th)
        k2t = w + 0.5 * dy * k1w
        k2w = -fk * math.exp(th + 0.5 * dy * k1t)
        k3t = w + 0.5 * dy * k2w
        k3w = -fk * math.exp(th + 0.5 * dy * k2t)
        k4t = w + dy * k3w
        k4w = -fk * math.exp(th + dy * k3t)
        th += (dy / 6.0) * (k1t + 2.0 * k2t + 2.0 * k3t + k4t)
        w += (dy / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        if record is not None and (k + 1) % per_cell == 0:
            record[(k + 1) // per_cell] = th
    return th


def _slope_peak(fk: float) -> tuple[float, float]:
    """Locate the slope maximizing the terminal value by nested scans."""
    lo, hi = 0.0, _SLOPE_MAX
    best_s, best_g = 0.0, -np.inf
    for _ in range(3):
        s = np.linspace(lo, hi, 241)
        g = _shoot_batch(fk, s, _SHOOT_STEPS)
        i = int(np.argmax(g))
        best_s, best_g = float(s[i]), float(g[i])
        lo = float(s[max(i - 1, 0)])
        hi = float(s[min(i + 1, len(s) - 1)])
    return best_s, best_g


def steady_1d_profile(fk: float, n: int) -> np.ndarray:
    """Lower-branch steady profile sampled at the n+1 nodes of [0, 2].

    Shooting on the initial slope with bisection to the first (stable-branch)
    root of the terminal residual; raises NoSteadySolutionError when the
    terminal value stays negative for every slope, i.e. fk exceeds the 1D
    critical intensity.
    """
    if not (fk > 0.0 and math.isfinite(fk)):
        raise ParameterError(f"fk must be positive and finite, got {fk!r}")
    if n < 2:
        raise ParameterError(f"need at least 2 cells, got n={n}")
    s_peak, g_peak = _slope_peak(fk)
    if g_peak <= 0.0:
        raise NoSteadySolutionError(
            f"no steady 1D profile at fk={fk}: terminal value peaks at {g_peak:.3e}")
    steps = n * max(1, -(-_SHOOT_STEPS // n))
    slope = brentq(lambda s: _shoot_scalar(fk, s, steps), 0.0, s_peak, xtol=1e-14)
    profile = np.empty(n + 1)
    residual = _shoot_scalar(fk, slope, steps, record=profile)
    if abs(residual) > 1e-10:
        raise RuntimeError(f"shooting residual {residual:.3e} out of tolerance")
    return profile


def critical_fk_1d(tol: float = 1e-4) -> float:
    """1D critical intensity: the largest fk admitting a steady profile,
    bracketed by bisection on profile existence."""
    lo, hi = 0.5, 2.0
    if _slope_peak(lo)[1] <= 0.0 or _slope_peak(hi)[1] > 0.0:
        raise RuntimeError("critical intensity not bracketed by [0.5, 2.0]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _slope_peak(mid)[1] > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
