"""Momentum closures for seepage flow driven by horizontal temperature
gradients.

Two closures produce the stream function: the quasi-stationary one solves
-laplacian(psi) = rp * d(theta)/dx instantaneously, and the relaxational one
advances the vorticity

    sigma * d(omega)/dt + omega = rp * d(theta)/dx,    -laplacian(psi) = omega

by explicit Euler.  As sigma -> 0 the second collapses onto the first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BCKind, ParameterError, ScalarField, x_derivative
from .poisson import DstPlan, solve_poisson


class StabilityError(ValueError):
    """The requested step exceeds the explicit relaxation stability bound."""


@dataclass
class FlowState:
    """Stream function plus, for the relaxational closure, its vorticity.

    sigma == 0 (omega is None) marks the quasi-stationary closure; sigma > 0
    carries the vorticity that -laplacian(psi) reproduces up to solver
    rounding.
    """

    psi: ScalarField
    omega: ScalarField | None = None
    sigma: float = 0.0

    def __post_init__(self):
        if self.sigma < 0.0 or not math.isfinite(self.sigma):
            raise ParameterError(f"sigma must be >= 0 and finite, got {self.sigma!r}")
        if (self.sigma > 0.0) != (self.omega is not None):
            raise ParameterError("omega must be present exactly when sigma > 0")


def closure_quasistationary(plan: DstPlan, theta: ScalarField, rp: float) -> FlowState:
    """Instantaneous stream function -laplacian(psi) = rp * d(theta)/dx."""
    if not (rp >= 0.0 and math.isfinite(rp)):
        raise ParameterError(f"rp must be >= 0 and finite, got {rp!r}")
    if rp == 0.0:
        # identical to transforming a zero source, skipping two transforms
        psi = ScalarField.zeros(plan.grid, BCKind.DIRICHLET_ZERO)
    else:
        forcing = x_derivative(theta)
        forcing.values *= rp
        psi = solve_poisson(plan, forcing)
    return FlowState(psi=psi)


def vorticity_euler_step(plan: DstPlan, state: FlowState, theta: ScalarField,
                         rp: float, dt: float) -> FlowState:
    """One explicit Euler step of the vorticity relaxation, then the Poisson
    solve for the new stream function.

    Rejects dt above the stability bound 0.5*sigma.  Non-finite inputs
    propagate as non-finite outputs (the blow-up signal) rather than raising:
    the Poisson solve is skipped in that case.
    """
    if state.sigma <= 0.0 or state.omega is None:
        raise ParameterError("vorticity step needs a relaxational state (sigma > 0)")
    if not (rp >= 0.0 and math.isfinite(rp)):
        raise ParameterError(f"rp must be >= 0 and finite, got {rp!r}")
    if not (dt > 0.0):
        raise ParameterError(f"dt must be positive, got {dt!r}")
    if dt > 0.5 * state.sigma:
        raise StabilityError(
            f"dt={dt!r} exceeds the explicit relaxation bound 0.5*sigma={0.5 * state.sigma!r}")
    target = rp * x_derivative(theta).values
    w_new = state.omega.values + (dt / state.sigma) * (target - state.omega.values)
    omega = ScalarField(plan.grid, BCKind.DIRICHLET_ZERO, w_new)
    if np.all(np.isfinite(w_new)):
        psi = solve_poisson(plan, omega)
    else:
        blown = np.full(plan.grid.shape, np.nan)
        blown[0, :] = blown[-1, :] = 0.0
        blown[:, 0] = blown[:, -1] = 0.0
        psi = ScalarField(plan.grid, BCKind.DIRICHLET_ZERO, blown)
    return FlowState(psi=psi, omega=omega, sigma=state.sigma)
