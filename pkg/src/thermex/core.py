"""Parameter groups, grid and field containers for the square porous cavity.

The working domain is the dimensionless square [0, 2] x [0, 2] discretized on
a uniform node-centered grid.  Temperature-like fields carry mixed boundary
conditions (insulated side walls, cold top and bottom); stream-function-like
fields vanish on the whole boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

DOMAIN_SIZE = 2.0


class ParameterError(ValueError):
    """A physical or numerical parameter is out of its admissible range."""


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional reaction, transport and medium properties.

    Attributes
    ----------
    e_act : activation energy of the exothermic reaction
    q_heat : heat release of the reaction
    k0 : reaction-rate prefactor
    r_gas : universal gas constant
    t0 : ambient (wall) temperature
    kappa : thermal diffusivity of the saturated medium
    length : macroscopic length scale (the cavity side is twice this)
    permeability : permeability of the porous matrix
    rho : fluid density (constant, Boussinesq)
    beta : thermal expansion coefficient
    gravity : gravitational acceleration
    mu : viscosity
    alpha : dimensionless prefactor on the source intensity (default 1)
    """

    e_act: float
    q_heat: float
    k0: float
    r_gas: float
    t0: float
    kappa: float
    length: float
    permeability: float
    rho: float
    beta: float
    gravity: float
    mu: float
    alpha: float = 1.0

    def __post_init__(self):
        for name, value in vars(self).items():
            if not (value > 0.0 and math.isfinite(value)):
                raise ParameterError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class DimensionlessParams:
    """Dimensionless groups: source intensity fk, porous Rayleigh number rp,
    and the vorticity relaxation time sigma (0 selects the quasi-stationary
    momentum closure)."""

    fk: float
    rp: float
    sigma: float = 0.0

    def __post_init__(self):
        for name in ("fk", "rp", "sigma"):
            value = getattr(self, name)
            if not (value >= 0.0 and math.isfinite(value)):
                raise ParameterError(f"{name} must be >= 0 and finite, got {value!r}")


def nondimensionalize(p: PhysicalParams) -> DimensionlessParams:
    """Collapse dimensional properties into the three governing groups.

    fk measures exothermic heat production against conduction, rp is the
    porous-medium Rayleigh number scaled by permeability, and sigma is the
    ratio of the Darcy to the Prandtl number (the dimensionless momentum
    relaxation time).
    """
    arrhenius = math.exp(-p.e_act / (p.r_gas * p.t0))
    fk = (p.e_act * p.q_heat * p.k0 * p.alpha * arrhenius * p.length**2
          / (p.r_gas * p.t0**2 * p.kappa))
    rayleigh = (p.gravity * p.beta * p.r_gas * p.t0**2 * p.length**3
                / (p.e_act * p.kappa * p.mu))
    rp = p.permeability * p.rho * rayleigh / p.length**2
    sigma = (p.permeability / p.length**2) * (p.kappa / p.mu)
    return DimensionlessParams(fk=fk, rp=rp, sigma=sigma)


@dataclass(frozen=True)
class Grid:
    """Uniform node-centered grid on [0, 2]^2 with n cells per direction.

    Nodes sit at x_i = i*h, i = 0..n, h = 2/n.  n must be even (so the
    vertical midline x = 1 is a node column) and at least 8.
    """

    n: int

    def __post_init__(self):
        if self.n < 8:
            raise ParameterError(f"grid needs n >= 8, got {self.n}")
        if self.n % 2:
            raise ParameterError(f"grid needs even n, got {self.n}")

    @property
    def h(self) -> float:
        return DOMAIN_SIZE / self.n

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n + 1, self.n + 1)

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, DOMAIN_SIZE, self.n + 1)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Node coordinate arrays (X, Y), row index = y, column index = x."""
        return np.meshgrid(self.nodes, self.nodes)


class BCKind(Enum):
    # d/dx = 0 on x = 0, 2 (mirror ghost); value pinned to 0 on y = 0, 2
    THETA_MIXED = "theta-mixed"
    # value pinned to 0 on the whole boundary
    DIRICHLET_ZERO = "dirichlet-zero"


@dataclass
class ScalarField:
    """A scalar nodal field with its boundary-condition kind.

    values[j, i] is the value at (x_i, y_j).  Construction validates that the
    stored boundary rows/columns honor the declared kind exactly; operations
    treat fields as immutable and return new ones.
    """

    grid: Grid
    bc: BCKind
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != self.grid.shape:
            raise ParameterError(
                f"field shape {self.values.shape} does not match grid {self.grid.shape}")
        v = self.values
        if self.bc is BCKind.DIRICHLET_ZERO:
            edges = (v[0, :], v[-1, :], v[:, 0], v[:, -1])
        else:
            edges = (v[0, :], v[-1, :])
        for edge in edges:
            if np.any(edge != 0.0):
                raise ParameterError(f"boundary values violate {self.bc.value} condition")

    @classmethod
    def zeros(cls, grid: Grid, bc: BCKind) -> "ScalarField":
        return cls(grid, bc, np.zeros(grid.shape))

    @classmethod
    def from_function(cls, grid: Grid, bc: BCKind, fn) -> "ScalarField":
        """Sample fn(X, Y) on the nodes, clamping bc-pinned edges to exact 0."""
        x_mesh, y_mesh = grid.mesh()
        v = np.asarray(fn(x_mesh, y_mesh), dtype=np.float64)
        if v.shape != grid.shape:
            raise ParameterError("sampled function has wrong shape")
        v = v.copy()
        v[0, :] = 0.0
        v[-1, :] = 0.0
        if bc is BCKind.DIRICHLET_ZERO:
            v[:, 0] = 0.0
            v[:, -1] = 0.0
        return cls(grid, bc, v)

    def copy(self) -> "ScalarField":
        return ScalarField(self.grid, self.bc, self.values.copy())


@dataclass
class VelocityField:
    """Nodal velocity components; u = 0 on the x walls, v = 0 on the y walls."""

    grid: Grid
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        for name, comp in (("u", self.u), ("v", self.v)):
            comp = np.asarray(comp, dtype=np.float64)
            if comp.shape != self.grid.shape:
                raise ParameterError(f"{name} shape {comp.shape} does not match grid")
        if np.any(self.u[:, 0] != 0.0) or np.any(self.u[:, -1] != 0.0):
            raise ParameterError("u must vanish on the x walls")
        if np.any(self.v[0, :] != 0.0) or np.any(self.v[-1, :] != 0.0):
            raise ParameterError("v must vanish on the y walls")

    @classmethod
    def zero(cls, grid: Grid) -> "VelocityField":
        return cls(grid, np.zeros(grid.shape), np.zeros(grid.shape))

    def max_speed(self) -> float:
        return max(np.abs(self.u).max(), np.abs(self.v).max())


def _deriv_axis0(a: np.ndarray, h: float) -> np.ndarray:
    """Second-order d/dy along rows: central inside, one-sided at y walls."""
    out = np.empty_like(a)
    out[1:-1, :] = (a[2:, :] - a[:-2, :]) / (2.0 * h)
    out[0, :] = (-3.0 * a[0, :] + 4.0 * a[1, :] - a[2, :]) / (2.0 * h)
    out[-1, :] = (3.0 * a[-1, :] - 4.0 * a[-2, :] + a[-3, :]) / (2.0 * h)
    return out


def _deriv_axis1(a: np.ndarray, h: float) -> np.ndarray:
    """Second-order d/dx along columns: central inside, one-sided at x walls."""
    out = np.empty_like(a)
    out[:, 1:-1] = (a[:, 2:] - a[:, :-2]) / (2.0 * h)
    out[:, 0] = (-3.0 * a[:, 0] + 4.0 * a[:, 1] - a[:, 2]) / (2.0 * h)
    out[:, -1] = (3.0 * a[:, -1] - 4.0 * a[:, -2] + a[:, -3]) / (2.0 * h)
    return out


def velocity_from_stream(psi: ScalarField) -> VelocityField:
    """u = d(psi)/dy, v = -d(psi)/dx from a stream function vanishing on the
    boundary.  The discrete pair is divergence-free at interior nodes (the
    central cross-derivatives cancel exactly)."""
    if psi.bc is not BCKind.DIRICHLET_ZERO:
        raise ParameterError("stream function must carry dirichlet-zero conditions")
    h = psi.grid.h
    u = _deriv_axis0(psi.values, h)
    v = -_deriv_axis1(psi.values, h)
    return VelocityField(psi.grid, u, v)


def x_derivative(theta: ScalarField) -> ScalarField:
    """d(theta)/dx for a mixed-condition field: central differences inside,
    exactly 0 on the x walls (consistent with the insulation condition)."""
    if theta.bc is not BCKind.THETA_MIXED:
        raise ParameterError("x_derivative expects a theta-mixed field")
    h = theta.grid.h
    out = np.zeros_like(theta.values)
    out[:, 1:-1] = (theta.values[:, 2:] - theta.values[:, :-2]) / (2.0 * h)
    return ScalarField(theta.grid, BCKind.DIRICHLET_ZERO, out)


def mean(field: ScalarField) -> float:
    """Trapezoidal average of the field over the square (integral / 4)."""
    w = np.ones(field.grid.n + 1)
    w[0] = w[-1] = 0.5
    h = field.grid.h
    return float((w[:, None] * w[None, :] * field.values).sum() * h * h / 4.0)


def max_abs(field: ScalarField) -> float:
    return float(np.abs(field.values).max())


def local_extrema(field: ScalarField, rel_threshold: float = 0.01) -> tuple[int, int]:
    """Count strict interior local maxima and minima of the field.

    A node qualifies when it strictly dominates all 8 neighbors and its
    magnitude is at least rel_threshold times the field's max magnitude.
    Returns (n_maxima, n_minima); useful for counting convection vortices in
    a stream-function snapshot.
    """
    v = field.values
    c = v[1:-1, 1:-1]
    neighbors = (v[:-2, 1:-1], v[2:, 1:-1], v[1:-1, :-2], v[1:-1, 2:],
                 v[:-2, :-2], v[:-2, 2:], v[2:, :-2], v[2:, 2:])
    is_max = np.ones(c.shape, dtype=bool)
    is_min = np.ones(c.shape, dtype=bool)
    for nb in neighbors:
        is_max &= c > nb
        is_min &= c < nb
    floor = rel_threshold * np.abs(v).max()
    big = np.abs(c) >= floor
    return int((is_max & big).sum()), int((is_min & big).sum())
