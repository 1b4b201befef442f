"""Unit tests for parameter groups, grids, fields and discrete operators."""

import math

import numpy as np
import pytest

from thermex.core import (BCKind, DimensionlessParams, Grid, ParameterError,
                          PhysicalParams, ScalarField, VelocityField,
                          local_extrema, max_abs, mean, nondimensionalize,
                          velocity_from_stream, x_derivative)


def sample_physical(**overrides):
    base = dict(e_act=8e4, q_heat=5e5, k0=1.2e9, r_gas=8.314, t0=500.0,
                kappa=1e-6, length=0.05, permeability=1e-9, rho=2.0,
                beta=1e-3, gravity=9.81, mu=1e-3)
    base.update(overrides)
    return PhysicalParams(**base)


class TestParameterValidation:
    """Both parameter containers reject out-of-range values by name."""

    def test_physical_accepts_positive_finite(self):
        p = sample_physical()
        assert p.alpha == 1.0

    @pytest.mark.parametrize("field", ["e_act", "t0", "kappa", "mu", "length"])
    @pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
    def test_physical_rejects_nonpositive(self, field, bad):
        with pytest.raises(ParameterError, match=field):
            sample_physical(**{field: bad})

    def test_dimensionless_accepts_zero_rp(self):
        d = DimensionlessParams(fk=1.0, rp=0.0)
        assert d.sigma == 0.0

    @pytest.mark.parametrize("kw", [dict(fk=-0.1, rp=0.0),
                                    dict(fk=1.0, rp=-5.0),
                                    dict(fk=1.0, rp=0.0, sigma=-1e-9),
                                    dict(fk=math.nan, rp=0.0)])
    def test_dimensionless_rejects_negative(self, kw):
        with pytest.raises(ParameterError):
            DimensionlessParams(**kw)


class TestNondimensionalize:
    """The three governing groups follow the defining formulas and their
    exact scaling symmetries."""

    def test_frozen_reference_values(self):
        d = nondimensionalize(sample_physical())
        assert d.fk == pytest.approx(253271875.2863283, rel=1e-12)
        assert d.rp == pytest.approx(0.025487606250000003, rel=1e-12)
        assert d.sigma == pytest.approx(4e-10, rel=1e-12)

    def test_sigma_is_darcy_over_prandtl(self):
        # permeability / length^2 = 1e-6 and kappa / mu = 1 give sigma = 1e-6
        p = sample_physical(permeability=1e-8, length=0.1, kappa=1e-6, mu=1e-6)
        assert nondimensionalize(p).sigma == pytest.approx(1e-6, rel=1e-12)

    @pytest.mark.parametrize("c", [0.5, 2.0, 10.0])
    def test_joint_rescaling_leaves_groups_invariant(self, c):
        p = sample_physical()
        q = sample_physical(kappa=c * p.kappa, k0=c * p.k0, mu=c * p.mu,
                            gravity=c * c * p.gravity)
        d, e = nondimensionalize(p), nondimensionalize(q)
        assert e.fk == pytest.approx(d.fk, rel=1e-12)
        assert e.rp == pytest.approx(d.rp, rel=1e-12)
        assert e.sigma == pytest.approx(d.sigma, rel=1e-12)

    def test_length_scaling_exponents(self):
        d1 = nondimensionalize(sample_physical())
        d2 = nondimensionalize(sample_physical(length=0.1))
        assert d2.fk == pytest.approx(4.0 * d1.fk, rel=1e-12)
        assert d2.rp == pytest.approx(2.0 * d1.rp, rel=1e-12)
        assert d2.sigma == pytest.approx(d1.sigma / 4.0, rel=1e-12)

    def test_monotone_in_reaction_strength(self):
        base = nondimensionalize(sample_physical())
        hot = nondimensionalize(sample_physical(q_heat=1e6))
        assert hot.fk > base.fk
        assert hot.rp == pytest.approx(base.rp, rel=1e-12)


class TestGrid:
    """Node-centered uniform grid on the fixed square."""

    def test_geometry(self):
        g = Grid(32)
        assert g.h == pytest.approx(2.0 / 32)
        assert g.shape == (33, 33)
        assert g.nodes[0] == 0.0
        assert g.nodes[-1] == 2.0
        assert np.allclose(np.diff(g.nodes), g.h)

    def test_mesh_orientation(self):
        x, y = Grid(8).mesh()
        # row index is y, column index is x
        assert np.all(x[0, :] == Grid(8).nodes)
        assert np.all(y[:, 0] == Grid(8).nodes)

    @pytest.mark.parametrize("n", [4, 6, 9, 15])
    def test_rejects_small_or_odd(self, n):
        with pytest.raises(ParameterError):
            Grid(n)


class TestScalarField:
    """Field containers enforce their boundary kind exactly."""

    def test_zeros_and_copy_are_independent(self):
        f = ScalarField.zeros(Grid(8), BCKind.THETA_MIXED)
        g = f.copy()
        g.values[3, 3] = 1.0
        assert f.values[3, 3] == 0.0

    def test_from_function_clamps_pinned_edges(self):
        f = ScalarField.from_function(Grid(16), BCKind.THETA_MIXED,
                                      lambda x, y: np.cos(x + y) + 1.0)
        assert np.all(f.values[0, :] == 0.0)
        assert np.all(f.values[-1, :] == 0.0)
        assert np.any(f.values[:, 0] != 0.0)  # side walls free for theta
        g = ScalarField.from_function(Grid(16), BCKind.DIRICHLET_ZERO,
                                      lambda x, y: np.cos(x + y) + 1.0)
        assert np.all(g.values[:, 0] == 0.0)
        assert np.all(g.values[:, -1] == 0.0)

    def test_rejects_nonzero_pinned_boundary(self):
        vals = np.zeros((9, 9))
        vals[0, 4] = 1e-300
        with pytest.raises(ParameterError, match="boundary"):
            ScalarField(Grid(8), BCKind.THETA_MIXED, vals)
        vals = np.zeros((9, 9))
        vals[4, 0] = 1.0
        with pytest.raises(ParameterError, match="boundary"):
            ScalarField(Grid(8), BCKind.DIRICHLET_ZERO, vals)

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ParameterError, match="shape"):
            ScalarField(Grid(8), BCKind.THETA_MIXED, np.zeros((8, 8)))


class TestVelocityField:
    """Velocity containers enforce the impermeability conditions."""

    def test_zero_and_max_speed(self):
        vel = VelocityField.zero(Grid(8))
        assert vel.max_speed() == 0.0

    def test_rejects_flow_through_walls(self):
        g = Grid(8)
        u = np.zeros(g.shape)
        u[4, 0] = 1.0
        with pytest.raises(ParameterError, match="u must vanish"):
            VelocityField(g, u, np.zeros(g.shape))
        v = np.zeros(g.shape)
        v[0, 4] = 1.0
        with pytest.raises(ParameterError, match="v must vanish"):
            VelocityField(g, np.zeros(g.shape), v)


class TestVelocityFromStream:
    """Differentiating the stream function: accuracy, wall values and the
    discrete incompressibility identity."""

    @staticmethod
    def stream(grid):
        return ScalarField.from_function(
            grid, BCKind.DIRICHLET_ZERO,
            lambda x, y: np.sin(np.pi * x / 2) * np.sin(np.pi * y))

    def test_second_order_convergence(self):
        errors = []
        for n in (16, 32, 64):
            grid = Grid(n)
            vel = velocity_from_stream(self.stream(grid))
            x, y = grid.mesh()
            u_exact = np.pi * np.sin(np.pi * x / 2) * np.cos(np.pi * y)
            v_exact = -(np.pi / 2) * np.cos(np.pi * x / 2) * np.sin(np.pi * y)
            err = max(np.abs(vel.u - u_exact).max(), np.abs(vel.v - v_exact).max())
            errors.append(err)
        for coarse, fine in zip(errors, errors[1:]):
            assert 3.6 <= coarse / fine <= 4.4

    def test_wall_normal_velocities_vanish(self):
        vel = velocity_from_stream(self.stream(Grid(32)))
        assert np.all(vel.u[:, 0] == 0.0)
        assert np.all(vel.u[:, -1] == 0.0)
        assert np.all(vel.v[0, :] == 0.0)
        assert np.all(vel.v[-1, :] == 0.0)

    def test_interior_divergence_is_roundoff(self):
        rng = np.random.default_rng(7)
        grid = Grid(24)
        h = grid.h
        for _ in range(100):
            vals = np.zeros(grid.shape)
            vals[1:-1, 1:-1] = rng.standard_normal((grid.n - 1, grid.n - 1))
            vel = velocity_from_stream(ScalarField(grid, BCKind.DIRICHLET_ZERO, vals))
            div = ((vel.u[1:-1, 2:] - vel.u[1:-1, :-2])
                   + (vel.v[2:, 1:-1] - vel.v[:-2, 1:-1])) / (2 * h)
            assert np.abs(div).max() <= 1e-12 * max(1.0, vel.max_speed())

    def test_requires_dirichlet_field(self):
        theta = ScalarField.zeros(Grid(8), BCKind.THETA_MIXED)
        with pytest.raises(ParameterError):
            velocity_from_stream(theta)


class TestXDerivative:
    """The buoyancy forcing derivative honors the insulated side walls."""

    def test_interior_accuracy_and_zero_walls(self):
        grid = Grid(64)
        theta = ScalarField.from_function(
            grid, BCKind.THETA_MIXED,
            lambda x, y: np.cos(np.pi * x / 2) * np.sin(np.pi * y / 2))
        d = x_derivative(theta)
        x, y = grid.mesh()
        exact = -(np.pi / 2) * np.sin(np.pi * x / 2) * np.sin(np.pi * y / 2)
        assert np.all(d.values[:, 0] == 0.0)
        assert np.all(d.values[:, -1] == 0.0)
        assert np.abs(d.values[:, 1:-1] - exact[:, 1:-1]).max() < 2e-3
        assert d.bc is BCKind.DIRICHLET_ZERO

    def test_requires_mixed_field(self):
        psi = ScalarField.zeros(Grid(8), BCKind.DIRICHLET_ZERO)
        with pytest.raises(ParameterError):
            x_derivative(psi)


class TestReductions:
    """Quadrature and extrema counting used by diagnostics."""

    def test_mean_of_product_sine_mode(self):
        f = ScalarField.from_function(
            Grid(64), BCKind.THETA_MIXED,
            lambda x, y: np.sin(np.pi * x / 2) * np.sin(np.pi * y / 2))
        assert mean(f) == pytest.approx(4.0 / np.pi**2, abs=1e-3)

    def test_mean_matches_composed_trapezoid(self):
        rng = np.random.default_rng(3)
        grid = Grid(16)
        vals = np.zeros(grid.shape)
        vals[1:-1, :] = rng.standard_normal((grid.n - 1, grid.n + 1))
        f = ScalarField(grid, BCKind.THETA_MIXED, vals)
        composed = np.trapezoid(np.trapezoid(vals, dx=grid.h, axis=1),
                                dx=grid.h, axis=0) / 4.0
        assert mean(f) == pytest.approx(composed, rel=1e-13)

    def test_max_abs(self):
        grid = Grid(8)
        vals = np.zeros(grid.shape)
        vals[2, 3] = -7.0
        assert max_abs(ScalarField(grid, BCKind.THETA_MIXED, vals)) == 7.0

    @pytest.mark.parametrize("fn,expected", [
        (lambda x, y: np.sin(np.pi * x / 2) * np.sin(np.pi * y / 2), (1, 0)),
        (lambda x, y: np.sin(np.pi * x) * np.sin(np.pi * y / 2), (1, 1)),
        (lambda x, y: np.sin(np.pi * x) * np.sin(np.pi * y), (2, 2)),
    ])
    def test_extrema_count_vortex_patterns(self, fn, expected):
        f = ScalarField.from_function(Grid(64), BCKind.DIRICHLET_ZERO, fn)
        assert local_extrema(f) == expected

    def test_extrema_threshold_suppresses_weak_vortices(self):
        # one strong cell in the left half plus a 0.5%-amplitude node spike
        # in the flat right half: only the strong cell clears the 1% floor
        grid = Grid(64)
        f = ScalarField.from_function(
            grid, BCKind.DIRICHLET_ZERO,
            lambda x, y: np.where(x < 1, np.sin(np.pi * x), 0.0)
            * np.sin(np.pi * y / 2))
        f.values[32, 48] += 5e-3
        assert local_extrema(f, rel_threshold=0.01) == (1, 0)
        assert local_extrema(f, rel_threshold=1e-6) == (2, 0)
