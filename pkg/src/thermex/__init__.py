"""Heat explosion with natural convection in a saturated porous square cavity.

A finite-difference simulator for the coupled temperature / seepage-flow
problem on [0, 2]^2: alternating-direction stepping for the reactive
temperature equation, a sine-transform Poisson solver for the stream
function, quasi-stationary and relaxational momentum closures, regime
classification, critical-intensity bisection and deterministic parameter
sweeps.
"""

from .adi import (NoSteadySolutionError, ThermalStepConfig, adi_step,
                  critical_fk_1d, stable_dt, steady_1d_profile)
from .config import ConfigError, SweepSpec, parse_config, render_config
from .core import (BCKind, DimensionlessParams, Grid, ParameterError,
                   PhysicalParams, ScalarField, VelocityField, local_extrema,
                   max_abs, mean, nondimensionalize, velocity_from_stream,
                   x_derivative)
from .driver import (CriticalResult, Regime, RegimeLabel, SimConfig,
                     SimResult, TimeSeries, classify, critical_fk,
                     run_simulation, semenov)
from .flow import (FlowState, StabilityError, closure_quasistationary,
                   vorticity_euler_step)
from .output import emit_outputs, write_field, write_phase, write_timeseries
from .poisson import DstPlan, build_plan, laplacian_interior, solve_poisson
from .sweep import (RegimeMapRecord, run_point, run_sweep, sweep_configs,
                    write_regime_map)

__all__ = [
    "BCKind", "ConfigError", "CriticalResult", "DimensionlessParams",
    "DstPlan", "FlowState", "Grid", "NoSteadySolutionError", "ParameterError",
    "PhysicalParams", "Regime", "RegimeLabel", "RegimeMapRecord",
    "ScalarField", "SimConfig", "SimResult", "StabilityError", "SweepSpec",
    "ThermalStepConfig", "TimeSeries", "VelocityField", "adi_step",
    "build_plan", "classify", "closure_quasistationary", "critical_fk",
    "critical_fk_1d", "emit_outputs", "laplacian_interior", "local_extrema",
    "max_abs", "mean", "nondimensionalize", "parse_config", "render_config",
    "run_point", "run_simulation", "run_sweep", "semenov", "solve_poisson",
    "stable_dt", "steady_1d_profile", "sweep_configs", "velocity_from_stream",
    "vorticity_euler_step", "write_field", "write_phase", "write_regime_map",
    "write_timeseries", "x_derivative"
]

__version__ = "0.1.0"
