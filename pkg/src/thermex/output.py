"""Delimited text output with bit-stable formatting.

Every float is written with repr, the shortest decimal string that round
trips to the same double, so identical runs produce byte-identical files
on any platform.  Newlines are always '\\n'.
"""

from __future__ import annotations

from pathlib import Path

from .core import ScalarField
from .driver import SimResult, TimeSeries

TIMESERIES_HEADER = "t,theta_max,theta_mean,psi_max,psi_mean,omega_max"
PHASE_HEADER = "psi_mean,theta_mean"
REGIME_MAP_HEADER = ("fk,rp,sigma,regime,osc_explosion,"
                     "psi_max_final,theta_max_final,t_explosion,status")


def fmt(value: float) -> str:
    """Shortest round-trip decimal representation."""
    return repr(float(value))


def _write_text(path, text):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"writing {path}: {exc}") from exc
    return path


def render_timeseries(series: TimeSeries) -> str:
    lines = [TIMESERIES_HEADER]
    for i in range(len(series)):
        lines.append(",".join((fmt(series.t[i]), fmt(series.theta_max[i]),
                               fmt(series.theta_mean[i]), fmt(series.psi_max[i]),
                               fmt(series.psi_mean[i]), fmt(series.omega_max[i]))))
    return "\n".join(lines) + "\n"


def render_phase(series: TimeSeries) -> str:
    lines = [PHASE_HEADER]
    for i in range(len(series)):
        lines.append(f"{fmt(series.psi_mean[i])},{fmt(series.theta_mean[i])}")
    return "\n".join(lines) + "\n"


def render_field(field: ScalarField, name: str) -> str:
    grid = field.grid
    lines = [f"# n={grid.n} h={fmt(grid.h)} field={name}"]
    for row in field.values:  # row index is y, column index is x
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def write_timeseries(series: TimeSeries, path) -> Path:
    return _write_text(path, render_timeseries(series))


def write_phase(series: TimeSeries, path) -> Path:
    return _write_text(path, render_phase(series))


def write_field(field: ScalarField, name: str, path) -> Path:
    return _write_text(path, render_field(field, name))


def emit_outputs(result: SimResult, out_dir) -> dict[str, Path]:
    """Write the standard artifacts of one run into out_dir.

    Returns {kind: path} for timeseries, phase, theta, psi and, for the
    unsteady closure, omega.
    """
    out_dir = Path(out_dir)
    written = {
        "timeseries": write_timeseries(result.series, out_dir / "timeseries.csv"),
        "phase": write_phase(result.series, out_dir / "phase.csv"),
        "theta": write_field(result.theta, "theta", out_dir / "theta_final.csv"),
        "psi": write_field(result.psi, "psi", out_dir / "psi_final.csv"),
    }
    if result.omega is not None:
        written["omega"] = write_field(result.omega, "omega",
                                       out_dir / "omega_final.csv")
    return written


def sanitize_status(message: str) -> str:
    """One CSV cell: no newlines, commas flattened, length capped."""
    flat = " ".join(str(message).split()).replace(",", ";")
    return flat[:200] if flat else "error"
