"""Figure rendering for run reports: untested convenience layer over the
delimited output, kept import-safe for headless use."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .driver import SimResult

_REGIME_STYLE = {
    "NoConvectionStationary": ("tab:gray", "s"),
    "StationaryConvection": ("tab:blue", "o"),
    "OscillatoryConvection": ("tab:green", "^"),
    "Explosion": ("tab:red", "x"),
    "": ("black", "+"),
}


def plot_run(result: SimResult, out_dir) -> dict[str, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = {}
    grid = result.theta.grid
    x, y = grid.mesh()

    fig, axes = plt.subplots(1, 2, figsize=(10, 4.4), constrained_layout=True)
    cf = axes[0].contourf(x, y, result.theta.values, levels=24, cmap="inferno")
    fig.colorbar(cf, ax=axes[0])
    axes[0].set_title("temperature")
    psi = result.psi.values
    scale = np.max(np.abs(psi))
    if scale > 0 and np.isfinite(scale):
        levels = np.linspace(-scale, scale, 21)
        axes[1].contour(x, y, psi, levels=levels[levels != 0.0], colors="k",
                        linewidths=0.7)
    axes[1].set_title("stream function")
    for ax in axes:
        ax.set_aspect("equal")
        ax.set_xlabel("x")
        ax.set_ylabel("y")
    path = out_dir / "fields.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written["fields_png"] = path

    series = result.series
    fig, axes = plt.subplots(2, 1, figsize=(7, 5.6), sharex=True,
                             constrained_layout=True)
    axes[0].plot(series.t, series.psi_max, color="tab:blue")
    axes[0].set_ylabel("max psi")
    axes[1].plot(series.t, series.theta_max, color="tab:red")
    axes[1].set_ylabel("max theta")
    axes[1].set_xlabel("t")
    path = out_dir / "timeseries.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written["timeseries_png"] = path

    fig, ax = plt.subplots(figsize=(5.4, 5), constrained_layout=True)
    ax.plot(series.psi_mean, series.theta_mean, lw=0.9, color="tab:purple")
    ax.set_xlabel("mean psi")
    ax.set_ylabel("mean theta")
    path = out_dir / "phase.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written["phase_png"] = path
    return written


def plot_regime_map(records, out_dir) -> dict[str, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6.4, 5), constrained_layout=True)
    seen = []
    for record in records:
        color, marker = _REGIME_STYLE.get(record.regime, ("black", "+"))
        label = record.regime or "failed"
        ax.scatter(record.rp, record.fk, c=color, marker=marker, s=45,
                   label=None if label in seen else label)
        seen.append(label)
    ax.set_xlabel("rp")
    ax.set_ylabel("fk")
    ax.legend(loc="best", fontsize=8)
    path = out_dir / "regime_map.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written = {"regime_map_png": path}
    return written
