"""Run and sweep configuration: a flat ``key = value`` text format.

One assignment per line, ``#`` starts a comment (full-line or trailing),
blank lines are ignored.  Scalar runs set ``fk``/``rp``; sweeps replace them
with ``fk_range``/``rp_range`` written ``lo:hi:count`` (inclusive, evenly
spaced).  Unknown and duplicate keys are rejected, and every diagnostic
carries the offending line number.  ``parse_config(render_config(cfg))``
round-trips exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, fields, replace

import numpy as np

from .core import ParameterError
from .driver import SimConfig


class ConfigError(ValueError):
    """Malformed or invalid configuration text."""


@dataclass(frozen=True)
class SweepSpec:
    """A rectangular (fk, rp) sweep sharing one base run configuration.

    fk_range and rp_range are (lo, hi, count) with count points including
    both endpoints; base carries every non-swept setting and its fk/rp are
    ignored.  parallelism bounds concurrent simulations; results never
    depend on it.
    """

    fk_range: tuple[float, float, int]
    rp_range: tuple[float, float, int]
    sigma: float = 0.0
    base: SimConfig = SimConfig()
    parallelism: int = 1

    def __post_init__(self):
        for name, (lo, hi, count) in (("fk_range", self.fk_range),
                                      ("rp_range", self.rp_range)):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ParameterError(f"invalid {name}: lo {lo!r} must be <= hi {hi!r}")
            if lo < 0.0:
                raise ParameterError(f"invalid {name}: negative lo {lo!r}")
            if count < 1:
                raise ParameterError(f"invalid {name}: count {count!r} < 1")
        if not (math.isfinite(self.sigma) and self.sigma >= 0.0):
            raise ParameterError(f"invalid sigma: {self.sigma!r}")
        if self.parallelism < 1:
            raise ParameterError(f"invalid parallelism: {self.parallelism!r}")

    def fk_values(self) -> list[float]:
        lo, hi, count = self.fk_range
        return [float(v) for v in np.linspace(lo, hi, count)]

    def rp_values(self) -> list[float]:
        lo, hi, count = self.rp_range
        return [float(v) for v in np.linspace(lo, hi, count)]


_FLOAT_KEYS = ("fk", "rp", "sigma", "dt", "t_end", "ic_amplitude", "theta_cap",
               "transient_fraction", "osc_rel_threshold", "steady_rel_threshold")
_INT_KEYS = ("n", "sample_every")
_STR_KEYS = ("ic_mode", "omega_init", "advection_scheme")
_SWEEP_KEYS = ("fk_range", "rp_range", "parallelism")
_ALL_KEYS = _FLOAT_KEYS + _INT_KEYS + _STR_KEYS + _SWEEP_KEYS


def _parse_float(key, raw, lineno):
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key}: not a number: {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"line {lineno}: {key}: must be finite, got {raw!r}")
    return value


def _parse_int(key, raw, lineno):
    try:
        return int(raw, 10)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key}: not an integer: {raw!r}") from None


def _parse_range(key, raw, lineno):
    parts = raw.split(":")
    if len(parts) != 3:
        raise ConfigError(f"line {lineno}: {key}: expected lo:hi:count, got {raw!r}")
    lo = _parse_float(key, parts[0].strip(), lineno)
    hi = _parse_float(key, parts[1].strip(), lineno)
    count = _parse_int(key, parts[2].strip(), lineno)
    return lo, hi, count


def _blame(entries, exc):
    """Best-effort line attribution for an invariant violation."""
    msg = str(exc)
    key = next((k for k in entries if re.search(rf"\b{re.escape(k)}\b", msg)), None)
    if key is None and "grid" in msg:
        key = "n"
    if key in entries:
        return f"line {entries[key][1]}"
    return "config"


def parse_config(text: str) -> SimConfig | SweepSpec:
    """Parse configuration text into a SimConfig or, when either range key
    appears, a SweepSpec.  Raises ConfigError with a line number on any
    malformed line, unknown or duplicate key, or violated invariant."""
    entries: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        key, _, raw = stripped.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _ALL_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} "
                              f"(first set on line {entries[key][1]})")
        if not raw:
            raise ConfigError(f"line {lineno}: {key}: empty value")
        entries[key] = (raw, lineno)

    is_sweep = "fk_range" in entries or "rp_range" in entries
    if is_sweep:
        for need in ("fk_range", "rp_range"):
            if need not in entries:
                raise ConfigError(f"sweep config: missing {need} "
                                  "(both fk_range and rp_range are required)")
        for forbidden in ("fk", "rp"):
            if forbidden in entries:
                lineno = entries[forbidden][1]
                raise ConfigError(f"line {lineno}: {forbidden!r} conflicts with "
                                  "the range keys; a sweep sets only ranges")
    elif "parallelism" in entries:
        lineno = entries["parallelism"][1]
        raise ConfigError(f"line {lineno}: 'parallelism' requires a sweep config")

    kwargs = {}
    for key, (raw, lineno) in entries.items():
        if key in _SWEEP_KEYS:
            continue
        if key in _FLOAT_KEYS:
            kwargs[key] = _parse_float(key, raw, lineno)
        elif key in _INT_KEYS:
            kwargs[key] = _parse_int(key, raw, lineno)
        else:
            kwargs[key] = raw
    try:
        base = SimConfig(**kwargs)
    except ParameterError as exc:
        raise ConfigError(f"{_blame(entries, exc)}: {exc}") from None

    if not is_sweep:
        return base

    fk_range = _parse_range("fk_range", entries["fk_range"][0], entries["fk_range"][1])
    rp_range = _parse_range("rp_range", entries["rp_range"][0], entries["rp_range"][1])
    parallelism = 1
    if "parallelism" in entries:
        parallelism = _parse_int("parallelism", *entries["parallelism"])
    try:
        return SweepSpec(fk_range=fk_range, rp_range=rp_range, sigma=base.sigma,
                         base=base, parallelism=parallelism)
    except ParameterError as exc:
        raise ConfigError(f"{_blame(entries, exc)}: {exc}") from None


def _fmt(value) -> str:
    if isinstance(value, float):
        # float() drops numpy scalar wrappers whose repr would not parse
        return repr(float(value))
    return str(value)


def render_config(cfg: SimConfig | SweepSpec) -> str:
    """Render a configuration in canonical key order; the exact inverse of
    parse_config for every valid value."""
    lines = []
    if isinstance(cfg, SweepSpec):
        for key, (lo, hi, count) in (("fk_range", cfg.fk_range),
                                     ("rp_range", cfg.rp_range)):
            lines.append(f"{key} = {_fmt(float(lo))}:{_fmt(float(hi))}:{count}")
        lines.append(f"parallelism = {cfg.parallelism}")
        base = replace(cfg.base, sigma=cfg.sigma)
        skip = ("fk", "rp")
    else:
        base = cfg
        skip = ()
    for f in fields(SimConfig):
        if f.name in skip:
            continue
        lines.append(f"{f.name} = {_fmt(getattr(base, f.name))}")
    return "\n".join(lines) + "\n"
