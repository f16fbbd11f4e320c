"""Run configuration: ``key = value`` entries under ``[section]`` headers.

Numeric values may be written as fractions (``alpha_r = 110/111``).
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, fields
from fractions import Fraction
from importlib import resources

from .errors import ConfigError

__all__ = [
    "CircuitSection",
    "TransistorSection",
    "TunnelSection",
    "ResistorSection",
    "TargetSection",
    "SolverSection",
    "RunConfig",
    "parse_config",
    "load_config",
    "dump_config",
    "default_config",
    "default_config_text",
    "DEFAULT_CONFIGS",
]

DEFAULT_CONFIGS = {"leaky-ppa": "fig4.cfg", "amplifier": "fig5.cfg", "tunnel-amplifier": "fig7.cfg"}


@dataclass(frozen=True)
class CircuitSection:
    v_plus: float = 5.0
    v_in_amplitude: float = 1.0
    v_in_frequency_hz: float = 1.0
    t_end: float = 2.0
    n_samples: int = 500


@dataclass(frozen=True)
class TransistorSection:
    alpha_r: float = 110 / 111
    alpha_f: float = 10 / 11
    leakage_r: float = 100.0


@dataclass(frozen=True)
class TunnelSection:
    r1: float = 100.0
    r2: float = 900.0
    vbar: float = 5.0


@dataclass(frozen=True)
class ResistorSection:
    r_e: float = 30.0
    r_c: float = 150.0
    tunnel_inverse: bool = False


@dataclass(frozen=True)
class TargetSection:
    """Desired transistor currents ``amplitude * sin(2 pi f t + phase)``."""

    amplitude: float = 1.0
    frequency_hz: float = 1.0
    i2_phase_deg: float = 90.0


@dataclass(frozen=True)
class SolverSection:
    method: str = "cpa"
    gamma: float = 0.001
    tau: float = 700.0
    lam: float = 1.0
    eps: float = 1e-8
    max_iter: int = 100_000
    warm_start: bool = False


_SECTIONS = {
    "circuit": CircuitSection,
    "transistor": TransistorSection,
    "tunnel": TunnelSection,
    "resistors": ResistorSection,
    "target": TargetSection,
    "solver": SolverSection,
}
# config key -> dataclass field
_ALIASES = {"lambda": "lam"}
_KEYS = {v: k for k, v in _ALIASES.items()}


@dataclass(frozen=True)
class RunConfig:
    circuit: CircuitSection | None = None
    transistor: TransistorSection | None = None
    tunnel: TunnelSection | None = None
    resistors: ResistorSection | None = None
    target: TargetSection | None = None
    solver: SolverSection | None = None

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ConfigError(f"missing config section(s): {', '.join('[' + m + ']' for m in missing)}")


def _parse_value(raw: str, kind, where: str):
    raw = raw.strip()
    if kind is bool:
        low = raw.lower()
        if low in ("true", "yes", "1", "on"):
            return True
        if low in ("false", "no", "0", "off"):
            return False
        raise ConfigError(f"{where}: expected a boolean, got {raw!r}")
    if kind is str:
        return raw
    try:
        value = float(Fraction(raw)) if "/" in raw else float(raw)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{where}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{where}: value must be finite, got {raw!r}")
    if kind is int:
        if value != int(value):
            raise ConfigError(f"{where}: expected an integer, got {raw!r}")
        return int(value)
    return value


def parse_config(text: str) -> RunConfig:
    parser = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",),
                                       interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    sections = {}
    for name in parser.sections():
        cls = _SECTIONS.get(name)
        if cls is None:
            raise ConfigError(f"unknown section [{name}]")
        kinds = {f.name: f.type for f in fields(cls)}
        kinds = {k: {"float": float, "int": int, "bool": bool, "str": str}[t] for k, t in kinds.items()}
        values = {}
        for key, raw in parser.items(name):
            attr = _ALIASES.get(key, key)
            if attr not in kinds:
                raise ConfigError(f"unknown key {key!r} in [{name}]")
            values[attr] = _parse_value(raw, kinds[attr], f"[{name}] {key}")
        sections[name] = cls(**values)
    cfg = RunConfig(**sections)
    if cfg.solver is not None and cfg.solver.method not in ("ppa", "cpa"):
        raise ConfigError(f"[solver] method must be 'ppa' or 'cpa', got {cfg.solver.method!r}")
    return cfg


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    return repr(value)


def dump_config(cfg: RunConfig) -> str:
    lines = []
    for name in _SECTIONS:
        section = getattr(cfg, name)
        if section is None:
            continue
        if lines:
            lines.append("")
        lines.append(f"[{name}]")
        for f in fields(section):
            lines.append(f"{_KEYS.get(f.name, f.name)} = {_format(getattr(section, f.name))}")
    return "\n".join(lines) + "\n"


def default_config_text(experiment: str) -> str:
    try:
        fname = DEFAULT_CONFIGS[experiment]
    except KeyError:
        raise ConfigError(f"unknown experiment {experiment!r}") from None
    return resources.files("srgc").joinpath("configs", fname).read_text(encoding="utf-8")


def default_config(experiment: str | None = None) -> RunConfig:
    """Shipped config of ``experiment``; with ``None`` every section at its defaults."""
    if experiment is None:
        return RunConfig(**{name: cls() for name, cls in _SECTIONS.items()})
    return parse_config(default_config_text(experiment))
