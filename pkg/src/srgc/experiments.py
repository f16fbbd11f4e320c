"""Build elements, sweeps and stepsize reports from a :class:`RunConfig`."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import LeakyInverseProblem, SweepResult, assemble_common_emitter, sweep
from .config import RunConfig
from .elements import (
    EbersMollTransistor,
    IdealDiode,
    LeakyTransistor,
    LinearResistor,
    TunnelDiode,
    TunnelDiodeInverse,
)
from .errors import ConfigError, DomainError
from .operators import SemimonotoneParams
from .solvers import (
    CPAConfig,
    PPAConfig,
    cpa_window_monotone,
    cpa_window_semi,
    ppa_stepsize_floor,
)
from .srg import real_set_in_region, region_semimonotone

__all__ = [
    "ELEMENT_NAMES",
    "EXPERIMENTS",
    "StepsizeReport",
    "build_element",
    "solver_config",
    "time_grid",
    "problem_family",
    "run_experiment",
    "check_stepsizes",
]

ELEMENT_NAMES = ("transistor", "leaky-transistor", "tunnel", "tunnel-inverse", "ideal-diode",
                 "identity", "resistor-e", "resistor-c")
EXPERIMENTS = ("leaky-ppa", "amplifier", "tunnel-amplifier")


def _transistor(cfg: RunConfig) -> EbersMollTransistor:
    cfg.require("transistor")
    try:
        return EbersMollTransistor(cfg.transistor.alpha_r, cfg.transistor.alpha_f)
    except DomainError as exc:
        raise ConfigError(f"[transistor]: {exc}") from None


def _leaky(cfg: RunConfig) -> LeakyTransistor:
    try:
        return LeakyTransistor(_transistor(cfg), cfg.transistor.leakage_r)
    except DomainError as exc:
        raise ConfigError(f"[transistor]: {exc}") from None


def _tunnel(cfg: RunConfig) -> TunnelDiode:
    cfg.require("tunnel")
    try:
        return TunnelDiode(cfg.tunnel.r1, cfg.tunnel.r2, cfg.tunnel.vbar)
    except DomainError as exc:
        raise ConfigError(f"[tunnel]: {exc}") from None


def _resistor(value: float, key: str) -> LinearResistor:
    try:
        return LinearResistor(value)
    except DomainError as exc:
        raise ConfigError(f"[resistors] {key}: {exc}") from None


def build_element(cfg: RunConfig, name: str):
    """Element ``name`` (one of :data:`ELEMENT_NAMES`) with parameters from ``cfg``."""
    if name == "transistor":
        return _transistor(cfg)
    if name == "leaky-transistor":
        return _leaky(cfg)
    if name == "tunnel":
        return _tunnel(cfg)
    if name == "tunnel-inverse":
        return TunnelDiodeInverse(_tunnel(cfg))
    if name == "ideal-diode":
        return IdealDiode()
    if name == "identity":
        return LinearResistor(1.0)
    if name in ("resistor-e", "resistor-c"):
        cfg.require("resistors")
        key = name.replace("resistor-", "r_")
        return _resistor(getattr(cfg.resistors, key), key)
    raise ConfigError(f"unknown element {name!r}; choose from {', '.join(ELEMENT_NAMES)}")


def solver_config(cfg: RunConfig):
    cfg.require("solver")
    s = cfg.solver
    try:
        if s.method == "ppa":
            return PPAConfig(s.gamma, s.eps, s.max_iter)
        return CPAConfig(s.gamma, s.tau, s.lam, s.eps, s.max_iter)
    except DomainError as exc:
        raise ConfigError(f"[solver]: {exc}") from None


def time_grid(cfg: RunConfig, n_samples: int | None = None) -> np.ndarray:
    cfg.require("circuit")
    n = cfg.circuit.n_samples if n_samples is None else n_samples
    if n < 2 or not cfg.circuit.t_end > 0:
        raise ConfigError("[circuit] needs n_samples >= 2 and t_end > 0")
    return np.linspace(0.0, cfg.circuit.t_end, n)


def _collector(cfg: RunConfig):
    cfg.require("resistors")
    if cfg.resistors.tunnel_inverse:
        return TunnelDiodeInverse(_tunnel(cfg))
    return _resistor(cfg.resistors.r_c, "r_c")


def problem_family(cfg: RunConfig, experiment: str):
    """Map ``t`` to the static problem solved at time ``t``."""
    if experiment == "leaky-ppa":
        lt = _leaky(cfg)
        cfg.require("target")
        tg = cfg.target
        w = 2 * math.pi * tg.frequency_hz
        phase = math.radians(tg.i2_phase_deg)
        return lambda t: LeakyInverseProblem(
            lt, [tg.amplitude * math.sin(w * t), tg.amplitude * math.sin(w * t + phase)])
    if experiment in ("amplifier", "tunnel-amplifier"):
        cfg.require("circuit", "resistors")
        if (experiment == "tunnel-amplifier") != cfg.resistors.tunnel_inverse:
            want = "true" if experiment == "tunnel-amplifier" else "false"
            raise ConfigError(f"{experiment} needs [resistors] tunnel_inverse = {want}")
        lt = _leaky(cfg)
        rc = _collector(cfg)
        re = _resistor(cfg.resistors.r_e, "r_e")
        c = cfg.circuit
        w = 2 * math.pi * c.v_in_frequency_hz
        return lambda t: assemble_common_emitter(rc, re, lt, c.v_plus, c.v_in_amplitude * math.sin(w * t))
    raise ConfigError(f"unknown experiment {experiment!r}; choose from {', '.join(EXPERIMENTS)}")


def run_experiment(cfg: RunConfig, experiment: str, n_samples: int | None = None) -> SweepResult:
    family = problem_family(cfg, experiment)
    solver = solver_config(cfg)
    expected = PPAConfig if experiment == "leaky-ppa" else CPAConfig
    if not isinstance(solver, expected):
        raise ConfigError(f"{experiment} needs [solver] method = {'ppa' if expected is PPAConfig else 'cpa'}")
    return sweep(family, time_grid(cfg, n_samples), solver, warm_start=cfg.solver.warm_start)


# --------------------------------------------------------------------------- stepsize checks


@dataclass
class StepsizeReport:
    window: str
    passed: bool
    lines: list[str] = field(default_factory=list)


def check_stepsizes(cfg: RunConfig) -> StepsizeReport:
    """Test the configured ``(gamma, tau, lambda)`` against the applicable window.

    PPA on the leaky transistor uses the proximal-point floor.  CPA uses the
    monotone window when both resistors are linear and the semimonotone
    window when the collector is an inverse tunnel diode.
    """
    cfg.require("solver", "transistor")
    s = cfg.solver
    r = cfg.transistor.leakage_r
    if not r > 0:
        raise ConfigError("[transistor] leakage_r must be positive")
    if s.method == "ppa":
        floor = ppa_stepsize_floor(r)
        ok = s.gamma > floor
        return StepsizeReport("ppa", ok, [f"gamma > r(sqrt2 - 1) = {floor:.6g}: gamma={s.gamma:.6g}"])

    cfg.require("resistors")
    rep = StepsizeReport("", False)
    if not cfg.resistors.tunnel_inverse:
        sigma = min(cfg.resistors.r_e, cfg.resistors.r_c)
        rep.window = "cpa-monotone"
        rep.lines.append(f"resistors are sigma-monotone with sigma = min(r_e, r_c) = {sigma:.6g}")
        try:
            win = cpa_window_monotone(sigma, r)
        except DomainError as exc:
            rep.lines.append(str(exc))
            return rep
        rep.lines.append(f"tau > {win.tau_floor:.6g}, gamma in (0, 1/tau), "
                         f"lambda < 2(1 - {win.tau_floor:.6g}/tau)")
        if s.tau > win.tau_floor:
            rep.lines.append(f"lambda ceiling at tau={s.tau:.6g}: {win.lambda_ceiling(s.tau):.6g}")
    else:
        rep.window = "cpa-semimonotone"
        win = cpa_window_semi(r)
        target = SemimonotoneParams(9 * r / 8, -1 / (8 * r))
        region = region_semimonotone(target)
        parts = {"R_C": TunnelDiodeInverse(_tunnel(cfg)), "R_E": _resistor(cfg.resistors.r_e, "r_e")}
        rep.lines.append(f"resistors must be ({target.mu:.6g}, {target.rho:.6g})-semimonotone")
        class_ok = True
        for label, el in parts.items():
            inside = real_set_in_region(*el.real_srg(), region)
            rep.lines.append(f"  {label} {el!r}: {'in class' if inside else 'NOT in class'}")
            class_ok &= inside
        lo, hi = win.gamma_interval
        rep.lines.append(f"gamma in ({lo:.7g}, {hi:.7g}), tau in (1/{hi:.7g}, 1/gamma)")
        if lo < s.gamma < hi:
            rep.lines.append(f"lambda ceiling at gamma={s.gamma:.6g}, tau={s.tau:.6g}: "
                             f"{win.lambda_ceiling(s.gamma, s.tau):.6g}")
        if not class_ok:
            rep.lines.append("class condition fails; the window does not apply")
            return rep
    problems = win.violations(s.gamma, s.tau, s.lam)
    rep.lines.extend(problems)
    rep.passed = not problems
    return rep
