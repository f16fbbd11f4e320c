"""Proximal point and Chambolle-Pock iterations with stepsize-window validators.

Both solvers stop once the relative step

    |z_{k+1} - z_k| / (1 + |z_k|)

falls below ``eps``, with ``z = (i, v)`` stacked for Chambolle-Pock.
"""
from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResolventError

__all__ = [
    "Status",
    "PPAConfig",
    "CPAConfig",
    "SolverTrace",
    "ppa_solve",
    "cpa_solve",
    "cpa_step",
    "ppa_stepsize_floor",
    "MonotoneWindow",
    "SemimonotoneWindow",
    "cpa_window_monotone",
    "cpa_window_semi",
]

SQRT2 = math.sqrt(2.0)


class Status(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITER = "MaxIter"
    RESOLVENT_ERROR = "ResolventError"
    DIVERGENCE = "DivergenceDetected"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PPAConfig:
    gamma: float
    eps: float = 1e-8
    max_iter: int = 100_000

    def __post_init__(self):
        if not (self.gamma > 0 and self.eps > 0 and self.max_iter >= 1):
            raise DomainError(f"invalid PPA configuration {self}")


@dataclass(frozen=True)
class CPAConfig:
    gamma: float
    tau: float
    lam: float = 1.0
    eps: float = 1e-8
    max_iter: int = 100_000

    def __post_init__(self):
        if not (self.gamma > 0 and self.tau > 0 and self.lam > 0 and self.eps > 0 and self.max_iter >= 1):
            raise DomainError(f"invalid CPA configuration {self}")


@dataclass
class SolverTrace:
    """Outcome of one solve.

    ``x`` is the final iterate (for Chambolle-Pock the stacked ``(i, v)``;
    ``i`` and ``v`` are also set).  ``rel_steps[k]`` is the relative step
    of iteration ``k + 1``.
    """

    status: Status
    iterations: int
    x: np.ndarray
    rel_steps: list[float] = field(default_factory=list)
    history: list[np.ndarray] | None = None
    i: np.ndarray | None = None
    v: np.ndarray | None = None
    message: str = ""

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    def to_csv(self, path, dump_iterates: bool = False):
        if dump_iterates and self.history is None:
            raise DomainError("trace has no iterate history; solve with keep_history=True")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            header = ["k", "rel_step"]
            if dump_iterates:
                header += [f"z{j}" for j in range(self.x.size)]
            writer.writerow(header)
            for k, step in enumerate(self.rel_steps, start=1):
                row = [str(k), f"{step:.17g}"]
                if dump_iterates:
                    row += [f"{c:.17g}" for c in self.history[k]]
                writer.writerow(row)


def _rel_step(new, old):
    return float(np.linalg.norm(new - old) / (1.0 + np.linalg.norm(old)))


def ppa_solve(element, x0, cfg: PPAConfig, keep_history: bool = False) -> SolverTrace:
    """Proximal point iteration ``x <- J_{gamma T}(x)``."""
    x = np.array(x0, dtype=float)
    history = [x.copy()] if keep_history else None
    steps = []
    for k in range(1, cfg.max_iter + 1):
        try:
            x_new = np.asarray(element.resolvent(cfg.gamma, x), dtype=float)
        except ResolventError as exc:
            return SolverTrace(Status.RESOLVENT_ERROR, k - 1, x, steps, history, message=str(exc))
        if not np.all(np.isfinite(x_new)):
            return SolverTrace(Status.DIVERGENCE, k, x_new, steps, history, message="non-finite iterate")
        step = _rel_step(x_new, x)
        steps.append(step)
        x = x_new
        if keep_history:
            history.append(x.copy())
        if step < cfg.eps:
            return SolverTrace(Status.CONVERGED, k, x, steps, history)
    return SolverTrace(Status.MAX_ITER, cfg.max_iter, x, steps, history)


def cpa_step(r_tilde, g_tilde, L, i, v, cfg: CPAConfig):
    """One relaxed Chambolle-Pock update; returns ``(i_next, v_next, i_bar)``."""
    i_bar = np.asarray(r_tilde.resolvent(cfg.gamma, i - cfg.gamma * (L.T @ v)), dtype=float)
    v_bar = np.asarray(g_tilde.resolvent(cfg.tau, v + cfg.tau * (L @ (2.0 * i_bar - i))), dtype=float)
    if cfg.lam == 1.0:
        return i_bar, v_bar, i_bar
    return i + cfg.lam * (i_bar - i), v + cfg.lam * (v_bar - v), i_bar


def cpa_solve(r_tilde, g_tilde, L, i0, v0, cfg: CPAConfig, keep_history: bool = False) -> SolverTrace:
    """Chambolle-Pock for ``0 in R~(i) + L^T v``, ``0 in G~(v) - L i``."""
    L = np.atleast_2d(np.asarray(L, dtype=float))
    i = np.array(i0, dtype=float)
    v = np.array(v0, dtype=float)
    z = np.concatenate([i, v])
    history = [z.copy()] if keep_history else None
    steps = []

    def trace(status, k, message=""):
        return SolverTrace(status, k, np.concatenate([i, v]), steps, history, i=i, v=v, message=message)

    for k in range(1, cfg.max_iter + 1):
        try:
            i_new, v_new, _ = cpa_step(r_tilde, g_tilde, L, i, v, cfg)
        except ResolventError as exc:
            return trace(Status.RESOLVENT_ERROR, k - 1, str(exc))
        z_new = np.concatenate([i_new, v_new])
        if not np.all(np.isfinite(z_new)):
            i, v = i_new, v_new
            return trace(Status.DIVERGENCE, k, "non-finite iterate")
        step = _rel_step(z_new, z)
        steps.append(step)
        i, v, z = i_new, v_new, z_new
        if keep_history:
            history.append(z.copy())
        if step < cfg.eps:
            return trace(Status.CONVERGED, k)
    return trace(Status.MAX_ITER, cfg.max_iter)


# --------------------------------------------------------------------------- stepsize windows


def ppa_stepsize_floor(r: float) -> float:
    """PPA on the leaky transistor converges for every ``gamma`` above this value."""
    if not r > 0:
        raise DomainError(f"leakage resistance must be positive, got {r}")
    return r * (SQRT2 - 1.0)


@dataclass(frozen=True)
class MonotoneWindow:
    """Admissible ``(gamma, tau, lam)`` when both resistors are ``sigma``-monotone."""

    sigma: float
    r: float
    tau_floor: float

    def gamma_interval(self, tau):
        return 0.0, 1.0 / tau

    def lambda_ceiling(self, tau):
        return 2.0 * (1.0 - self.tau_floor / tau)

    def violations(self, gamma, tau, lam) -> list[str]:
        out = []
        if not tau > self.tau_floor:
            out.append(f"tau={tau} must exceed {self.tau_floor:.6g}")
            return out
        lo, hi = self.gamma_interval(tau)
        if not lo < gamma < hi:
            out.append(f"gamma={gamma} must lie in ({lo:.6g}, {hi:.6g})")
        ceil = self.lambda_ceiling(tau)
        if not 0 < lam < ceil:
            out.append(f"lambda={lam} must lie in (0, {ceil:.6g})")
        return out

    def contains(self, gamma, tau, lam) -> bool:
        return not self.violations(gamma, tau, lam)


@dataclass(frozen=True)
class SemimonotoneWindow:
    """Admissible ``(gamma, tau, lam)`` when both resistors are ``(9r/8, -1/(8r))``-semimonotone."""

    r: float
    gamma_lo: float
    gamma_hi: float

    @property
    def gamma_interval(self):
        return self.gamma_lo, self.gamma_hi

    def tau_interval(self, gamma):
        return 1.0 / self.gamma_hi, 1.0 / gamma

    def lambda_ceiling(self, gamma, tau):
        return 2.0 * (1.0 - 1.0 / (6.0 * self.r * gamma) - 9.0 * self.r / (10.0 * tau))

    def violations(self, gamma, tau, lam) -> list[str]:
        out = []
        if not self.gamma_lo < gamma < self.gamma_hi:
            out.append(f"gamma={gamma} must lie in ({self.gamma_lo:.6g}, {self.gamma_hi:.6g})")
            return out
        lo, hi = self.tau_interval(gamma)
        if not lo < tau < hi:
            out.append(f"tau={tau} must lie in ({lo:.6g}, {hi:.6g})")
            return out
        ceil = self.lambda_ceiling(gamma, tau)
        if not 0 < lam < ceil:
            out.append(f"lambda={lam} must lie in (0, {ceil:.6g})")
        return out

    def contains(self, gamma, tau, lam) -> bool:
        return not self.violations(gamma, tau, lam)


def cpa_window_monotone(sigma: float, r: float) -> MonotoneWindow:
    if not r > 0:
        raise DomainError(f"leakage resistance must be positive, got {r}")
    if not sigma > r * (SQRT2 - 1.0) / 2.0:
        raise DomainError(
            f"no stepsize window: sigma={sigma} must exceed r(sqrt2-1)/2 = {r * (SQRT2 - 1.0) / 2.0:.6g}")
    c = r * (1.0 - SQRT2)
    return MonotoneWindow(sigma, r, -sigma * c / (c + 2.0 * sigma))


def cpa_window_semi(r: float) -> SemimonotoneWindow:
    if not r > 0:
        raise DomainError(f"leakage resistance must be positive, got {r}")
    s10 = math.sqrt(10.0)
    return SemimonotoneWindow(r, (5.0 - s10) / (9.0 * r), (5.0 + s10) / (9.0 * r))
