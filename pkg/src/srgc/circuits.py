"""Circuit inclusion problems and quasi-static time sweeps.

A memoryless circuit with internal currents ``i`` and voltages ``v`` solves

    0 in R(i) + L^T v + s_v
    0 in G(v) - L i   + s_i

at every time instant.  A sweep solves one such static problem per sample
of the source waveforms, optionally warm-starting from the previous sample.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .elements import AffineShift, LeakyTransistor, ProductElement, TunnelDiodeInverse
from .errors import DimensionMismatch, DomainError
from .operators import SetValuedElement
from .solvers import CPAConfig, PPAConfig, SolverTrace, Status, cpa_solve, ppa_solve

__all__ = [
    "InclusionProblem",
    "LeakyInverseProblem",
    "Waveform",
    "SweepResult",
    "assemble_common_emitter",
    "assemble_leaky_inverse",
    "observables",
    "solve_problem",
    "sweep",
]


@dataclass
class InclusionProblem:
    R: SetValuedElement
    G: SetValuedElement
    L: np.ndarray
    s_v: np.ndarray
    s_i: np.ndarray

    def __post_init__(self):
        self.L = np.atleast_2d(np.asarray(self.L, dtype=float))
        self.s_v = np.atleast_1d(np.asarray(self.s_v, dtype=float))
        self.s_i = np.atleast_1d(np.asarray(self.s_i, dtype=float))
        m, n = self.L.shape
        if (self.R.dim, self.G.dim) != (n, m) or self.s_v.size != n or self.s_i.size != m:
            raise DimensionMismatch(
                f"R is {self.R.dim}-dim, G is {self.G.dim}-dim, L is {m}x{n}, "
                f"s_v has {self.s_v.size} and s_i has {self.s_i.size} entries")
        if not np.all(np.isfinite(self.L)):
            raise DomainError("interconnection matrix must be finite")

    @property
    def n(self) -> int:
        return self.R.dim

    @property
    def m(self) -> int:
        return self.G.dim

    @property
    def r_tilde(self) -> AffineShift:
        return AffineShift(self.R, self.s_v)

    @property
    def g_tilde(self) -> AffineShift:
        return AffineShift(self.G, self.s_i)

    def residual(self, i, v) -> float:
        """Inclusion defect of a candidate ``(i, v)``."""
        i = np.asarray(i, dtype=float)
        v = np.asarray(v, dtype=float)
        return float(np.hypot(self.R.distance(i, -(self.L.T @ v) - self.s_v),
                              self.G.distance(v, self.L @ i - self.s_i)))


def assemble_common_emitter(r_c: SetValuedElement, r_e: SetValuedElement,
                            transistor: LeakyTransistor, v_plus: float, v_in: float) -> InclusionProblem:
    """Common-emitter amplifier: ``R = R_C x R_E``, ``G = T_NPN,r``, ``L = I``."""
    if r_c.dim != 1 or r_e.dim != 1 or transistor.dim != 2:
        raise DimensionMismatch("need scalar R_C, R_E and a two-port transistor")
    return InclusionProblem(
        R=ProductElement(r_c, r_e),
        G=transistor,
        L=np.eye(2),
        s_v=np.array([v_plus - v_in, -v_in]),
        s_i=np.zeros(2),
    )


@dataclass
class LeakyInverseProblem:
    """Port voltages ``v`` producing the current ``i_target`` in a leaky transistor."""

    transistor: LeakyTransistor
    i_target: np.ndarray

    def __post_init__(self):
        self.i_target = np.atleast_1d(np.asarray(self.i_target, dtype=float))
        if self.i_target.size != 2:
            raise DimensionMismatch("target current must be a 2-vector")

    @property
    def element(self) -> AffineShift:
        return AffineShift(self.transistor, -self.i_target)


def assemble_leaky_inverse(transistor: LeakyTransistor, i_target) -> AffineShift:
    """Element whose zeros solve ``i_target in T_NPN,r(v)``."""
    return LeakyInverseProblem(transistor, i_target).element


def observables(problem, i=None, v=None, gamma: float | None = None) -> dict[str, float]:
    """Plotted quantities of a solved problem.

    For the amplifier ``i_C, i_E`` are the resistor currents and ``v1, v2``
    the transistor port voltages.  With ``R_C`` an inverse tunnel diode,
    ``v_tunnel`` is the tunnel voltage, read off the first inclusion row
    (default) or taken as the branch selected by the ``R_C`` resolvent at
    the final iterate (``gamma`` given).  Both agree at a fixed point; the
    resolvent readout divides the iterate error by ``gamma``, so the row
    readout is the better conditioned one.
    For the leaky inverse problem ``i_C, i_E`` are the target currents.
    """
    if isinstance(problem, LeakyInverseProblem):
        return {"i_C": float(problem.i_target[0]), "i_E": float(problem.i_target[1]),
                "v1": float(v[0]), "v2": float(v[1])}
    out = {"i_C": float(i[0]), "i_E": float(i[1]), "v1": float(v[0]), "v2": float(v[1])}
    rc = problem.R.parts[0] if isinstance(problem.R, ProductElement) else None
    if isinstance(rc, TunnelDiodeInverse):
        if gamma is None:
            out["v_tunnel"] = float(-(problem.L.T @ v)[0] - problem.s_v[0])
        else:
            w = i - gamma * (problem.L.T @ v) - gamma * problem.s_v
            out["v_tunnel"] = float(rc.resolvent_branch(gamma, w[0])[1])
    return out


def solve_problem(problem, cfg, x0=None, keep_history=False) -> SolverTrace:
    """Solve one static problem with PPA (``PPAConfig``) or CPA (``CPAConfig``)."""
    if isinstance(cfg, PPAConfig):
        element = problem.element if isinstance(problem, LeakyInverseProblem) else problem
        if x0 is None:
            x0 = np.zeros(element.dim)
        return ppa_solve(element, x0, cfg, keep_history=keep_history)
    if isinstance(cfg, CPAConfig):
        if x0 is None:
            x0 = np.zeros(problem.n + problem.m)
        x0 = np.asarray(x0, dtype=float)
        return cpa_solve(problem.r_tilde, problem.g_tilde, problem.L,
                         x0[:problem.n], x0[problem.n:], cfg, keep_history=keep_history)
    raise DomainError(f"unknown solver configuration {cfg!r}")


@dataclass
class Waveform:
    """Uniform time grid with named source samples."""

    t: np.ndarray
    sources: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        if self.t.size < 2 or not np.all(np.diff(self.t) > 0):
            raise DomainError("time grid needs at least two strictly increasing samples")
        for name, values in self.sources.items():
            values = np.asarray(values, dtype=float)
            if values.shape[0] != self.t.size:
                raise DimensionMismatch(f"source {name!r} has {values.shape[0]} samples, grid has {self.t.size}")
            self.sources[name] = values

    @classmethod
    def sinusoid(cls, name, t_end, n_samples, amplitude=1.0, frequency=1.0, phase=0.0, offset=0.0):
        t = np.linspace(0.0, t_end, n_samples)
        return cls(t, {name: offset + amplitude * np.sin(2 * np.pi * frequency * t + phase)})

    def __len__(self):
        return self.t.size


@dataclass
class SweepResult:
    t: np.ndarray
    solutions: list[np.ndarray]
    iterations: np.ndarray
    status: list[Status]
    observables: dict[str, np.ndarray]
    traces: list[SolverTrace]

    @property
    def all_converged(self) -> bool:
        return all(s is Status.CONVERGED for s in self.status)

    def first_failure(self):
        for t, s in zip(self.t, self.status):
            if s is not Status.CONVERGED:
                return float(t), s
        return None

    def columns(self) -> list[str]:
        cols = ["i_C", "i_E", "v1", "v2"]
        if "v_tunnel" in self.observables:
            cols.append("v_tunnel")
        return cols

    def to_csv(self, path):
        cols = self.columns()
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["t", *cols, "iters", "status"])
            for k, t in enumerate(self.t):
                writer.writerow([f"{t:.17g}", *(f"{self.observables[c][k]:.17g}" for c in cols),
                                 str(int(self.iterations[k])), str(self.status[k])])


def sweep(family, times, cfg, warm_start: bool = True) -> SweepResult:
    """Solve ``family(t)`` for every ``t`` in ``times``.

    Failed samples are recorded and the sweep continues; a failed sample
    does not seed the next one.
    """
    times = np.asarray(times, dtype=float)
    solutions, iters, status, traces = [], [], [], []
    obs: dict[str, list[float]] = {}
    x0 = None
    for t in times:
        problem = family(float(t))
        trc = solve_problem(problem, cfg, x0=x0 if warm_start else None)
        solutions.append(trc.x)
        iters.append(trc.iterations)
        status.append(trc.status)
        traces.append(trc)
        if isinstance(problem, LeakyInverseProblem):
            values = observables(problem, v=trc.x)
        else:
            values = observables(problem, trc.i, trc.v)
        for key, val in values.items():
            obs.setdefault(key, []).append(val)
        x0 = trc.x if trc.converged else None
    return SweepResult(times, solutions, np.array(iters), status,
                       {k: np.array(v) for k, v in obs.items()}, traces)
