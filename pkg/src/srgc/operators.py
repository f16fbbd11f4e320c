"""Set-valued operators, incremental quantities and the semimonotone parameter algebra.

An operator ``A`` on R^d is represented through its graph: pairs ``(x, u)``
with ``u`` in ``A(x)``.  Two graph pairs ``(x, u)`` and ``(y, v)`` give the
incremental quantities ``<x-y, u-v>``, ``|x-y|``, ``|u-v|`` from which all
class memberships below are decided.

The class ``S(mu, rho)`` collects operators with

    <x-y, u-v> >= mu |x-y|^2 + rho |u-v|^2

for every two graph pairs, and ``B(theta)`` collects operators whose
incremental angle never exceeds ``theta``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import DimensionMismatch, DomainError, InvalidInput

__all__ = [
    "GraphPair",
    "SemimonotoneParams",
    "AngleBound",
    "ClassStatus",
    "SetValuedElement",
    "incremental_angle",
    "semimonotone_pair_check",
    "angle_pair_check",
    "shift_params",
    "invert_params",
    "class_status",
    "angle_to_semimonotone",
    "angle_semimonotone_slack",
    "comonotone_from_angle",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9

Provenance = Literal["proved", "asserted"]


def _as_vector(a, name="vector"):
    arr = np.atleast_1d(np.asarray(a, dtype=float))
    if arr.ndim != 1:
        raise InvalidInput(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} has non-finite entries: {arr}")
    return arr


@dataclass(frozen=True)
class GraphPair:
    """A point ``(x, u)`` of an operator graph, ``u`` in ``A(x)``."""

    x: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        x = _as_vector(self.x, "x")
        u = _as_vector(self.u, "u")
        if x.shape != u.shape:
            raise DimensionMismatch(f"x has dimension {x.size} but u has {u.size}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "u", u)

    @property
    def dim(self) -> int:
        return self.x.size


class ClassStatus(enum.Enum):
    UNIVERSAL = "universal"
    EMPTY = "empty"
    NONTRIVIAL = "nontrivial"


@dataclass(frozen=True)
class SemimonotoneParams:
    """The pair ``(mu, rho)`` of the class ``S(mu, rho)``.

    ``provenance`` records whether the class was derived by a theorem
    (``"proved"``) or simply claimed by the user (``"asserted"``).  It does
    not take part in equality.
    """

    mu: float
    rho: float
    provenance: Provenance = field(default="asserted", compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.rho)):
            raise InvalidInput(f"semimonotone parameters must be finite, got ({self.mu}, {self.rho})")
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "rho", float(self.rho))

    def status(self) -> ClassStatus:
        return class_status(self)

    def shifted(self, alpha: float) -> SemimonotoneParams:
        return shift_params(self, alpha)

    def inverse(self) -> SemimonotoneParams:
        return invert_params(self)

    def __iter__(self):
        yield self.mu
        yield self.rho


@dataclass(frozen=True)
class AngleBound:
    """Upper bound ``theta`` in [0, pi] on the incremental angle."""

    theta: float
    provenance: Provenance = field(default="asserted", compare=False)

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise DomainError(f"angle bound must lie in [0, pi], got {self.theta}")
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def degrees(self) -> float:
        return math.degrees(self.theta)


def _differences(p: GraphPair, q: GraphPair):
    if p.dim != q.dim:
        raise DimensionMismatch(f"graph pairs have dimensions {p.dim} and {q.dim}")
    return p.x - q.x, p.u - q.u


def incremental_angle(x, u, y, v) -> float:
    """Angle between ``x - y`` and ``u - v``; 0 when either difference vanishes."""
    x, u, y, v = (_as_vector(a) for a in (x, u, y, v))
    if x.shape != y.shape or u.shape != v.shape:
        raise DimensionMismatch("x/y and u/v must have matching dimensions")
    dx = x - y
    du = u - v
    nx = np.linalg.norm(dx)
    nu = np.linalg.norm(du)
    if nx == 0.0 or nu == 0.0:
        return 0.0
    c = float(np.dot(dx, du)) / (nx * nu)
    return math.acos(min(1.0, max(-1.0, c)))


def semimonotone_pair_check(p: GraphPair, q: GraphPair, params: SemimonotoneParams,
                            tol: float = DEFAULT_TOL) -> bool:
    dx, du = _differences(p, q)
    lhs = float(np.dot(dx, du))
    rhs = params.mu * float(np.dot(dx, dx)) + params.rho * float(np.dot(du, du))
    return lhs >= rhs - tol


def angle_pair_check(p: GraphPair, q: GraphPair, bound: AngleBound,
                     tol: float = DEFAULT_TOL) -> bool:
    # inequality form, no arccos: stays well defined for zero differences
    dx, du = _differences(p, q)
    lhs = float(np.dot(dx, du))
    rhs = math.cos(bound.theta) * float(np.linalg.norm(dx)) * float(np.linalg.norm(du))
    return lhs >= rhs - tol


def shift_params(params: SemimonotoneParams, alpha: float) -> SemimonotoneParams:
    """Class of ``A + alpha*id`` for ``A`` in ``S(mu, rho)``.

    Requires ``1 + 2*rho*alpha > 0``.
    """
    mu, rho = params.mu, params.rho
    den = 1.0 + 2.0 * rho * alpha
    if not den > 0.0:
        raise DomainError(f"shift requires 1 + 2*rho*alpha > 0, got 1 + 2*({rho})*({alpha}) = {den}")
    return SemimonotoneParams((mu + alpha * (1.0 + rho * alpha)) / den, rho / den,
                              provenance=params.provenance)


def invert_params(params: SemimonotoneParams) -> SemimonotoneParams:
    """Class of ``A^{-1}``: the defining inequality is symmetric in ``(x, u)``."""
    return SemimonotoneParams(params.rho, params.mu, provenance=params.provenance)


def class_status(params: SemimonotoneParams) -> ClassStatus:
    mu, rho = params.mu, params.rho
    if mu < 0 and rho < 0 and mu * rho >= 0.25:
        return ClassStatus.UNIVERSAL
    if mu > 0 and rho > 0 and mu * rho > 0.25:
        return ClassStatus.EMPTY
    return ClassStatus.NONTRIVIAL


def _check_angle_window(theta: float):
    # sin(pi) = 0 makes the certificate vacuous, so pi itself is excluded
    if not (math.pi / 2 <= theta < math.pi):
        raise DomainError(f"theta must lie in [pi/2, pi), got {theta}")


def angle_semimonotone_slack(theta: AngleBound, alpha: float, params: SemimonotoneParams) -> float:
    """``(1 - 2*alpha*rho)^2 sin^2(theta) - (1 - 4*mu*rho)``; nonnegative certifies inclusion."""
    t = theta.theta if isinstance(theta, AngleBound) else float(theta)
    _check_angle_window(t)
    if not params.rho < 0:
        raise DomainError(f"rho must be negative, got {params.rho}")
    if not alpha >= 0:
        raise DomainError(f"alpha must be nonnegative, got {alpha}")
    mu, rho = params.mu, params.rho
    return (1.0 - 2.0 * alpha * rho) ** 2 * math.sin(t) ** 2 - (1.0 - 4.0 * mu * rho)


def angle_to_semimonotone(theta: AngleBound, alpha: float, params: SemimonotoneParams,
                          tol: float = 1e-12) -> bool:
    """True when ``B(theta) + alpha*id`` is certified to lie in ``S(mu, rho)``."""
    return angle_semimonotone_slack(theta, alpha, params) >= -tol


def comonotone_from_angle(theta: AngleBound, alpha: float) -> SemimonotoneParams:
    """Comonotonicity parameter of ``B(theta) + alpha*id`` (``mu = 0``)."""
    t = theta.theta if isinstance(theta, AngleBound) else float(theta)
    _check_angle_window(t)
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    return SemimonotoneParams(0.0, (1.0 - 1.0 / math.sin(t)) / (2.0 * alpha), provenance="proved")


class SetValuedElement:
    """Base class for operators with a graph sampler and an exact resolvent.

    Subclasses implement :meth:`resolvent`, :meth:`sample_graph` and
    :meth:`distance`.  ``params`` and ``angle`` hold the declared classes.
    """

    dim: int = 1
    multivalued: bool = False
    params: SemimonotoneParams | None = None
    angle: AngleBound | None = None

    def _declare(self, params=None, angle=None):
        if params is not None and class_status(params) is not ClassStatus.NONTRIVIAL:
            raise DomainError(f"cannot attach {class_status(params).value} class {params} to an element")
        self.params = params
        self.angle = angle

    def resolvent(self, gamma: float, w) -> np.ndarray:
        """Return ``v`` with ``w`` in ``v + gamma*A(v)``."""
        raise NotImplementedError

    def sample_graph(self, rng: np.random.Generator, count: int):
        """Return arrays ``x, u`` of shape ``(count, dim)`` with ``u[k]`` in ``A(x[k])``."""
        raise NotImplementedError

    def sample_pairs(self, seed, count: int) -> list[GraphPair]:
        x, u = self.sample_graph(np.random.default_rng(seed), count)
        return [GraphPair(a, b) for a, b in zip(x, u)]

    def distance(self, x, u) -> float:
        """Membership defect of ``u`` in ``A(x)``; ``inf`` outside the domain."""
        raise NotImplementedError

    def residual(self, gamma: float, w, v) -> float:
        """Defect of the inclusion ``w in v + gamma*A(v)`` in units of ``w``."""
        w = np.atleast_1d(np.asarray(w, dtype=float))
        v = np.atleast_1d(np.asarray(v, dtype=float))
        return gamma * self.distance(v, (w - v) / gamma)
