"""Circuit elements: device laws with exact resolvents and certified classes.

Voltages are in volts, currents in amperes, resistances in ohms.  Every
element is immutable; resolvents are closed-form case analyses on the
piecewise-linear device laws.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolventInfeasible, StepsizeTooSmall
from .operators import (
    AngleBound,
    SemimonotoneParams,
    SetValuedElement,
    comonotone_from_angle,
)

__all__ = [
    "Interval",
    "ideal_diode_eval",
    "ideal_diode_resolvent",
    "IdealDiode",
    "LinearResistor",
    "linear_resistor_resolvent",
    "TunnelDiode",
    "TunnelDiodeInverse",
    "tunnel_eval",
    "tunnel_params",
    "tunnel_inverse_resolvent",
    "slope_to_params",
    "EbersMollTransistor",
    "EbersMollSet",
    "ebers_moll_eval",
    "transistor_angle",
    "transistor_semimonotone",
    "LeakyTransistor",
    "leaky_resolvent",
    "ProductElement",
    "AffineShift",
]

SAMPLE_BOX = 10.0


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]``; empty when ``lo > hi``."""

    lo: float
    hi: float

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def distance(self, value: float) -> float:
        if self.is_empty:
            return math.inf
        if value < self.lo:
            return self.lo - value
        if value > self.hi:
            return value - self.hi
        return 0.0


EMPTY = Interval(math.inf, -math.inf)


# --------------------------------------------------------------------------- ideal diode


def ideal_diode_eval(v: float) -> Interval:
    """Current set of the ideal diode at voltage ``v``."""
    if v < 0:
        return Interval(0.0, 0.0)
    if v == 0:
        return Interval(0.0, math.inf)
    return EMPTY


def ideal_diode_resolvent(gamma: float, w: float) -> float:
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    return min(w, 0.0)


def _diode_branches(rng, count, box, u_max, p_conduct=0.5):
    """Points on the ideal-diode graph: blocking ``(v<0, 0)`` or conducting ``(0, u>=0)``."""
    conduct = rng.random(count) < p_conduct
    mag = rng.random(count)
    v = np.where(conduct, 0.0, -box * mag)
    u = np.where(conduct, u_max * mag, 0.0)
    return v, u


class IdealDiode(SetValuedElement):
    """Normal cone of the nonpositive half-line."""

    dim = 1
    multivalued = True

    def __init__(self, box=SAMPLE_BOX, u_max=SAMPLE_BOX):
        self.box = box
        self.u_max = u_max
        self._declare(SemimonotoneParams(0.0, 0.0, "proved"), AngleBound(math.pi / 2, "proved"))

    def __repr__(self):
        return "IdealDiode()"

    def __call__(self, v):
        return ideal_diode_eval(float(v))

    def resolvent(self, gamma, w):
        return np.array([ideal_diode_resolvent(gamma, float(np.ravel(w)[0]))])

    def sample_graph(self, rng, count):
        v, u = _diode_branches(rng, count, self.box, self.u_max)
        return v[:, None], u[:, None]

    def distance(self, x, u):
        return ideal_diode_eval(float(np.ravel(x)[0])).distance(float(np.ravel(u)[0]))

    def real_srg(self):
        return [(0.0, math.inf)], True


# --------------------------------------------------------------------------- linear resistor


def linear_resistor_resolvent(resistance: float, gamma: float, w):
    den = 1.0 + gamma * resistance
    if den == 0:
        raise DomainError(f"1 + gamma*resistance vanishes for resistance={resistance}, gamma={gamma}")
    return w / den


class LinearResistor(SetValuedElement):
    """``v = resistance * i`` (or ``i = conductance * v``, the algebra is the same)."""

    dim = 1

    def __init__(self, resistance: float, box=SAMPLE_BOX):
        if not math.isfinite(resistance):
            raise DomainError("resistance must be finite")
        self.resistance = float(resistance)
        self.box = box
        self._declare(SemimonotoneParams(self.resistance, 0.0, "proved"))

    def __repr__(self):
        return f"LinearResistor({self.resistance!r})"

    def __call__(self, x):
        return self.resistance * x

    def resolvent(self, gamma, w):
        return linear_resistor_resolvent(self.resistance, gamma, np.asarray(w, dtype=float))

    def sample_graph(self, rng, count):
        x = rng.uniform(-self.box, self.box, size=(count, 1))
        return x, self.resistance * x

    def distance(self, x, u):
        return float(np.linalg.norm(np.ravel(u) - self.resistance * np.ravel(x)))

    def real_srg(self):
        return [(self.resistance, self.resistance)], False


# --------------------------------------------------------------------------- tunnel diode


def slope_to_params(sigma: float, ell: float) -> SemimonotoneParams:
    """Class of a scalar map whose difference quotients lie in ``[sigma, ell]``."""
    if not (ell > 0 and -ell < sigma <= ell):
        raise DomainError(f"need ell > 0 and -ell < sigma <= ell, got sigma={sigma}, ell={ell}")
    return SemimonotoneParams(sigma * ell / (ell + sigma), 1.0 / (ell + sigma), "proved")


@dataclass(frozen=True)
class TunnelDiode(SetValuedElement):
    """Piecewise-linear tunnel diode, current as a function of voltage.

    Slope ``1/r1`` outside ``[-vbar, vbar]`` and ``-1/r2`` (negative
    resistance) inside.
    """

    r1: float
    r2: float
    vbar: float
    box: float = 3.0

    dim = 1

    def __post_init__(self):
        if not (self.r1 > 0 and self.r2 > 0 and self.vbar > 0):
            raise DomainError("tunnel diode parameters must be positive")
        if not self.r1 < self.r2:
            raise DomainError(f"need r1 < r2, got r1={self.r1}, r2={self.r2}")
        object.__setattr__(self, "params", tunnel_params(self))

    def __call__(self, v):
        return tunnel_eval(self, v)

    @property
    def slopes(self):
        return -1.0 / self.r2, 1.0 / self.r1

    def branches(self):
        """``(slope, offset, lo, hi)`` of each linear piece."""
        g1, g2, vb = 1.0 / self.r1, 1.0 / self.r2, self.vbar
        return (
            (-g2, 0.0, -vb, vb),
            (g1, vb * (g1 + g2), -math.inf, -vb),
            (g1, -vb * (g1 + g2), vb, math.inf),
        )

    def solve_affine(self, cx: float, ct: float, w: float) -> float:
        """Solve ``cx*x + ct*T(x) = w`` for increasing left-hand sides."""
        best, best_violation = None, math.inf
        for slope, offset, lo, hi in self.branches():
            den = cx + ct * slope
            if not den > 0:
                raise StepsizeTooSmall("piecewise equation is not strictly increasing", w=w)
            x = (w - ct * offset) / den
            violation = max(lo - x, x - hi, 0.0)
            if violation == 0.0:
                return x
            if violation < best_violation:
                best, best_violation = x, violation
        # breakpoint rounding: the nearest piece is correct up to ulps
        return best

    def resolvent(self, gamma, w):
        if not gamma * (1.0 / self.r2) < 1.0:
            raise StepsizeTooSmall(f"resolvent of the tunnel diode needs gamma < r2={self.r2}", w=w, gamma=gamma)
        w0 = float(np.ravel(w)[0])
        return np.array([self.solve_affine(1.0, gamma, w0)])

    def sample_graph(self, rng, count):
        x = rng.uniform(-self.box * self.vbar, self.box * self.vbar, size=(count, 1))
        return x, tunnel_eval(self, x)

    def distance(self, x, u):
        return abs(float(np.ravel(u)[0]) - float(tunnel_eval(self, float(np.ravel(x)[0]))))

    def real_srg(self):
        return [(-1.0 / self.r2, 1.0 / self.r1)], False

    def preimages(self, current: float) -> list[float]:
        out = []
        for slope, offset, lo, hi in self.branches():
            x = (current - offset) / slope
            if lo <= x <= hi:
                out.append(x)
        return out


def tunnel_eval(d: TunnelDiode, v):
    """Tunnel diode current; accepts scalars or arrays."""
    g1, g2, vb = 1.0 / d.r1, 1.0 / d.r2, d.vbar
    v_arr = np.asarray(v, dtype=float)
    out = np.where(
        v_arr < -vb,
        g1 * (v_arr + vb) + g2 * vb,
        np.where(v_arr > vb, g1 * (v_arr - vb) - g2 * vb, -g2 * v_arr),
    )
    return float(out) if out.ndim == 0 else out


def tunnel_params(d: TunnelDiode) -> SemimonotoneParams:
    return SemimonotoneParams(1.0 / (d.r1 - d.r2), d.r1 * d.r2 / (d.r2 - d.r1), "proved")


def tunnel_inverse_resolvent(d: TunnelDiode, gamma: float, w: float) -> float:
    p, _ = _tunnel_inverse_branch(d, gamma, w)
    return p


def _tunnel_inverse_branch(d: TunnelDiode, gamma: float, w: float):
    if not gamma > 1.0 / d.r2:
        raise StepsizeTooSmall(
            f"resolvent of the inverse tunnel diode needs gamma > 1/r2 = {1.0 / d.r2}", w=w, gamma=gamma)
    x = d.solve_affine(gamma, 1.0, float(w))
    return w - gamma * x, x


class TunnelDiodeInverse(SetValuedElement):
    """``T_tunnel^{-1}``: voltage as a (multi-valued) function of current."""

    dim = 1
    multivalued = True

    def __init__(self, diode: TunnelDiode):
        self.diode = diode
        self._declare(diode.params.inverse())

    def __repr__(self):
        return f"TunnelDiodeInverse({self.diode!r})"

    def resolvent(self, gamma, w):
        return np.array([tunnel_inverse_resolvent(self.diode, gamma, float(np.ravel(w)[0]))])

    def resolvent_branch(self, gamma, w):
        """Resolvent output together with the tunnel voltage ``x`` it selects."""
        return _tunnel_inverse_branch(self.diode, gamma, float(np.ravel(w)[0]))

    def sample_graph(self, rng, count):
        x, u = self.diode.sample_graph(rng, count)
        return u, x

    def distance(self, x, u):
        pre = self.diode.preimages(float(np.ravel(x)[0]))
        u0 = float(np.ravel(u)[0])
        return min((abs(u0 - p) for p in pre), default=math.inf)

    def real_srg(self):
        return [(-math.inf, -self.diode.r2), (self.diode.r1, math.inf)], True


# --------------------------------------------------------------------------- Ebers-Moll transistor


@dataclass(frozen=True)
class EbersMollSet:
    """``{R u : u_1 in T_D(v_1), u_2 in T_D(v_2)}``."""

    matrix: np.ndarray
    diode_sets: tuple[Interval, Interval]

    @property
    def is_empty(self) -> bool:
        return any(s.is_empty for s in self.diode_sets)

    def element(self, u1: float, u2: float) -> np.ndarray:
        if self.is_empty or (u1 not in self.diode_sets[0]) or (u2 not in self.diode_sets[1]):
            raise DomainError(f"({u1}, {u2}) is not an admissible pair of diode currents")
        return self.matrix @ np.array([u1, u2])

    def distance(self, i) -> float:
        """Defect measured in diode currents ``R^{-1} i``."""
        if self.is_empty:
            return math.inf
        u = np.linalg.solve(self.matrix, np.asarray(i, dtype=float))
        return math.hypot(self.diode_sets[0].distance(u[0]), self.diode_sets[1].distance(u[1]))


def _npn_resolvent(alpha_r, alpha_f, a, gamma, w1, w2):
    """Solve ``w = a*v + gamma*R*u`` with ideal-diode complementarity on each port.

    Returns ``(v1, v2, u1, u2)``.  The mixing matrix is a P-matrix, so the
    four active-set cones tile the plane; sets with ``v_i = 0`` are tried
    first so boundary inputs resolve deterministically.
    """
    s1 = w1 + alpha_r * w2
    s2 = alpha_f * w1 + w2
    if s1 >= 0.0 and s2 >= 0.0:
        det = 1.0 - alpha_r * alpha_f
        return 0.0, 0.0, s1 / (gamma * det), s2 / (gamma * det)
    if w1 >= 0.0 and s2 <= 0.0:
        return 0.0, s2 / a, w1 / gamma, 0.0
    if w2 >= 0.0 and s1 <= 0.0:
        return s1 / a, 0.0, 0.0, w2 / gamma
    if w1 <= 0.0 and w2 <= 0.0:
        return w1 / a, w2 / a, 0.0, 0.0
    raise ResolventInfeasible(f"no feasible active set for w=({w1}, {w2})", w=(w1, w2), gamma=gamma)


@dataclass(frozen=True)
class EbersMollTransistor(SetValuedElement):
    """NPN transistor: two ideal diodes mixed by ``[[1, -alpha_r], [-alpha_f, 1]]``."""

    alpha_r: float
    alpha_f: float
    box: float = SAMPLE_BOX
    u_max: float = SAMPLE_BOX

    dim = 2
    multivalued = True

    def __post_init__(self):
        for name in ("alpha_r", "alpha_f"):
            a = getattr(self, name)
            if not 0.0 <= a < 1.0:
                raise DomainError(f"{name} must lie in [0, 1), got {a}")
        object.__setattr__(self, "angle", transistor_angle(self))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[1.0, -self.alpha_r], [-self.alpha_f, 1.0]])

    def __call__(self, v):
        return ebers_moll_eval(self, v)

    def resolvent(self, gamma, w):
        return leaky_resolvent(self, gamma, w)

    def sample_graph(self, rng, count):
        v1, u1 = _diode_branches(rng, count, self.box, self.u_max)
        v2, u2 = _diode_branches(rng, count, self.box, self.u_max)
        v = np.column_stack([v1, v2])
        u = np.column_stack([u1, u2]) @ self.matrix.T
        return v, u

    def tight_pairs(self, rng, count, spread=1e-3):
        """Pairs of graph points near the configuration attaining the angle bound.

        The bound is attained with the voltage difference on one port and the
        diode-current difference on the other: port 2 voltage / port 1 current
        when ``alpha_f >= alpha_r``, the mirror image otherwise.  Returns
        ``x, u, y, v`` arrays of shape ``(count, 2)``.
        """
        j, k = (1, 0) if self.alpha_f >= self.alpha_r else (0, 1)
        x = np.zeros((count, 2))
        y = np.zeros((count, 2))
        ux = np.zeros((count, 2))
        uy = np.zeros((count, 2))
        # port j: x at the kink, y blocking
        y[:, j] = -1.0
        ux[:, j] = spread * rng.random(count)
        # port k: y slightly blocking, x conducting one unit of current
        y[:, k] = -spread * rng.random(count)
        ux[:, k] = 1.0
        return x, ux @ self.matrix.T, y, uy @ self.matrix.T

    def distance(self, x, u):
        v = np.ravel(np.asarray(x, dtype=float))
        return ebers_moll_eval(self, v).distance(np.ravel(u))


def ebers_moll_eval(t: EbersMollTransistor, v) -> EbersMollSet:
    v = np.ravel(np.asarray(v, dtype=float))
    return EbersMollSet(t.matrix, (ideal_diode_eval(v[0]), ideal_diode_eval(v[1])))


def transistor_angle(t: EbersMollTransistor) -> AngleBound:
    return AngleBound(math.pi / 2 + max(math.atan(t.alpha_f), math.atan(t.alpha_r)), "proved")


def transistor_semimonotone(rho: float) -> SemimonotoneParams:
    """A class containing every Ebers-Moll transistor, one for each ``rho < 0``."""
    if not rho < 0:
        raise DomainError(f"rho must be negative, got {rho}")
    return SemimonotoneParams(1.0 / (8.0 * rho), rho, "proved")


class LeakyTransistor(SetValuedElement):
    """Transistor with leakage resistors ``r`` across both ports."""

    dim = 2
    multivalued = True

    def __init__(self, transistor: EbersMollTransistor, r: float):
        if not r > 0:
            raise DomainError(f"leakage resistance must be positive, got {r}")
        self.transistor = transistor
        self.r = float(r)
        self._declare(comonotone_from_angle(AngleBound(3 * math.pi / 4), 1.0 / self.r))

    def __repr__(self):
        return f"LeakyTransistor({self.transistor!r}, r={self.r!r})"

    @property
    def alpha_r(self):
        return self.transistor.alpha_r

    @property
    def alpha_f(self):
        return self.transistor.alpha_f

    def resolvent(self, gamma, w):
        return leaky_resolvent(self, gamma, w)

    def resolvent_with_currents(self, gamma, w):
        """Resolvent output and the diode currents selected with it."""
        v1, v2, u1, u2 = _npn_resolvent(self.alpha_r, self.alpha_f, 1.0 + gamma / self.r,
                                        gamma, *map(float, np.ravel(w)))
        return np.array([v1, v2]), np.array([u1, u2])

    def sample_graph(self, rng, count):
        v, u = self.transistor.sample_graph(rng, count)
        return v, u + v / self.r

    def distance(self, x, u):
        x = np.ravel(np.asarray(x, dtype=float))
        return self.transistor.distance(x, np.ravel(u) - x / self.r)


def leaky_resolvent(lt, gamma: float, w) -> np.ndarray:
    """Resolvent of ``T_NPN + (1/r) id``; a plain transistor is the ``r = inf`` case."""
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    r = getattr(lt, "r", math.inf)
    w1, w2 = (float(c) for c in np.ravel(w))
    v1, v2, _, _ = _npn_resolvent(lt.alpha_r, lt.alpha_f, 1.0 + gamma / r, gamma, w1, w2)
    return np.array([v1, v2])


# --------------------------------------------------------------------------- composition


class ProductElement(SetValuedElement):
    """Diagonal stack ``A_1 x A_2 x ...`` acting blockwise."""

    def __init__(self, *parts: SetValuedElement):
        if not parts:
            raise DomainError("a product needs at least one factor")
        self.parts = parts
        self.dim = sum(p.dim for p in parts)
        self.multivalued = any(p.multivalued for p in parts)
        self._slices = []
        start = 0
        for p in parts:
            self._slices.append(slice(start, start + p.dim))
            start += p.dim

    def __repr__(self):
        return f"ProductElement{self.parts!r}"

    def resolvent(self, gamma, w):
        w = np.asarray(w, dtype=float)
        return np.concatenate([p.resolvent(gamma, w[s]) for p, s in zip(self.parts, self._slices)])

    def sample_graph(self, rng, count):
        xs, us = zip(*(p.sample_graph(rng, count) for p in self.parts))
        return np.hstack(xs), np.hstack(us)

    def distance(self, x, u):
        x = np.ravel(np.asarray(x, dtype=float))
        u = np.ravel(np.asarray(u, dtype=float))
        return math.hypot(*(p.distance(x[s], u[s]) for p, s in zip(self.parts, self._slices)))


class AffineShift(SetValuedElement):
    """``x -> A(x) + offset``; incremental properties are those of ``A``."""

    def __init__(self, base: SetValuedElement, offset):
        self.base = base
        self.offset = np.atleast_1d(np.asarray(offset, dtype=float))
        if self.offset.size != base.dim:
            raise DomainError(f"offset has dimension {self.offset.size}, element has {base.dim}")
        self.dim = base.dim
        self.multivalued = base.multivalued
        self.params = base.params
        self.angle = base.angle

    def __repr__(self):
        return f"AffineShift({self.base!r}, {self.offset!r})"

    def resolvent(self, gamma, w):
        return self.base.resolvent(gamma, np.asarray(w, dtype=float) - gamma * self.offset)

    def sample_graph(self, rng, count):
        x, u = self.base.sample_graph(rng, count)
        return x, u + self.offset

    def distance(self, x, u):
        return self.base.distance(x, np.asarray(u, dtype=float) - self.offset)
