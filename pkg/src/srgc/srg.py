"""Scaled relative graphs: point clouds, analytical class regions and containment.

Each pair of graph points ``(x, u), (y, v)`` with ``x != y`` contributes the
conjugate pair

    z = |u-v| / |x-y| * exp(+-1j * angle(x-y, u-v))

to the SRG of an operator; multi-valued operators also contain ``inf``.
Regions describe the SRG of a whole operator class, and membership of an
operator is falsified by finding sampled points outside the region.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import ClassVar, Iterator

import numpy as np

from .errors import DimensionMismatch, DomainError, InvalidInput, UnsupportedTransform
from .operators import (
    DEFAULT_TOL,
    AngleBound,
    ClassStatus,
    GraphPair,
    SemimonotoneParams,
    SetValuedElement,
    class_status,
)

__all__ = [
    "SRGPoint",
    "INFINITY",
    "SRGCloud",
    "SRGRegion",
    "ClosedDisk",
    "ComplementOfOpenDisk",
    "HalfPlane",
    "Cone",
    "FullPlane",
    "Empty",
    "srg_points",
    "srg_from_differences",
    "sample_srg",
    "srg_of_pairs",
    "real_set_in_region",
    "region_semimonotone",
    "region_angle_bounded",
    "region_contains",
    "region_transform",
    "invert_points",
    "falsify_membership",
    "sample_region",
]


@dataclass(frozen=True)
class SRGPoint:
    re: float
    im: float
    at_infinity: bool = False

    @classmethod
    def from_complex(cls, z: complex) -> SRGPoint:
        return cls(float(z.real), float(z.imag))

    def __complex__(self):
        if self.at_infinity:
            raise InvalidInput("the point at infinity has no complex value")
        return complex(self.re, self.im)


INFINITY = SRGPoint(math.nan, math.nan, at_infinity=True)


def srg_from_differences(dx: np.ndarray, du: np.ndarray) -> np.ndarray:
    """Upper points ``z_+`` for rows of differences with ``dx != 0``.

    ``dx`` and ``du`` have shape ``(n, d)``; rows with ``dx == 0`` are dropped.
    """
    dx = np.asarray(dx, dtype=float)
    du = np.asarray(du, dtype=float)
    if dx.ndim == 1:
        dx = dx[:, None]
        du = du[:, None]
    nx = np.linalg.norm(dx, axis=1)
    nu = np.linalg.norm(du, axis=1)
    keep = nx > 0
    dx, du, nx, nu = dx[keep], du[keep], nx[keep], nu[keep]
    modulus = nu / nx
    with np.errstate(invalid="ignore", divide="ignore"):
        c = np.einsum("ij,ij->i", dx, du) / (nx * nu)
    c = np.where(nu > 0, np.clip(c, -1.0, 1.0), 1.0)
    s = np.sqrt(1.0 - c * c)
    return modulus * c + 1j * modulus * s


def srg_points(p: GraphPair, q: GraphPair) -> list[SRGPoint]:
    """The conjugate pair contributed by two graph points (empty if ``x == y``)."""
    if p.dim != q.dim:
        raise DimensionMismatch(f"graph pairs have dimensions {p.dim} and {q.dim}")
    z = srg_from_differences((p.x - q.x)[None, :], (p.u - q.u)[None, :])
    if z.size == 0:
        return []
    z = complex(z[0])
    return [SRGPoint.from_complex(z), SRGPoint.from_complex(z.conjugate())]


class SRGCloud:
    """Finite SRG points (closed under conjugation) plus an infinity flag."""

    def __init__(self, points, includes_infinity: bool = False):
        pts = np.asarray(points, dtype=complex).ravel()
        if not np.all(np.isfinite(pts)):
            raise InvalidInput("cloud points must be finite; use includes_infinity for inf")
        self.points = pts
        self.includes_infinity = bool(includes_infinity)

    @classmethod
    def from_upper(cls, upper, includes_infinity=False) -> SRGCloud:
        upper = np.asarray(upper, dtype=complex).ravel()
        return cls(np.concatenate([upper, upper.conj()]), includes_infinity)

    def __len__(self):
        return self.points.size + int(self.includes_infinity)

    def __iter__(self) -> Iterator[SRGPoint]:
        for z in self.points:
            yield SRGPoint.from_complex(z)
        if self.includes_infinity:
            yield INFINITY

    @property
    def angles(self) -> np.ndarray:
        return np.abs(np.angle(self.points))

    def max_angle(self) -> float:
        return float(self.angles.max()) if self.points.size else 0.0

    def max_modulus(self) -> float:
        if self.includes_infinity:
            return math.inf
        return float(np.abs(self.points).max()) if self.points.size else 0.0

    def is_conjugate_symmetric(self, tol=0.0) -> bool:
        a = np.sort_complex(self.points)
        b = np.sort_complex(self.points.conj())
        return bool(np.all(np.abs(a - b) <= tol))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["re", "im"])
            for z in self.points:
                writer.writerow([f"{z.real:.17g}", f"{z.imag:.17g}"])
            fh.write(f"# includes_infinity={'true' if self.includes_infinity else 'false'}\n")

    @classmethod
    def from_csv(cls, path) -> SRGCloud:
        pts = []
        inf = False
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    key, _, val = line[1:].strip().partition("=")
                    if key.strip() == "includes_infinity":
                        inf = val.strip().lower() == "true"
                    continue
                if line == "re,im":
                    continue
                re, im = line.split(",")
                pts.append(complex(float(re), float(im)))
        return cls(pts, inf)


def sample_srg(element: SetValuedElement, n_pairs: int, seed=0) -> SRGCloud:
    """Sampled SRG of ``element`` from ``n_pairs`` random pairs of graph points."""
    if n_pairs < 1:
        raise DomainError("n_pairs must be at least 1")
    rng = np.random.default_rng(seed)
    x, u = element.sample_graph(rng, 2 * n_pairs)
    upper = srg_from_differences(x[0::2] - x[1::2], u[0::2] - u[1::2])
    return SRGCloud.from_upper(upper, includes_infinity=element.multivalued)


def srg_of_pairs(x, u, y, v, includes_infinity=False) -> SRGCloud:
    """Cloud from explicit pair arrays ``(x[k], u[k]), (y[k], v[k])``."""
    return SRGCloud.from_upper(srg_from_differences(np.asarray(x) - y, np.asarray(u) - v),
                               includes_infinity)


# --------------------------------------------------------------------------- regions


class SRGRegion:
    """Closed region of the extended complex plane, symmetric about the real axis."""

    includes_infinity: ClassVar[bool] = False

    def contains_array(self, z: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
        raise NotImplementedError

    def contains(self, p, tol: float = DEFAULT_TOL) -> bool:
        if isinstance(p, SRGPoint):
            if p.at_infinity:
                return self.includes_infinity
            p = complex(p)
        return bool(self.contains_array(np.array([p], dtype=complex), tol)[0])

    def isclose(self, other: SRGRegion, tol: float = 1e-10) -> bool:
        if type(self) is not type(other):
            return False
        a = [getattr(self, f) for f in self.__dataclass_fields__]
        b = [getattr(other, f) for f in other.__dataclass_fields__]
        return all(abs(x - y) <= tol * max(1.0, abs(x), abs(y)) for x, y in zip(a, b))


@dataclass(frozen=True)
class ClosedDisk(SRGRegion):
    center: float
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise DomainError(f"disk radius must be nonnegative, got {self.radius}")

    def contains_array(self, z, tol=DEFAULT_TOL):
        return np.abs(np.asarray(z) - self.center) <= self.radius + tol


@dataclass(frozen=True)
class ComplementOfOpenDisk(SRGRegion):
    center: float
    radius: float
    includes_infinity: ClassVar[bool] = True

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError(f"disk radius must be positive, got {self.radius}")

    def contains_array(self, z, tol=DEFAULT_TOL):
        return np.abs(np.asarray(z) - self.center) >= self.radius - tol


@dataclass(frozen=True)
class HalfPlane(SRGRegion):
    """``{Re z >= mu}`` together with infinity."""

    mu: float
    includes_infinity: ClassVar[bool] = True

    def contains_array(self, z, tol=DEFAULT_TOL):
        return np.asarray(z).real >= self.mu - tol


@dataclass(frozen=True)
class Cone(SRGRegion):
    """Points with ``|arg z| <= theta``, the origin and infinity."""

    theta: float
    includes_infinity: ClassVar[bool] = True

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise DomainError(f"cone half-angle must lie in [0, pi], got {self.theta}")

    def contains_array(self, z, tol=DEFAULT_TOL):
        z = np.asarray(z)
        return (z == 0) | (np.abs(np.angle(z)) <= self.theta + tol)


@dataclass(frozen=True)
class FullPlane(SRGRegion):
    includes_infinity: ClassVar[bool] = True

    def contains_array(self, z, tol=DEFAULT_TOL):
        return np.ones(np.shape(z), dtype=bool)


@dataclass(frozen=True)
class Empty(SRGRegion):
    def contains_array(self, z, tol=DEFAULT_TOL):
        return np.zeros(np.shape(z), dtype=bool)


def region_semimonotone(params: SemimonotoneParams) -> SRGRegion:
    """SRG of the class ``S(mu, rho)``."""
    status = class_status(params)
    if status is ClassStatus.UNIVERSAL:
        return FullPlane()
    if status is ClassStatus.EMPTY:
        return Empty()
    mu, rho = params.mu, params.rho
    if rho == 0.0:
        return HalfPlane(mu)
    c = 1.0 / (2.0 * rho)
    r = math.sqrt(1.0 - 4.0 * mu * rho) / (2.0 * abs(rho))
    if rho > 0:
        return ClosedDisk(c, r)
    return ComplementOfOpenDisk(c, r)


def region_angle_bounded(theta) -> Cone:
    t = theta.theta if isinstance(theta, AngleBound) else float(theta)
    return Cone(t)


def region_contains(region: SRGRegion, p, tol: float = DEFAULT_TOL) -> bool:
    return region.contains(p, tol)


def _invert_circle(c, r):
    d = c * c - r * r
    return c / d, r / abs(d)


def _invert(region: SRGRegion) -> SRGRegion:
    if isinstance(region, (FullPlane, Empty, Cone)):
        return region
    if isinstance(region, HalfPlane):
        mu = region.mu
        if mu > 0:
            return ClosedDisk(1 / (2 * mu), 1 / (2 * mu))
        if mu < 0:
            return ComplementOfOpenDisk(1 / (2 * mu), 1 / (2 * abs(mu)))
        return HalfPlane(0.0)
    c, r = region.center, region.radius
    d = c * c - r * r
    on_boundary = math.isclose(c * c, r * r, rel_tol=1e-14, abs_tol=0.0)
    if isinstance(region, ClosedDisk):
        if r == 0.0 and c == 0.0:
            raise UnsupportedTransform("the inverse of {0} is {inf}")
        if on_boundary:
            if c > 0:
                return HalfPlane(1 / (2 * c))
            raise UnsupportedTransform(f"inverse of {region} is a left half-plane")
        cc, rr = _invert_circle(c, r)
        return ClosedDisk(cc, rr) if d > 0 else ComplementOfOpenDisk(cc, rr)
    if on_boundary:
        if c < 0:
            return HalfPlane(1 / (2 * c))
        raise UnsupportedTransform(f"inverse of {region} is a left half-plane")
    cc, rr = _invert_circle(c, r)
    return ComplementOfOpenDisk(cc, rr) if d > 0 else ClosedDisk(cc, rr)


def _scale(region: SRGRegion, alpha: float) -> SRGRegion:
    if alpha == 0:
        raise DomainError("scale factor must be nonzero")
    if isinstance(region, (FullPlane, Empty)):
        return region
    if isinstance(region, (ClosedDisk, ComplementOfOpenDisk)):
        return type(region)(alpha * region.center, abs(alpha) * region.radius)
    if alpha > 0:
        if isinstance(region, HalfPlane):
            return HalfPlane(alpha * region.mu)
        return region
    if isinstance(region, Cone) and region.theta == math.pi:
        return region
    raise UnsupportedTransform(f"negative scaling of {region} leaves the region vocabulary")


def _shift(region: SRGRegion, alpha: float) -> SRGRegion:
    if alpha == 0 or isinstance(region, (FullPlane, Empty)):
        return region
    if isinstance(region, (ClosedDisk, ComplementOfOpenDisk)):
        return type(region)(region.center + alpha, region.radius)
    if isinstance(region, HalfPlane):
        return HalfPlane(region.mu + alpha)
    if region.theta == math.pi / 2:
        return HalfPlane(alpha)
    if region.theta == math.pi:
        return FullPlane()
    raise UnsupportedTransform(f"translated cone {region} leaves the region vocabulary")


def region_transform(region: SRGRegion, op: str, alpha: float | None = None) -> SRGRegion:
    """Image of ``region`` under ``scale`` (by ``alpha``), ``shift`` (by ``alpha``),
    ``shift_plus_one`` or ``invert`` (``r e^{i phi} -> (1/r) e^{i phi}``)."""
    if op == "invert":
        return _invert(region)
    if op == "shift_plus_one":
        return _shift(region, 1.0)
    if alpha is None:
        raise DomainError(f"operation {op!r} needs alpha")
    if op == "scale":
        return _scale(region, alpha)
    if op == "shift":
        return _shift(region, alpha)
    raise DomainError(f"unknown region operation {op!r}")


def invert_points(cloud: SRGCloud) -> SRGCloud:
    """Pointwise inverse ``z -> z / |z|^2`` with ``0 <-> inf``."""
    z = cloud.points
    zero = z == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = z[~zero] / np.abs(z[~zero]) ** 2
    if cloud.includes_infinity:
        inv = np.concatenate([inv, [0.0]])
    return SRGCloud(inv, includes_infinity=bool(zero.any()))


def falsify_membership(cloud: SRGCloud, region: SRGRegion, tol: float = DEFAULT_TOL) -> list[SRGPoint]:
    """Sampled points outside ``region``; empty means not falsified (never a proof)."""
    inside = region.contains_array(cloud.points, tol)
    out = [SRGPoint.from_complex(z) for z in cloud.points[~inside]]
    if cloud.includes_infinity and not region.includes_infinity:
        out.append(INFINITY)
    return out


def sample_region(region: SRGRegion, n: int, rng: np.random.Generator, extent: float = 10.0) -> np.ndarray:
    """Random points inside ``region``; unbounded regions are truncated at ``extent``."""
    u1, u2 = rng.random(n), rng.random(n)
    phi = 2 * np.pi * u2
    if isinstance(region, ClosedDisk):
        return region.center + region.radius * np.sqrt(u1) * np.exp(1j * phi)
    if isinstance(region, ComplementOfOpenDisk):
        return region.center + (region.radius + extent * u1) * np.exp(1j * phi)
    if isinstance(region, HalfPlane):
        return region.mu + extent * u1 + 1j * extent * (2 * u2 - 1)
    if isinstance(region, Cone):
        return extent * u1 * np.exp(1j * region.theta * (2 * u2 - 1))
    if isinstance(region, FullPlane):
        return extent * (2 * u1 - 1) + 1j * extent * (2 * u2 - 1)
    return np.empty(0, dtype=complex)


def _interval_in_region(lo: float, hi: float, region: SRGRegion, tol: float) -> bool:
    if isinstance(region, FullPlane):
        return True
    if isinstance(region, Empty):
        return False
    if isinstance(region, ClosedDisk):
        return lo >= region.center - region.radius - tol and hi <= region.center + region.radius + tol
    if isinstance(region, ComplementOfOpenDisk):
        return hi <= region.center - region.radius + tol or lo >= region.center + region.radius - tol
    if isinstance(region, HalfPlane):
        return lo >= region.mu - tol
    return lo >= 0.0 or region.theta >= math.pi - tol


def real_set_in_region(intervals, includes_infinity: bool, region: SRGRegion,
                       tol: float = DEFAULT_TOL) -> bool:
    """Exact containment of a real SRG (union of closed intervals) in ``region``.

    Scalar operators have real SRGs, so this decides class membership
    for them without sampling.
    """
    if includes_infinity and not region.includes_infinity:
        return False
    return all(_interval_in_region(lo, hi, region, tol) for lo, hi in intervals)
