"""
Closed-form geometry of twisted K=1 surfaces with two cone points.

The surface is parametrized in geodesic polar coordinates ``(u, theta)``
by

    x1 = B sin(u) cos(lambda*theta)
    x2 = B sin(u) sin(lambda*theta)
    x3 = int_0^u sqrt(1 - B^2 cos^2 t) dt

and in the conformal chart ``z = r exp(i theta)`` through ``u = 2 arctan r``.
The induced metric is ``du^2 + (alpha sin u)^2 dtheta^2`` with
``alpha = lambda * B``, i.e. a spherical metric with cone angle
``2 pi alpha`` at both poles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy import integrate

TWO_PI = 2.0 * math.pi

# quadrature tolerance for the profile height
_QUAD_TOL = 1e-13


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class DegenerateError(DomainError):
    """The parametrization degenerates (pole of the polar chart)."""


def wrap_angle(theta: float) -> float:
    """Reduce an angle to ``[0, 2*pi)``."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    if t >= TWO_PI:
        t = 0.0
    return t


@dataclass(frozen=True)
class FootballParams:
    """Profile amplitude ``B`` and integer winding ``lam``.

    The cone angle parameter ``alpha = lam * B`` is derived, never stored.
    """

    B: float
    lam: int

    def __post_init__(self):
        if isinstance(self.lam, bool) or int(self.lam) != self.lam:
            raise DomainError(f"lambda must be an integer, got {self.lam!r}")
        object.__setattr__(self, "lam", int(self.lam))
        object.__setattr__(self, "B", float(self.B))
        if not (0.0 < self.B < 1.0):
            raise DomainError(f"B must lie in (0, 1), got {self.B}")
        if self.lam < 1:
            raise DomainError(f"lambda must be >= 1, got {self.lam}")

    @property
    def alpha(self) -> float:
        return self.lam * self.B

    @classmethod
    def from_alpha(cls, alpha: float, B: float, tol: float = 1e-9) -> "FootballParams":
        """Build from ``(alpha, B)``, requiring ``alpha / B`` to be a positive integer."""
        if not (0.0 < B < 1.0):
            raise DomainError(f"B must lie in (0, 1), got {B}")
        if not alpha > 0.0:
            raise DomainError(f"alpha must be positive, got {alpha}")
        ratio = alpha / B
        lam = round(ratio)
        if abs(ratio - lam) >= tol or lam < 1:
            raise DomainError(f"alpha / B = {ratio!r} is not a positive integer")
        return cls(B, lam)


@dataclass(frozen=True)
class GeodesicCoord:
    """Point ``(u, theta)``; ``u`` in ``[0, pi]``, poles allowed."""

    u: float
    theta: float

    def __post_init__(self):
        u = float(self.u)
        if not (0.0 <= u <= math.pi):
            raise DomainError(f"u must lie in [0, pi], got {u}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "theta", wrap_angle(float(self.theta)))


@dataclass(frozen=True)
class ConformalCoord:
    """Point ``z = r exp(i theta)`` of the punctured plane (``r = 0`` allowed)."""

    r: float
    theta: float

    def __post_init__(self):
        r = float(self.r)
        if not math.isfinite(r) or r < 0.0:
            raise DomainError(f"r must be finite and nonnegative, got {r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", wrap_angle(float(self.theta)))

    @property
    def z(self) -> complex:
        return complex(self.r * math.cos(self.theta), self.r * math.sin(self.theta))


class Point3(NamedTuple):
    x1: float
    x2: float
    x3: float


class TangentFrame(NamedTuple):
    d_u: Point3
    d_theta: Point3
    normal: Point3


class FundamentalForms(NamedTuple):
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float


@dataclass(frozen=True)
class ProfilePair:
    """Meridian profile ``(f, g)`` of a twisted surface of revolution.

    Only ``f`` and its first two derivatives plus ``g'`` enter the
    fundamental forms; ``g`` itself is optional.
    """

    f: Callable[[float], float]
    f_prime: Callable[[float], float]
    f_double_prime: Callable[[float], float]
    g_prime: Callable[[float], float]
    g: Optional[Callable[[float], float]] = None


# -- chart changes -----------------------------------------------------------


def geodesic_from_conformal(r: float) -> float:
    """``u = 2 arctan r``."""
    r = float(r)
    if not math.isfinite(r) or r < 0.0:
        raise DomainError(f"r must be finite and nonnegative, got {r}")
    return 2.0 * math.atan(r)


def conformal_from_geodesic(u: float) -> float:
    """``r = tan(u / 2)``, the inverse of :func:`geodesic_from_conformal`."""
    u = float(u)
    if not (0.0 <= u < math.pi):
        raise DomainError(f"u must lie in [0, pi), got {u}")
    return math.tan(0.5 * u)


# -- the profile height --------------------------------------------------------


def _check_height_args(u: float, B: float):
    if not (0.0 <= B < 1.0):
        raise DomainError(f"B must lie in [0, 1), got {B}")
    if not (0.0 <= u <= math.pi):
        raise DomainError(f"u must lie in [0, pi], got {u}")


def _height_integrand(B: float) -> Callable[[float], float]:
    B2 = B * B
    return lambda t: math.sqrt(1.0 - B2 * math.cos(t) ** 2)


def profile_height(u: float, B: float) -> float:
    """Height ``int_0^u sqrt(1 - B^2 cos^2 t) dt`` of the meridian.

    Evaluated with adaptive Gauss-Kronrod quadrature (QUADPACK) to an
    absolute accuracy well below 1e-12.
    """
    u = float(u)
    B = float(B)
    _check_height_args(u, B)
    if u == 0.0:
        return 0.0
    if B == 0.0:
        return u
    val, _ = integrate.quad(
        _height_integrand(B), 0.0, u, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=200
    )
    return val


def profile_heights(us, B: float) -> np.ndarray:
    """Vectorized :func:`profile_height` for an ascending array of ``u``.

    Integrates over consecutive gaps and accumulates, so that dense samples
    cost one short quadrature each.
    """
    us = np.asarray(us, dtype=float)
    if us.ndim != 1:
        raise DomainError("expected a 1-d array of u values")
    if us.size == 0:
        return us.copy()
    if np.any(np.diff(us) < 0):
        raise DomainError("u values must be ascending")
    _check_height_args(float(us[0]), float(B))
    _check_height_args(float(us[-1]), float(B))
    f = _height_integrand(float(B))
    out = np.empty_like(us)
    acc = profile_height(float(us[0]), B)
    out[0] = acc
    for i in range(1, us.size):
        a, b = float(us[i - 1]), float(us[i])
        if b > a:
            acc += integrate.quad(f, a, b, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL)[0]
        out[i] = acc
    return out


# -- immersion -----------------------------------------------------------------


def immerse_geodesic(p: FootballParams, c: GeodesicCoord) -> Point3:
    s = p.B * _sin(c.u)
    phase = p.lam * c.theta
    return Point3(s * math.cos(phase), s * math.sin(phase), profile_height(c.u, p.B))


def immerse(p: FootballParams, c: ConformalCoord) -> Point3:
    """Image of ``z = r exp(i theta)``; ``r = 0`` maps to the origin."""
    if c.r == 0.0:
        return Point3(0.0, 0.0, 0.0)
    return immerse_geodesic(p, GeodesicCoord(geodesic_from_conformal(c.r), c.theta))


def north_pole(p: FootballParams) -> Point3:
    """Limit of :func:`immerse` as ``r -> infinity``."""
    return Point3(0.0, 0.0, profile_height(math.pi, p.B))


def _interior(u: float) -> float:
    u = float(u)
    if not (0.0 <= u <= math.pi):
        raise DomainError(f"u must lie in (0, pi), got {u}")
    if u == 0.0 or u == math.pi:
        raise DegenerateError(f"polar chart degenerates at u = {u}")
    return u


def tangent_frame(p: FootballParams, u: float, theta: float) -> TangentFrame:
    """Partial derivatives and unit normal at an interior point."""
    u = _interior(u)
    phase = p.lam * wrap_angle(theta)
    cp, sp = math.cos(phase), math.sin(phase)
    cu, su = math.cos(u), math.sin(u)
    w = math.sqrt(1.0 - (p.B * cu) ** 2)
    d_u = Point3(p.B * cu * cp, p.B * cu * sp, w)
    d_theta = Point3(-p.B * p.lam * su * sp, p.B * p.lam * su * cp, 0.0)
    normal = Point3(-w * cp, -w * sp, p.B * cu)
    return TangentFrame(d_u, d_theta, normal)


def fundamental_forms(p: FootballParams, u: float) -> FundamentalForms:
    u = _interior(u)
    su = math.sin(u)
    w = math.sqrt(1.0 - (p.B * math.cos(u)) ** 2)
    G = (p.B * p.lam * su) ** 2
    L = p.B * su / w
    N = p.lam**2 * p.B * su * w
    return FundamentalForms(1.0, 0.0, G, L, 0.0, N)


def gauss_curvature(ff: FundamentalForms) -> float:
    """``(LN - M^2) / (EG - F^2)``."""
    det = ff.E * ff.G - ff.F**2
    if not det > 0.0:
        raise DegenerateError(f"first fundamental form is degenerate (EG - F^2 = {det})")
    return (ff.L * ff.N - ff.M**2) / det


def mean_curvature(p: FootballParams, u: float) -> float:
    """Mean curvature ``(x + 1/x) / 2`` with ``x = B sin u / sqrt(1 - B^2 cos^2 u)``.

    Bounded below by ``(B + 1/B) / 2 > 1``, attained on the equator.
    Diverges at the poles, which are rejected.
    """
    u = _interior(u)
    x = p.B * math.sin(u) / math.sqrt(1.0 - (p.B * math.cos(u)) ** 2)
    return 0.5 * (x + 1.0 / x)


def football_metric_G(alpha: float, s: float) -> float:
    """``dtheta^2`` coefficient ``(alpha sin s)^2`` of the football metric."""
    return (alpha * math.sin(s)) ** 2


# -- conformal densities --------------------------------------------------------


def conformal_density(alpha: float, z: ConformalCoord) -> float:
    """Factor ``4 a^2 r^(2(a-1)) / (1 + r^(2a))^2`` for a non-integer cone parameter."""
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if float(alpha).is_integer():
        raise DomainError("integer alpha needs conformal_density_integer")
    r = z.r
    if r == 0.0:
        if alpha < 1.0:
            raise DegenerateError("density is singular at z = 0 for alpha < 1")
        return 0.0
    return 4.0 * alpha**2 * r ** (2.0 * (alpha - 1.0)) / (1.0 + r ** (2.0 * alpha)) ** 2


def conformal_density_integer(alpha: int, b: float, z: ConformalCoord) -> float:
    """Factor ``4 a^2 |z|^(2(a-1)) / (1 + |z^a + b|^2)^2`` for integer ``a``."""
    if int(alpha) != alpha or alpha < 1:
        raise DomainError(f"alpha must be a positive integer, got {alpha}")
    alpha = int(alpha)
    r = z.r
    ra = r**alpha
    phase = wrap_angle(alpha * z.theta)
    w2 = (ra * math.cos(phase) + b) ** 2 + (ra * math.sin(phase)) ** 2
    return 4.0 * alpha**2 * r ** (2 * (alpha - 1)) / (1.0 + w2) ** 2


# -- the generic twisted profile ---------------------------------------------------


def twisted_profile_forms(pp: ProfilePair, lam: int, u: float) -> FundamentalForms:
    """Fundamental forms of ``(f cos(lam t), f sin(lam t), g)`` for a unit-speed profile."""
    u = _interior(u)
    f = pp.f(u)
    fp = pp.f_prime(u)
    fpp = pp.f_double_prime(u)
    gp = pp.g_prime(u)
    if gp == 0.0:
        raise ZeroDivisionError(f"g'({u}) = 0")
    if not (f > 0.0 and gp > 0.0):
        raise DomainError(f"profile needs f > 0 and g' > 0, got f={f}, g'={gp} at u={u}")
    if abs(fp * fp + gp * gp - 1.0) > 1e-12:
        raise DomainError(f"profile is not unit speed at u={u}")
    return FundamentalForms(1.0, 0.0, (lam * f) ** 2, -fpp / gp, 0.0, lam**2 * f * gp)


def _sin(u: float) -> float:
    # sin(pi) is 1.2e-16 in binary64; the boundary condition wants exactly 0
    return 0.0 if u == math.pi else math.sin(u)


def solve_profile(B: float) -> ProfilePair:
    """The unit-speed profile with ``f'' + f = 0`` and ``f(0) = f(pi) = 0``.

    The cosine mode is killed by ``f(0) = 0``, leaving ``f = B sin u``.
    """
    B = float(B)
    if not (0.0 < B < 1.0):
        raise DomainError(f"B must lie in (0, 1), got {B}")
    return ProfilePair(
        f=lambda u: B * _sin(u),
        f_prime=lambda u: B * math.cos(u),
        f_double_prime=lambda u: -B * math.sin(u),
        g_prime=lambda u: math.sqrt(1.0 - (B * math.cos(u)) ** 2),
        g=lambda u: profile_height(u, B),
    )
