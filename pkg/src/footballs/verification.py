"""
Numerical checks of the immersions that do not reuse the closed forms.

Every check here recomputes a geometric quantity from the surface map or
the metric alone (finite differences, quadrature, elliptic integrals) and
compares it against the value the closed-form geometry predicts.
"""
from __future__ import annotations

import json
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from . import branched as br
from . import geometry as geo
from .elliptic import profile_height_agm
from .geometry import DomainError, FootballParams

log = logging.getLogger(__name__)

Params = Union[FootballParams, br.BranchParams]

# verification samples stay this far from the poles
GUARD = 1e-3

# largest step / radius for which the O(h^2) estimates are trusted
MAX_STEP = 1e-2


class PrecisionWarning(UserWarning):
    pass


@dataclass(frozen=True)
class GridSpec:
    nu: int = 64
    ntheta: int = 64
    h: float = 1e-5

    def __post_init__(self):
        if self.nu < 2 or self.ntheta < 2:
            raise DomainError("grid needs at least 2 samples per direction")
        if not self.h > 0.0:
            raise DomainError(f"finite-difference step must be positive, got {self.h}")
        if self.h >= MAX_STEP:
            warnings.warn(f"step h={self.h} is too coarse for O(h^2) checks", PrecisionWarning)


@dataclass
class CheckResult:
    name: str
    measured: float
    expected: float
    tolerance: float
    pass_: bool = field(init=False)

    def __post_init__(self):
        m, e = float(self.measured), float(self.expected)
        self.pass_ = bool(abs(m - e) <= self.tolerance)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": _json_float(self.measured),
            "expected": _json_float(self.expected),
            "tolerance": _json_float(self.tolerance),
            "pass": self.pass_,
        }


@dataclass
class VerifyReport:
    params: Params
    checks: List[CheckResult]

    @property
    def all_pass(self) -> bool:
        return all(c.pass_ for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "params": params_to_dict(self.params),
            "checks": [c.to_dict() for c in self.checks],
            "all_pass": self.all_pass,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _json_float(x):
    x = float(x)
    return x if math.isfinite(x) else None


def params_to_dict(p: Params) -> dict:
    if isinstance(p, FootballParams):
        return {"kind": "football", "B": p.B, "lambda": p.lam, "alpha": p.alpha}
    return {"kind": "branched", "alpha": p.alpha, "b": p.b}


# -- finite-difference metric ----------------------------------------------------


def numeric_first_form(
    surface: Callable[[float, float], Sequence[float]],
    u: float,
    theta: float,
    h: float,
    u_bounds: Tuple[float, float] = (0.0, math.pi),
) -> Tuple[float, float, float]:
    """Pulled-back Euclidean metric ``(E, F, G)`` by central differences.

    ``u_bounds`` is the closed domain of the first coordinate; theta is
    periodic and never checked.
    """
    lo, hi = u_bounds
    if not (h > 0.0 and lo <= u - h and u + h <= hi):
        raise DomainError(f"stencil u +- h = {u} +- {h} leaves [{lo}, {hi}]")
    d_u = (np.asarray(surface(u + h, theta), float) - np.asarray(surface(u - h, theta), float)) / (2 * h)
    d_t = (np.asarray(surface(u, theta + h), float) - np.asarray(surface(u, theta - h), float)) / (2 * h)
    return float(d_u @ d_u), float(d_u @ d_t), float(d_t @ d_t)


def numeric_gauss_curvature(G_of_u: Callable[[float], float], u: float, h: float) -> float:
    """Curvature ``-(sqrt G)'' / sqrt G`` of ``du^2 + G(u) dtheta^2``."""
    g = [G_of_u(u - h), G_of_u(u), G_of_u(u + h)]
    if min(g) <= 0.0:
        raise DomainError(f"G must be positive on [{u - h}, {u + h}]")
    s = [math.sqrt(x) for x in g]
    return -(s[0] - 2.0 * s[1] + s[2]) / (h * h) / s[1]


def football_surface(p: FootballParams) -> Callable[[float, float], geo.Point3]:
    def surface(u, theta):
        return geo.immerse_geodesic(p, geo.GeodesicCoord(u, theta))

    return surface


def branched_surface(bp: br.BranchParams) -> Callable[[float, float], geo.Point3]:
    """The branched immersion in polar coordinates ``(r, theta)``."""

    def surface(r, theta):
        return br.branched_immersion(complex(r * math.cos(theta), r * math.sin(theta)), bp)

    return surface


# -- cone angles -------------------------------------------------------------------

_N_THETA = 256
_GL_X, _GL_W = np.polynomial.legendre.leggauss(48)


def _ring_ratio(sqrt_density: Callable[[float, float], float], eps: float) -> float:
    """Circumference of ``|z| = eps`` over the mean radial distance to it.

    The circle is integrated with the periodic trapezoid rule, the radial
    segments with Gauss-Legendre, both on ``sqrt(density)``.
    """
    thetas = np.arange(_N_THETA) * (geo.TWO_PI / _N_THETA)
    circ = 0.0
    radial = 0.0
    rs = 0.5 * eps * (_GL_X + 1.0)
    for t in thetas:
        circ += sqrt_density(eps, t) * eps
        radial += 0.5 * eps * sum(w * sqrt_density(r, t) for r, w in zip(rs, _GL_W))
    circ *= geo.TWO_PI / _N_THETA
    radial /= _N_THETA
    return circ / radial


def cone_angle_estimate(p: Params, pole: str, epsilon: float) -> float:
    """Estimate the total angle at a singular point from a small circle.

    ``pole`` is ``"origin"`` or ``"infinity"``. Returns intrinsic
    circumference over intrinsic radius, which tends to ``2 pi alpha``
    with an ``O(epsilon^2)`` error.
    """
    if pole not in ("origin", "infinity"):
        raise DomainError(f"pole must be 'origin' or 'infinity', got {pole!r}")
    if not epsilon > 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    if epsilon > MAX_STEP:
        warnings.warn(f"epsilon={epsilon} is too large for a cone-angle estimate", PrecisionWarning)

    if isinstance(p, FootballParams):
        if epsilon >= math.pi:
            raise DomainError("epsilon must be smaller than the pole distance")
        u = epsilon if pole == "origin" else math.pi - epsilon
        # the metric is theta-independent: circumference is 2 pi sqrt(G),
        # radial distance is the integral of sqrt(E) = 1 over an interval of length eps
        circ = geo.TWO_PI * math.sqrt(geo.fundamental_forms(p, u).G)
        radial = 0.5 * epsilon * sum(
            w * math.sqrt(geo.fundamental_forms(p, u0).E)
            for u0, w in zip(_pole_segment(pole, epsilon), _GL_W)
        )
        return circ / radial

    if pole == "origin":
        def sd(r, t):
            return math.sqrt(br.branched_density(complex(r * math.cos(t), r * math.sin(t)), p))
    else:
        def sd(r, t):
            return math.sqrt(br.branched_density_at_infinity(complex(r * math.cos(t), r * math.sin(t)), p))
    return _ring_ratio(sd, epsilon)


def _pole_segment(pole, eps):
    x = 0.5 * eps * (_GL_X + 1.0)
    return x if pole == "origin" else math.pi - x


def richardson_cone_angle(p: Params, pole: str, epsilon: float = 1e-2) -> float:
    """Two rounds of Richardson extrapolation over ``eps, eps/2, eps/4``.

    Removes the ``eps^2`` and ``eps^4`` terms of the estimate.
    """
    a0, a1, a2 = (cone_angle_estimate(p, pole, epsilon / 2**k) for k in range(3))
    r1 = (4.0 * a1 - a0) / 3.0
    r2 = (4.0 * a2 - a1) / 3.0
    return (16.0 * r2 - r1) / 15.0


# -- global checks --------------------------------------------------------------------


def total_parametric_area(p: FootballParams, grid: GridSpec) -> float:
    """Midpoint rule for the integral of ``sqrt(EG - F^2)`` over the chart."""
    du = math.pi / grid.nu
    dt = geo.TWO_PI / grid.ntheta
    total = 0.0
    for i in range(grid.nu):
        ff = geo.fundamental_forms(p, (i + 0.5) * du)
        # theta-independent integrand: one row stands for all ntheta cells
        total += math.sqrt(ff.E * ff.G - ff.F**2) * grid.ntheta
    return total * du * dt


def _interior_u(n: int, guard: float = GUARD) -> np.ndarray:
    return np.linspace(guard, math.pi - guard, n)


def _thetas(n: int) -> np.ndarray:
    return np.arange(n) * (geo.TWO_PI / n)


def covering_multiplicity_check(p: FootballParams, grid: GridSpec) -> float:
    """Largest displacement ``|F(r, theta + 2 pi/lambda) - F(r, theta)|`` over the grid."""
    shift = geo.TWO_PI / p.lam
    worst = 0.0
    for u in _interior_u(grid.nu):
        r = geo.conformal_from_geodesic(u)
        for t in _thetas(grid.ntheta):
            a = np.asarray(geo.immerse(p, geo.ConformalCoord(r, t)))
            b = np.asarray(geo.immerse(p, geo.ConformalCoord(r, t + shift)))
            worst = max(worst, float(np.linalg.norm(a - b)))
    return worst


def meridian_length(p: FootballParams) -> float:
    """Intrinsic pole-to-pole length along a meridian, the integral of sqrt(E)."""
    # E = 1 identically, so the integral over (0, pi) is pi
    return math.pi * math.sqrt(geo.fundamental_forms(p, 0.5 * math.pi).E)


def meridian_polyline_length(p: FootballParams, segments: int = 10_000, theta: float = 0.0) -> float:
    """Euclidean length of the image meridian sampled at ``segments + 1`` points."""
    us = np.linspace(0.0, math.pi, segments + 1)
    x3 = geo.profile_heights(us, p.B)
    phase = p.lam * geo.wrap_angle(theta)
    s = p.B * np.sin(us)
    pts = np.column_stack([s * math.cos(phase), s * math.sin(phase), x3])
    return float(np.linalg.norm(np.diff(pts, axis=0), axis=1).sum())


def pole_gap(p: FootballParams) -> float:
    """Euclidean distance between the two pole images."""
    return float(np.linalg.norm(np.asarray(geo.north_pole(p))))


# -- reports ------------------------------------------------------------------------------


def _run(checks: List[CheckResult], name: str, fn, expected: float, tolerance: float):
    try:
        measured = float(fn())
    except Exception as exc:  # a failing check must not abort the suite
        log.warning("check %s raised %s: %s", name, type(exc).__name__, exc)
        measured = math.nan
    if not math.isfinite(measured):
        checks.append(_failed(name, expected, tolerance))
    else:
        checks.append(CheckResult(name, measured, expected, tolerance))


def _failed(name, expected, tolerance):
    c = CheckResult(name, math.nan, expected, tolerance)
    c.pass_ = False
    return c


def _settings_checks(checks, h, eps):
    # pass iff 0 < h < MAX_STEP and 0 < eps <= MAX_STEP
    checks.append(CheckResult("precision.step_h", h, 0.0, math.nextafter(MAX_STEP, 0.0)))
    checks.append(CheckResult("precision.epsilon", eps, 0.0, MAX_STEP))


def _football_checks(p: FootballParams, grid: GridSpec, eps: float) -> List[CheckResult]:
    checks: List[CheckResult] = []
    _settings_checks(checks, grid.h, eps)
    us = _interior_u(grid.nu)
    ts = _thetas(grid.ntheta)
    surf = football_surface(p)
    alpha = p.alpha

    def first_form_dev():
        devE = devF = devG = 0.0
        for u in us:
            Gref = (alpha * math.sin(u)) ** 2
            for t in ts:
                E, F, G = numeric_first_form(surf, u, t, grid.h)
                devE = max(devE, abs(E - 1.0))
                devF = max(devF, abs(F))
                devG = max(devG, abs(G - Gref))
        return devE, devF, devG

    try:
        devs = first_form_dev()
    except Exception as exc:
        log.warning("numeric first form failed: %s", exc)
        devs = (math.nan,) * 3
    for name, d in zip("EFG", devs):
        _run(checks, f"isometry.{name}", lambda d=d: d, 0.0, 1e-6)

    _run(checks, "curvature.analytic",
         lambda: max(abs(geo.gauss_curvature(geo.fundamental_forms(p, u)) - 1.0) for u in us), 0.0, 1e-12)
    G_of_u = lambda u: geo.fundamental_forms(p, u).G
    _run(checks, "curvature.numeric",
         lambda: max(abs(numeric_gauss_curvature(G_of_u, u, grid.h) - 1.0) for u in us), 0.0, 1e-4)
    _run(checks, "metric.G_matches_football",
         lambda: max(abs(geo.fundamental_forms(p, u).G - geo.football_metric_G(alpha, u)) for u in us), 0.0, 1e-14)

    def frame_dev():
        worst = 0.0
        for u in us:
            for t in ts[:: max(1, grid.ntheta // 16)]:
                fr = geo.tangent_frame(p, u, t)
                n = np.asarray(fr.normal)
                worst = max(worst, abs(n @ n - 1.0), abs(n @ fr.d_u), abs(n @ fr.d_theta))
        return worst

    _run(checks, "frame.orthonormal", frame_dev, 0.0, 1e-12)

    hmin = 0.5 * (p.B + 1.0 / p.B)
    _run(checks, "mean_curvature.lower_bound",
         lambda: max(0.0, max(hmin - geo.mean_curvature(p, u) for u in us)), 0.0, 1e-12)
    _run(checks, "mean_curvature.equator", lambda: geo.mean_curvature(p, 0.5 * math.pi), hmin, 1e-12)

    _run(checks, "profile_height.elliptic", lambda: geo.profile_height(math.pi, p.B),
         profile_height_agm(math.pi, p.B), 1e-10)

    target = geo.TWO_PI * alpha
    for pole in ("origin", "infinity"):
        _run(checks, f"cone_angle.{pole}", lambda pole=pole: richardson_cone_angle(p, pole, eps),
             target, 1e-4 * target)

    area_target = 4.0 * math.pi * alpha
    _run(checks, "area.gauss_bonnet", lambda: total_parametric_area(p, grid), area_target, 1e-3 * area_target)
    cov_grid = GridSpec(min(grid.nu, 50), min(grid.ntheta, 50), grid.h)
    _run(checks, "covering.multiplicity", lambda: covering_multiplicity_check(p, cov_grid), 0.0, 1e-12)
    _run(checks, "meridian.analytic", lambda: meridian_length(p), math.pi, 0.0)
    _run(checks, "meridian.polyline", lambda: meridian_polyline_length(p), math.pi, 1e-4)
    # the poles are closer in space than along the surface
    _run(checks, "meridian.pole_gap_below_length", lambda: max(0.0, pole_gap(p) - math.pi), 0.0, 0.0)
    return checks


def _log_radii(n: int, rmin: float = 0.1, rmax: float = 10.0) -> np.ndarray:
    return np.geomspace(rmin * 1.001, rmax / 1.001, n)


def _branched_checks(bp: br.BranchParams, grid: GridSpec, eps: float) -> List[CheckResult]:
    checks: List[CheckResult] = []
    _settings_checks(checks, grid.h, eps)
    rs = _log_radii(grid.nu)
    ts = _thetas(grid.ntheta)
    surf = branched_surface(bp)

    def sphere_dev():
        worst = 0.0
        for r in rs:
            for t in ts:
                x = np.asarray(surf(r, t))
                worst = max(worst, abs(float(np.linalg.norm(x)) - 1.0))
        return worst

    _run(checks, "sphere.unit_norm", sphere_dev, 0.0, 1e-14)

    def pullback_dev():
        worst = 0.0
        for r in rs:
            h = grid.h * max(r, 1.0)
            for t in ts[:: max(1, grid.ntheta // 16)]:
                rho = br.branched_density(complex(r * math.cos(t), r * math.sin(t)), bp)
                E, F, G = numeric_first_form(surf, r, t, h, u_bounds=(0.0, math.inf))
                worst = max(worst, abs(E / rho - 1.0), abs(F) / (rho * r), abs(G / (rho * r * r) - 1.0))
        return worst

    _run(checks, "pullback.density", pullback_dev, 0.0, 1e-6)

    def consistency():
        worst = 0.0
        for r in rs:
            for t in ts:
                c = geo.ConformalCoord(r, t)
                a = br.branched_density(c.z, bp)
                b = geo.conformal_density_integer(bp.alpha, bp.b, c)
                worst = max(worst, abs(a - b) / b)
        return worst

    _run(checks, "density.consistency", consistency, 0.0, 1e-14)

    if bp.alpha >= 2:
        def branch_margin():
            # |tau'| / (alpha min(|z|,1)^(alpha-1) / 2) must stay >= 1 away from 0
            worst = math.inf
            for r in rs:
                for t in ts:
                    z = complex(r * math.cos(t), r * math.sin(t))
                    worst = min(worst, abs(br.tau_derivative(z, bp)) / (0.5 * bp.alpha * min(r, 1.0) ** (bp.alpha - 1)))
            return max(0.0, 1.0 - worst)

        _run(checks, "branch_points.only_at_poles", branch_margin, 0.0, 0.0)

    target = geo.TWO_PI * bp.alpha
    for pole in ("origin", "infinity"):
        _run(checks, f"cone_angle.{pole}", lambda pole=pole: richardson_cone_angle(bp, pole, eps),
             target, 1e-4 * target)
    return checks


def verify_all(p: Params, grid: GridSpec = None, eps: float = 1e-2) -> VerifyReport:
    """Run every check for a football or a branched cover, in a fixed order.

    Checks that raise are recorded as failures; the suite never aborts.
    """
    if grid is None:
        grid = GridSpec()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrecisionWarning)
        if isinstance(p, FootballParams):
            checks = _football_checks(p, grid, eps)
        elif isinstance(p, br.BranchParams):
            checks = _branched_checks(p, grid, eps)
        else:
            raise TypeError(f"cannot verify {type(p).__name__}")
    return VerifyReport(p, checks)
