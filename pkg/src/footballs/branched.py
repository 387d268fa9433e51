"""Integer cone angles through the branched cover ``z -> z**alpha + b``.

Composing the power map with inverse stereographic projection onto the unit
sphere pulls the round metric back to

    4 alpha^2 |z|^(2(alpha-1)) / (1 + |z^alpha + b|^2)^2 |dz|^2,

a K=1 metric with cone angle ``2 pi alpha`` at ``z = 0`` and ``z = oo``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .geometry import DomainError, Point3, wrap_angle


class _PointAtInfinity:
    """Chart flag for ``z = oo`` on the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _PointAtInfinity()

Extended = Union[complex, _PointAtInfinity]

NORTH_POLE = Point3(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class BranchParams:
    alpha: int
    b: float = 0.0

    def __post_init__(self):
        if isinstance(self.alpha, bool) or int(self.alpha) != self.alpha or self.alpha < 1:
            raise DomainError(f"alpha must be a positive integer, got {self.alpha!r}")
        if not math.isfinite(self.b):
            raise DomainError(f"b must be finite, got {self.b!r}")
        object.__setattr__(self, "alpha", int(self.alpha))
        object.__setattr__(self, "b", float(self.b))


def _polar_power(z: complex, n: int) -> complex:
    if n == 0:
        return 1 + 0j
    r = abs(z)
    if r == 0.0:
        return 0j
    phase = wrap_angle(n * math.atan2(z.imag, z.real))
    rn = r**n
    return complex(rn * math.cos(phase), rn * math.sin(phase))


def tau(z: Extended, bp: BranchParams) -> Extended:
    """The branched cover ``z**alpha + b`` (power taken in polar form)."""
    if z is INFINITY:
        return INFINITY
    return _polar_power(complex(z), bp.alpha) + bp.b


def inverse_stereographic(w: Extended) -> Point3:
    """Map ``w`` to ``(2 Re w, 2 Im w, |w|^2 - 1) / (1 + |w|^2)`` on the unit sphere."""
    if w is INFINITY:
        return NORTH_POLE
    w = complex(w)
    if abs(w) <= 1.0:
        m = w.real**2 + w.imag**2
        d = 1.0 + m
        return Point3(2.0 * w.real / d, 2.0 * w.imag / d, (m - 1.0) / d)
    # the same point written in q = 1/w, avoids overflow of |w|^2
    q = 1.0 / w
    m = q.real**2 + q.imag**2
    d = 1.0 + m
    return Point3(2.0 * q.real / d, -2.0 * q.imag / d, (1.0 - m) / d)


def branched_immersion(z: Extended, bp: BranchParams) -> Point3:
    return inverse_stereographic(tau(z, bp))


def branched_density(z: complex, bp: BranchParams) -> float:
    """Conformal factor of the pulled-back round metric at a finite ``z``.

    At ``z = 0`` this is ``4 / (1 + b^2)^2`` for ``alpha = 1`` and ``0``
    otherwise (the cone point).
    """
    if z is INFINITY:
        raise DomainError("use branched_density_at_infinity for the chart at z = oo")
    z = complex(z)
    a = bp.alpha
    r = abs(z)
    if r == 0.0 and a > 1:
        return 0.0
    w = tau(z, bp)
    return 4.0 * a * a * r ** (2 * (a - 1)) / (1.0 + abs(w) ** 2) ** 2


def branched_density_at_infinity(w: complex, bp: BranchParams) -> float:
    """Conformal factor in the chart ``w = 1/z`` around ``z = oo``.

    ``4 a^2 |w|^(2a-2) / (|w|^(2a) + |1 + b w^a|^2)^2``, finite at ``w = 0``.
    """
    w = complex(w)
    a = bp.alpha
    r = abs(w)
    if r == 0.0:
        return 4.0 if a == 1 else 0.0
    wa = _polar_power(w, a)
    return 4.0 * a * a * r ** (2 * (a - 1)) / (r ** (2 * a) + abs(1.0 + bp.b * wa) ** 2) ** 2


def tau_derivative(z: complex, bp: BranchParams) -> complex:
    """``alpha * z**(alpha - 1)``; vanishes only at the branch point 0 when alpha >= 2."""
    return bp.alpha * _polar_power(complex(z), bp.alpha - 1)
