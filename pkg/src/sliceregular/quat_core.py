"""Quaternion arithmetic, imaginary units, spheres and the (u, v) chart.

A quaternion q = w + xi + yj + zk is stored as four floats.  Every
non-real q decomposes uniquely as Re(q) + I_q |Im(q)| with I_q an
imaginary unit; the sphere through q is x + yS with x = Re(q) and
y = |Im(q)|.  The chart phi(u, v) = (1 + uj)^-1 v (1 + uj) gives
holomorphic coordinates on the complement of the real axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotUnit, RealArgument

# A quaternion counts as real when |Im(q)| <= REAL_EPS * max(1, |q|).
REAL_EPS = 1e-10


@dataclass(frozen=True)
class Quaternion:
    """q = w + xi + yj + zk with real components."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @staticmethod
    def from_complex(v: complex) -> "Quaternion":
        """Embed v = a + bi into the slice L_i."""
        return Quaternion(v.real, v.imag, 0.0, 0.0)

    @staticmethod
    def from_complex_pair(w1: complex, w2: complex) -> "Quaternion":
        """q = w1 + w2 j with w1, w2 in L_i."""
        return Quaternion(w1.real, w1.imag, w2.real, w2.imag)

    @staticmethod
    def from_json(data) -> "Quaternion":
        w, x, y, z = data
        return Quaternion(float(w), float(x), float(y), float(z))

    def to_json(self) -> list:
        return [self.w, self.x, self.y, self.z]

    def complex_pair(self) -> tuple[complex, complex]:
        """The splitting q = w1 + w2 j."""
        return complex(self.w, self.x), complex(self.y, self.z)

    def to_complex(self, tol: float = 1e-9) -> complex:
        """Read q off the slice L_i; fails if q has j or k components."""
        if math.hypot(self.y, self.z) > tol * max(1.0, abs(self)):
            raise ValueError(f"{self} does not lie in L_i")
        return complex(self.w, self.x)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        return self.scale(float(other))

    def __rmul__(self, other):
        return self.scale(float(other))

    def scale(self, t: float) -> "Quaternion":
        return Quaternion(self.w * t, self.x * t, self.y * t, self.z * t)

    def __truediv__(self, t: float) -> "Quaternion":
        return self.scale(1.0 / t)

    def __abs__(self) -> float:
        return math.sqrt(self.norm_sq())

    def norm_sq(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> "Quaternion":
        n = self.norm_sq()
        if n == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conj() / n

    def re(self) -> float:
        return self.w

    def im(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    def im_norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def dot(self, other: "Quaternion") -> float:
        """Euclidean inner product on R^4."""
        return (self.w * other.w + self.x * other.x
                + self.y * other.y + self.z * other.z)

    def is_real(self, tol: float = REAL_EPS) -> bool:
        return self.im_norm() <= tol * max(1.0, abs(self))

    def is_zero(self, tol: float = 0.0) -> bool:
        return abs(self) <= tol


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product; i*j = k, j*k = i, k*i = j."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def imag_unit(q: Quaternion) -> Quaternion:
    """I_q = Im(q)/|Im(q)|, the imaginary unit through q.

    Raises RealArgument on the real axis, where I_q is undefined.
    """
    n = q.im_norm()
    if n <= REAL_EPS * max(1.0, abs(q)):
        raise RealArgument(f"imaginary unit undefined at real point {q}")
    return Quaternion(0.0, q.x / n, q.y / n, q.z / n)


@dataclass(frozen=True)
class Sphere:
    """The sphere x + yS; y = 0 degenerates to the real point x."""

    x: float
    y: float

    def __post_init__(self):
        if self.y < 0:
            raise ValueError("sphere radius must be nonnegative")

    def contains(self, q: Quaternion, tol: float = 1e-9) -> bool:
        s = max(1.0, abs(q), abs(self.x) + self.y)
        return (abs(q.re() - self.x) <= tol * s
                and abs(q.im_norm() - self.y) <= tol * s)

    def point(self, unit: Quaternion | None = None) -> Quaternion:
        """A point x + y*I of the sphere; defaults to I = i."""
        u = I if unit is None else unit
        return Quaternion(self.x) + self.y * u

    def sample(self, count: int) -> list[Quaternion]:
        """Points of the sphere at evenly rotated imaginary units."""
        pts = []
        for n in range(count):
            a = 2.0 * math.pi * n / count
            b = math.pi * (2.0 * n + 1.0) / (2.0 * count)
            u = Quaternion(0.0, math.cos(a) * math.sin(b),
                           math.sin(a) * math.sin(b), math.cos(b))
            pts.append(Quaternion(self.x) + self.y * u)
        return pts


def sphere_of(q: Quaternion) -> Sphere:
    """The sphere Re(q) + |Im(q)| S through q."""
    return Sphere(q.re(), q.im_norm())


@dataclass(frozen=True)
class ChartPoint:
    """Coordinates (u, v) with q = (1+uj)^-1 v (1+uj); u None marks u = infinity."""

    u: complex | None
    v: complex

    @property
    def infinite(self) -> bool:
        return self.u is None


def _q_u(u: complex) -> Quaternion:
    return Quaternion(1.0, 0.0, u.real, u.imag)


def phi(c: ChartPoint) -> Quaternion:
    """q = Q_u^-1 v Q_u; only the finite-u chart."""
    if c.infinite:
        raise ValueError("phi is defined on the finite-u chart only")
    qu = _q_u(c.u)
    return qu.inverse() * Quaternion.from_complex(c.v) * qu


def phi_inverse(q: Quaternion) -> ChartPoint:
    """Chart coordinates of a non-real quaternion.

    v = Re(q) + i|Im(q)| lies in the closed upper half-plane and
    u = -i(b+ic)/(1+a) where I_q = ai + bj + ck; u is infinite exactly
    when I_q = -i.
    """
    unit = imag_unit(q)  # raises RealArgument on the real axis
    v = complex(q.re(), q.im_norm())
    a, b, c = unit.x, unit.y, unit.z
    if 1.0 + a <= 1e-14:
        return ChartPoint(None, v)
    u = -1j * complex(b, c) / (1.0 + a)
    return ChartPoint(u, v)


def conj_by_unit(eps: Quaternion, q: Quaternion) -> Quaternion:
    """eps^-1 q eps for unit eps; a rotation fixing the real axis."""
    if abs(abs(eps) - 1.0) > 1e-9:
        raise NotUnit(f"|eps| = {abs(eps)} is not 1")
    return eps.inverse() * q * eps
