"""Twistor projection, lifts and the Klein-quadric transform.

A regular f splits on the slice L_i as g + hj; the lift
[1, u, g(v) - u h^(v), h(v) + u g^(v)] covers f through the projection
[Z0, Z1, Z2, Z3] -> [Z0 + Z1 j, Z2 + Z3 j], and wedging the two plane
equations of the image line gives a holomorphic curve in CP^5 from
which f can be reconstructed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import FitError, NotReal, OutsideRadius, PoleDetected
from .quat_core import Quaternion
from .regular_fn import RegularSeries

PROJ_TOL = 1e-9


def _normalize(coords: np.ndarray) -> np.ndarray:
    mags = np.abs(coords)
    k = int(np.argmax(mags))
    if mags[k] == 0.0:
        raise ValueError("projective coordinates must not all vanish")
    return coords / coords[k]


def _projectively_equal(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    scale = float(np.max(np.abs(a)) * np.max(np.abs(b)))
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(a[i] * b[j] - a[j] * b[i]) > tol * max(1.0, scale):
                return False
    return True


@dataclass(frozen=True)
class ProjectivePoint3:
    """Homogeneous [Z0, Z1, Z2, Z3], stored with the largest coordinate at 1."""

    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords",
                           _normalize(np.asarray(self.coords, dtype=complex)))

    @staticmethod
    def of(z0, z1, z2, z3) -> "ProjectivePoint3":
        return ProjectivePoint3(np.array([z0, z1, z2, z3], dtype=complex))

    def __getitem__(self, k: int) -> complex:
        return complex(self.coords[k])

    def equals(self, other: "ProjectivePoint3", tol: float = PROJ_TOL) -> bool:
        return _projectively_equal(self.coords, other.coords, tol)

    def to_json(self) -> list:
        return [[z.real, z.imag] for z in self.coords]


@dataclass(frozen=True)
class HP1Point:
    """[q1, q2] with left homogeneity [q1, q2] = [p q1, p q2]."""

    q1: Quaternion
    q2: Quaternion

    @staticmethod
    def affine(q: Quaternion) -> "HP1Point":
        return HP1Point(Quaternion(1.0), q)

    @staticmethod
    def infinity() -> "HP1Point":
        return HP1Point(Quaternion(), Quaternion(1.0))

    @property
    def is_infinite(self) -> bool:
        return abs(self.q1) <= 1e-12 * max(1.0, abs(self.q2))

    def affine_point(self) -> Quaternion:
        if self.is_infinite:
            raise ZeroDivisionError("the point at infinity has no affine form")
        return self.q1.inverse() * self.q2

    def equals(self, other: "HP1Point", tol: float = PROJ_TOL) -> bool:
        if self.is_infinite or other.is_infinite:
            return self.is_infinite and other.is_infinite
        a, b = self.affine_point(), other.affine_point()
        return abs(a - b) <= tol * (1.0 + abs(a) + abs(b))


@dataclass(frozen=True)
class KleinPoint:
    """Homogeneous 6-tuple in the basis e01, e02, e03, e12, e13, e23."""

    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords",
                           _normalize(np.asarray(self.coords, dtype=complex)))

    @staticmethod
    def of(*zeta) -> "KleinPoint":
        return KleinPoint(np.array(zeta, dtype=complex))

    def __getitem__(self, k: int) -> complex:
        """1-based index matching the zeta_1 ... zeta_6 convention."""
        return complex(self.coords[k - 1])

    def klein_form(self) -> complex:
        z = self.coords
        return z[0] * z[5] - z[1] * z[4] + z[2] * z[3]

    def on_klein_quadric(self, tol: float = 1e-10) -> bool:
        z = self.coords
        scale = max(1.0, abs(z[0] * z[5]) + abs(z[1] * z[4]) + abs(z[2] * z[3]))
        return abs(self.klein_form()) <= tol * scale

    def on_null_quadric(self, tol: float = 1e-9) -> bool:
        """Membership in the real quadric x1 x6 - x2^2 - x3^2 - x4^2 - x5^2 = 0
        cut out on sigma-fixed points."""
        x = self.coords.real
        if float(np.max(np.abs(self.coords.imag))) > tol * float(np.max(np.abs(x))):
            return False
        val = x[0] * x[5] - x[1] ** 2 - x[2] ** 2 - x[3] ** 2 - x[4] ** 2
        return abs(val) <= tol * max(1.0, float(np.max(np.abs(x))) ** 2)

    def equals(self, other: "KleinPoint", tol: float = PROJ_TOL) -> bool:
        return _projectively_equal(self.coords, other.coords, tol)

    def to_json(self) -> list:
        return [[z.real, z.imag] for z in self.coords]


def twistor_project(Z: ProjectivePoint3) -> HP1Point:
    """[Z0, Z1, Z2, Z3] -> [Z0 + Z1 j, Z2 + Z3 j]."""
    q1 = Quaternion.from_complex_pair(Z[0], Z[1])
    q2 = Quaternion.from_complex_pair(Z[2], Z[3])
    return HP1Point(q1, q2)


def on_quadric(Z: ProjectivePoint3, tol: float = 1e-10) -> bool:
    """Z0 Z3 = Z1 Z2, the graph of the standard structure."""
    scale = max(1.0, abs(Z[0] * Z[3]) + abs(Z[1] * Z[2]))
    return abs(Z[0] * Z[3] - Z[1] * Z[2]) <= tol * scale


def in_q_plus(Z: ProjectivePoint3, tol: float = 1e-10) -> bool:
    if not on_quadric(Z, tol):
        return False
    if abs(Z[0]) > tol and (Z[2] / Z[0]).imag > 0:
        return True
    if abs(Z[1]) > tol and (Z[3] / Z[1]).imag > 0:
        return True
    return False


def _trim_complex(c: np.ndarray) -> np.ndarray:
    n = len(c)
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return c[:n]


@dataclass(frozen=True)
class SplitPair:
    """The splitting f = g + hj on L_i, as complex coefficient arrays.

    g_hat, h_hat default to the Schwarz reflections (coefficientwise
    conjugates); a non-symmetric curve supplies them independently and
    is flagged symmetric=False.
    """

    g: np.ndarray
    h: np.ndarray
    radius: float = math.inf
    ghat: np.ndarray | None = None
    hhat: np.ndarray | None = None
    symmetric: bool = True

    def __post_init__(self):
        object.__setattr__(self, "g", _trim_complex(np.asarray(self.g, dtype=complex)))
        object.__setattr__(self, "h", _trim_complex(np.asarray(self.h, dtype=complex)))

    @property
    def g_hat(self) -> np.ndarray:
        return np.conj(self.g) if self.ghat is None else self.ghat

    @property
    def h_hat(self) -> np.ndarray:
        return np.conj(self.h) if self.hhat is None else self.hhat

    def _check(self, v: complex):
        if not math.isinf(self.radius) and abs(v) >= self.radius:
            raise OutsideRadius(f"|v| = {abs(v)} >= radius {self.radius}")

    def eval_g(self, v: complex) -> complex:
        self._check(v)
        return complex(npoly.polyval(v, self.g)) if len(self.g) else 0j

    def eval_h(self, v: complex) -> complex:
        self._check(v)
        return complex(npoly.polyval(v, self.h)) if len(self.h) else 0j

    def eval_g_hat(self, v: complex) -> complex:
        self._check(v)
        gh = self.g_hat
        return complex(npoly.polyval(v, gh)) if len(gh) else 0j

    def eval_h_hat(self, v: complex) -> complex:
        self._check(v)
        hh = self.h_hat
        return complex(npoly.polyval(v, hh)) if len(hh) else 0j

    def to_series(self) -> RegularSeries:
        """Rebuild the quaternionic coefficients a_n = b_n + c_n j."""
        n = max(len(self.g), len(self.h))
        coeffs = []
        for k in range(n):
            b = self.g[k] if k < len(self.g) else 0j
            c = self.h[k] if k < len(self.h) else 0j
            coeffs.append(Quaternion.from_complex_pair(b, c))
        return RegularSeries(tuple(coeffs), self.radius)


def split(f: RegularSeries) -> SplitPair:
    """Coefficient splitting a_n = b_n + c_n j into g and h."""
    g = np.array([complex(a.w, a.x) for a in f.coeffs], dtype=complex)
    h = np.array([complex(a.y, a.z) for a in f.coeffs], dtype=complex)
    return SplitPair(g, h, f.radius)


def star_product_split(p1: SplitPair, p2: SplitPair) -> SplitPair:
    """The star product in split form: (g1 g2 - h1 h2^, g1 h2 + h1 g2^)."""
    def conv(a, b):
        if len(a) == 0 or len(b) == 0:
            return np.zeros(1, dtype=complex)
        return npoly.polymul(a, b)

    g = npoly.polysub(conv(p1.g, p2.g), conv(p1.h, p2.h_hat))
    h = npoly.polyadd(conv(p1.g, p2.h), conv(p1.h, p2.g_hat))
    return SplitPair(g, h, min(p1.radius, p2.radius))


def lift(f: RegularSeries, u: complex | None, v: complex) -> ProjectivePoint3:
    """Twistor lift of f at chart point (u, v); u = None marks u at infinity."""
    p = split(f)
    gv, hv = p.eval_g(v), p.eval_h(v)
    ghv, hhv = p.eval_g_hat(v), p.eval_h_hat(v)
    if u is None:
        return ProjectivePoint3.of(0.0, 1.0, -hhv, ghv)
    return ProjectivePoint3.of(1.0, u, gv - u * hhv, hv + u * ghv)


def lift_split(p: SplitPair, u: complex | None, v: complex) -> ProjectivePoint3:
    gv, hv = p.eval_g(v), p.eval_h(v)
    ghv, hhv = p.eval_g_hat(v), p.eval_h_hat(v)
    if u is None:
        return ProjectivePoint3.of(0.0, 1.0, -hhv, ghv)
    return ProjectivePoint3.of(1.0, u, gv - u * hhv, hv + u * ghv)


def twistor_transform(f: RegularSeries, v: complex) -> KleinPoint:
    """The curve [g g^ + h^ h, h, -g, g^, h^, 1] at v."""
    p = split(f)
    return transform_split(p, v)


def transform_split(p: SplitPair, v: complex) -> KleinPoint:
    gv, hv = p.eval_g(v), p.eval_h(v)
    ghv, hhv = p.eval_g_hat(v), p.eval_h_hat(v)
    return KleinPoint.of(gv * ghv + hhv * hv, hv, -gv, ghv, hhv, 1.0)


def sigma(zeta: KleinPoint) -> KleinPoint:
    """The real structure induced by j on CP^5; an involution."""
    z = zeta.coords
    return KleinPoint.of(np.conj(z[0]), np.conj(z[4]), -np.conj(z[3]),
                         -np.conj(z[2]), np.conj(z[1]), np.conj(z[5]))


def j_involution(Z: ProjectivePoint3) -> ProjectivePoint3:
    """The fixed-point-free antiholomorphic involution covering the antipode."""
    return ProjectivePoint3.of(-np.conj(Z[1]), np.conj(Z[0]),
                               -np.conj(Z[3]), np.conj(Z[2]))


def fiber_plucker(qtilde: Quaternion | None) -> KleinPoint:
    """Plucker coordinates of the fiber over q~ = w1 + w2 j; None marks infinity."""
    if qtilde is None:
        return KleinPoint.of(1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    w1, w2 = qtilde.complex_pair()
    return KleinPoint.of(abs(w1) ** 2 + abs(w2) ** 2, w2, -w1,
                         np.conj(w1), np.conj(w2), 1.0)


def fiber_axis_points(qtilde: Quaternion) -> tuple[ProjectivePoint3, ProjectivePoint3]:
    """The two points of the fiber with Z0 = 0 and with Z1 = 0."""
    w1, w2 = qtilde.complex_pair()
    z0 = ProjectivePoint3.of(0.0, 1.0, -np.conj(w2), np.conj(w1))
    z1 = ProjectivePoint3.of(1.0, 0.0, w1, w2)
    return z0, z1


def line_plucker(p: SplitPair, v: complex) -> KleinPoint:
    """Plucker coordinates of the image line, by wedging the plane normals.

    The line Z2 = g Z0 - h^ Z1, Z3 = h Z0 + g^ Z1 is spanned in the dual
    by [g, -h^, -1, 0] and [h, g^, 0, -1]; their exterior product gives
    the same Klein point as the transform, computed independently.
    """
    r1 = np.array([p.eval_g(v), -p.eval_h_hat(v), -1.0, 0.0], dtype=complex)
    r2 = np.array([p.eval_h(v), p.eval_g_hat(v), 0.0, -1.0], dtype=complex)
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    zeta = [r1[i] * r2[j] - r1[j] * r2[i] for i, j in pairs]
    return KleinPoint.of(*zeta)


@dataclass(frozen=True)
class CurveSample:
    v: complex
    zeta: KleinPoint

    @staticmethod
    def from_json(data) -> "CurveSample":
        v = complex(data["v"][0], data["v"][1])
        zeta = KleinPoint.of(*(complex(re, im) for re, im in data["zeta"]))
        return CurveSample(v, zeta)


POLE_TOL = 1e-10


def normalized_curve_values(samples: list[CurveSample]
                            ) -> list[tuple[complex, complex, complex, complex, complex]]:
    """(v, g, h, g^, h^) pointwise, after normalizing zeta_6 to 1.

    Raises PoleDetected where zeta_6 vanishes: the curve meets the fiber
    over infinity there, signalling a sphere of non-removable poles.
    """
    out = []
    for s in samples:
        z = s.zeta.coords
        scale = float(np.max(np.abs(z)))
        if abs(z[5]) <= POLE_TOL * scale:
            raise PoleDetected(f"zeta_6 vanishes at v = {s.v}")
        z = z / z[5]
        out.append((s.v, -z[2], z[1], z[3], z[4]))
    return out


def _fit_polynomial(vs: np.ndarray, vals: np.ndarray, max_degree: int,
                    tol: float) -> np.ndarray:
    scale = 1.0 + float(np.max(np.abs(vals))) if len(vals) else 1.0
    for d in range(0, min(max_degree, len(vs) - 1) + 1):
        vand = np.vander(vs, d + 1, increasing=True)
        coeffs, *_ = np.linalg.lstsq(vand, vals, rcond=None)
        resid = float(np.max(np.abs(vand @ coeffs - vals)))
        if resid <= tol * scale:
            return _trim_complex(coeffs)
    raise FitError(f"no polynomial of degree <= {max_degree} fits the samples")


def reconstruct(samples: list[CurveSample], max_degree: int = 24,
                fit_tol: float = 1e-9) -> SplitPair:
    """Recover the split pair of the regular map behind a sampled curve.

    After normalizing zeta_6 = 1, g = -zeta_3 and h = zeta_2 are fitted
    by increasing-degree interpolation.  A curve whose reflected
    components disagree with the conjugated fits beyond 1e-8 does not
    extend symmetrically; it is returned with symmetric=False and
    independently fitted g^, h^.
    """
    values = normalized_curve_values(samples)
    vs = np.array([t[0] for t in values], dtype=complex)
    g = _fit_polynomial(vs, np.array([t[1] for t in values]), max_degree, fit_tol)
    h = _fit_polynomial(vs, np.array([t[2] for t in values]), max_degree, fit_tol)
    ghat = _fit_polynomial(vs, np.array([t[3] for t in values]), max_degree, fit_tol)
    hhat = _fit_polynomial(vs, np.array([t[4] for t in values]), max_degree, fit_tol)

    def agree(a, b):
        n = max(len(a), len(b), 1)
        pa = np.zeros(n, dtype=complex)
        pb = np.zeros(n, dtype=complex)
        pa[:len(a)] = a
        pb[:len(b)] = b
        scale = 1.0 + float(max(np.max(np.abs(pa)), np.max(np.abs(pb))))
        return float(np.max(np.abs(pa - pb))) <= 1e-8 * scale

    if agree(np.conj(g), ghat) and agree(np.conj(h), hhat):
        return SplitPair(g, h)
    return SplitPair(g, h, ghat=ghat, hhat=hhat, symmetric=False)
