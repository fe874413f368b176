"""The quadratic map q -> q^2 + qi as a branched double cover of H.

The map sends the real axis onto the parabola gamma = {t^2 + it}, its
singular plane -i/2 + jR + kR onto a paraboloid of revolution, and is
two-to-one elsewhere.  Its twistor lift sweeps out a rational quartic
scroll K whose fibre geometry is classified by a sextic discriminant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, NotOnSurface
from .ocs import OCSValue
from .quat_core import I as QI, Quaternion, imag_unit
from .regular_fn import RegularSeries, eval_series, zeros
from .twistor import ProjectivePoint3

GEOM_TOL = 1e-10
MAP_TOL = 1e-9

# f(q) = q^2 + qi as a coefficient list.
F_PAR = RegularSeries.polynomial(Quaternion(), QI, Quaternion(1.0))


@dataclass(frozen=True)
class ParabolaPoint:
    """A target point x0 + i x1 + j x2 + k x3 = w1 + w2 j."""

    x0: float
    x1: float
    x2: float
    x3: float

    @staticmethod
    def from_quaternion(q: Quaternion) -> "ParabolaPoint":
        return ParabolaPoint(q.w, q.x, q.y, q.z)

    def to_quaternion(self) -> Quaternion:
        return Quaternion(self.x0, self.x1, self.x2, self.x3)

    @property
    def w1(self) -> complex:
        return complex(self.x0, self.x1)

    @property
    def w2(self) -> complex:
        return complex(self.x2, self.x3)

    @property
    def c_norm(self) -> float:
        """C = x0^2 + x1^2 + x2^2 + x3^2."""
        return self.x0 ** 2 + self.x1 ** 2 + self.x2 ** 2 + self.x3 ** 2


def _as_point(c) -> ParabolaPoint:
    if isinstance(c, ParabolaPoint):
        return c
    return ParabolaPoint.from_quaternion(c)


def f_par(q: Quaternion) -> Quaternion:
    """q^2 + qi."""
    return q * q + q * QI


def on_parabola(c, tol: float = MAP_TOL) -> bool:
    """Membership in gamma = {t^2 + it : t real}."""
    p = _as_point(c)
    s = tol * (1.0 + p.c_norm)
    return (abs(p.x2) <= s and abs(p.x3) <= s
            and abs(p.x0 - p.x1 ** 2) <= s)


def on_paraboloid(c, tol: float = GEOM_TOL) -> bool:
    """Membership in the branch locus x1 = 0, x0 = 1/4 - (x2^2 + x3^2)."""
    p = _as_point(c)
    s = tol * (1.0 + p.c_norm)
    return abs(p.x1) <= s and abs(p.x0 - 0.25 + p.x2 ** 2 + p.x3 ** 2) <= s


def in_solid(c, tol: float = GEOM_TOL) -> bool:
    """Membership in the closed solid paraboloid x1 = 0, x0 <= 1/4 - (x2^2+x3^2)."""
    p = _as_point(c)
    s = tol * (1.0 + p.c_norm)
    return abs(p.x1) <= s and p.x0 <= 0.25 - p.x2 ** 2 - p.x3 ** 2 + s


def _partner(alpha: Quaternion) -> Quaternion:
    """The second preimage -(z + i/2) - i/2 + e^{2i theta} w j, tan(theta) = z + z-bar."""
    z, w = alpha.complex_pair()
    s = 2.0 * z.real
    phase = complex(1.0 - s * s, 2.0 * s) / (1.0 + s * s)
    return Quaternion.from_complex_pair(-(z + 0.5j) - 0.5j, phase * w)


def preimages(c) -> list[Quaternion]:
    """The fibre of q -> q^2 + qi over c: two points, or one on the paraboloid.

    For c in the plane L_i the complex quadratic z^2 + iz - w1 = 0 is
    solved directly; otherwise one root of q^2 + qi - c is found and
    the rotation formula supplies its partner.
    """
    p = _as_point(c)
    q_c = p.to_quaternion()
    if abs(p.w2) <= GEOM_TOL * (1.0 + math.sqrt(p.c_norm)):
        disc = complex(-1.0) + 4.0 * p.w1
        root = np.sqrt(complex(disc))
        z1 = 0.5 * (-1j + root)
        z2 = 0.5 * (-1j - root)
        pts = [Quaternion.from_complex(z1), Quaternion.from_complex(z2)]
    else:
        shifted = F_PAR.shift(q_c)
        zs = zeros(shifted)
        alpha, mult = zs.points[0]
        pts = [alpha, _partner(alpha)] if mult == 1 else [alpha]
    if len(pts) == 2 and abs(pts[0] - pts[1]) <= MAP_TOL * (1.0 + abs(pts[0])):
        pts = pts[:1]
    return pts


def _structure_at(q: Quaternion) -> OCSValue:
    return OCSValue(imag_unit(q))


def _extended_pair(c) -> tuple[OCSValue, OCSValue]:
    p = _as_point(c)
    if on_parabola(p):
        raise DomainError("the induced structures are undefined on the parabola")
    if in_solid(p) and not on_paraboloid(p):
        raise DomainError("the induced structures do not extend inside the "
                          "solid paraboloid")
    pts = preimages(p)
    if len(pts) == 1:
        j = _structure_at(pts[0])
        return j, j
    a, b = pts
    if a.re() < b.re():
        a, b = b, a
    return _structure_at(a), _structure_at(b)


def j_plus(c) -> OCSValue:
    """The structure induced by the right-half-space branch of the cover."""
    return _extended_pair(c)[0]


def j_minus(c) -> OCSValue:
    """The structure induced by the left-half-space branch of the cover."""
    return _extended_pair(c)[1]


# ---------------------------------------------------------------------------
# the quartic scroll


def quartic_K(Z: ProjectivePoint3) -> complex:
    """(Z1 Z2 - Z0 Z3)^2 + 2 Z1 Z0 (Z1 Z2 + Z0 Z3) on the normalized representative."""
    z0, z1, z2, z3 = (Z[k] for k in range(4))
    return (z1 * z2 - z0 * z3) ** 2 + 2.0 * z1 * z0 * (z1 * z2 + z0 * z3)


def quartic_K_affine(x: float, y: float, z: float, w: float) -> float:
    """The real form K(x, y, z, w) used for affine slices."""
    return (y * z - x * w) ** 2 + 2.0 * y * x * (y * z + x * w)


def grad_K(Z: ProjectivePoint3) -> np.ndarray:
    """The four partial derivatives of the quartic."""
    z0, z1, z2, z3 = (Z[k] for k in range(4))
    m = z1 * z2 - z0 * z3
    return np.array([
        -2.0 * z3 * m + 2.0 * z1 * (z1 * z2 + 2.0 * z0 * z3),
        2.0 * z2 * m + 2.0 * z0 * (2.0 * z1 * z2 + z0 * z3),
        2.0 * z1 * m + 2.0 * z0 * z1 ** 2,
        -2.0 * z0 * m + 2.0 * z0 ** 2 * z1,
    ], dtype=complex)


class SurfaceClass(Enum):
    SMOOTH = "Smooth"
    DOUBLE_CURVE = "DoubleCurve"
    CUSP = "Cusp"
    PINCH_POINT = "PinchPoint"


_VERTICES = [ProjectivePoint3.of(*(1.0 if i == k else 0.0 for i in range(4)))
             for k in range(4)]
_EXTRA_CUSPS = [ProjectivePoint3.of(0.0, 1.0, 0.0, 0.25),
                ProjectivePoint3.of(1.0, 0.0, 0.25, 0.0)]


def hessian_minor(Z: ProjectivePoint3) -> complex:
    """The classifying 2x2 Hessian minor along the double lines.

    On the line Z0 = Z2 = 0 it equals 4 Z1^3 (4 Z3 - Z1); on Z1 = Z3 = 0
    it equals 4 Z0^3 (4 Z2 - Z0); on Z0 = Z1 = 0 all minors vanish.
    """
    tol = 1e-9
    z0, z1, z2, z3 = (Z[k] for k in range(4))
    if abs(z0) <= tol and abs(z1) <= tol:
        return 0j
    if abs(z0) <= tol and abs(z2) <= tol:
        return 4.0 * z1 ** 3 * (4.0 * z3 - z1)
    if abs(z1) <= tol and abs(z3) <= tol:
        return 4.0 * z0 ** 3 * (4.0 * z2 - z0)
    raise NotOnSurface(f"{Z} is not on the singular locus")


def singular_locus_class(Z: ProjectivePoint3, tol: float = 1e-9) -> SurfaceClass:
    """Stratum of the quartic at Z: smooth, double curve, cusp or pinch point."""
    if abs(quartic_K(Z)) > tol:
        raise NotOnSurface(f"K({Z}) does not vanish")
    for vtx in _VERTICES:
        if Z.equals(vtx, tol):
            return SurfaceClass.PINCH_POINT
    z0, z1, z2, z3 = (Z[k] for k in range(4))
    if abs(z0) <= tol and abs(z1) <= tol:
        return SurfaceClass.CUSP
    on_m02 = abs(z0) <= tol and abs(z2) <= tol
    on_m13 = abs(z1) <= tol and abs(z3) <= tol
    if on_m02 or on_m13:
        for cusp in _EXTRA_CUSPS:
            if Z.equals(cusp, tol):
                return SurfaceClass.CUSP
        return SurfaceClass.DOUBLE_CURVE
    return SurfaceClass.SMOOTH


# ---------------------------------------------------------------------------
# fibres of the twistor projection against the scroll


class FiberKind(Enum):
    ON_PARABOLA = "OnParabola"
    ON_PLANE_LI = "OnPlaneLi"
    ON_PARABOLOID = "OnParaboloid"
    AT_FOCUS = "AtFocus"
    GENERIC_FOUR = "GenericFour"


@dataclass(frozen=True)
class FiberClass:
    kind: FiberKind
    ruling_parameters: tuple[complex, ...]
    axis_z0: ProjectivePoint3  # the point of the fibre with Z0 = 0
    axis_z1: ProjectivePoint3  # the point of the fibre with Z1 = 0


def fiber_axis_points(c) -> tuple[ProjectivePoint3, ProjectivePoint3]:
    """The two distinguished points of the fibre over c with Z0 = 0 and Z1 = 0."""
    p = _as_point(c)
    w1, w2 = p.w1, p.w2
    z0_pt = ProjectivePoint3.of(0.0, 1.0, -np.conj(w2), np.conj(w1))
    z1_pt = ProjectivePoint3.of(1.0, 0.0, w1, w2)
    return z0_pt, z1_pt


def fiber_polynomial(c) -> np.ndarray:
    """Ascending coefficients of R(v) = v^4 + (1 - 2 x0) v^2 - 2 x1 v + C."""
    p = _as_point(c)
    return np.array([p.c_norm, -2.0 * p.x1, 1.0 - 2.0 * p.x0, 0.0, 1.0])


def _quartic_roots(coeffs: np.ndarray) -> list[complex]:
    """Roots of a real quartic via the companion matrix plus Newton polishing."""
    rts = np.roots(coeffs[::-1])
    deriv = np.polyder(coeffs[::-1])
    out = []
    for z in rts:
        z = complex(z)
        for _ in range(2):
            dz = np.polyval(deriv, z)
            if abs(dz) < 1e-14:
                break
            z = z - np.polyval(coeffs[::-1], z) / dz
        out.append(z)
    return sorted(out, key=lambda t: (round(t.real, 9), t.imag))


def fiber_intersections(c) -> FiberClass:
    """Intersections of the fibre over c with the ruling of the scroll."""
    p = _as_point(c)
    z0_pt, z1_pt = fiber_axis_points(p)
    roots = tuple(_quartic_roots(fiber_polynomial(p)))
    in_li = abs(p.w2) <= GEOM_TOL * (1.0 + math.sqrt(p.c_norm))
    if in_li and abs(p.w1 - 0.25) <= GEOM_TOL:
        kind = FiberKind.AT_FOCUS
    elif on_parabola(p):
        kind = FiberKind.ON_PARABOLA
    elif in_li:
        kind = FiberKind.ON_PLANE_LI
    elif on_paraboloid(p):
        kind = FiberKind.ON_PARABOLOID
    else:
        kind = FiberKind.GENERIC_FOUR
    return FiberClass(kind, roots, z0_pt, z1_pt)


def discriminant_D(c) -> float:
    """The degree-six polynomial whose zero set is the paraboloid.

    Sixteen times this value is the discriminant of the fibre quartic
    R(v); for x1 = 0 it factors as C(-1 + 4C + 4 x0 - 4 x0^2)^2.
    """
    p = _as_point(c)
    C, x0, x1 = p.c_norm, p.x0, p.x1
    return (C - 8 * C ** 2 + 16 * C ** 3 - 8 * C * x0 + 32 * C ** 2 * x0
            + 24 * C * x0 ** 2 - 32 * C ** 2 * x0 ** 2 - 32 * C * x0 ** 3
            + 16 * C * x0 ** 4 - x1 ** 2 + 36 * C * x1 ** 2
            + 6 * x0 * x1 ** 2 - 72 * C * x0 * x1 ** 2 - 12 * x0 ** 2 * x1 ** 2
            + 8 * x0 ** 3 * x1 ** 2 - 27 * x1 ** 4)


def osculating_sphere_point(u: complex | None) -> Quaternion:
    """Stereographic parametrization (|u|^2 - 3 + 4uj) / (4(1 + |u|^2)).

    Sweeps the image of the sphere (1/2)S, the round 2-sphere of radius
    1/2 centred at -1/4 in the 3-space R + jR + kR; u = None gives the
    limit 1/4, the focus.
    """
    if u is None:
        return Quaternion(0.25)
    d = 4.0 * (1.0 + abs(u) ** 2)
    return Quaternion((abs(u) ** 2 - 3.0) / d, 0.0,
                      4.0 * u.real / d, 4.0 * u.imag / d)


# ---------------------------------------------------------------------------
# figure data


def figure1_rows(samples: int = 200) -> list[tuple[float, float, float, str]]:
    """Labeled point clouds: the parabola, the paraboloid and the osculating
    sphere, projected to the 3-space spanned by x0, x2, x3 (the parabola is
    drawn in its own plane as (x0, x1, 0))."""
    rows = []
    for t in np.linspace(-1.5, 1.5, samples):
        rows.append((float(t * t), float(t), 0.0, "parabola"))
    n = max(int(math.isqrt(samples)), 2)
    for r in np.linspace(0.0, 1.0, n):
        for a in np.linspace(0.0, 2.0 * math.pi, n, endpoint=False):
            x2, x3 = r * math.cos(a), r * math.sin(a)
            rows.append((0.25 - r * r, float(x2), float(x3), "paraboloid"))
    for b in np.linspace(0.0, math.pi, n):
        for a in np.linspace(0.0, 2.0 * math.pi, n, endpoint=False):
            rows.append((-0.25 + 0.5 * math.cos(b),
                         0.5 * math.sin(b) * math.cos(a),
                         0.5 * math.sin(b) * math.sin(a), "sphere"))
    return rows


def figure2_cells(grid: int = 60, extent: float = 2.0
                  ) -> list[tuple[float, float, float]]:
    """Centres of grid cells where K(x, y, z, 1/4) changes sign."""
    axis = np.linspace(-extent, extent, grid + 1)
    x, y, z = np.meshgrid(axis, axis, axis, indexing="ij")
    vals = quartic_K_affine(x, y, z, 0.25)

    def corner_any(mask):
        out = np.zeros((grid, grid, grid), dtype=bool)
        for dx in (0, 1):
            for dy in (0, 1):
                for dz in (0, 1):
                    out |= mask[dx:dx + grid, dy:dy + grid, dz:dz + grid]
        return out

    crossing = (corner_any(vals < 0.0) & corner_any(vals > 0.0)) \
        | corner_any(vals == 0.0)
    centers = 0.5 * (axis[:-1] + axis[1:])
    idx = np.argwhere(crossing)
    return [(float(centers[ix]), float(centers[iy]), float(centers[iz]))
            for ix, iy, iz in idx]


def classification_rows(points) -> list[tuple[float, float, float, float, str]]:
    """CSV rows x0, x1, x2, x3, class for a batch of target points."""
    rows = []
    for c in points:
        p = _as_point(c)
        fc = fiber_intersections(p)
        rows.append((p.x0, p.x1, p.x2, p.x3, fc.kind.value))
    return rows
