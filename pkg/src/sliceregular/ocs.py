"""Orthogonal complex structures on H minus the real axis.

The standard structure acts on tangent vectors by left multiplication
by I_q; a regular function pushes it forward to left multiplication by
the same I_q at the image point.  Linear fractional transformations and
the subgroup preserving the standard structure round out the toolkit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PoleHit, SingularPoint
from .quat_core import Quaternion, conj_by_unit, imag_unit
from .regular_fn import RegularSeries, eval_series
from .differential import is_singular

__all__ = [
    "OCSValue", "MobiusCoeffs", "j_standard", "induced_ocs", "mobius",
    "is_so2h", "conj_by_unit",
]


@dataclass(frozen=True)
class OCSValue:
    """A constant-coefficient complex structure v -> I v with I an imaginary unit."""

    unit: Quaternion

    def apply(self, v: Quaternion) -> Quaternion:
        return self.unit * v

    def matrix(self) -> np.ndarray:
        """Left-multiplication matrix in the basis 1, i, j, k."""
        cols = [self.apply(e) for e in (Quaternion(1.0), Quaternion(0, 1),
                                        Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1))]
        return np.array([[c.w, c.x, c.y, c.z] for c in cols]).T

    def close_to(self, other: "OCSValue", tol: float = 1e-9) -> bool:
        return abs(self.unit - other.unit) <= tol

    def __neg__(self) -> "OCSValue":
        return OCSValue(-self.unit)


def j_standard(q: Quaternion) -> OCSValue:
    """The standard structure at q, left multiplication by I_q."""
    return OCSValue(imag_unit(q))


def induced_ocs(f: RegularSeries, q: Quaternion) -> tuple[Quaternion, OCSValue]:
    """The push-forward structure of f at f(q).

    The structure at the image point is left multiplication by I_q (not
    by the imaginary unit of the image).  Fails with SingularPoint where
    the differential of f is not invertible.
    """
    unit = imag_unit(q)  # RealArgument on the real axis
    if f.is_polynomial and is_singular(f, q).singular:
        raise SingularPoint(f"differential of f not invertible at {q}")
    return eval_series(f, q), OCSValue(unit)


@dataclass(frozen=True)
class MobiusCoeffs:
    """Coefficients of q -> (qc + d)^-1 (qa + b)."""

    a: Quaternion
    b: Quaternion
    c: Quaternion
    d: Quaternion

    def __post_init__(self):
        if not self.invertible():
            raise ValueError("coefficients fail the invertibility condition")

    def determinant(self) -> float:
        a, b, c, d = self.a, self.b, self.c, self.d
        return (a.norm_sq() * d.norm_sq() + b.norm_sq() * c.norm_sq()
                - 2.0 * (b.conj() * d * c.conj() * a).re())

    def invertible(self) -> bool:
        scale = max(1.0, (self.a.norm_sq() + self.b.norm_sq()
                          + self.c.norm_sq() + self.d.norm_sq()) ** 2)
        return abs(self.determinant()) > 1e-12 * scale


def mobius(m: MobiusCoeffs, q: Quaternion) -> Quaternion:
    """The linear fractional transformation (qc + d)^-1 (qa + b)."""
    denom = q * m.c + m.d
    if abs(denom) <= 1e-12:
        raise PoleHit(f"qc + d vanishes at {q}")
    return denom.inverse() * (q * m.a + m.b)


def is_so2h(m: MobiusCoeffs, tol: float = 1e-10) -> bool:
    """Whether all four coefficients are real multiples of one unit quaternion."""
    coeffs = [m.a, m.b, m.c, m.d]
    ref = max(coeffs, key=abs)
    scale = abs(ref)
    if scale == 0.0:
        return True
    eps = ref / scale
    for c in coeffs:
        t = c.dot(eps)
        if abs(c - t * eps) > tol * max(1.0, scale):
            return False
    return True
