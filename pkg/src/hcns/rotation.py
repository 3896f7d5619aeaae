"""Vector rotation by quaternions, with an independent matrix oracle.

The quaternion path embeds a 3-vector r as the vector quaternion
[0, r] and conjugates: r' = q r q^(-1), with q^(-1) = conj(q)/norm(q);
the double rotation is the nested product chain p q r q^(-1) p^(-1).
The oracle path builds the axis-angle rotation matrix directly, so the
two implementations cross-validate each other.

This module is float-only; exact radicals are out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ZeroAxis, ZeroQuaternion
from .hcnumber import HNumber
from .ops import conjug, in_multi, norma, scalar_mul
from .registry import QUATERNIONS
from .scalar import Scalar

Vector = tuple[float, float, float]

# The identity component of q r q^(-1) must vanish to this tolerance.
EMBED_TOL = 1e-12


@dataclass(frozen=True)
class RotationSpec:
    """An axis (any nonzero length; normalized internally) and an angle."""

    axis: Vector
    angle: float

    def __post_init__(self):
        if _norm3(self.axis) == 0.0:
            raise ZeroAxis("rotation axis must have nonzero length")

    def unit_axis(self) -> Vector:
        n = _norm3(self.axis)
        return (self.axis[0] / n, self.axis[1] / n, self.axis[2] / n)


def _norm3(v: Sequence[float]) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def quat_from_rotation(spec: RotationSpec) -> HNumber:
    """The unit quaternion [cos(angle/2), sin(angle/2) * unit axis]."""
    ux, uy, uz = spec.unit_axis()
    half = spec.angle / 2.0
    s = math.sin(half)
    return HNumber.of([math.cos(half), s * ux, s * uy, s * uz])


def recovered_angle(q: HNumber) -> float:
    """The rotation angle encoded by a (not necessarily unit) quaternion."""
    a = [c.as_float() for c in q.coeffs]
    n = math.sqrt(sum(x * x for x in a))
    if n == 0.0:
        raise ZeroQuaternion("zero quaternion has no rotation angle")
    return 2.0 * math.acos(max(-1.0, min(1.0, a[0] / n)))


def _normalized(q: HNumber) -> tuple[HNumber, HNumber]:
    """(q/|q|, its inverse); rotation is invariant under positive scaling."""
    n2 = norma(q, QUATERNIONS).as_float()
    if n2 <= 0.0:
        raise ZeroQuaternion("rotation quaternion must have positive norm")
    inv_len = 1.0 / math.sqrt(n2)
    unit_q = scalar_mul(Scalar.from_float(inv_len), q)
    inv_q = scalar_mul(Scalar.from_float(inv_len), conjug(q, QUATERNIONS))
    return unit_q, inv_q


def _embed(r: Sequence[float]) -> HNumber:
    return HNumber.of([0.0, float(r[0]), float(r[1]), float(r[2])])


def _vector_part(q: HNumber) -> Vector:
    a = [c.as_float() for c in q.coeffs]
    if abs(a[0]) > EMBED_TOL * max(1.0, _norm3(a[1:])):
        raise ZeroQuaternion(
            f"rotation result is not a vector quaternion (identity part {a[0]!r})"
        )
    return (a[1], a[2], a[3])


def rotate(r: Sequence[float], q: HNumber) -> Vector:
    """Rotate the 3-vector r by the quaternion q (normalized internally)."""
    unit_q, inv_q = _normalized(q if q.is_float else q.to_float())
    out = in_multi(in_multi(unit_q, _embed(r), QUATERNIONS), inv_q, QUATERNIONS)
    return _vector_part(out)


def rotate2(r: Sequence[float], q: HNumber, p: HNumber) -> Vector:
    """Two successive rotations, first by q then by p: p q r q^(-1) p^(-1).

    Implemented as the nested product chain, matching rotate(rotate(r, q), p)
    to floating precision.
    """
    unit_q, inv_q = _normalized(q if q.is_float else q.to_float())
    unit_p, inv_p = _normalized(p if p.is_float else p.to_float())
    m1 = in_multi(unit_p, unit_q, QUATERNIONS)
    m2 = in_multi(m1, _embed(r), QUATERNIONS)
    m3 = in_multi(m2, inv_q, QUATERNIONS)
    m4 = in_multi(m3, inv_p, QUATERNIONS)
    return _vector_part(m4)


def rotation_matrix_oracle(spec: RotationSpec) -> np.ndarray:
    """Axis-angle rotation matrix (independent of the quaternion path):

    R = cos(t) I + sin(t) K + (1 - cos(t)) k k^T, K the cross-product matrix.
    """
    k = np.array(spec.unit_axis())
    c, s = math.cos(spec.angle), math.sin(spec.angle)
    kx = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return c * np.eye(3) + s * kx + (1.0 - c) * np.outer(k, k)


def rotate_by_matrix(r: Sequence[float], specs: Sequence[RotationSpec]) -> Vector:
    """Apply rotations in sequence via the matrix oracle."""
    v = np.array([float(x) for x in r])
    for spec in specs:
        v = rotation_matrix_oracle(spec) @ v
    return (float(v[0]), float(v[1]), float(v[2]))


# --- the classic double-rotation scenario ------------------------------------
#
# Point (1, 2, 3), rotated by pi/3 about (0, 1, 0) and then by pi/2 about
# (1, 0, 0). A widely quoted result for this scenario,
# 3 e2 + (sqrt(3)+0.5) e3 + (sqrt(3)-0.5) e4, cannot be correct: its squared
# length is 15.5 while the input has squared length 14, and rotations
# preserve length. The cross-validated value is DEMO_EXPECTED below.

DEMO_POINT: Vector = (1.0, 2.0, 3.0)
DEMO_SPECS = (
    RotationSpec((0.0, 1.0, 0.0), math.pi / 3),
    RotationSpec((1.0, 0.0, 0.0), math.pi / 2),
)
DEMO_CLAIMED: Vector = (3.0, math.sqrt(3.0) + 0.5, math.sqrt(3.0) - 0.5)


def demo_expected() -> Vector:
    """The cross-validated result of the classic scenario."""
    return rotate_by_matrix(DEMO_POINT, DEMO_SPECS)
