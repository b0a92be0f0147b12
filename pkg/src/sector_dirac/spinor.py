"""Pauli algebra, infinite-mass boundary matrices and charge conjugation.

Spinors are length-2 complex arrays; a field of spinors is an array whose
last axis has length 2.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidArgument

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA1, SIGMA2, SIGMA3)

for _m in (SIGMA0, SIGMA1, SIGMA2, SIGMA3):
    _m.setflags(write=False)

_UNIT_TOL = 1e-14


@dataclass(frozen=True)
class UnitVector2:
    """Planar unit vector; construction rejects non-unit input."""

    vx: float
    vy: float

    def __post_init__(self):
        if abs(self.vx * self.vx + self.vy * self.vy - 1.0) > _UNIT_TOL * 4:
            raise InvalidArgument(f"({self.vx}, {self.vy}) is not a unit vector")

    @classmethod
    def from_angle(cls, theta):
        return cls(math.cos(theta), math.sin(theta))

    def as_array(self):
        return np.array([self.vx, self.vy])


def e_rad(theta):
    """Radial unit vector (cos θ, sin θ)."""
    return UnitVector2.from_angle(theta)


def e_ang(theta):
    """Angular unit vector, the θ-derivative of ``e_rad``."""
    return UnitVector2(-math.sin(theta), math.cos(theta))


def _as_vector(v):
    if isinstance(v, UnitVector2):
        return v.as_array()
    return np.asarray(v, dtype=float)


def pauli_dot(a):
    """Return σ·a for a real 2- or 3-vector ``a``."""
    a = _as_vector(a)
    if a.ndim != 1 or a.shape[0] not in (2, 3):
        raise InvalidArgument(f"pauli_dot needs 2 or 3 components, got shape {a.shape}")
    out = a[0] * SIGMA1 + a[1] * SIGMA2
    if a.shape[0] == 3:
        out = out + a[2] * SIGMA3
    return out


def pauli_dot_field(ax, ay):
    """σ·(ax, ay) for arrays of components; result has shape (..., 2, 2)."""
    ax = np.asarray(ax, dtype=float)
    ay = np.asarray(ay, dtype=float)
    return ax[..., None, None] * SIGMA1 + ay[..., None, None] * SIGMA2


def _unit(v):
    if isinstance(v, UnitVector2):
        return v
    arr = _as_vector(v)
    if arr.shape != (2,):
        raise InvalidArgument("boundary vectors are planar")
    return UnitVector2(float(arr[0]), float(arr[1]))


def boundary_matrix(v):
    """Infinite-mass boundary matrix B_v = -iσ3(σ·v) for a unit vector ``v``."""
    v = _unit(v)
    return -1j * SIGMA3 @ pauli_dot(v)


def bc_eigenvector(v, sign=1):
    """Normalised spinor spanning ker(B_v - sign).

    The phase is fixed so that the first nonzero component is real positive.
    """
    if sign not in (1, -1):
        raise InvalidArgument("sign must be +1 or -1")
    v = _unit(v)
    # B_v = [[0, -i(vx - i vy)], [i(vx + i vy), 0]]; its (sign)-eigenvector
    # is (1, sign*i*(vx + i vy)) / sqrt(2).
    z = complex(v.vx, v.vy)
    vec = np.array([1.0, sign * 1j * z], dtype=complex) / math.sqrt(2.0)
    return vec


def charge_conjugate(u):
    """Cu = σ1 conj(u), acting on the last axis."""
    u = np.asarray(u, dtype=complex)
    if u.shape[-1] != 2:
        raise InvalidArgument("spinor arrays need a trailing axis of length 2")
    return np.conj(u)[..., ::-1].copy()


def apply_mat(mat, u):
    """Apply a 2x2 matrix (or a field of them) to a spinor field."""
    return np.einsum("...ij,...j->...i", mat, np.asarray(u, dtype=complex))


def inner(u, v, weights=None):
    """Discrete L2 inner product ⟨u, v⟩ = Σ w conj(u)·v, linear in ``v``."""
    prod = np.sum(np.conj(u) * v, axis=-1)
    if weights is None:
        return complex(np.sum(prod))
    return complex(np.sum(np.asarray(weights) * prod))


def rotation_matrix(theta0):
    """e^{-iσ2 θ0} in closed form; a real rotation by θ0."""
    c, s = math.cos(theta0), math.sin(theta0)
    return np.array([[c, -s], [s, c]])


def spin_phase(theta0):
    """e^{i(θ0/2)σ3}."""
    return np.diag([np.exp(0.5j * theta0), np.exp(-0.5j * theta0)])


@dataclass(frozen=True)
class SampledField:
    """Spinor samples on a point cloud.

    Attributes
    ----------
    points : ndarray, shape (n, 2)
        Cartesian sample positions.
    values : ndarray, shape (n, 2)
        Spinor value at each point.
    weights : ndarray, shape (n,)
        Quadrature weights; they define the discrete L2 norm.
    theta0 : float
        Rotation angle of the sector the points live in.
    """

    points: np.ndarray
    values: np.ndarray
    weights: np.ndarray
    theta0: float = 0.0

    def norm(self):
        return math.sqrt(inner(self.values, self.values, self.weights).real)


def rotate_field(theta0, field):
    """Pull a field on the rotated sector back to the reference sector.

    Returns ``(U v)(x) = e^{i(θ0/2)σ3} v(e^{-iσ2θ0} x)``. The sample of ``v``
    at point ``p`` becomes the sample of ``U v`` at ``R^{-1} p``, so the
    weights carry over unchanged and the discrete norm is preserved.
    """
    if not isinstance(field, SampledField):
        raise InvalidArgument("rotate_field expects a SampledField")
    if not math.isclose(field.theta0, theta0, rel_tol=0.0, abs_tol=1e-14):
        raise InvalidArgument(
            f"field lives on a sector rotated by {field.theta0}, not {theta0}"
        )
    rot = rotation_matrix(theta0)
    new_points = field.points @ rot  # rows p -> R^T p = R^{-1} p
    new_values = apply_mat(spin_phase(theta0), field.values)
    return SampledField(new_points, new_values, field.weights.copy(), 0.0)
