"""Quaternion algebra.

Two layers live here. :class:`Quaternion` is an immutable scalar used for
constants, axis definitions and small computations. The ``q*`` array
functions operate on float arrays whose trailing axis holds the four
components ``(w, x, y, z)``; every transform in the package is written
against that representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import AxisError, DomainError

Real = Union[int, float]

# Below this vector norm e^q falls back to a short series.
_EXP_SERIES_CUTOFF = 1e-8
AXIS_TOL = 1e-12


@dataclass(frozen=True)
class Quaternion:
    """Hamiltonian quaternion ``w + x i + y j + z k``."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        a = np.asarray(a, dtype=float)
        return cls(a[0], a[1], a[2], a[3])

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return q_mul(self, other)

    def __rmul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return q_mul(other, self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented

    def conj(self) -> "Quaternion":
        return q_conj(self)

    def norm(self) -> float:
        return q_norm(self)

    def inv(self) -> "Quaternion":
        return q_inv(self)

    def isclose(self, other, tol: float = 1e-12) -> bool:
        other = _coerce(other)
        return bool(np.max(np.abs(self.as_array() - other.as_array())) <= tol)

    def __repr__(self):
        return f"Quaternion({self.w:+.6g}, {self.x:+.6g}i, {self.y:+.6g}j, {self.z:+.6g}k)"


def _coerce(v):
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float, np.floating, np.integer)):
        return Quaternion(float(v))
    return None


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def q_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def q_conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def q_norm(q: Quaternion) -> float:
    return math.sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z)


def q_inv(q: Quaternion) -> Quaternion:
    n2 = q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z
    if n2 == 0.0:
        raise DomainError("zero quaternion has no inverse")
    return Quaternion(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def sc(q: Quaternion) -> float:
    return q.w


def vec(q: Quaternion) -> Quaternion:
    return Quaternion(0.0, q.x, q.y, q.z)


def q_exp(q: Quaternion) -> Quaternion:
    """Exponential via ``e^w (cos|v| + v/|v| sin|v|)``.

    For tiny ``|v|`` the factor ``sin|v|/|v|`` is taken from its Taylor
    series so the pure-real limit is exact.
    """
    r = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    ew = math.exp(q.w)
    if r < _EXP_SERIES_CUTOFF:
        s = 1.0 - r * r / 6.0
    else:
        s = math.sin(r) / r
    return Quaternion(ew * math.cos(r), ew * s * q.x, ew * s * q.y, ew * s * q.z)


def q_exp_series(q: Quaternion, tol: float = 1e-15, max_terms: int = 400) -> Quaternion:
    """Power series ``sum q^n / n!``, stopped once a term drops below ``tol``.

    Kept as an independent check on :func:`q_exp`.
    """
    total = ONE
    term = ONE
    for n in range(1, max_terms):
        term = q_mul(term, q) / n
        total = total + term
        if q_norm(term) < tol:
            break
    return total


# --------------------------------------------------------------------------
# array layer: trailing axis of length 4 holds (w, x, y, z)


def qarr(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.shape[-1:] != (4,):
        raise ValueError(f"expected trailing axis of length 4, got shape {a.shape}")
    return a


def as_qarray(q) -> np.ndarray:
    """Quaternion or 4-sequence to a length-4 float array."""
    if isinstance(q, Quaternion):
        return q.as_array()
    return qarr(q)


def qmul(p, q) -> np.ndarray:
    """Broadcasting Hamilton product of quaternion arrays."""
    p = as_qarray(p)
    q = as_qarray(q)
    pw, px, py, pz = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    qw, qx, qy, qz = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack([
        pw * qw - px * qx - py * qy - pz * qz,
        pw * qx + px * qw + py * qz - pz * qy,
        pw * qy - px * qz + py * qw + pz * qx,
        pw * qz + px * qy - py * qx + pz * qw,
    ], axis=-1)


def qconj(q) -> np.ndarray:
    q = as_qarray(q)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qabs2(q) -> np.ndarray:
    q = as_qarray(q)
    return np.sum(q * q, axis=-1)


def qexp_pure(u, theta) -> np.ndarray:
    """``e^{u theta}`` for a unit pure quaternion ``u`` and real array ``theta``."""
    u = as_qarray(u)
    theta = np.asarray(theta, dtype=float)
    out = np.empty(theta.shape + (4,))
    out[..., 0] = np.cos(theta)
    s = np.sin(theta)
    out[..., 1] = s * u[1]
    out[..., 2] = s * u[2]
    out[..., 3] = s * u[3]
    return out


# --------------------------------------------------------------------------
# axes


@dataclass(frozen=True)
class AxisConfig:
    """Ordered pair of perpendicular unit pure quaternions ``(u1, u2)``.

    Inputs are rescaled to unit length; the perpendicularity test is
    applied after rescaling. ``u3 = u1 u2`` completes the frame.
    """

    u1: Quaternion = I
    u2: Quaternion = J

    def __post_init__(self):
        u1 = _unit_pure(self.u1, "u1")
        u2 = _unit_pure(self.u2, "u2")
        if abs(sc(q_mul(u1, q_conj(u2)))) > AXIS_TOL:
            raise AxisError("u1 and u2 are not perpendicular")
        object.__setattr__(self, "u1", u1)
        object.__setattr__(self, "u2", u2)

    @property
    def u3(self) -> Quaternion:
        return q_mul(self.u1, self.u2)

    @classmethod
    def from_vectors(cls, v1: Iterable[float], v2: Iterable[float]) -> "AxisConfig":
        a = [float(t) for t in v1]
        b = [float(t) for t in v2]
        if len(a) != 3 or len(b) != 3:
            raise AxisError("axis vectors need three components")
        return cls(Quaternion(0.0, *a), Quaternion(0.0, *b))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "AxisConfig":
        """Random perpendicular pair via Gram-Schmidt on Gaussian vectors."""
        a = rng.standard_normal(3)
        a /= np.linalg.norm(a)
        b = rng.standard_normal(3)
        b -= a * np.dot(a, b)
        b /= np.linalg.norm(b)
        # one more projection pass keeps the dot product at rounding level
        b -= a * np.dot(a, b)
        return cls.from_vectors(a, b)

    def basis(self) -> np.ndarray:
        """4x4 matrix whose rows are ``1, u1, u2, u3`` as component arrays."""
        return np.stack([ONE.as_array(), self.u1.as_array(),
                         self.u2.as_array(), self.u3.as_array()])

    def components(self, f) -> np.ndarray:
        """Coordinates of ``f`` in the frame ``{1, u1, u2, u3}``."""
        return qarr(f) @ self.basis().T

    def compose(self, c) -> np.ndarray:
        """Inverse of :meth:`components`."""
        return qarr(c) @ self.basis()



def _unit_pure(q: Quaternion, name: str) -> Quaternion:
    if not isinstance(q, Quaternion):
        q = Quaternion.from_array(q)
    if abs(q.w) > AXIS_TOL:
        raise AxisError(f"{name} must be pure (scalar part {q.w!r})")
    n = q_norm(q)
    if n == 0.0 or not math.isfinite(n):
        raise AxisError(f"{name} has zero or non-finite length")
    return Quaternion(0.0, q.x / n, q.y / n, q.z / n)


CANONICAL = AxisConfig()


def _check_axis(axis) -> AxisConfig:
    if not isinstance(axis, AxisConfig):
        raise AxisError(f"expected AxisConfig, got {type(axis).__name__}")
    u3 = axis.u3
    if abs(u3.w) > 1e-12 or abs(q_norm(u3) - 1.0) > 1e-12:
        raise AxisError("axis frame is not orthonormal")
    return axis


def symplectic_split(q: Quaternion, axis: AxisConfig = CANONICAL):
    """Write ``q = z1 + u2 z2`` with ``z1, z2`` in the subalgebra spanned by 1, u1."""
    _check_axis(axis)
    c0, c1, c2, c3 = axis.components(q.as_array())
    u1 = axis.u1
    z1 = Quaternion(c0) + u1 * c1
    # u2 (a + b u1) = a u2 - b u3
    z2 = Quaternion(c2) + u1 * (-c3)
    return z1, z2


def split_complex(f, u, v) -> tuple[np.ndarray, np.ndarray]:
    """Array split ``f = z1 + v z2`` with ``z1, z2`` in C_u, returned as complex.

    The complex unit stands for ``u``. ``v`` must be a unit pure quaternion
    perpendicular to ``u``.
    """
    u = as_qarray(u)
    v = as_qarray(v)
    t = qmul(u, v)
    f = qarr(f)
    c0 = f[..., 0]
    cu = f @ u
    cv = f @ v
    ct = f @ t
    # v (a + b u) = a v + b v u = a v - b t
    return c0 + 1j * cu, cv - 1j * ct


def merge_complex(z1, z2, u, v) -> np.ndarray:
    """Inverse of :func:`split_complex`."""
    u = as_qarray(u)
    v = as_qarray(v)
    t = qmul(u, v)
    z1 = np.asarray(z1)
    z2 = np.asarray(z2)
    out = (z1.imag[..., None] * u + z2.real[..., None] * v
           - z2.imag[..., None] * t)
    out[..., 0] += z1.real
    return out
