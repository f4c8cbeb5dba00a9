"""Quaternion-valued signals sampled on uniform 2D grids.

A :class:`QSignal2D` pairs a :class:`Grid2D` with an ``(m, n, 4)`` float
array. Spatial signals and spectra share the type; spectra produced by the
Fourier transforms sit on *wrapped* grids whose index ``k`` maps to the
signed frequency ``s(k) * d`` (standard DFT ordering).

Reflections ``x -> -x`` are index maps ``k -> (M - k) mod M``. They are
exact coordinate reflections on wrap-symmetric grids (origin ``0`` or
``-M dx / 2``), and on any grid they are exact involutions.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import fft as _fft
from .errors import DomainError, GridError
from .quat import (CANONICAL, AxisConfig, Quaternion, as_qarray, merge_complex,
                   qabs2, qconj, qmul, split_complex)


@dataclass(frozen=True)
class Grid2D:
    m: int
    n: int
    dx1: float = 1.0
    dx2: float = 1.0
    x1_0: float = 0.0
    x2_0: float = 0.0
    # True for DFT-ordered frequency grids: index k sits at x0 + s(k) * dx
    wrapped: bool = False
    # quadrature weight per sample; None means dx1 * dx2
    weight: float | None = None

    def __post_init__(self):
        if int(self.m) != self.m or int(self.n) != self.n or self.m < 1 or self.n < 1:
            raise GridError(f"grid dimensions must be positive integers, got {self.m}x{self.n}")
        if not (self.dx1 > 0 and self.dx2 > 0):
            raise GridError("grid spacings must be positive")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))
        for name in ("dx1", "dx2", "x1_0", "x2_0"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.weight is not None:
            if not self.weight > 0:
                raise GridError("grid weight must be positive")
            object.__setattr__(self, "weight", float(self.weight))

    @classmethod
    def centered(cls, m: int, n: int, dx1: float = 1.0, dx2: float | None = None) -> "Grid2D":
        """Grid whose origin is ``-m dx / 2`` on each axis (contains 0 for even sizes)."""
        dx2 = dx1 if dx2 is None else dx2
        return cls(m, n, dx1, dx2, -0.5 * m * dx1, -0.5 * n * dx2)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    @property
    def cell(self) -> float:
        return self.dx1 * self.dx2 if self.weight is None else self.weight

    def coords1(self) -> np.ndarray:
        return _axis_coords(self.m, self.dx1, self.x1_0, self.wrapped)

    def coords2(self) -> np.ndarray:
        return _axis_coords(self.n, self.dx2, self.x2_0, self.wrapped)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.coords1(), self.coords2(), indexing="ij")

    def is_wrap_symmetric(self) -> bool:
        """True when index reflection is an exact coordinate reflection ``x -> -x``."""
        if self.wrapped:
            return self.x1_0 == 0.0 and self.x2_0 == 0.0
        return (_origin_ok(self.x1_0, self.m, self.dx1)
                and _origin_ok(self.x2_0, self.n, self.dx2))

    def frequency_grid(self, weight: float | None = None) -> "Grid2D":
        """Reciprocal DFT grid: steps ``2 pi / (M dx)``, wrapped, origin 0."""
        return Grid2D(self.m, self.n, 2 * np.pi / (self.m * self.dx1),
                      2 * np.pi / (self.n * self.dx2), 0.0, 0.0, wrapped=True,
                      weight=weight)

    def same_as(self, other: "Grid2D", rtol: float = 1e-12) -> bool:
        if self.shape != other.shape or self.wrapped != other.wrapped:
            return False
        a = np.array([self.dx1, self.dx2, self.x1_0, self.x2_0, self.cell])
        b = np.array([other.dx1, other.dx2, other.x1_0, other.x2_0, other.cell])
        scale = max(1.0, float(np.max(np.abs(a))))
        return bool(np.all(np.abs(a - b) <= rtol * scale))


def signed_index(m: int) -> np.ndarray:
    k = np.arange(m)
    return (k + m // 2) % m - m // 2


def _axis_coords(m, dx, x0, wrapped):
    if wrapped:
        return x0 + signed_index(m) * dx
    return x0 + np.arange(m) * dx


def _origin_ok(x0, m, dx):
    period = m * dx
    r = np.mod(2 * x0, period)
    return bool(min(r, period - r) <= 1e-12 * max(1.0, period))


def reflect_index(m: int) -> np.ndarray:
    return (-np.arange(m)) % m


@dataclass(frozen=True, eq=False)
class QSignal2D:
    grid: Grid2D
    data: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.shape != (self.grid.m, self.grid.n, 4):
            raise GridError(f"data shape {data.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(data)):
            raise DomainError("signal contains non-finite samples")
        data = data.copy()
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    # constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, grid: Grid2D) -> "QSignal2D":
        return cls(grid, np.zeros(grid.shape + (4,)))

    @classmethod
    def delta(cls, grid: Grid2D, index=(0, 0), value=1.0) -> "QSignal2D":
        data = np.zeros(grid.shape + (4,))
        data[index] = _qvalue(value)
        return cls(grid, data)

    @classmethod
    def constant(cls, grid: Grid2D, value=1.0) -> "QSignal2D":
        return cls(grid, np.broadcast_to(_qvalue(value), grid.shape + (4,)))

    @classmethod
    def random(cls, grid: Grid2D, rng: np.random.Generator) -> "QSignal2D":
        return cls(grid, rng.standard_normal(grid.shape + (4,)))

    @classmethod
    def from_components(cls, grid: Grid2D, comps, axis: AxisConfig = CANONICAL) -> "QSignal2D":
        """Build ``c0 + c1 u1 + c2 u2 + c3 u3`` from four real arrays."""
        c = np.stack([np.broadcast_to(np.asarray(t, float), grid.shape) for t in comps], axis=-1)
        return cls(grid, axis.compose(c))

    # algebra ------------------------------------------------------------

    def with_data(self, data) -> "QSignal2D":
        return QSignal2D(self.grid, data)

    def on_grid(self, grid: Grid2D) -> "QSignal2D":
        return QSignal2D(grid, self.data)

    def __add__(self, other: "QSignal2D") -> "QSignal2D":
        _same_grid(self, other)
        return self.with_data(self.data + other.data)

    def __sub__(self, other: "QSignal2D") -> "QSignal2D":
        _same_grid(self, other)
        return self.with_data(self.data - other.data)

    def __neg__(self):
        return self.with_data(-self.data)

    def scale(self, s: float) -> "QSignal2D":
        return self.with_data(self.data * float(s))

    def left_mul(self, q) -> "QSignal2D":
        """Pointwise ``q f`` for a constant quaternion or a matching array."""
        return self.with_data(qmul(_qarg(q), self.data))

    def right_mul(self, q) -> "QSignal2D":
        return self.with_data(qmul(self.data, _qarg(q)))

    def conj(self) -> "QSignal2D":
        return self.with_data(qconj(self.data))

    def components(self, axis: AxisConfig = CANONICAL) -> np.ndarray:
        """``(m, n, 4)`` coordinates in the frame ``{1, u1, u2, u3}``."""
        return axis.components(self.data)

    def at(self, i: int, j: int) -> Quaternion:
        return Quaternion.from_array(self.data[i, j])


def _qvalue(v) -> np.ndarray:
    if isinstance(v, (int, float)):
        return np.array([float(v), 0.0, 0.0, 0.0])
    return as_qarray(v)


def _qarg(q):
    if isinstance(q, QSignal2D):
        return q.data
    if isinstance(q, (int, float)):
        return _qvalue(q)
    return as_qarray(q)


def _same_grid(f: QSignal2D, g: QSignal2D):
    if not f.grid.same_as(g.grid):
        raise GridError(f"grid mismatch: {f.grid} vs {g.grid}")


# --------------------------------------------------------------------------
# inner products and norms


def inner_product(f: QSignal2D, g: QSignal2D) -> Quaternion:
    """Riemann sum of ``f(x) conj(g(x)) dx1 dx2``."""
    _same_grid(f, g)
    prod = qmul(f.data, qconj(g.data)).reshape(-1, 4)
    return Quaternion.from_array(prod.sum(axis=0) * f.grid.cell)


def inner_product_left(f: QSignal2D, g: QSignal2D) -> Quaternion:
    """Conjugate-left variant ``sum conj(f) g dx1 dx2`` used with left-sided kernels."""
    _same_grid(f, g)
    prod = qmul(qconj(f.data), g.data).reshape(-1, 4)
    return Quaternion.from_array(prod.sum(axis=0) * f.grid.cell)


def lp_norm(f: QSignal2D, p=2) -> float:
    mag = np.sqrt(qabs2(f.data))
    if p in ("inf", np.inf, float("inf")):
        return float(mag.max())
    if p == 1:
        return float(mag.sum() * f.grid.cell)
    if p == 2:
        return float(np.sqrt(np.sum(mag * mag) * f.grid.cell))
    raise DomainError(f"unsupported norm order {p!r}")


# --------------------------------------------------------------------------
# structural transforms


def _reflect(a: np.ndarray, first: bool, second: bool) -> np.ndarray:
    if first:
        a = a[reflect_index(a.shape[0])]
    if second:
        a = a[:, reflect_index(a.shape[1])]
    return a


def alpha(f: QSignal2D, axis: AxisConfig = CANONICAL) -> QSignal2D:
    """Auxiliary transform for the multiplication formula.

    Keeps the scalar part, reflects ``x2`` in the ``u1`` part, ``x1`` in the
    ``u2`` part and both arguments in the ``u3`` part.
    """
    c = f.components(axis)
    out = np.stack([
        c[..., 0],
        _reflect(c[..., 1], False, True),
        _reflect(c[..., 2], True, False),
        _reflect(c[..., 3], True, True),
    ], axis=-1)
    return f.with_data(axis.compose(out))


def beta(f: QSignal2D, axis: AxisConfig = CANONICAL) -> QSignal2D:
    """Reflect ``x1`` in the ``u2`` and ``u3`` parts only; an involution."""
    c = f.components(axis)
    out = np.stack([
        c[..., 0],
        c[..., 1],
        _reflect(c[..., 2], True, False),
        _reflect(c[..., 3], True, False),
    ], axis=-1)
    return f.with_data(axis.compose(out))


def reflect_conj(f: QSignal2D) -> QSignal2D:
    """``conj(f(-x1, -x2))``."""
    return f.with_data(qconj(_reflect(f.data, True, True)))


def convolve(a: QSignal2D, b: QSignal2D) -> QSignal2D:
    """Circular convolution ``sum_y a(y) b(x - y) dx1 dx2``, order preserved.

    With ``a = a1 + j a2`` and ``b = b1 + j b2`` (complex parts in C_i) the
    product expands into four complex convolutions:
    ``a b = (a1 b1 - conj(a2) b2) + j (conj(a1) b2 + a2 b1)``.
    """
    _same_grid(a, b)
    u, v = np.array([0.0, 1.0, 0.0, 0.0]), np.array([0.0, 0.0, 1.0, 0.0])
    a1, a2 = split_complex(a.data, u, v)
    b1, b2 = split_complex(b.data, u, v)

    def cconv(p, q):
        fp = _fft.fft(_fft.fft(p, axis=0), axis=1)
        fq = _fft.fft(_fft.fft(q, axis=0), axis=1)
        r = _fft.fft(_fft.fft(fp * fq, axis=0, sign=1), axis=1, sign=1)
        return r / (p.shape[0] * p.shape[1])

    # conj(a)(y) convolved with b: pointwise conjugate of a before convolving
    z1 = cconv(a1, b1) - cconv(np.conj(a2), b2)
    z2 = cconv(np.conj(a1), b2) + cconv(a2, b1)
    return a.with_data(merge_complex(z1, z2, u, v) * a.grid.cell)


def convolve_direct(a: QSignal2D, b: QSignal2D) -> QSignal2D:
    """Brute-force circular convolution; reference for :func:`convolve`."""
    _same_grid(a, b)
    m, n = a.grid.shape
    out = np.zeros((m, n, 4))
    for y1 in range(m):
        for y2 in range(n):
            shifted = np.roll(np.roll(b.data, y1, axis=0), y2, axis=1)
            out += qmul(a.data[y1, y2], shifted)
    return a.with_data(out * a.grid.cell)


# --------------------------------------------------------------------------
# Poisson kernel and Abel weights


def _check_eps(eps):
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps!r}")


def poisson_kernel(grid: Grid2D, eps: float, periodic: bool = False) -> QSignal2D:
    """Separable Poisson kernel sampled at the signed lags ``s(k) * dx``.

    Lag sampling puts the kernel peak at index ``(0, 0)``, the layout
    :func:`convolve` expects. ``periodic=True`` returns the kernel summed
    over all periods ``M dx``, in closed form.
    """
    _check_eps(eps)
    l1 = signed_index(grid.m) * grid.dx1
    l2 = signed_index(grid.n) * grid.dx2
    if periodic:
        k1 = _periodic_poisson_1d(l1, eps, grid.m * grid.dx1)
        k2 = _periodic_poisson_1d(l2, eps, grid.n * grid.dx2)
    else:
        k1 = eps / (np.pi * (eps * eps + l1 * l1))
        k2 = eps / (np.pi * (eps * eps + l2 * l2))
    data = np.zeros(grid.shape + (4,))
    data[..., 0] = np.outer(k1, k2)
    return QSignal2D(grid, data)


def _periodic_poisson_1d(x, eps, period):
    # sum_n eps / (pi (eps^2 + (x + n L)^2)) = sinh(a) / (L (cosh(a) - cos(2 pi x / L))), a = 2 pi eps / L
    a = 2 * np.pi * eps / period
    return np.sinh(a) / (period * (np.cosh(a) - np.cos(2 * np.pi * x / period)))


def abel_weights(grid: Grid2D, eps: float) -> QSignal2D:
    """Real weights ``exp(-eps |w1| - eps |w2|)`` on a frequency grid."""
    _check_eps(eps)
    w1, w2 = grid.mesh()
    data = np.zeros(grid.shape + (4,))
    data[..., 0] = np.exp(-eps * np.abs(w1) - eps * np.abs(w2))
    return QSignal2D(grid, data)
