"""Quaternion linear canonical transforms.

Per axis the transform is parameterized by a real unimodular matrix
``(a, b; c, d)``. For ``b != 0`` the kernel is

    K(x, w) = exp(-u sgn(b) pi/4) / sqrt(2 pi |b|) * exp(u (a x^2/2b - x w/b + d w^2/2b))

(the prefactor is our branch of ``1/sqrt(u 2 pi b)``), and for ``b == 0``
the axis is a chirp multiplication with rescaling ``sqrt|d| e^{u c d w^2/2} f(d w)``.

Two-sided transforms put the first-axis kernel on the left and the second
on the right; right-sided transforms put both on the right, first axis
innermost. All integrals are Riemann sums.

Output grids: for ``b != 0`` the frequency step is ``|b| 2 pi / (N dx)``
so that ``w / b`` falls exactly on DFT bins, and the grid is centered
(origin ``-N dw / 2``). For ``b == 0`` the output step is ``dx / |d|``,
which makes ``d w`` land on the input samples. Either choice can be
overridden with an explicit output grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParamError, ResampleError
from .fft import lattice_transform
from .qft import NormalizationMode, TransformKind, qft_on
from .quat import (CANONICAL, AxisConfig, Quaternion, as_qarray, merge_complex,
                   qexp_pure, qmul, split_complex)
from .signal import Grid2D, QSignal2D

DET_TOL = 1e-12


@dataclass(frozen=True)
class LCTParams:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ParamError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > DET_TOL:
            raise ParamError(f"det(A) must be 1, got {det!r}")

    @classmethod
    def identity(cls) -> "LCTParams":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def fourier(cls) -> "LCTParams":
        return cls(0.0, 1.0, -1.0, 0.0)

    def inverse(self) -> "LCTParams":
        return LCTParams(self.d, -self.b, -self.c, self.a)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])


@dataclass(frozen=True)
class QLCTConfig:
    a1: LCTParams
    a2: LCTParams
    axis: AxisConfig = field(default=CANONICAL)
    mode: NormalizationMode = NormalizationMode.ANALYTIC

    def inverse(self) -> "QLCTConfig":
        return QLCTConfig(self.a1.inverse(), self.a2.inverse(), self.axis, self.mode)


# --------------------------------------------------------------------------
# kernels


def _prefactor(b: float) -> complex:
    # 1/sqrt(u 2 pi b): principal root for b > 0, and for b < 0
    # u b = -u |b| gives sqrt(-u) = e^{-u pi/4} conjugated
    return np.exp(-1j * np.sign(b) * np.pi / 4) / np.sqrt(2 * np.pi * abs(b))


def kernel_eval(A: LCTParams, u, x: float, w: float) -> Quaternion:
    """Kernel value ``K_A^u(x, w)`` as a quaternion in C_u."""
    if A.b == 0.0:
        raise DomainError("kernel undefined for b = 0; use the chirp-scaling path")
    u = as_qarray(u)
    phase = A.a / (2 * A.b) * x * x - x * w / A.b + A.d / (2 * A.b) * w * w
    pre = np.asarray(qexp_pure(u, -np.sign(A.b) * np.pi / 4)) / math.sqrt(2 * np.pi * abs(A.b))
    return Quaternion.from_array(qmul(pre, qexp_pure(u, phase)))


def kernel_array(A: LCTParams, u, x, w) -> np.ndarray:
    """``(len(x), len(w), 4)`` array of kernel values, built from quaternion exponentials."""
    if A.b == 0.0:
        raise DomainError("kernel undefined for b = 0")
    x = np.asarray(x, float)[:, None]
    w = np.asarray(w, float)[None, :]
    phase = A.a / (2 * A.b) * x * x - x * w / A.b + A.d / (2 * A.b) * w * w
    pre = qexp_pure(u, -np.sign(A.b) * np.pi / 4) / math.sqrt(2 * np.pi * abs(A.b))
    return qmul(pre, qexp_pure(u, phase))


def _kernel_complex(A: LCTParams, x, w) -> np.ndarray:
    x = np.asarray(x, float)[:, None]
    w = np.asarray(w, float)[None, :]
    phase = A.a / (2 * A.b) * x * x - x * w / A.b + A.d / (2 * A.b) * w * w
    return _prefactor(A.b) * np.exp(1j * phase)


# --------------------------------------------------------------------------
# output grids


def _axis_coords(grid: Grid2D, dim: int):
    if dim == 0:
        return grid.coords1(), grid.dx1, grid.m
    return grid.coords2(), grid.dx2, grid.n


def default_axis_out(A: LCTParams, x: np.ndarray, dx: float, n: int) -> tuple[float, float]:
    """``(step, origin)`` of the default output axis for one parameter matrix."""
    if A.b != 0.0:
        step = abs(A.b) * 2 * np.pi / (n * dx)
        return step, -0.5 * n * step
    if A.d == 0.0:
        raise ParamError("b = 0 requires d != 0")
    step = dx / abs(A.d)
    origin = x[0] / A.d if A.d > 0 else x[-1] / A.d
    return step, origin


def output_grid(grid: Grid2D, cfg: QLCTConfig) -> Grid2D:
    x1, dx1, m = _axis_coords(grid, 0)
    x2, dx2, n = _axis_coords(grid, 1)
    s1, o1 = default_axis_out(cfg.a1, x1, dx1, m)
    s2, o2 = default_axis_out(cfg.a2, x2, dx2, n)
    return Grid2D(m, n, s1, s2, o1, o2)


# --------------------------------------------------------------------------
# one-axis stages


def _chirp_scale_axis(data, dim, x, dx, w, A: LCTParams, u, side):
    """``sqrt|d| e^{u c d w^2 / 2} f(d w)`` along one axis, chirp on ``side``."""
    target = A.d * np.asarray(w, float)
    pos = (target - x[0]) / dx
    idx = np.rint(pos).astype(int)
    n = len(x)
    exact = np.all(np.abs(pos - idx) <= 1e-9) and idx.min() >= 0 and idx.max() <= n - 1
    moved = np.moveaxis(np.asarray(data, float), dim, 0)
    interpolated = False
    if exact:
        sampled = moved[idx]
    else:
        if pos.min() < -1e-9 or pos.max() > n - 1 + 1e-9:
            raise ResampleError("scaled coordinates d*w fall outside the input grid")
        pos = np.clip(pos, 0.0, n - 1)
        lo = np.minimum(np.floor(pos).astype(int), n - 2) if n > 1 else np.zeros_like(idx)
        t = (pos - lo)[(slice(None),) + (None,) * (moved.ndim - 1)]
        hi = np.minimum(lo + 1, n - 1)
        sampled = (1 - t) * moved[lo] + t * moved[hi]
        interpolated = True
    chirp = qexp_pure(u, A.c * A.d / 2 * np.asarray(w, float) ** 2)
    chirp = chirp[(slice(None),) + (None,) * (moved.ndim - 2)]
    if side == "left":
        out = qmul(chirp, sampled)
    else:
        out = qmul(sampled, chirp)
    out = out * math.sqrt(abs(A.d))
    return np.moveaxis(out, 0, dim), interpolated


def _kernel_axis(data, dim, x, dx, w, A: LCTParams, u, v, side):
    """``sum_x K_A(x, w) f(x) dx`` (left) or ``sum_x f(x) K_A(x, w) dx`` (right).

    Evaluated as chirp, DFT at ``w / b``, chirp, constant.
    """
    x = np.asarray(x, float)
    w = np.asarray(w, float)
    shape = [1] * (np.ndim(data) - 1)
    shape[dim] = -1
    pre = np.exp(1j * A.a / (2 * A.b) * x ** 2).reshape(shape)
    post = (_prefactor(A.b) * np.exp(1j * A.d / (2 * A.b) * w ** 2)).reshape(shape)
    z1, z2 = split_complex(data, u, v)
    out1 = post * lattice_transform(z1 * pre, x, w / A.b, dx, axis=dim, sign=-1)
    if side == "right":
        out2 = post * lattice_transform(z2 * pre, x, w / A.b, dx, axis=dim, sign=-1)
    else:
        # a kernel on the left reaches the v-part conjugated
        out2 = np.conj(post) * lattice_transform(z2 * np.conj(pre), x, w / A.b, dx,
                                                 axis=dim, sign=+1)
    return merge_complex(out1, out2, u, v) * dx


def _check_reciprocal(A: LCTParams, dx: float, n: int, w_step: float):
    want = abs(A.b) * 2 * np.pi / (n * dx)
    if abs(w_step - want) > 1e-9 * want:
        raise ResampleError(
            f"output step {w_step!r} is not |b| 2 pi / (N dx) = {want!r}; "
            "frequency-domain interpolation is not supported")


def _stage(data, grid_in: Grid2D, dim: int, A: LCTParams, u, v, side: str,
           w_coords: np.ndarray, w_step: float):
    x, dx, n = _axis_coords(grid_in, dim)
    if A.b != 0.0:
        _check_reciprocal(A, dx, n, w_step)
        return _kernel_axis(data, dim, x, dx, w_coords, A, u, v, side), False
    return _chirp_scale_axis(data, dim, x, dx, w_coords, A, u, side)


def _resolve_out(f: QSignal2D, cfg: QLCTConfig, out_grid: Grid2D | None) -> Grid2D:
    if out_grid is None:
        return output_grid(f.grid, cfg)
    if out_grid.shape != f.grid.shape:
        raise ResampleError("output grid must have the input dimensions")
    return out_grid


def _units(cfg: QLCTConfig):
    ax = cfg.axis
    return ((ax.u1.as_array(), ax.u2.as_array()),
            (ax.u2.as_array(), ax.u1.as_array()))


def _run_stages(f: QSignal2D, cfg: QLCTConfig, out: Grid2D, sides, order) -> QSignal2D:
    units = _units(cfg)
    params = (cfg.a1, cfg.a2)
    w_axes = ((out.coords1(), out.dx1), (out.coords2(), out.dx2))
    data = f.data
    cur = f.grid
    interpolated = False
    for dim in order:
        u, v = units[dim]
        w, step = w_axes[dim]
        data, interp = _stage(data, cur, dim, params[dim], u, v, sides[dim], w, step)
        interpolated |= interp
        # the processed axis now lives on the output coordinates
        if dim == 0:
            cur = Grid2D(cur.m, cur.n, out.dx1, cur.dx2, out.x1_0, cur.x2_0)
        else:
            cur = Grid2D(cur.m, cur.n, cur.dx1, out.dx2, cur.x1_0, out.x2_0)
    res = QSignal2D(out, data)
    if interpolated:
        res.meta["interpolated"] = True
    return res


# --------------------------------------------------------------------------
# two-sided


def sqlct(f: QSignal2D, cfg: QLCTConfig, out_grid: Grid2D | None = None,
          method: str = "fast") -> QSignal2D:
    """Two-sided QLCT ``K1 f K2`` covering all four ``(b1, b2)`` cases.

    ``method="fast"`` uses the chirp/QFT/chirp factorization when
    ``b1 b2 != 0`` and axis-wise stages otherwise; ``method="direct"``
    evaluates the defining double sum.
    """
    if method == "direct":
        return sqlct_direct(f, cfg, out_grid)
    if method != "fast":
        raise DomainError(f"unknown method {method!r}")
    if cfg.a1.b != 0.0 and cfg.a2.b != 0.0:
        return sqlct_fast(f, cfg, out_grid)
    out = _resolve_out(f, cfg, out_grid)
    return _run_stages(f, cfg, out, ("left", "right"), (0, 1))


def sqlct_fast(f: QSignal2D, cfg: QLCTConfig, out_grid: Grid2D | None = None) -> QSignal2D:
    """Chirp, analytic two-sided QFT at ``(w1/b1, w2/b2)``, chirp, constants."""
    A1, A2 = cfg.a1, cfg.a2
    if A1.b == 0.0 or A2.b == 0.0:
        raise DomainError("sqlct_fast needs b1 b2 != 0")
    out = _resolve_out(f, cfg, out_grid)
    g = f.grid
    _check_reciprocal(A1, g.dx1, g.m, out.dx1)
    _check_reciprocal(A2, g.dx2, g.n, out.dx2)
    ax = cfg.axis
    u1, u2 = ax.u1.as_array(), ax.u2.as_array()
    x1, x2 = g.coords1(), g.coords2()
    w1, w2 = out.coords1(), out.coords2()

    h = qmul(qmul(qexp_pure(u1, A1.a / (2 * A1.b) * x1 ** 2)[:, None], f.data),
             qexp_pure(u2, A2.a / (2 * A2.b) * x2 ** 2)[None, :])
    # sample points w / b, ascending; reversed afterwards when b < 0
    xi1 = w1 / A1.b
    xi2 = w2 / A2.b
    xi_grid = Grid2D(g.m, g.n, 2 * np.pi / (g.m * g.dx1), 2 * np.pi / (g.n * g.dx2),
                     xi1.min(), xi2.min())
    F = qft_on(h, g, xi_grid, TransformKind.TWO, ax, -1) * (g.dx1 * g.dx2 / (2 * np.pi))
    if A1.b < 0:
        F = F[::-1]
    if A2.b < 0:
        F = F[:, ::-1]
    left = qmul(qexp_pure(u1, -np.sign(A1.b) * np.pi / 4) / math.sqrt(abs(A1.b)),
                qexp_pure(u1, A1.d / (2 * A1.b) * w1 ** 2))
    right = qmul(qexp_pure(u2, A2.d / (2 * A2.b) * w2 ** 2),
                 qexp_pure(u2, -np.sign(A2.b) * np.pi / 4) / math.sqrt(abs(A2.b)))
    return QSignal2D(out, qmul(qmul(left[:, None], F), right[None, :]))


def sqlct_direct(f: QSignal2D, cfg: QLCTConfig, out_grid: Grid2D | None = None) -> QSignal2D:
    """Literal ``sum K1(x1, w1) f(x1, x2) K2(x2, w2) dx1 dx2`` (``b1 b2 != 0``)."""
    return _direct(f, cfg, out_grid, two_sided=True)


def isqlct(F: QSignal2D, cfg: QLCTConfig, out_grid: Grid2D | None = None,
           method: str = "fast") -> QSignal2D:
    """Inverse two-sided QLCT: the forward transform with ``(d, -b; -c, a)`` per axis."""
    return sqlct(F, cfg.inverse(), out_grid, method=method)


# --------------------------------------------------------------------------
# right-sided


def rqlct(f: QSignal2D, cfg: QLCTConfig, out_grid: Grid2D | None = None,
          method: str = "cascade") -> QSignal2D:
    """Right-sided QLCT ``f K1 K2`` as two one-dimensional passes.

    The first pass runs along ``x1`` with the ``u1`` kernel, the second
    along ``x2`` with the ``u2`` kernel. With ``b1 = 0`` the first pass is
    the chirp-scaling ``f(d1 w1, x2) e^{u1 c1 d1 w1^2 / 2}``.
    """
    if method == "direct":
        return rqlct_direct(f, cfg, out_grid)
    if method != "cascade":
        raise DomainError(f"unknown method {method!r}")
    out = _resolve_out(f, cfg, out_grid)
    return _run_stages(f, cfg, out, ("right", "right"), (0, 1))


def irqlct(F: QSignal2D, cfg: QLCTConfig, out_grid: Grid2D | None = None) -> QSignal2D:
    """Inverse right-sided QLCT: ``L K2^{-1} K1^{-1}``, second axis first."""
    inv = cfg.inverse()
    out = _resolve_out(F, inv, out_grid)
    return _run_stages(F, inv, out, ("right", "right"), (1, 0))


def rqlct_direct(f: QSignal2D, cfg: QLCTConfig, out_grid: Grid2D | None = None) -> QSignal2D:
    return _direct(f, cfg, out_grid, two_sided=False)


def rqlct_via_split(f: QSignal2D, cfg: QLCTConfig, out_grid: Grid2D | None = None) -> QSignal2D:
    """``sqlct(f1) + u2 sqlct(f2)`` for the split ``f = f1 + u2 f2``, f1, f2 in C_u1."""
    ax = cfg.axis
    c = f.components(ax)
    zero = np.zeros_like(c[..., 0])
    f1 = QSignal2D.from_components(f.grid, (c[..., 0], c[..., 1], zero, zero), ax)
    # u2 (a + b u1) = a u2 - b u3
    f2 = QSignal2D.from_components(f.grid, (c[..., 2], -c[..., 3], zero, zero), ax)
    s1 = sqlct(f1, cfg, out_grid)
    s2 = sqlct(f2, cfg, out_grid)
    return s1 + s2.left_mul(ax.u2)


def _direct(f: QSignal2D, cfg: QLCTConfig, out_grid, two_sided: bool) -> QSignal2D:
    A1, A2 = cfg.a1, cfg.a2
    if A1.b == 0.0 or A2.b == 0.0:
        raise DomainError("direct summation is defined for b1 b2 != 0")
    out = _resolve_out(f, cfg, out_grid)
    g = f.grid
    K1 = kernel_array(A1, cfg.axis.u1, g.coords1(), out.coords1())
    K2 = kernel_array(A2, cfg.axis.u2, g.coords2(), out.coords2())
    res = np.empty(out.shape + (4,))
    for k1 in range(out.m):
        k1col = K1[:, k1][:, None, :]
        for k2 in range(out.n):
            k2row = K2[:, k2][None, :, :]
            if two_sided:
                terms = qmul(qmul(k1col, f.data), k2row)
            else:
                terms = qmul(qmul(f.data, k1col), k2row)
            res[k1, k2] = terms.reshape(-1, 4).sum(axis=0)
    return QSignal2D(out, res * g.dx1 * g.dx2)


# --------------------------------------------------------------------------
# one-dimensional right-kernel transform


@dataclass(frozen=True, eq=False)
class QSignal1D:
    data: np.ndarray
    dx: float = 1.0
    x0: float = 0.0
    wrapped: bool = False

    def __post_init__(self):
        data = np.asarray(self.data, float)
        if data.ndim != 2 or data.shape[1] != 4:
            raise ValueError("1D quaternion signal needs shape (N, 4)")
        object.__setattr__(self, "data", data)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def coords(self) -> np.ndarray:
        k = np.arange(self.n)
        if self.wrapped:
            k = (k + self.n // 2) % self.n - self.n // 2
        return self.x0 + k * self.dx

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.data ** 2) * self.dx))


def oned_transform(f: QSignal1D, u, mode: NormalizationMode = NormalizationMode.UNITARY,
                   inverse: bool = False, out_x0: float | None = None) -> QSignal1D:
    """``sum_t f(t) e^{-u t xi}`` (``e^{+u t xi}`` for the inverse), kernel on the right.

    The forward output sits on the wrapped reciprocal grid. For the inverse
    pass ``out_x0`` restores the spatial origin (default 0).
    """
    u = as_qarray(u)
    v = _perp(u)
    n = f.n
    step = 2 * np.pi / (n * f.dx)
    if inverse:
        out = QSignal1D(np.zeros((n, 4)), step, 0.0 if out_x0 is None else out_x0)
    else:
        out = QSignal1D(np.zeros((n, 4)), step, 0.0, wrapped=True)
    z1, z2 = split_complex(f.data, u, v)
    sign = 1 if inverse else -1
    y1 = lattice_transform(z1, f.coords(), out.coords(), f.dx, sign=sign)
    y2 = lattice_transform(z2, f.coords(), out.coords(), f.dx, sign=sign)
    if mode is NormalizationMode.UNITARY:
        scale = 1 / np.sqrt(n)
    else:
        scale = f.dx / np.sqrt(2 * np.pi)
    return QSignal1D(merge_complex(y1, y2, u, v) * scale, out.dx, out.x0, out.wrapped)


def _perp(u: np.ndarray) -> np.ndarray:
    vec = u[1:]
    trial = np.array([1.0, 0.0, 0.0]) if abs(vec[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    p = trial - vec * np.dot(vec, trial)
    p /= np.linalg.norm(p)
    return np.concatenate([[0.0], p])
