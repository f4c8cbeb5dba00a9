"""Complex DFT engine.

Radix-2 decimation in time for power-of-two lengths, a dense O(N^2)
DFT otherwise. Everything works along one axis of an ndarray so the
quaternion transforms can run row or column passes on stacked data.
"""

from __future__ import annotations

import numpy as np


def is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def _bit_reverse(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _fft_radix2_last(x: np.ndarray, sign: int) -> np.ndarray:
    n = x.shape[-1]
    a = x[..., _bit_reverse(n)].astype(complex, copy=True)
    half = 1
    while half < n:
        # twiddles e^{sign 2 pi i k / (2 half)}
        tw = np.exp(sign * 1j * np.pi * np.arange(half) / half)
        a = a.reshape(a.shape[:-1] + (n // (2 * half), 2, half))
        even = a[..., 0, :]
        odd = a[..., 1, :] * tw
        a = np.concatenate([even + odd, even - odd], axis=-1)
        a = a.reshape(a.shape[:-2] + (n,))
        half *= 2
    return a


def dft_matrix(n: int, sign: int = -1) -> np.ndarray:
    k = np.arange(n)
    # reduce k*m mod n before scaling keeps the phases exact for large n
    return np.exp(sign * 2j * np.pi * ((k[:, None] * k[None, :]) % n) / n)


def dft_direct(x, axis: int = -1, sign: int = -1) -> np.ndarray:
    """Unnormalized DFT ``X_k = sum_m x_m e^{sign 2 pi i k m / N}`` by matrix product."""
    x = np.moveaxis(np.asarray(x, dtype=complex), axis, -1)
    out = x @ dft_matrix(x.shape[-1], sign).T
    return np.moveaxis(out, -1, axis)


def fft(x, axis: int = -1, sign: int = -1) -> np.ndarray:
    """Unnormalized DFT along ``axis``; ``sign=+1`` gives the conjugate kernel."""
    x = np.asarray(x, dtype=complex)
    n = x.shape[axis]
    if n == 1:
        return x.copy()
    if not is_pow2(n):
        return dft_direct(x, axis=axis, sign=sign)
    y = _fft_radix2_last(np.moveaxis(x, axis, -1), sign)
    return np.moveaxis(y, -1, axis)


def lattice_transform(z, x, xi, dx: float, axis: int = -1, sign: int = -1) -> np.ndarray:
    """Evaluate ``Z(xi_k) = sum_m z_m exp(sign * 1j * xi_k * x_m)`` along ``axis``.

    ``x`` and ``xi`` are coordinate vectors lying on integer lattices
    ``x0 + i_m dx`` and ``xi0 + j_k dxi`` with ``N dx dxi = 2 pi``. The
    sample index offsets ``i_m`` must be distinct modulo ``N`` (any
    ordering, any wrap). Under those conditions the sum reduces exactly to
    one length-``N`` DFT plus diagonal phase factors, which is what this
    computes.
    """
    z = np.moveaxis(np.asarray(z, dtype=complex), axis, -1)
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    n = z.shape[-1]
    if x.shape != (n,):
        raise ValueError("coordinate vector length does not match data")
    if n == 1:
        out = z * np.exp(sign * 1j * xi * x[0])
        return np.moveaxis(out, -1, axis)
    dx = float(dx)
    dxi = 2.0 * np.pi / (n * dx)
    x0, xi0 = x[0], xi[0]
    i_m = np.rint((x - x0) / dx).astype(np.int64)
    j_k = np.rint((xi - xi0) / dxi).astype(np.int64)
    if np.max(np.abs(x0 + i_m * dx - x)) > 1e-9 * max(1.0, np.max(np.abs(x))):
        raise ValueError("input coordinates are not on a uniform lattice")
    if np.max(np.abs(xi0 + j_k * dxi - xi)) > 1e-9 * max(1.0, np.max(np.abs(xi))):
        raise ValueError("output coordinates are not on the reciprocal lattice")
    slots = np.mod(i_m, n)
    if len(np.unique(slots)) != n:
        raise ValueError("input lattice indices collide modulo N")
    # xi_k x_m = xi_k x0 + xi0 i_m dx + 2 pi j_k i_m / N  (mod 2 pi)
    pre = z * np.exp(sign * 1j * xi0 * (x - x0))
    buf = np.empty_like(pre)
    buf[..., slots] = pre
    spec = fft(buf, axis=-1, sign=sign)
    out = spec[..., np.mod(j_k, n)] * np.exp(sign * 1j * xi * x0)
    return np.moveaxis(out, -1, axis)


def lattice_transform_direct(z, x, xi, axis: int = -1, sign: int = -1) -> np.ndarray:
    """Same sum as :func:`lattice_transform`, evaluated as a dense matrix product."""
    z = np.moveaxis(np.asarray(z, dtype=complex), axis, -1)
    kern = np.exp(sign * 1j * np.outer(np.asarray(xi, float), np.asarray(x, float)))
    return np.moveaxis(z @ kern.T, -1, axis)

