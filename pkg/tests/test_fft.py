import numpy as np
import pytest

from qfourier.fft import (dft_direct, fft, is_pow2, lattice_transform,
                          lattice_transform_direct)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 8, 12, 16, 64])
@pytest.mark.parametrize("sign", [-1, 1])
def test_fft_matches_numpy(rng, n, sign):
    x = rng.standard_normal((3, n)) + 1j * rng.standard_normal((3, n))
    want = np.fft.fft(x, axis=-1) if sign < 0 else np.fft.ifft(x, axis=-1) * n
    assert np.allclose(fft(x, sign=sign), want, atol=1e-12 * n)
    assert np.allclose(dft_direct(x, sign=sign), want, atol=1e-12 * n)


def test_fft_along_axis(rng):
    x = rng.standard_normal((8, 4, 2)) + 0j
    assert np.allclose(fft(x, axis=0), np.fft.fft(x, axis=0))


def test_is_pow2():
    assert [is_pow2(n) for n in (0, 1, 2, 3, 4, 6, 8)] == [False, True, True, False, True, False, True]


@pytest.mark.parametrize("n", [1, 4, 5, 8])
def test_lattice_transform_any_origin_and_order(rng, n):
    dx = 0.3
    x = 0.7 + np.arange(n) * dx
    dxi = 2 * np.pi / (n * dx)
    # wrapped, shifted output lattice
    j = (np.arange(n) + n // 2) % n - n // 2
    xi = -1.1 * dxi + j * dxi
    z = rng.standard_normal((2, n)) + 1j * rng.standard_normal((2, n))
    for sign in (-1, 1):
        fast = lattice_transform(z, x, xi, dx, sign=sign)
        assert np.allclose(fast, lattice_transform_direct(z, x, xi, sign=sign), atol=1e-12)


def test_lattice_transform_rejects_off_lattice():
    x = np.arange(4.0)
    with pytest.raises(ValueError):
        lattice_transform(np.ones(4), x, np.array([0.0, 0.1, 0.2, 0.3]), 1.0)
