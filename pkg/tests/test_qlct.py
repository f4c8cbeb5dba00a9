import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gauss_lct import continuum_norm, gaussian_signal, lct_gauss_1d, rqlct_gauss, sqlct_gauss
from qfourier.errors import DomainError, ParamError, ResampleError
from qfourier.qft import NormalizationMode, TransformKind, qft_direct_on
from qfourier.qlct import (LCTParams, QLCTConfig, QSignal1D, isqlct, irqlct, kernel_array,
                           kernel_eval, oned_transform, output_grid, rqlct, rqlct_direct,
                           rqlct_via_split, sqlct, sqlct_direct, sqlct_fast)
from qfourier.quat import CANONICAL, AxisConfig, I, J, Quaternion, q_exp, qexp_pure, qmul
from qfourier.signal import Grid2D, QSignal2D, inner_product, lp_norm

FOURIER = LCTParams(0, 1, -1, 0)
SHEAR = LCTParams(1, 1, 0, 1)
SHEAR2 = LCTParams(1, 2, 0, 1)
IDENT = LCTParams.identity()


def rel(a, b):
    return lp_norm(a - b) / lp_norm(b)


def c_valued(f, axis=CANONICAL):
    c = f.components(axis)
    z = np.zeros_like(c[..., 0])
    return QSignal2D.from_components(f.grid, (c[..., 0], c[..., 1], z, z), axis)


def test_params_validation_and_inverse():
    with pytest.raises(ParamError):
        LCTParams(1, 1, 1, 1)
    with pytest.raises(ParamError):
        LCTParams(float("nan"), 1, -1, 0)
    A = LCTParams(2.0, 0.5, 1.0, 0.75)
    assert np.allclose(A.matrix() @ A.inverse().matrix(), np.eye(2), atol=1e-14)
    assert np.allclose(A.inverse().matrix() @ A.matrix(), np.eye(2), atol=1e-14)


def test_kernel_examples():
    want = q_exp(I * (-math.pi / 4)) / math.sqrt(2 * math.pi)
    assert kernel_eval(FOURIER, I, 0.0, 0.0).isclose(want, 1e-15)
    assert kernel_eval(SHEAR, J, 1.0, 1.0).isclose(q_exp(J * (-math.pi / 4)) / math.sqrt(2 * math.pi), 1e-15)
    # negative b takes the conjugate branch
    neg = LCTParams(0, -1, 1, 0)
    assert kernel_eval(neg, I, 0.0, 0.0).isclose(q_exp(I * (math.pi / 4)) / math.sqrt(2 * math.pi), 1e-15)
    with pytest.raises(DomainError):
        kernel_eval(IDENT, I, 0.0, 0.0)


def test_branch_constants_square_to_one_over_u_b():
    # (e^{-u sgn(b) pi/4} / sqrt|b|)^2 * u b = 1
    for b in (2.0, -0.5):
        c = q_exp(I * (-np.sign(b) * math.pi / 4)) / math.sqrt(abs(b))
        assert (c * c * I * b).isclose(Quaternion(1), 1e-15)


@settings(max_examples=100)
@given(st.floats(-3, 3), st.floats(0.1, 3), st.booleans(), st.floats(-5, 5), st.floats(-5, 5))
def test_kernel_modulus(a, b, neg, x, w):
    b = -b if neg else b
    c = 0.3
    d = (1 + b * c) / a if abs(a) > 1e-3 else None
    A = LCTParams(a, b, c, d) if d is not None else LCTParams(0.0, b, -1 / b, 0.7)
    u = AxisConfig.random(np.random.default_rng(7)).u2
    assert kernel_eval(A, u, x, w).norm() == pytest.approx(1 / math.sqrt(2 * math.pi * abs(b)), rel=1e-12)


def test_kernel_array_matches_scalar(rng):
    u = AxisConfig.random(rng).u1
    x, w = rng.standard_normal(3), rng.standard_normal(2)
    K = kernel_array(SHEAR2, u, x, w)
    for i in range(3):
        for k in range(2):
            assert np.allclose(K[i, k], kernel_eval(SHEAR2, u, x[i], w[k]).as_array(), atol=1e-15)


def test_identity_parameters_are_exact(rng):
    g = Grid2D(6, 5, 0.3, 0.7, 0.1, -1.0)
    f = QSignal2D.random(g, rng)
    cfg = QLCTConfig(IDENT, IDENT)
    for op in (sqlct, rqlct):
        out = op(f, cfg)
        assert out.grid.same_as(g)
        assert np.array_equal(out.data, f.data)
    assert np.array_equal(isqlct(f, cfg).data, f.data)
    assert np.array_equal(irqlct(f, cfg).data, f.data)


def test_fourier_parameters_reduce_to_two_sided_qft(rng):
    g = Grid2D.centered(8, 8, 0.5)
    ax = AxisConfig.random(rng)
    f = QSignal2D.random(g, rng)
    S = sqlct(f, QLCTConfig(FOURIER, FOURIER, ax))
    Fs = qft_direct_on(f.data, g, S.grid, TransformKind.TWO, ax, -1) * g.cell / (2 * np.pi)
    e1, e2 = qexp_pure(ax.u1, -np.pi / 4), qexp_pure(ax.u2, -np.pi / 4)
    assert np.allclose(S.data, qmul(qmul(e1, Fs), e2), atol=1e-10 * np.abs(S.data).max())


@pytest.mark.parametrize("n", [8, 16])
@pytest.mark.parametrize("b1,b2", [(1, 1), (-1, 2), (2, -1)])
def test_sqlct_fast_matches_direct(rng, n, b1, b2):
    A1 = LCTParams(1, b1, 0, 1)
    A2 = LCTParams(2, b2, 1 / b2, 1)
    ax = AxisConfig.random(rng)
    g = Grid2D.centered(n, n, 0.4)
    f = QSignal2D.random(g, rng)
    cfg = QLCTConfig(A1, A2, ax)
    assert rel(sqlct_fast(f, cfg), sqlct_direct(f, cfg)) <= 1e-9
    assert rel(rqlct(f, cfg), rqlct_direct(f, cfg)) <= 1e-9


def test_output_step_scales_with_b(rng):
    g = Grid2D.centered(8, 8, 0.5)
    one = output_grid(g, QLCTConfig(SHEAR, SHEAR))
    two = output_grid(g, QLCTConfig(SHEAR2, SHEAR))
    assert two.dx1 == pytest.approx(2 * one.dx1)
    assert two.dx2 == pytest.approx(one.dx2)
    f = QSignal2D.random(g, rng)
    cfg = QLCTConfig(SHEAR2, SHEAR)
    assert rel(sqlct_fast(f, cfg), sqlct_direct(f, cfg)) <= 1e-10


def test_chirped_signal_keeps_modulus(rng):
    g = Grid2D.centered(8, 8, 0.5)
    x1, x2 = g.mesh()
    f = rng.standard_normal((8, 8, 1)) * np.array([1.0, 0, 0, 0])
    h = qmul(qmul(qexp_pure(I, 0.5 * x1 ** 2), f), qexp_pure(J, -0.3 * x2 ** 2))
    assert np.allclose(np.linalg.norm(h, axis=-1), np.abs(f[..., 0]), atol=1e-15)


def test_fast_and_direct_reject_b_zero(rng):
    f = QSignal2D.random(Grid2D(4, 4), rng)
    cfg = QLCTConfig(IDENT, SHEAR)
    with pytest.raises(DomainError):
        sqlct_fast(f, cfg)
    with pytest.raises(DomainError):
        sqlct_direct(f, cfg)
    with pytest.raises(DomainError):
        rqlct_direct(f, cfg)


def test_incompatible_output_step(rng):
    g = Grid2D.centered(8, 8, 0.5)
    f = QSignal2D.random(g, rng)
    cfg = QLCTConfig(SHEAR, SHEAR)
    bad = Grid2D.centered(8, 8, 0.3)
    with pytest.raises(ResampleError):
        sqlct(f, cfg, out_grid=bad)
    with pytest.raises(ResampleError):
        rqlct(f, cfg, out_grid=Grid2D.centered(4, 4, 1.0))


@pytest.mark.parametrize("A1,A2", [(SHEAR, SHEAR2), (LCTParams(2, 0.5, 0, 0.5), LCTParams(0, -1, 1, 0)),
                                   (LCTParams(2, 0, 0.3, 0.5), SHEAR), (SHEAR, LCTParams(-1, 0, 0.2, -1)),
                                   (LCTParams(0.5, 0, 1, 2), LCTParams(1, 0, -0.4, 1))])
def test_discrete_roundtrip_and_parseval(rng, A1, A2):
    g = Grid2D.centered(8, 6, 0.5)
    f = QSignal2D.random(g, rng)
    cfg = QLCTConfig(A1, A2, AxisConfig.random(rng))
    S, R = sqlct(f, cfg), rqlct(f, cfg)
    assert rel(isqlct(S, cfg, out_grid=g), f) <= 1e-12
    assert rel(irqlct(R, cfg, out_grid=g), f) <= 1e-12
    assert lp_norm(S) == pytest.approx(lp_norm(f), rel=1e-12)
    assert lp_norm(R) == pytest.approx(lp_norm(f), rel=1e-12)


def test_b_zero_first_axis_formulas(rng):
    # sqlct: sqrt|d| e^{u1 c d w^2/2} f(d w, .) ...; rqlct puts the chirp after f
    g = Grid2D.centered(8, 8, 0.5)
    f = QSignal2D.random(g, rng)
    A1 = LCTParams(0.5, 0, 0.7, 2.0)
    cfg = QLCTConfig(A1, IDENT)
    S, R = sqlct(f, cfg), rqlct(f, cfg)
    w1 = S.grid.coords1()
    assert S.grid.dx1 == pytest.approx(0.25)
    chirp = qexp_pure(I, A1.c * A1.d / 2 * w1 ** 2)[:, None]
    src = f.data[np.rint((A1.d * w1 - g.x1_0) / g.dx1).astype(int)]
    assert np.allclose(S.data, math.sqrt(2.0) * qmul(chirp, src), atol=1e-14)
    assert np.allclose(R.data, math.sqrt(2.0) * qmul(src, chirp), atol=1e-14)
    assert not np.allclose(S.data, R.data)


def test_b_zero_negative_d_reverses_axis(rng):
    g = Grid2D.centered(8, 8, 0.5)
    f = QSignal2D.random(g, rng)
    out = sqlct(f, QLCTConfig(LCTParams(-1, 0, 0, -1), IDENT))
    assert np.allclose(out.data, f.data[::-1], atol=1e-15)
    assert np.allclose(out.grid.coords1(), -g.coords1()[::-1])


def test_b_zero_interpolation_and_range(rng):
    g = Grid2D.centered(8, 8, 0.5)
    f = QSignal2D.random(g, rng)
    cfg = QLCTConfig(IDENT, IDENT)
    half = Grid2D(8, 8, 0.5, 0.5, g.x1_0 + 0.25, g.x2_0)
    with pytest.raises(ResampleError):
        sqlct(f, cfg, out_grid=half)
    inside = Grid2D(6, 8, 0.5, 0.5, g.x1_0 + 0.25, g.x2_0)
    with pytest.raises(ResampleError):
        sqlct(f, cfg, out_grid=inside)  # shape must match
    narrow = Grid2D(8, 8, 0.4, 0.5, g.x1_0 + 0.1, g.x2_0)
    out = sqlct(f, cfg, out_grid=narrow)
    assert out.meta.get("interpolated") is True
    assert np.allclose(out.data[0], 0.8 * f.data[0] + 0.2 * f.data[1])


def test_oned_transform(rng):
    u = AxisConfig.random(rng).u1
    d = np.zeros((8, 4))
    d[0, 0] = 1.0
    F = oned_transform(QSignal1D(d), u)
    assert np.allclose(F.data, np.array([1 / math.sqrt(8), 0, 0, 0]))
    f = QSignal1D(rng.standard_normal((16, 4)), dx=0.3, x0=-2.4)
    F = oned_transform(f, u)
    assert np.sum(F.data ** 2) == pytest.approx(np.sum(f.data ** 2), rel=1e-12)
    back = oned_transform(F, u, inverse=True, out_x0=-2.4)
    assert np.allclose(back.data, f.data, atol=1e-12)
    Fa = oned_transform(f, u, NormalizationMode.ANALYTIC)
    back = oned_transform(Fa, u, NormalizationMode.ANALYTIC, inverse=True, out_x0=-2.4)
    assert np.allclose(back.data, f.data, atol=1e-12)
    assert Fa.norm() == pytest.approx(f.norm(), rel=1e-12)


def test_oned_transform_is_right_kernel(rng):
    u = J
    f = QSignal1D(rng.standard_normal((4, 4)), dx=1.0)
    F = oned_transform(f, u)
    t, xi = f.coords(), F.coords()
    want = np.array([sum(qmul(f.data[m], qexp_pure(u, -t[m] * xi[k])) for m in range(4))
                     for k in range(4)]) / 2.0
    assert np.allclose(F.data, want, atol=1e-14)


def test_rqlct_equals_sqlct_on_c_valued(rng):
    g = Grid2D.centered(8, 8, 0.5)
    ax = AxisConfig.random(rng)
    f = c_valued(QSignal2D.random(g, rng), ax)
    for A1, A2 in ((SHEAR, SHEAR2), (FOURIER, LCTParams(2, -1, 1, 0)), (LCTParams(2, 0, 0.3, 0.5), SHEAR)):
        cfg = QLCTConfig(A1, A2, ax)
        assert rel(rqlct(f, cfg), sqlct(f, cfg)) <= 1e-12


def test_rqlct_via_split(rng):
    g = Grid2D.centered(8, 8, 0.5)
    ax = AxisConfig.random(rng)
    cfg = QLCTConfig(SHEAR, LCTParams(2, -1, 1, 0), ax)
    f = QSignal2D.random(g, rng)
    assert rel(rqlct_via_split(f, cfg), rqlct(f, cfg)) <= 1e-10
    fc = c_valued(f, ax)
    assert rel(rqlct_via_split(fc, cfg), sqlct(fc, cfg)) <= 1e-12
    ug = fc.left_mul(ax.u2)
    assert rel(rqlct_via_split(ug, cfg), rqlct_direct(ug, cfg)) <= 1e-10
    assert rel(rqlct_via_split(ug, cfg), sqlct(fc, cfg).left_mul(ax.u2)) <= 1e-12


def test_inner_product_identities(rng):
    g = Grid2D.centered(8, 8, 0.5)
    ax = AxisConfig.random(rng)
    cfg = QLCTConfig(SHEAR2, LCTParams(2, -1, 1, 0), ax)
    f, h = QSignal2D.random(g, rng), QSignal2D.random(g, rng)
    ip = inner_product(f, h).as_array()
    ipR = inner_product(rqlct(f, cfg), rqlct(h, cfg)).as_array()
    assert np.allclose(ip, ipR, atol=1e-12 * lp_norm(f) * lp_norm(h))
    ipS = inner_product(sqlct(f, cfg), sqlct(h, cfg)).as_array()
    assert np.allclose(ax.components(ip)[:2], ax.components(ipS)[:2], atol=1e-12 * lp_norm(f) * lp_norm(h))
    fc, hc = c_valued(f, ax), c_valued(h, ax)
    assert np.allclose(inner_product(fc, hc).as_array(),
                       inner_product(sqlct(fc, cfg), sqlct(hc, cfg)).as_array(), atol=1e-12 * 64)


def test_gaussian_closed_form_oracle():
    # the closed form matches brute-force quadrature on a fine grid
    A = LCTParams(2, 0.5, 0, 0.5)
    x = np.linspace(-12, 12, 24001)
    dx = x[1] - x[0]
    for w in (-1.0, 0.3, 2.0):
        K = (np.exp(-1j * np.pi / 4) / np.sqrt(2 * np.pi * 0.5)
             * np.exp(1j * (2 / 1.0 * x ** 2 - x * w / 0.5 + 0.5 / 1.0 * w ** 2)))
        num = np.sum(K * np.exp(-(x - 0.4) ** 2 / (2 * 0.8 ** 2))) * dx
        assert abs(num - lct_gauss_1d(A, w, 0.4, 0.8)) < 1e-10


@pytest.mark.parametrize("op,ref", [(sqlct, sqlct_gauss), (rqlct, rqlct_gauss)])
def test_gaussian_forward_against_continuum(op, ref):
    q = np.array([0.3, -0.5, 0.7, 0.4])
    mu, s = (0.5, -0.3), (0.8, 0.8)
    cfg = QLCTConfig(LCTParams(2, 0.5, 0, 0.5), LCTParams(1, -1, 0, 1))
    errs = []
    for n in (64, 128):
        g = Grid2D.centered(n, n, 12.0 / n)
        out = op(gaussian_signal(g, q, mu, s), cfg)
        errs.append(rel(out, ref(cfg, out.grid, q, mu, s)))
    assert errs[0] <= 1e-3
    assert errs[1] <= errs[0] / 2


def test_sqlct_roundtrip_gaussian_64():
    q = np.array([1.0, 0.2, -0.3, 0.1])
    g = Grid2D.centered(64, 64, 8.0 / 64)
    f = gaussian_signal(g, q)
    cfg = QLCTConfig(SHEAR, SHEAR)
    L = sqlct_gauss(cfg, output_grid(g, cfg), q)
    assert rel(isqlct(L, cfg, out_grid=g), f) <= 1e-3
    assert abs(lp_norm(L) - continuum_norm(q)) <= 1e-3 * continuum_norm(q)
