import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfourier.errors import AxisError, DomainError
from qfourier.quat import (CANONICAL, ONE, AxisConfig, I, J, K, Quaternion, merge_complex,
                           q_conj, q_exp, q_exp_series, q_inv, q_mul, q_norm, qexp_pure,
                           qmul, sc, split_complex, symplectic_split, vec)

comp = st.floats(-10, 10, allow_nan=False)
quats = st.builds(Quaternion, comp, comp, comp, comp)


def close(p, q, tol=1e-12):
    return np.max(np.abs(p.as_array() - q.as_array())) <= tol


def test_hamilton_rules():
    assert close(I * J, K)
    assert close(J * K, I)
    assert close(K * I, J)
    assert close(J * I, -K)
    assert close(I * I, Quaternion(-1))
    assert close(I * J * K, Quaternion(-1))


def test_identity_and_norm_examples():
    q = Quaternion(0.3, -1.2, 2.0, 0.5)
    assert q * ONE == q
    p = Quaternion(0.5, 0.5, 0.5, 0.5)
    assert close(p * p.conj(), ONE)
    assert q_conj(Quaternion(1, 1)) == Quaternion(1, -1)
    assert q_norm(Quaternion(1, 1, 1, 1)) == 2.0


def test_inverse():
    assert close(q_inv(Quaternion(0, 2)), Quaternion(0, -0.5))
    assert close(Quaternion(0, 2) * Quaternion(0, -0.5), ONE)
    with pytest.raises(DomainError, match="zero quaternion has no inverse"):
        q_inv(Quaternion())


def test_exp_examples():
    assert close(q_exp(Quaternion()), ONE)
    assert close(q_exp(Quaternion(0, math.pi / 2)), I)
    assert close(q_exp(Quaternion(1, math.pi)), Quaternion(-math.e), 1e-14)
    assert close(q_exp_series(Quaternion(1, math.pi)), Quaternion(-math.e), 1e-13)


def test_exp_tiny_vector_branch():
    q = Quaternion(0.2, 1e-10, -3e-10, 2e-10)
    e = q_exp(q)
    assert close(e, q_exp_series(q), 1e-15)
    assert e.x / q.x == pytest.approx(math.exp(0.2), rel=1e-14)


def test_sc_vec():
    assert sc(I * J) == 0.0 and sc(J * I) == 0.0
    assert vec(Quaternion(3)) == Quaternion()
    p, q = Quaternion(1, 2), Quaternion(0, 0, 3, 1)
    assert sc(p * q) == pytest.approx(sc(q * p), abs=1e-15)
    assert sc(p * q) == 0.0


@given(quats, quats, quats)
def test_associative(p, q, r):
    lhs, rhs = (p * q) * r, p * (q * r)
    scale = max(1.0, q_norm(p) * q_norm(q) * q_norm(r))
    assert close(lhs, rhs, 1e-12 * scale)


@given(quats, quats)
def test_norm_multiplicative_and_conj_antihom(p, q):
    assert q_norm(p * q) == pytest.approx(q_norm(p) * q_norm(q), rel=1e-12, abs=1e-12)
    scale = max(1.0, q_norm(p) * q_norm(q))
    assert close((p * q).conj(), q.conj() * p.conj(), 1e-13 * scale)
    assert (p.conj()).conj() == p
    assert close((p + q).conj(), p.conj() + q.conj())
    assert sc(p * q) == pytest.approx(sc(q * p), rel=1e-12, abs=1e-11)


@settings(max_examples=200)
@given(st.floats(-5, 5), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_exp_closed_form_matches_series(w, x, y, z):
    q = Quaternion(w, x, y, z)
    if q_norm(q) > 5:
        q = q / (q_norm(q) / 5)
    assert close(q_exp(q), q_exp_series(q), 1e-12 * max(1.0, math.exp(q.w)))


@given(quats)
def test_inverse_property(q):
    if q_norm(q) < 1e-3:
        return
    assert close(q_inv(q) * q, ONE, 1e-14 * 10)
    assert close(q * q_inv(q), ONE, 1e-14 * 10)


def test_symplectic_split_examples():
    z1, z2 = symplectic_split(I)
    assert close(z1, I) and close(z2, Quaternion())
    z1, z2 = symplectic_split(J)
    assert close(z1, Quaternion()) and close(z2, ONE)
    z1, z2 = symplectic_split(K)
    assert close(z1, Quaternion()) and close(z2, -I)
    assert close(J * -I, K)


@given(quats)
def test_symplectic_split_recomposes(q):
    rng = np.random.default_rng(abs(hash(q)) % 2 ** 32)
    for axis in (CANONICAL, AxisConfig.random(rng)):
        z1, z2 = symplectic_split(q, axis)
        assert close(z1 + axis.u2 * z2, q, 1e-13)
        for z in (z1, z2):
            c = axis.components(z.as_array())
            assert abs(c[2]) < 1e-13 and abs(c[3]) < 1e-13


def test_axis_config_validation(rng):
    ax = AxisConfig(Quaternion(0, 2), Quaternion(0, 0, 0, 3))
    assert ax.u1 == I and ax.u2 == K
    assert close(ax.u3, -J)
    with pytest.raises(AxisError):
        AxisConfig(I, Quaternion(0, 1, 1))
    with pytest.raises(AxisError):
        AxisConfig(Quaternion(1, 1), J)
    with pytest.raises(AxisError):
        AxisConfig(Quaternion(), J)
    r = AxisConfig.random(rng)
    basis = r.basis()
    assert np.allclose(basis @ basis.T, np.eye(4), atol=1e-12)


def test_split_complex_roundtrip(rng):
    f = rng.standard_normal((5, 3, 4))
    ax = AxisConfig.random(rng)
    for u, v in ((ax.u1, ax.u2), (ax.u2, ax.u1)):
        z1, z2 = split_complex(f, u.as_array(), v.as_array())
        assert np.allclose(merge_complex(z1, z2, u.as_array(), v.as_array()), f, atol=1e-14)
        # complex i stands for u: check z1 + v z2 by quaternion arithmetic
        q1 = np.stack([z1.real, *(z1.imag[..., None] * u.as_array()[1:]).transpose(2, 0, 1)], -1)
        q2 = np.stack([z2.real, *(z2.imag[..., None] * u.as_array()[1:]).transpose(2, 0, 1)], -1)
        assert np.allclose(q1 + qmul(v.as_array(), q2), f, atol=1e-14)


def test_qexp_pure_matches_scalar():
    u = AxisConfig.random(np.random.default_rng(1)).u1
    for t in (-2.0, 0.0, 0.7):
        assert np.allclose(qexp_pure(u, t), q_exp(u * t).as_array(), atol=1e-15)


def test_scalar_and_array_products_agree(rng):
    a, b = rng.standard_normal(4), rng.standard_normal(4)
    assert np.allclose(qmul(a, b), q_mul(Quaternion.from_array(a), Quaternion.from_array(b)).as_array())
