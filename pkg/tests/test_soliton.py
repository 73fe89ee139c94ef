import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nls8.model import (Coefficients, DegenerateConfigurationError, SpectralPoint, make_dataset)
from nls8.soliton import (build_M, one_soliton_shape, q_nsoliton, q_one_soliton_closed,
                          q_two_soliton_closed, taylor_derivatives, velocity_polynomial)

coef = st.floats(-1, 1, allow_nan=False)
coeffs = st.builds(Coefficients, coef, coef, coef, coef, coef, coef, coef)


def test_M_example(fig1, ones):
    m = build_M(fig1, ones, 0.0, 0.0).unscaled()
    assert m.shape == (1, 1)
    assert m[0, 0] == pytest.approx(-5j, abs=1e-14)


def test_M_with_beta_zero(ones):
    d = make_dataset((0.3 + 0.2j, 1.0, 0.0))
    x, t = 0.7, 0.1
    th = 1j * (0.3 + 0.2j) * x + 1j * complex(np.polyval(
        [-128, 64, 32, -16, -8, 4, 2, 0, 0], 0.3 + 0.2j)) * t
    expected = np.exp(2 * th.real) / (2j * 0.2)
    assert build_M(d, ones, x, t).unscaled()[0, 0] == pytest.approx(expected, rel=1e-13)


def test_q_example(fig1, ones):
    assert q_nsoliton(fig1, ones, 0.0, 0.0) == pytest.approx(-0.4j, abs=1e-15)
    assert q_one_soliton_closed(SpectralPoint(0.3, 0.2), 1.0, ones, 0.0, 0.0) == pytest.approx(-0.4j)


def test_q_vanishes_far_away(fig1, fig4, ones):
    assert abs(q_nsoliton(fig1, ones, 200.0, 0.0)) < 1e-30
    assert abs(q_nsoliton(fig4, ones, -400.0, 0.0)) < 1e-30
    assert abs(q_two_soliton_closed(fig4, ones, 300.0, 0.0)) < 1e-20


def test_small_b_limit(ones):
    for b in (1e-2, 1e-4, 1e-6):
        d = make_dataset((0.3 + 1j * b, 1.0, 1.0))
        x = np.linspace(-50, 50, 101)
        assert np.max(np.abs(q_nsoliton(d, ones, x, 0.0))) <= 2 * b * (1 + 1e-12)


def test_no_overflow_at_large_phase(ones):
    # omega grows like 128 zeta^8; Re(theta) reaches thousands here
    d = make_dataset((1.2 + 0.5j, 1.0, 1.0), (-0.4 + 0.8j, 2.0, 1j))
    x = np.linspace(-2000, 2000, 41)
    q = q_nsoliton(d, ones, x, 3.0)
    assert np.all(np.isfinite(q))


def test_duplicate_eigenvalues_rejected_before_solve():
    with pytest.raises(ValueError):
        make_dataset((0.3 + 0.2j, 1, 1), (0.3 + 0.2j, 1, 1))


def test_degenerate_matrix_reported(monkeypatch, fig1, ones):
    import nls8.soliton as sol
    monkeypatch.setattr(sol, "CONDITION_LIMIT", 0.5)
    with pytest.raises(DegenerateConfigurationError) as info:
        q_nsoliton(fig1, ones, np.array([0.0, 1.0]), 0.0)
    assert info.value.x is not None


@settings(max_examples=60, deadline=None)
@given(st.floats(-1, 1), st.floats(0.05, 1), st.complex_numbers(min_magnitude=0.1, max_magnitude=5),
       coeffs)
def test_one_soliton_forms_agree(a, b, alpha, A):
    d = make_dataset((complex(a, b), alpha, 1.0))
    x = np.linspace(-30, 30, 61)[:, None]
    t = np.linspace(-1, 1, 5)[None, :]
    q1 = q_nsoliton(d, A, x, t)
    q2 = q_one_soliton_closed(SpectralPoint(a, b), alpha, A, x, t)
    assert np.all(np.abs(q1 - q2) <= 1e-11 * (1 + np.abs(q1)))


@settings(max_examples=40, deadline=None)
@given(st.floats(-1, 1), st.floats(0.05, 0.8), st.floats(-1, 1), st.floats(0.05, 0.8),
       st.complex_numbers(min_magnitude=0.2, max_magnitude=3), coeffs)
def test_two_soliton_forms_agree(a1, b1, a2, b2, alpha, A):
    if abs(complex(a1, b1) - complex(a2, b2)) < 0.05:
        return
    d = make_dataset((complex(a1, b1), alpha, 1.0), (complex(a2, b2), alpha, 1.0))
    x = np.linspace(-20, 20, 41)[:, None]
    t = np.linspace(-0.5, 0.5, 3)[None, :]
    q1 = q_nsoliton(d, A, x, t)
    q2 = q_two_soliton_closed(d, A, x, t)
    assert np.all(np.abs(q1 - q2) <= 1e-10 * (1 + np.abs(q1)))


def test_two_soliton_preconditions(fig1, ones):
    with pytest.raises(ValueError):
        q_two_soliton_closed(fig1, ones, 0.0, 0.0)
    d = make_dataset((0.3 + 0.1j, 1.0, 1.0), (0.2j, 2.0, 1.0))
    with pytest.raises(ValueError):
        q_two_soliton_closed(d, ones, 0.0, 0.0)


def test_translation_covariance(ones):
    x = np.linspace(-20, 20, 40001)
    c = 1.3
    b = 0.2
    base = np.abs(q_nsoliton(make_dataset((0.3 + 0.2j, 1.0, 1.0)), ones, x, 0.0))
    moved = np.abs(q_nsoliton(make_dataset((0.3 + 0.2j, math.exp(c), 1.0)), ones, x, 0.0))
    assert moved.max() == pytest.approx(base.max(), rel=1e-12)
    shift = x[np.argmax(moved)] - x[np.argmax(base)]
    # |q| ~ sech(-2b x + xi): a larger alpha moves the peak to the right
    assert shift == pytest.approx(c / (2 * b), abs=2e-3)


@given(st.floats(0, 2 * math.pi))
def test_global_phase_leaves_modulus(phi):
    A = Coefficients.all_ones()
    u = complex(math.cos(phi), math.sin(phi))
    x = np.linspace(-15, 15, 31)
    q0 = q_nsoliton(make_dataset((0.3 + 0.2j, 1.0, 1.0)), A, x, 0.4)
    q1 = q_nsoliton(make_dataset((0.3 + 0.2j, u, u)), A, x, 0.4)
    assert np.max(np.abs(np.abs(q0) - np.abs(q1))) <= 1e-12


def test_shape_values(ones):
    p = SpectralPoint(0.3, 0.2)
    s = one_soliton_shape(p, 1.0, ones)
    assert s.amplitude == pytest.approx(0.4)
    assert one_soliton_shape(p, 1.0, Coefficients()).velocity == 0.0
    assert velocity_polynomial(p, Coefficients(A2=1.0)) == pytest.approx(-1.2)
    # H = 2|alpha| b e^{-ln|alpha|} = 2b for any alpha
    assert one_soliton_shape(p, 3 - 4j, ones).amplitude == pytest.approx(0.4)


def test_velocity_term_by_term(ones):
    a, b = mp.mpf("0.3"), mp.mpf("0.2")
    terms = [-4 * a, -12 * a**2 + 4 * b**2, 32 * a**3 - 32 * a * b**2,
             80 * a**4 - 160 * a**2 * b**2 + 16 * b**4,
             -192 * a**5 + 640 * a**3 * b**2 - 192 * a * b**4,
             -448 * a**6 + 2240 * a**4 * b**2 - 1344 * a**2 * b**4 + 64 * b**6,
             1024 * a**7 + 7168 * b**4 * a**3 - 7168 * b**2 * a**5 - 1024 * b**6 * a]
    assert velocity_polynomial(SpectralPoint(0.3, 0.2), ones) == pytest.approx(float(sum(terms)))


def test_velocity_is_minus_kappa(ones):
    # for the sech argument -2b(x + kappa t), the printed velocity equals -kappa
    s = one_soliton_shape(SpectralPoint(0.3, 0.2), 1.0, ones)
    assert s.velocity == pytest.approx(s.sech_slope, rel=1e-12)


# high-precision reference for the derivative series
def _q_mp(zetas, alphas, betas, A, x, t):
    w = [2 * A.A2, 4 * A.A3, -8 * A.A4, -16 * A.A5, 32 * A.A6, 64 * A.A7, -128 * A.A8]
    n = len(zetas)
    th = [1j * z * x + 1j * sum(c * z ** (k + 2) for k, c in enumerate(w)) * t for z in zetas]
    M = mp.matrix(n, n)
    for k in range(n):
        for j in range(n):
            M[k, j] = (mp.conj(alphas[k]) * alphas[j] * mp.exp(mp.conj(th[k]) + th[j])
                       + mp.conj(betas[k]) * betas[j] * mp.exp(-mp.conj(th[k]) - th[j])) / (
                zetas[j] - mp.conj(zetas[k]))
    Mi = M ** -1
    return -2 * sum(mp.conj(alphas[j]) * betas[k] * mp.exp(-th[k] + mp.conj(th[j])) * Mi[k, j]
                    for k in range(n) for j in range(n))


@pytest.mark.parametrize("axis", ["x", "t"])
def test_taylor_derivatives_against_mpmath(fig4, ones, axis):
    mp.mp.dps = 40
    z = [mp.mpc(complex(v)) for v in fig4.zetas]
    al = [mp.mpc(1), mp.mpc(1)]
    x0, t0 = 1.7, 0.3
    got = taylor_derivatives(fig4, ones, x0, t0, order=8, axis=axis)
    for m in range(9):
        if axis == "x":
            ref = mp.diff(lambda s: _q_mp(z, al, al, ones, s, mp.mpf(t0)), mp.mpf(x0), m)
        else:
            ref = mp.diff(lambda s: _q_mp(z, al, al, ones, mp.mpf(x0), s), mp.mpf(t0), m)
        assert abs(got[m] - complex(ref)) <= 1e-12 * (1 + abs(complex(ref))), m
    mp.mp.dps = 15


def test_taylor_order_zero_is_q(fig1, ones):
    x = np.linspace(-5, 5, 11)
    assert np.allclose(taylor_derivatives(fig1, ones, x, 0.2, order=0)[0], q_nsoliton(fig1, ones, x, 0.2),
                       rtol=1e-14, atol=0)
