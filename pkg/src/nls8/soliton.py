"""Reflectionless N-soliton solutions.

The general solution is

    q(x, t) = -2 sum_{k,j} conj(alpha_j) beta_k exp(-theta_k + conj(theta_j)) (M^-1)_{kj},
    M_{kj} = (conj(alpha_k) alpha_j e^{conj(theta_k) + theta_j}
              + conj(beta_k) beta_j e^{-conj(theta_k) - theta_j}) / (zeta_j - conj(zeta_k)).

``M`` is stored with one real exponent ``s_k`` factored out of row k and
column k, so that ``M = D Mt D`` with ``D = diag(exp(s))``.  Choosing
``s_k = log max(|alpha_k e^{theta_k}|, |beta_k e^{-theta_k}|)`` makes every
exponential in ``Mt`` and in the right-hand side bounded by one; the shifts
cancel exactly in ``q``.  ``q`` is obtained from a linear solve against ``Mt``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (Coefficients, DegenerateConfigurationError, OverflowUnrecoverableError,
                    SpectralDataset, SpectralPoint)
from .phase import dispersion_poly, one_soliton_phase_decomposition, sech_argument_coefficient

#: condition-number bound beyond which M is reported as degenerate
CONDITION_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class MMatrix:
    """Scaled N x N matrix; ``unscaled()`` restores ``exp(s_k + s_j) * entries``."""

    entries: np.ndarray
    row_exponents: np.ndarray
    col_exponents: np.ndarray

    def unscaled(self) -> np.ndarray:
        return self.entries * np.exp(self.row_exponents[:, None] + self.col_exponents[None, :])


def _log_abs(z: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(z))


def _scaled_vectors(d: SpectralDataset, A: Coefficients, x, t):
    """Scaled norming vectors at the (broadcast) points ``x, t``.

    Returns ``(at, bt, s)`` with trailing axis k: ``at = alpha e^{theta - s}``,
    ``bt = beta e^{-theta - s}``.
    """
    zeta = d.zetas
    omega = dispersion_poly(zeta, A)
    x = np.asarray(x, dtype=float)[..., None]
    t = np.asarray(t, dtype=float)[..., None]
    theta = 1j * zeta * x + 1j * omega * t
    if not np.all(np.isfinite(theta)):
        raise OverflowUnrecoverableError("soliton phase is not finite at the requested point")
    la = _log_abs(d.alphas) + theta.real
    lb = _log_abs(d.betas) - theta.real
    s = np.maximum(la, lb)
    at = d.alphas * np.exp(theta - s)
    bt = d.betas * np.exp(-theta - s)
    return at, bt, s


def _scaled_system(d: SpectralDataset, A: Coefficients, x, t):
    at, bt, s = _scaled_vectors(d, A, x, t)
    zeta = d.zetas
    denom = zeta[None, :] - np.conj(zeta)[:, None]          # [k, j] = zeta_j - conj(zeta_k)
    m = (np.conj(at)[..., :, None] * at[..., None, :]
         + np.conj(bt)[..., :, None] * bt[..., None, :]) / denom
    return m, at, bt, s


def build_M(d: SpectralDataset, A: Coefficients, x: float, t: float) -> MMatrix:
    m, at, bt, s = _scaled_system(d, A, float(x), float(t))
    if not np.all(np.isfinite(m)) or np.any(np.abs(np.diagonal(m)) == 0):
        raise OverflowUnrecoverableError(f"M cannot be represented at x={x}, t={t}")
    return MMatrix(m, s.copy(), s.copy())


def _check_conditioning(m: np.ndarray, x, t):
    cond = np.linalg.cond(m)
    bad = ~(cond <= CONDITION_LIMIT)
    if np.any(bad):
        idx = np.argwhere(np.atleast_1d(bad))[0]
        xb = np.broadcast_to(x, bad.shape)[tuple(idx)] if np.ndim(bad) else x
        tb = np.broadcast_to(t, bad.shape)[tuple(idx)] if np.ndim(bad) else t
        raise DegenerateConfigurationError(
            f"M is numerically singular (condition {np.atleast_1d(cond)[tuple(idx)]:.3g}) "
            f"at x={float(xb)}, t={float(tb)}", float(xb), float(tb))


def q_nsoliton(d: SpectralDataset, A: Coefficients, x, t):
    """General N-soliton field at ``(x, t)`` (scalars or broadcastable arrays)."""
    x_arr, t_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    m, at, bt, _ = _scaled_system(d, A, x_arr, t_arr)
    _check_conditioning(m, x_arr, t_arr)
    y = np.linalg.solve(m, np.conj(at)[..., None])[..., 0]
    q = -2.0 * np.sum(bt * y, axis=-1)
    return complex(q) if q.ndim == 0 else q


def taylor_derivatives(d: SpectralDataset, A: Coefficients, x, t, order: int = 8, axis: str = "x"):
    """Exact derivatives ``d^m q / dx^m`` (or ``d^m q / dt^m``), m = 0..order.

    Every phase is linear in x and t, so each entry of M and of the right-hand
    side is a sum of exponentials of the shift; their Taylor coefficients are
    known in closed form and the solution's Taylor series follows from a
    triangular sequence of solves against the same matrix.  Returns an array of
    shape ``(order + 1,) + broadcast(x, t).shape``.
    """
    x_arr, t_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    m0, at, bt, _ = _scaled_system(d, A, x_arr, t_arr)
    _check_conditioning(m0, x_arr, t_arr)
    zeta = d.zetas
    rate = zeta if axis == "x" else dispersion_poly(zeta, A)
    if axis not in ("x", "t"):
        raise ValueError("axis must be 'x' or 't'")
    # d/dx of theta_k is i*rate_k; conj(theta_k) moves with -i*conj(rate_k)
    lam_m = 1j * (rate[None, :] - np.conj(rate)[:, None])       # M_kj phase rate
    lam_w = -1j * np.conj(rate)                                  # conj(at_j)
    lam_u = -1j * rate                                           # bt_k
    denom = zeta[None, :] - np.conj(zeta)[:, None]
    p_plus = np.conj(at)[..., :, None] * at[..., None, :] / denom
    p_minus = np.conj(bt)[..., :, None] * bt[..., None, :] / denom
    w0 = np.conj(at)
    ys = []
    out = np.empty((order + 1,) + x_arr.shape, dtype=complex)
    fact = 1.0
    m_terms = []
    for n in range(order + 1):
        if n > 0:
            fact *= n
        m_terms.append((p_plus * lam_m**n + p_minus * (-lam_m) ** n) / fact)
        rhs = w0 * lam_w**n / fact
        for i in range(1, n + 1):
            rhs = rhs - np.einsum("...kj,...j->...k", m_terms[i], ys[n - i])
        ys.append(np.linalg.solve(m0, rhs[..., None])[..., 0])
        coeff = np.zeros(x_arr.shape, dtype=complex)
        f = 1.0
        for l in range(n + 1):
            if l > 0:
                f *= l
            coeff = coeff + np.sum(bt * lam_u**l / f * ys[n - l], axis=-1)
        out[n] = -2.0 * coeff * fact
    return out


def _sech(z):
    z = np.abs(np.asarray(z, dtype=float))
    e = np.exp(-z)
    return 2.0 * e / (1.0 + e * e)


def q_one_soliton_closed(p: SpectralPoint, alpha1: complex, A: Coefficients, x, t):
    """Bright one-soliton with ``beta_1 = 1``, written as a hyperbolic secant."""
    alpha1 = complex(alpha1)
    if alpha1 == 0:
        raise ValueError("the sech form needs alpha_1 != 0")
    xi = math.log(abs(alpha1))
    real, imag = one_soliton_phase_decomposition(p, A, x, t)
    q = (-2j * alpha1.conjugate() * p.b_tilde * math.exp(-xi) * np.exp(imag)
         * _sech(np.asarray(real) + xi))
    return complex(q) if np.ndim(q) == 0 else q


#: relative bound on the 2x2 determinant of the closed two-soliton form
DETERMINANT_LIMIT = 1e-12


def q_two_soliton_closed(d: SpectralDataset, A: Coefficients, x, t):
    """Bright two-soliton in the cosh form (``beta_1 = beta_2 = 1``, ``alpha_1 = alpha_2``)."""
    if d.N != 2:
        raise ValueError("the closed two-soliton form needs exactly two eigenvalues")
    (e1, e2) = d.entries
    if e1.beta != 1 or e2.beta != 1:
        raise ValueError("the closed two-soliton form assumes beta_1 = beta_2 = 1")
    if e1.alpha != e2.alpha:
        raise ValueError("the closed two-soliton form assumes alpha_1 = alpha_2")
    al1, al2 = e1.alpha, e2.alpha
    xi1, xi2 = e1.xi, e2.xi
    a1, b1 = e1.point.a_tilde, e1.point.b_tilde
    a2, b2 = e2.point.a_tilde, e2.point.b_tilde
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    z1, z2 = e1.point.value, e2.point.value
    th1 = 1j * z1 * x + 1j * dispersion_poly(z1, A) * t
    th2 = 1j * z2 * x + 1j * dispersion_poly(z2, A) * t
    c1, c2 = np.conj(th1), np.conj(th2)
    M11 = -1j / b1 * math.exp(xi1) * np.cosh(c1 + th1 + xi1)
    M12 = 2 * math.exp(xi1) / ((a2 - a1) + 1j * (b1 + b2)) * np.cosh(c1 + th2 + xi1)
    M21 = 2 * math.exp(xi2) / ((a1 - a2) + 1j * (b1 + b2)) * np.cosh(c2 + th1 + xi2)
    M22 = -1j / b2 * math.exp(xi2) * np.cosh(c2 + th2 + xi2)
    det = M12 * M21 - M11 * M22
    scale = np.abs(M11 * M22) + np.abs(M12 * M21)
    bad = ~(np.abs(det) > DETERMINANT_LIMIT * scale)
    if np.any(bad):
        raise DegenerateConfigurationError("two-soliton determinant vanishes",
                                           float(np.broadcast_to(x, bad.shape)[bad].flat[0]),
                                           float(np.broadcast_to(t, bad.shape)[bad].flat[0]))
    q = 2.0 / det * (np.conj(al1) * np.exp(-th1 + c1) * M22
                     - np.conj(al2) * np.exp(-th1 + c2) * M12
                     - np.conj(al1) * np.exp(-th2 + c1) * M21
                     + np.conj(al2) * np.exp(-th2 + c2) * M11)
    return complex(q) if np.ndim(q) == 0 else q


@dataclass(frozen=True)
class OneSolitonShape:
    amplitude: float       # H
    velocity: float        # V
    center_offset: float   # xi_1 / (2 b_1)
    sech_slope: float      # dx/dt of the maximum, minus the t-coefficient of the sech argument

    def __post_init__(self):
        if not self.amplitude > 0:
            raise ValueError("amplitude must be positive")


def velocity_polynomial(p: SpectralPoint, A: Coefficients) -> float:
    """The velocity V as a polynomial in (a_1, b_1, A_2..A_8), term by term."""
    a, b = p.a_tilde, p.b_tilde
    A2, A3, A4, A5, A6, A7, A8 = (A[n] for n in range(2, 9))
    return (-4 * A2 * a - 12 * A3 * a**2 + 32 * A4 * a**3 - 32 * A4 * a * b**2 + 80 * A5 * a**4
            - 160 * A5 * a**2 * b**2
            - 192 * A6 * a**5 + 640 * A6 * a**3 * b**2 - 192 * A6 * a * b**4 - 448 * A7 * a**6
            + 2240 * A7 * a**4 * b**2
            - 1344 * A7 * a**2 * b**4 + 1024 * A8 * a**7 + 7168 * A8 * b**4 * a**3
            - 7168 * A8 * b**2 * a**5
            - 1024 * A8 * b**6 * a + 4 * A3 * b**2 + 16 * A5 * b**4 + 64 * A7 * b**6)


def one_soliton_shape(p: SpectralPoint, alpha1: complex, A: Coefficients) -> OneSolitonShape:
    alpha1 = complex(alpha1)
    xi = math.log(abs(alpha1))
    return OneSolitonShape(2 * abs(alpha1.conjugate()) * p.b_tilde * math.exp(-xi),
                           velocity_polynomial(p, A), xi / (2 * p.b_tilde),
                           -sech_argument_coefficient(p, A))
