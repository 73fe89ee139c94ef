"""Jost solutions and scattering data of the spectral problem

    mu_x = i zeta [sigma, mu] + i Q mu,   Q = [[0, q*], [q, 0]],

for a potential sampled at one time.  ``mu_+`` (``mu_-``) tends to the identity
as x -> +inf (-inf); the solutions are obtained by classical RK4 integration
inward from x = +L (-L) with a fixed step.

Real zeta: the whole matrix is integrated in the interaction picture
``mu = E nu E^-1`` with ``E = exp(i zeta sigma x)``, which removes the free
oscillation from the numerics.  Then ``S = nu_+^-1 nu_-`` at every x.

Complex zeta: only columns that stay bounded are integrated (column 1 of
mu_+ and column 2 of mu_- in the upper half-plane, the other two in the lower
one), directly in the form above, where the growing exponential is already
factored out.  Then

    s22(zeta) = det([mu_+]_1, [mu_-]_2),   zeta in C+,
    s11(zeta) = det([mu_-]_1, [mu_+]_2),   zeta in C-,

and ``s11`` is the (2, 2) entry of ``S^-1`` because ``det S = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .model import (AnalyticityError, Coefficients, InsufficientDecayError, SpectralDataset,
                    ValidationError)

DEFAULT_L = 40.0
DEFAULT_H = 0.01
DEFAULT_DECAY_TOL = 1e-10


def soliton_slice(d: SpectralDataset, A: Coefficients, t: float) -> Callable:
    """``x -> q(x, t)`` for the N-soliton formula."""
    from .soliton import q_nsoliton

    return lambda x: np.asarray(q_nsoliton(d, A, np.asarray(x, dtype=float), t), dtype=complex)


def zero_potential(x):
    return np.zeros(np.shape(x), dtype=complex)


@dataclass(frozen=True, eq=False)
class JostSolution:
    """``mu[k]`` is the 2x2 Jost matrix at ``x[k]``; entries of columns that were
    not integrated are NaN."""

    zeta: complex
    side: str
    x: np.ndarray
    mu: np.ndarray
    columns: tuple

    def column(self, j: int) -> np.ndarray:
        if j not in self.columns:
            raise AnalyticityError(f"column {j} of mu_{self.side} was not integrated")
        return self.mu[:, :, j - 1]

    def det(self) -> np.ndarray:
        if self.columns != (1, 2):
            raise AnalyticityError("the determinant needs both columns")
        return np.linalg.det(self.mu)

    def at(self, x0: float) -> np.ndarray:
        k = int(np.argmin(np.abs(self.x - x0)))
        return self.mu[k]


@dataclass(frozen=True, eq=False)
class ScatteringSample:
    zeta: complex
    S: np.ndarray
    spread: float   # max entrywise variation of S over the integration grid

    @property
    def s11(self) -> complex:
        return complex(self.S[0, 0])

    @property
    def s12(self) -> complex:
        return complex(self.S[0, 1])

    @property
    def s21(self) -> complex:
        return complex(self.S[1, 0])

    @property
    def s22(self) -> complex:
        return complex(self.S[1, 1])

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.S))


def _normalise_side(side: str) -> str:
    s = {"+": "+", "plus": "+", "+inf": "+", "-": "-", "minus": "-", "-inf": "-"}.get(str(side))
    if s is None:
        raise ValidationError(f"side must be '+' or '-', got {side!r}")
    return s


def analytic_columns(zeta: complex, side: str) -> tuple:
    """Columns of ``mu_side`` that are bounded for this zeta."""
    side = _normalise_side(side)
    im = complex(zeta).imag
    if im == 0:
        return (1, 2)
    upper = im > 0
    return ((1,) if side == "+" else (2,)) if upper else ((2,) if side == "+" else (1,))


def _half_nodes(q_slice, L: float, h: float, side: str, decay_tol: float):
    if not (L > 0 and h > 0):
        raise ValidationError("L and h must be positive")
    n = int(round(2 * L / h))
    if n < 2:
        raise ValidationError("integration interval holds fewer than two steps")
    xs = np.linspace(-L, L, 2 * n + 1)
    qh = np.asarray(q_slice(xs), dtype=complex)
    if qh.shape != xs.shape or not np.all(np.isfinite(qh)):
        raise ValidationError("q_slice must return finite values of the same shape as x")
    edge = max(abs(qh[0]), abs(qh[-1]))
    if edge > decay_tol:
        raise InsufficientDecayError(
            f"|q(+-L)| = {edge:.3e} exceeds the decay tolerance {decay_tol:.1e}; enlarge L")
    if side == "+":
        xs, qh = xs[::-1], qh[::-1]
    return xs, qh, n


def _rk4(rhs, y, n: int, step: float):
    """Integrate ``y' = rhs(k, y)`` where k indexes half-step nodes; returns all full steps."""
    out = np.empty((n + 1,) + y.shape, dtype=complex)
    out[0] = y
    for s in range(n):
        k = 2 * s
        k1 = rhs(k, y)
        k2 = rhs(k + 1, y + 0.5 * step * k1)
        k3 = rhs(k + 1, y + 0.5 * step * k2)
        k4 = rhs(k + 2, y + step * k3)
        y = y + step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        out[s + 1] = y
    return out


def _integrate_real(qh, xs, zetas, n, step):
    # nu' = i Qt nu, Qt = [[0, q* e^{-2i z x}], [q e^{2i z x}, 0]]; state (nz, 2, 2)
    ph = np.exp(2j * np.outer(zetas, xs))
    upper = 1j * np.conj(qh)[None, :] * np.conj(ph)
    lower = 1j * qh[None, :] * ph

    def rhs(k, y):
        out = np.empty_like(y)
        out[:, 0, :] = upper[:, k, None] * y[:, 1, :]
        out[:, 1, :] = lower[:, k, None] * y[:, 0, :]
        return out

    y0 = np.broadcast_to(np.eye(2, dtype=complex), (len(zetas), 2, 2)).copy()
    nu = _rk4(rhs, y0, n, step)                      # (n+1, nz, 2, 2)
    E = np.exp(1j * np.outer(xs[::2], zetas))        # (n+1, nz)
    mu = nu.copy()
    mu[:, :, 0, 1] *= E * E
    mu[:, :, 1, 0] /= E * E
    return nu, mu


def _integrate_column(qh, zetas, n, step, column):
    qc = np.conj(qh)
    z = np.asarray(zetas)[:, None]

    if column == 1:
        def rhs(k, y):
            return np.stack([1j * qc[k] * y[:, 1], -2j * z[:, 0] * y[:, 1] + 1j * qh[k] * y[:, 0]], axis=1)
        y0 = np.tile(np.array([1.0, 0.0], dtype=complex), (len(zetas), 1))
    else:
        def rhs(k, y):
            return np.stack([2j * z[:, 0] * y[:, 0] + 1j * qc[k] * y[:, 1], 1j * qh[k] * y[:, 0]], axis=1)
        y0 = np.tile(np.array([0.0, 1.0], dtype=complex), (len(zetas), 1))
    return _rk4(rhs, y0, n, step)                    # (n+1, nz, 2)


def integrate_jost_many(q_slice, zetas, side: str, L: float = DEFAULT_L, h: float = DEFAULT_H,
                        columns=None, decay_tol: float = DEFAULT_DECAY_TOL) -> list:
    """:func:`integrate_jost` for several zeta sharing the same analytic columns."""
    side = _normalise_side(side)
    zetas = np.atleast_1d(np.asarray(zetas, dtype=complex))
    allowed = {analytic_columns(z, side) for z in zetas}
    if len(allowed) != 1:
        raise ValidationError("all zeta of a batch must lie in the same half-plane")
    allowed = allowed.pop()
    columns = allowed if columns is None else tuple(sorted(set(columns)))
    bad = [c for c in columns if c not in allowed]
    if bad:
        raise AnalyticityError(
            f"column(s) {bad} of mu_{side} are not analytic at Im(zeta) "
            f"{'> 0' if zetas[0].imag > 0 else '< 0'}")
    xs, qh, n = _half_nodes(q_slice, L, h, side, decay_tol)
    step = -h if side == "+" else h
    step = step * (2 * L / h) / n                    # exact spacing of the node grid
    xfull = xs[::2]
    if allowed == (1, 2):
        _, mu = _integrate_real(qh, xs, zetas, n, step)
    else:
        mu = np.full((n + 1, len(zetas), 2, 2), np.nan, dtype=complex)
        for c in columns:
            mu[:, :, :, c - 1] = _integrate_column(qh, zetas, n, step, c)
    order = slice(None, None, -1) if side == "+" else slice(None)
    return [JostSolution(complex(z), side, xfull[order].copy(), mu[order, i].copy(), columns)
            for i, z in enumerate(zetas)]


def integrate_jost(q_slice, zeta: complex, side: str, L: float = DEFAULT_L, h: float = DEFAULT_H,
                   columns=None, decay_tol: float = DEFAULT_DECAY_TOL) -> JostSolution:
    """Jost solution ``mu_side`` on ``[-L, L]`` (x ascending in the result).

    ``q_slice`` maps an array of x to complex samples of the potential.
    ``columns`` defaults to every column that is analytic at ``zeta``;
    requesting any other column raises :class:`AnalyticityError`.
    """
    return integrate_jost_many(q_slice, [zeta], side, L, h, columns, decay_tol)[0]


def scattering_matrices(q_slice, zetas, L: float = DEFAULT_L, h: float = DEFAULT_H,
                        decay_tol: float = DEFAULT_DECAY_TOL) -> list:
    """Scattering matrices at several real zeta (one batched integration per side)."""
    zetas = np.atleast_1d(np.asarray(zetas, dtype=complex))
    if np.any(zetas.imag != 0):
        raise ValidationError("the scattering matrix is defined here for real zeta only")
    xs, qh, n = _half_nodes(q_slice, L, h, "-", decay_tol)
    step = 2 * L / n
    nu_m, _ = _integrate_real(qh, xs, zetas.real, n, step)
    nu_p, _ = _integrate_real(qh[::-1], xs[::-1], zetas.real, n, -step)
    nu_p = nu_p[::-1]
    S_all = np.linalg.solve(nu_p, nu_m)              # (n+1, nz, 2, 2)
    out = []
    for i, z in enumerate(zetas):
        S = S_all[-1, i]                             # x = +L
        spread = float(np.max(np.abs(S_all[:, i] - S)))
        out.append(ScatteringSample(complex(z), S, spread))
    return out


def scattering_matrix(q_slice, zeta: float, L: float = DEFAULT_L, h: float = DEFAULT_H,
                      decay_tol: float = DEFAULT_DECAY_TOL) -> ScatteringSample:
    """``S = E^-1 mu_+^-1 mu_- E`` for real zeta, evaluated at x = +L."""
    if complex(zeta).imag != 0:
        raise ValidationError("the scattering matrix is defined here for real zeta only")
    return scattering_matrices(q_slice, [zeta], L, h, decay_tol)[0]


def _det_profile(first: JostSolution, c1: int, second: JostSolution, c2: int) -> np.ndarray:
    u = first.column(c1)
    v = second.column(c2)
    return u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]


def s22_profile(q_slice, zeta: complex, L: float = DEFAULT_L, h: float = DEFAULT_H,
                decay_tol: float = DEFAULT_DECAY_TOL):
    """``(x, det([mu_+]_1, [mu_-]_2)(x))``; the profile is constant in x up to discretisation."""
    if not complex(zeta).imag > 0:
        raise AnalyticityError("s22 is analytic in the open upper half-plane only")
    plus = integrate_jost(q_slice, zeta, "+", L, h, (1,), decay_tol)
    minus = integrate_jost(q_slice, zeta, "-", L, h, (2,), decay_tol)
    return plus.x, _det_profile(plus, 1, minus, 2)


def s22_at(q_slice, zeta: complex, L: float = DEFAULT_L, h: float = DEFAULT_H,
           decay_tol: float = DEFAULT_DECAY_TOL, x_match: float = 0.0) -> complex:
    x, prof = s22_profile(q_slice, zeta, L, h, decay_tol)
    return complex(prof[int(np.argmin(np.abs(x - x_match)))])


def r22_profile(q_slice, zeta: complex, L: float = DEFAULT_L, h: float = DEFAULT_H,
                decay_tol: float = DEFAULT_DECAY_TOL):
    """``(x, det([mu_-]_1, [mu_+]_2)(x))``, the (2, 2) entry of ``S^-1`` continued to C-."""
    if not complex(zeta).imag < 0:
        raise AnalyticityError("r22 is analytic in the open lower half-plane only")
    minus = integrate_jost(q_slice, zeta, "-", L, h, (1,), decay_tol)
    plus = integrate_jost(q_slice, zeta, "+", L, h, (2,), decay_tol)
    return minus.x, _det_profile(minus, 1, plus, 2)


def r22_at(q_slice, zeta: complex, L: float = DEFAULT_L, h: float = DEFAULT_H,
           decay_tol: float = DEFAULT_DECAY_TOL, x_match: float = 0.0) -> complex:
    x, prof = r22_profile(q_slice, zeta, L, h, decay_tol)
    return complex(prof[int(np.argmin(np.abs(x - x_match)))])


def s22_reflectionless(d: SpectralDataset, zeta: complex) -> complex:
    """``prod_k (zeta - zeta_k) / (zeta - conj(zeta_k))``, the transmission
    coefficient of a reflectionless potential with the given eigenvalues."""
    z = d.zetas
    return complex(np.prod((zeta - z) / (zeta - np.conj(z))))
