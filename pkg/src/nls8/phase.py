"""Dispersion polynomial and soliton phases.

Every soliton formula is driven by the phase

    theta(zeta; x, t) = i zeta x + i omega(zeta) t,
    omega(zeta) = 2A2 z^2 + 4A3 z^3 - 8A4 z^4 - 16A5 z^5 + 32A6 z^6 + 64A7 z^7 - 128A8 z^8.

The one-soliton helpers additionally implement the expanded real and
imaginary phase combinations term by term, as an independent code path that
tests compare against the generic evaluation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Coefficients, SpectralPoint

# omega(z) = sum_n DISPERSION_WEIGHTS[n] * A_n * z**n
DISPERSION_WEIGHTS = {2: 2.0, 3: 4.0, 4: -8.0, 5: -16.0, 6: 32.0, 7: 64.0, 8: -128.0}


def dispersion_coefficients(A: Coefficients) -> np.ndarray:
    """Monomial coefficients ``c[0..8]`` of omega, lowest degree first."""
    c = np.zeros(9)
    for n, w in DISPERSION_WEIGHTS.items():
        c[n] = w * A[n]
    return c


def dispersion_poly(zeta, A: Coefficients):
    """omega(zeta) by Horner's scheme; accepts scalars or arrays."""
    c = dispersion_coefficients(A)
    z = np.asarray(zeta, dtype=complex)
    acc = np.zeros_like(z)
    for coef in c[::-1]:
        acc = acc * z + coef
    return acc[()] if acc.ndim == 0 else acc


@dataclass(frozen=True)
class PhasePoint:
    theta: complex
    re_part: float     # theta + conj(theta)
    im_part: complex   # theta - conj(theta), purely imaginary

    @classmethod
    def from_theta(cls, theta: complex) -> "PhasePoint":
        theta = complex(theta)
        return cls(theta, 2.0 * theta.real, theta - theta.conjugate())


def theta_values(zeta, A: Coefficients, x, t):
    """Vectorised ``i zeta x + i omega(zeta) t`` (broadcasts over all inputs)."""
    zeta = np.asarray(zeta, dtype=complex)
    return 1j * zeta * np.asarray(x) + 1j * dispersion_poly(zeta, A) * np.asarray(t)


def theta(zeta: complex, A: Coefficients, x: float, t: float) -> PhasePoint:
    return PhasePoint.from_theta(theta_values(zeta, A, x, t))


def sech_argument_coefficient(p: SpectralPoint, A: Coefficients) -> float:
    """The coefficient ``kappa`` in ``theta* + theta = -2 b (x + kappa t)``.

    Written out monomial by monomial; the generic form is ``Im(omega)/b``.
    """
    a, b = p.a_tilde, p.b_tilde
    A2, A3, A4, A5, A6, A7, A8 = (A[n] for n in range(2, 9))
    return (4 * A2 * a + 12 * A3 * a**2 - 32 * A4 * a**3 + 32 * A4 * a * b**2 - 80 * A5 * a**4
            + 160 * A5 * a**2 * b**2 + 192 * A6 * a**5 - 640 * A6 * a**3 * b**2
            + 192 * A6 * a * b**4 + 448 * A7 * a**6 - 2240 * A7 * a**4 * b**2
            + 1344 * A7 * a**2 * b**4 - 1024 * A8 * a**7 - 7168 * A8 * b**4 * a**3
            + 7168 * A8 * b**2 * a**5 + 1024 * A8 * b**6 * a - 4 * A3 * b**2 - 16 * A5 * b**4
            - 64 * A7 * b**6)


def _imaginary_phase_rate(a: float, b: float, A: Coefficients) -> float:
    # coefficient of i*t in theta* - theta, term order as printed
    A2, A3, A4, A5, A6, A7, A8 = (A[n] for n in range(2, 9))
    return (960 * A6 * a**4 * b**2 + 24 * A3 * a * b**2 + 896 * A7 * a * b**6 + 256 * A8 * a**8
            + 16 * A4 * a**4 + 160 * A5 * a * b**4 - 4 * A2 * a**2 + 2688 * A7 * a**5 * b**2
            + 16 * A4 * b**4 - 64 * A6 * a**6 + 4 * A2 * b**2 - 96 * A4 * a**2 * b**2
            - 7168 * A8 * a**6 * b**2 - 7168 * A8 * a**2 * b**6 - 4480 * A7 * a**3 * b**4
            + 32 * A5 * a**5 - 8 * A3 * a**3 - 320 * A5 * a**3 * b**2 - 128 * A7 * a**7
            - 960 * A6 * a**2 * b**4 + 256 * A8 * b**8 + 64 * A6 * b**6 + 17920 * A8 * a**4 * b**4)


def one_soliton_phase_decomposition(p: SpectralPoint, A: Coefficients, x, t):
    """Closed forms of ``(theta* + theta, theta* - theta)`` for a single eigenvalue.

    Returns a real and a purely imaginary value (arrays when x or t are arrays).
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    a, b = p.a_tilde, p.b_tilde
    real = -2.0 * b * (x + sech_argument_coefficient(p, A) * t)
    imag = -2j * x * a + 1j * t * _imaginary_phase_rate(a, b, A)
    if real.ndim == 0 and imag.ndim == 0:
        return float(real), complex(imag)
    return real, imag
