"""Finite-difference differentiation, the operators K2..K8 and the residual of
the eighth-order equation

    i q_t + A2 K2 + s i A3 K3 + A4 K4 + s i A5 K5 + A6 K6 + s i A7 K7 + A8 K8 = 0.

Two conventions for the odd-order sign ``s`` exist.  ``"lax"`` (``s = +1``) is
the equation generated by the zero-curvature condition of the Lax pair and is
the one satisfied by the soliton formulas; ``"printed"`` (``s = -1``) is the
literal published sign.  Likewise K7 and K8 come in a ``"printed"`` variant and
a ``"reconciled"`` one that agrees with the Lax-pair hierarchy (two corrected
terms).  Defaults are ``"lax"`` and ``"reconciled"``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (Coefficients, ComplexField, Grid, GridTooSmallError, ResidualReport,
                    SpectralDataset, ValidationError)

VARIANTS = ("reconciled", "printed")
CONVENTIONS = ("lax", "printed")


def fd_weights(z: float, nodes, m: int) -> np.ndarray:
    """Weights of the m-th derivative at ``z`` from values at ``nodes`` (Fornberg's recursion)."""
    x = np.asarray(nodes, dtype=float)
    n = len(x)
    c = np.zeros((n, m + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0] - z
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def centered_size(order: int, p: int) -> int:
    return order + p - 1 + order % 2


def _check_accuracy(order: int, p: int):
    if order < 1:
        raise ValueError("derivative order must be >= 1")
    if p < 2 or p % 2:
        raise ValueError("accuracy order must be a positive even integer")


def _differentiate_array(v: np.ndarray, axis: int, order: int, p: int, h: float) -> np.ndarray:
    n = v.shape[axis]
    nc = centered_size(order, p)
    nb = order + p
    if n < max(nc, nb):
        raise GridTooSmallError(
            f"{n} points along axis {axis}; order {order} at accuracy {p} needs {max(nc, nb)}")
    v = np.moveaxis(v, axis, 0)
    # derivatives ignore constants; removing one makes constant data differentiate to exactly 0
    v = v - v[:1]
    out = np.empty_like(v, dtype=complex)
    half = (nc - 1) // 2
    w = fd_weights(0.0, np.arange(-half, half + 1), order)
    acc = np.zeros_like(v[half:n - half], dtype=complex)
    for k, wk in enumerate(w):
        if wk != 0.0:
            acc += wk * v[k:n - nc + 1 + k]
    out[half:n - half] = acc
    # one-sided stencils of nb points at each end
    for i in range(half):
        wl = fd_weights(float(i), np.arange(nb), order)
        out[i] = np.tensordot(wl, v[:nb], axes=(0, 0))
        wr = fd_weights(float(nb - 1 - i), np.arange(nb), order)
        out[n - 1 - i] = np.tensordot(wr, v[n - nb:], axes=(0, 0))
    return np.moveaxis(out / h**order, 0, axis)


def differentiate(f, axis: str, order: int, p: int = 8, stride: int = 1, h: float | None = None):
    """Derivative of ``f`` along ``axis`` ("x" or "t") with truncation error O(h^p).

    ``f`` is a :class:`ComplexField` (spacing taken from its grid) or a plain
    array whose first two axes are (x, t); for arrays pass ``h``.  With
    ``stride > 1`` the stencils use every ``stride``-th sample, i.e. a spacing
    ``stride * h``, which trades truncation error for rounding error on fine
    grids.  Interior points use centred stencils; the first and last points
    use one-sided stencils of the same accuracy.
    """
    _check_accuracy(order, p)
    ax = {"x": 0, "t": 1}[axis]
    if isinstance(f, ComplexField):
        values = f.values
        h = f.grid.hx if ax == 0 else f.grid.ht
    else:
        values = np.asarray(f, dtype=complex)
        if h is None:
            raise ValueError("h is required when differentiating a bare array")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    out = np.empty(values.shape, dtype=complex)
    for r in range(stride):
        sl = [slice(None)] * values.ndim
        sl[ax] = slice(r, None, stride)
        out[tuple(sl)] = _differentiate_array(values[tuple(sl)], ax, order, p, h * stride)
    if isinstance(f, ComplexField):
        return ComplexField(f.grid, out)
    return out


@dataclass(frozen=True, eq=False)
class DerivativeStack:
    """``dx[k]`` is the k-th x-derivative of q (k = 0..max order), ``dt`` is q_t."""

    grid: Grid
    dx: np.ndarray
    dt: np.ndarray | None
    p: int
    stride: int = 1

    @property
    def max_order(self) -> int:
        return self.dx.shape[0] - 1

    def field(self, k: int) -> ComplexField:
        return ComplexField(self.grid, self.dx[k])


def fd_stack(q: ComplexField, p: int = 8, max_order: int = 8, stride: int = 1,
             with_time: bool = True) -> DerivativeStack:
    """All x-derivatives up to ``max_order`` (and q_t) by finite differences."""
    dx = [q.values]
    for k in range(1, max_order + 1):
        dx.append(differentiate(q.values, "x", k, p, stride=stride, h=q.grid.hx))
    dt = time_derivative(q, p) if with_time else None
    return DerivativeStack(q.grid, np.array(dx), dt, p, stride)


def time_derivative(q: ComplexField, p: int = 8) -> np.ndarray:
    if q.grid.nt < 2:
        raise GridTooSmallError("a time derivative needs at least two time levels")
    return differentiate(q.values, "t", 1, p, h=q.grid.ht)


def soliton_stack(d: SpectralDataset, A: Coefficients, grid: Grid, p: int = 8,
                  max_order: int = 8, time: str = "fd") -> DerivativeStack:
    """x-derivatives of the N-soliton formula from its exact Taylor series.

    ``time="fd"`` differentiates the sampled field in t at accuracy p,
    ``time="exact"`` uses the Taylor series in t as well.
    """
    from .soliton import taylor_derivatives

    X, T = grid.mesh()
    dx = taylor_derivatives(d, A, X, T, order=max_order, axis="x")
    if time == "fd":
        dt = time_derivative(ComplexField(grid, dx[0]), p)
    elif time == "exact":
        dt = taylor_derivatives(d, A, X, T, order=1, axis="t")[1]
    else:
        raise ValueError("time must be 'fd' or 'exact'")
    return DerivativeStack(grid, dx, dt, p)


def _derivative_list(stack) -> list:
    if isinstance(stack, DerivativeStack):
        return list(stack.dx)
    return list(stack)


def K(n: int, stack, variant: str = "reconciled", conj=None):
    """Pointwise value of K_n from q and its x-derivatives.

    ``stack`` is a :class:`DerivativeStack` or a sequence ``[q, q_x, q_xx, ...]``
    holding at least n + 1 entries.  ``conj`` optionally supplies the sequence
    used in place of the complex conjugates (defaults to ``np.conj``).
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    d = _derivative_list(stack)
    if len(d) < n + 1:
        raise ValueError(f"K{n} needs derivatives up to order {n}")
    c = [np.conj(v) for v in d] if conj is None else list(conj)
    d = d + [0] * (9 - len(d))
    c = c + [0] * (9 - len(c))
    q, qx, qxx, q3, q4, q5, q6, q7, q8 = d[:9]
    Q, Qx, Qxx, Q3, Q4, Q5, Q6 = c[:7]
    aq = q * Q
    if n == 2:
        return qxx + 2 * q * aq
    if n == 3:
        return q3 + 6 * aq * qx
    if n == 4:
        return q4 + 6 * Q * qx**2 + 4 * q * qx * Qx + 8 * aq * qxx + 2 * q**2 * Qxx + 6 * aq**2 * q
    if n == 5:
        return (q5 + 10 * aq * q3 + 30 * aq**2 * qx + 10 * q * qx * Qxx + 10 * q * Qx * qxx
                + 20 * Q * qx * qxx + 10 * qx**2 * Qx)
    if n == 6:
        return (q6 + q**2 * (60 * qx * Qx * Q + 50 * qxx * Q**2 + 2 * Q4)
                + q * (12 * q4 * Q + 8 * qx * Q3 + 22 * qxx * Qxx + 18 * q3 * Qx + 70 * qx**2 * Q**2)
                + 20 * qx**2 * Qxx + 10 * qx * (5 * qxx * Qx + 3 * q3 * Q) + 20 * qxx**2 * Q
                + 10 * q**3 * (Qx**2 + 2 * Q * Qxx) + 20 * q * aq**3)
    if n == 7:
        # printed: 2 q_x q*_xxxx inside the 14 q[...] group
        mixed = 2 * qx * Q4 if variant == "printed" else qx * Q4 + 2 * Qx * q4
        return (q7 + 70 * qxx**2 * Qx + 112 * qx * qxx * Qxx + 98 * q3 * qx * Qx
                + 70 * q**2 * (qx * Qx**2 + 2 * qx * Q * Qxx + Q * (2 * qxx * Qx + q3 * Q))
                + 28 * qx**2 * Q3
                + 14 * q * (Q * (20 * qx * Qx * qx + q5) + 3 * q3 * Qxx + 2 * qxx * Q3 + mixed
                            + 20 * qx * qxx * Q**2)
                + 140 * aq**3 * qx + 70 * qx**3 * Q**2 + 14 * Q * (5 * qxx * q3 + 3 * qx * q4))
    if n == 8:
        quintic = 7 if variant == "printed" else 70
        return (q8 + 14 * q**3 * (40 * qx * Qx * Q**2 + 20 * qxx * Q**3 + 2 * Q4 * Q + 3 * Qxx**2
                                  + 4 * Qx * Q3)
                + q**2 * (28 * Q * (14 * qxx * Qxx + 11 * q3 * Qx + 6 * qx * Q3) + 238 * qxx * Qx**2
                          + 336 * qx * Qx * Qxx + 560 * qx**2 * Q**3 + 98 * q4 * Q**2 + 2 * Q6)
                + 2 * q * (21 * qx**2 * (9 * Qx**2 + 14 * Q * Qxx)
                           + qx * (728 * qxx * Qx * Q + 238 * q3 * Q**2 + 6 * Q5) + 34 * q3 * Q3
                           + 36 * q4 * Qxx + 22 * qxx * Q4 + 20 * q5 * Qx + 161 * qxx**2 * Q**2
                           + 8 * q6 * Q)
                + 182 * qxx * qxx * Qxx + 308 * qxx * q3 * Qx + 252 * qx * q3 * Qxx
                + 196 * qx * qxx * Q3 + 168 * qx * q4 * Qx + 42 * qx**2 * Q4
                + 14 * Q * (30 * qx**3 * Qx + 4 * q5 * qx + 5 * q3**2 + 8 * qxx * q4)
                + 490 * qx**2 * qxx * Q**2 + 140 * q**4 * Q * (Qx**2 + Q * Qxx)
                + quintic * q * aq**4)
    raise ValueError(f"K_n is defined for n = 2..8, got {n}")


def operator_weights(A: Coefficients, convention: str = "lax") -> dict:
    """Complex weight multiplying K_n in the residual, n = 2..8."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    s = 1.0 if convention == "lax" else -1.0
    return {n: (A[n] if n % 2 == 0 else s * 1j * A[n]) for n in range(2, 9)}


def residual_values(stack, q_t, A: Coefficients, variant: str = "reconciled",
                    convention: str = "lax"):
    """``i q_t + sum_n w_n K_n`` with the terms of vanishing weight left out."""
    d = _derivative_list(stack)
    c = [np.conj(v) for v in d]
    r = 1j * np.asarray(q_t)
    for n, w in operator_weights(A, convention).items():
        if w != 0:
            r = r + w * K(n, d, variant, conj=c)
    return r


def interior_band(p: int, stride: int = 1) -> int:
    return stride * math.ceil((8 + p) / 2)


def interior_slices(grid: Grid, p: int, stride: int = 1, time_band: bool = True):
    bx = interior_band(p, stride)
    bt = p // 2 if (time_band and grid.nt > 1) else 0
    if grid.nx <= 2 * bx or (bt and grid.nt <= 2 * bt):
        raise GridTooSmallError("grid has no interior after removing the boundary band")
    return slice(bx, grid.nx - bx), slice(bt, grid.nt - bt if bt else None)


def pde_residual(q: ComplexField, A: Coefficients, p: int = 8, *, stack: DerivativeStack | None = None,
                 variant: str = "reconciled", convention: str = "lax", stride: int = 1,
                 tolerance: float = 1e-5):
    """Residual field of the equation and its interior norms.

    Without ``stack`` all derivatives are finite differences of ``q`` at
    accuracy ``p`` (x-stencils spaced ``stride`` samples apart).  A
    precomputed stack (for instance :func:`soliton_stack`) may be passed
    instead.  Norms exclude a boundary band of ``stride * ceil((8 + p) / 2)``
    points in x and ``p / 2`` in t.
    """
    if q.arity != "scalar":
        raise ValidationError("pde_residual expects a scalar field")
    if stack is None:
        stack = fd_stack(q, p, stride=stride)
    elif stack.grid != q.grid:
        raise ValidationError("derivative stack and field live on different grids")
    if stack.dt is None:
        raise ValidationError("the derivative stack carries no time derivative")
    r = residual_values(stack, stack.dt, A, variant, convention)
    sx, st = interior_slices(q.grid, p, stack.stride)
    g = q.grid
    weight = g.hx * (g.ht if g.nt > 1 else 1.0)
    report = ResidualReport.from_values(r[sx, st], tolerance, weight)
    return ComplexField(q.grid, r), report


def convergence_order(hs, errors, floor_ratio: float = 4.0):
    """Least-squares slope of log(error) against log(h) over the pre-floor run.

    ``hs`` must be decreasing.  The run stops at the first refinement that
    fails to reduce the error by ``floor_ratio`` (the rounding floor).
    Returns ``(slope, number_of_points_used)``.
    """
    hs = np.asarray(hs, dtype=float)
    errors = np.asarray(errors, dtype=float)
    used = 1
    while used < len(hs) and errors[used] * floor_ratio <= errors[used - 1]:
        used += 1
    if used < 2:
        return float("nan"), used
    slope = np.polyfit(np.log(hs[:used]), np.log(errors[:used]), 1)[0]
    return float(slope), used
