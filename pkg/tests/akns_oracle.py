"""Symbolic AKNS hierarchy for U = i(zeta sigma + Q), used as an oracle.

The resolvent ``W = sum_k W_k zeta^-k`` with ``W_0 = sigma`` solves
``W_x = i [zeta sigma + Q, W]`` and ``W^2 = 1``.  Symbols ``u[k]`` stand for
the k-th x-derivative of q and ``v[k]`` for that of q*.
"""
import sympy as sp

NMAX = 12
u = sp.symbols(f"u0:{NMAX}")
v = sp.symbols(f"v0:{NMAX}")
As = sp.symbols("A2:9")
A = {n: As[n - 2] for n in range(2, 9)}
zeta = sp.Symbol("zeta")
# omega = sum_n OMEGA[n] A_n zeta^n
OMEGA = {2: 2, 3: 4, 4: -8, 5: -16, 6: 32, 7: 64, 8: -128}


def D(e):
    """Total x-derivative."""
    e = sp.expand(e)
    return sp.expand(sum(sp.diff(e, u[k]) * u[k + 1] + sp.diff(e, v[k]) * v[k + 1]
                         for k in range(NMAX - 1)))


def conj(e):
    """Complex conjugate for real A, zeta: swap u <-> v and i -> -i."""
    swap = {**{u[k]: v[k] for k in range(NMAX)}, **{v[k]: u[k] for k in range(NMAX)}}
    return sp.expand(sp.expand(e).xreplace(swap).subs(sp.I, -sp.I))


def resolvent(order=9):
    a, b, c = {0: sp.Integer(1)}, {0: sp.Integer(0)}, {0: sp.Integer(0)}
    Q = sp.Matrix([[0, v[0]], [u[0], 0]])
    for k in range(order):
        W = sp.Matrix([[a[k], b[k]], [c[k], -a[k]]])
        C = Q * W - W * Q
        b[k + 1] = sp.expand((D(b[k]) - sp.I * C[0, 1]) / (2 * sp.I))
        c[k + 1] = sp.expand((D(c[k]) - sp.I * C[1, 0]) / (-2 * sp.I))
        s = sum(a[j] * a[k + 1 - j] for j in range(1, k + 1)) + sum(
            b[j] * c[k + 1 - j] for j in range(0, k + 2))
        a[k + 1] = sp.expand(-s / 2)
    return a, b, c


def hierarchy(order=9):
    """``(V_tables, K)``: ``V_j`` entries as ``(V11, V12, V21)`` and the flows ``K_n``.

    V = sum_n i OMEGA[n] A_n (zeta^n W)_+ and zero curvature reads
    i q_t + sum_n w_n K_n = 0 with w_n = A_n (n even) or i A_n (n odd).
    """
    a, b, c = resolvent(order)
    tables = {}
    for j in range(9):
        tables[j] = tuple(sp.expand(sum(sp.I * OMEGA[n] * A[n] * w[n - j] for n in OMEGA if n >= j))
                          for w in (a, b, c))
    K = {n: sp.expand(-2 * OMEGA[n] * c[n + 1] / (1 if n % 2 == 0 else sp.I)) for n in OMEGA}
    return tables, K
