"""Pure numpy kernel implementations (fallback when the compiled core is absent).

All counting kernels are Sturm-sequence negativity counts vectorized over a
batch of shifts: the sequential index loop runs in Python, the shift batch is
a numpy vector, which keeps fallback bisection costs at a few hundred ms.

The factored counts run the differential stationary qd transform on the
bidiagonal ladder factor itself.  Unlike counting on the assembled
tridiagonal (absolute accuracy ~eps*||T||), the factored form is accurate
relative to each eigenvalue independent of the matrix norm, which is what
makes near-zero modes on log grids resolvable at all.
"""
from __future__ import annotations

import math

import numpy as np

_SAFMIN = np.finfo(np.float64).tiny


def tridiag_count(d: np.ndarray, e: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """Number of eigenvalues of tridiag(d, e) strictly below each shift."""
    t = np.asarray(shifts, dtype=np.float64)
    n = d.size
    pivmin = _SAFMIN * max(1.0, float(np.max(e * e)) if e.size else 0.0)
    q = d[0] - t
    count = (q < 0).astype(np.int64)
    for i in range(1, n):
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        q = (d[i] - t) - (e[i - 1] * e[i - 1]) / q
        q = np.where(np.isnan(q), -pivmin, q)
        count += q < 0
    return count


def product_count_upper(alpha: np.ndarray, beta: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """Number of eigenvalues of B^T B strictly below each shift.

    B is (N-1) x N upper bidiagonal: B[k,k] = alpha[k], B[k,k+1] = beta[k].
    B^T B is N x N and carries the structural zero of the rectangular factor.
    """
    t = np.asarray(shifts, dtype=np.float64)
    n = alpha.size + 1
    pivmin = _SAFMIN * max(1.0, float(np.max(beta * beta)))
    s = -t.copy()
    count = np.zeros(t.shape, dtype=np.int64)
    for k in range(n - 1):
        u = alpha[k] * alpha[k] + s
        count += u < 0
        u = np.where(np.abs(u) < pivmin, -pivmin, u)
        s = -t + s * (beta[k] * beta[k] / u)
        s = np.where(np.isnan(s), -t, s)
    count += s < 0  # last diagonal entry has no alpha row
    return count


def product_count_lower(alpha: np.ndarray, beta: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """Number of eigenvalues of B B^T strictly below each shift (same B)."""
    t = np.asarray(shifts, dtype=np.float64)
    m = alpha.size
    pivmin = _SAFMIN * max(1.0, float(np.max(alpha * alpha)))
    s = alpha[0] * alpha[0] - t
    count = np.zeros(t.shape, dtype=np.int64)
    for k in range(m):
        u = beta[k] * beta[k] + s
        count += u < 0
        if k < m - 1:
            u = np.where(np.abs(u) < pivmin, -pivmin, u)
            s = -t + alpha[k + 1] * alpha[k + 1] * (s / u)
            s = np.where(np.isnan(s), -t, s)
    return count


def dirac_mismatch(
    eps: float,
    coupling: float,
    j: float,
    s_min: float,
    s_max: float,
    n_steps: int,
    i_match: int,
) -> float:
    """Normalized spinor mismatch of the coupled first-order radial system.

    Integrates (g, h) outward from the power-law start at r_min = e^{s_min}
    and inward from the decaying start at r_max = e^{s_max} with fixed-step
    classical RK4 on the log coordinate, then returns the cross product of
    the two unit directions at the matching node.  A bound state is a zero.

    The inner loop is plain Python floats on purpose: per-step numpy overhead
    would be ~30x slower at these (2,) state sizes.
    """
    nu = math.sqrt(j * j - coupling * coupling)
    omega = math.sqrt(1.0 - eps * eps)
    h = (s_max - s_min) / (n_steps - 1)

    def rhs(s: float, y0: float, y1: float) -> tuple[float, float]:
        r = math.exp(s)
        dg = -(j / r) * y0 - (1.0 - coupling / r - eps) * y1
        dh = (j / r) * y1 - (1.0 + coupling / r + eps) * y0
        return r * dg, r * dh

    # outward sweep from the regular r^nu branch
    y0, y1 = coupling, j + nu
    norm = math.hypot(y0, y1)
    y0 /= norm
    y1 /= norm
    s = s_min
    for k in range(i_match):
        a0, a1 = rhs(s, y0, y1)
        b0, b1 = rhs(s + h / 2, y0 + h / 2 * a0, y1 + h / 2 * a1)
        c0, c1 = rhs(s + h / 2, y0 + h / 2 * b0, y1 + h / 2 * b1)
        d0, d1 = rhs(s + h, y0 + h * c0, y1 + h * c1)
        y0 += h / 6 * (a0 + 2 * b0 + 2 * c0 + d0)
        y1 += h / 6 * (a1 + 2 * b1 + 2 * c1 + d1)
        m = abs(y0) + abs(y1)
        if m > 1e100:
            y0 /= m
            y1 /= m
        s = s_min + (k + 1) * h
    norm = math.hypot(y0, y1)
    g_out, h_out = y0 / norm, y1 / norm

    # inward sweep from the exponentially decaying direction
    y0, y1 = omega, 1.0 + eps
    norm = math.hypot(y0, y1)
    y0 /= norm
    y1 /= norm
    s = s_max
    for k in range(n_steps - 1 - i_match):
        a0, a1 = rhs(s, y0, y1)
        b0, b1 = rhs(s - h / 2, y0 - h / 2 * a0, y1 - h / 2 * a1)
        c0, c1 = rhs(s - h / 2, y0 - h / 2 * b0, y1 - h / 2 * b1)
        d0, d1 = rhs(s - h, y0 - h * c0, y1 - h * c1)
        y0 -= h / 6 * (a0 + 2 * b0 + 2 * c0 + d0)
        y1 -= h / 6 * (a1 + 2 * b1 + 2 * c1 + d1)
        m = abs(y0) + abs(y1)
        if m > 1e100:
            y0 /= m
            y1 /= m
        s = s_max - (k + 1) * h
    norm = math.hypot(y0, y1)
    g_in, h_in = y0 / norm, y1 / norm

    return g_out * h_in - h_out * g_in
