"""Hot numeric kernels with a compiled core and a pure numpy fallback.

The package tries to import the Cython extension ``_core`` at import time
and silently falls back to ``_ref`` (same functions, numpy loops) when the
extension was not built.  ``backend_name()`` reports which one is active.

Exposed kernels:

- ``tridiag_count(d, e, shifts)``: Sturm count on an assembled symmetric
  tridiagonal (absolute accuracy floor ~eps * ||T||).
- ``product_count_upper/lower(alpha, beta, shifts)``: factored Sturm counts
  for B^T B and B B^T of an upper-bidiagonal factor B, accurate relative to
  each eigenvalue regardless of ||B||^2.
- ``dirac_mismatch(...)``: RK4 two-sided integration of the coupled radial
  system, returning the matching-node cross product.
- ``eig_bisect(count_fn, indices, lo, hi, ...)``: multisection driver that
  turns any of the counts into eigenvalues.
"""
from __future__ import annotations

from collections.abc import Callable, Sequence

import numpy as np

try:  # pragma: no cover - exercised indirectly via backend_name()
    from . import _core as _impl

    _BACKEND = "compiled"
except ImportError:  # pragma: no cover
    from . import _ref as _impl

    _BACKEND = "fallback"

from . import _ref

__all__ = [
    "backend_name",
    "tridiag_count",
    "product_count_upper",
    "product_count_lower",
    "dirac_mismatch",
    "eig_bisect",
    "reference_backend",
]


def backend_name() -> str:
    """Either ``"compiled"`` (Cython core) or ``"fallback"`` (pure numpy)."""
    return _BACKEND


def reference_backend():
    """The pure numpy module, importable even when the core is compiled."""
    return _ref


def _c(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def tridiag_count(d, e, shifts) -> np.ndarray:
    return np.asarray(_impl.tridiag_count(_c(d), _c(e), _c(shifts)), dtype=np.int64)


def product_count_upper(alpha, beta, shifts) -> np.ndarray:
    return np.asarray(
        _impl.product_count_upper(_c(alpha), _c(beta), _c(shifts)), dtype=np.int64
    )


def product_count_lower(alpha, beta, shifts) -> np.ndarray:
    return np.asarray(
        _impl.product_count_lower(_c(alpha), _c(beta), _c(shifts)), dtype=np.int64
    )


def dirac_mismatch(
    eps: float,
    coupling: float,
    j: float,
    s_min: float,
    s_max: float,
    n_steps: int,
    i_match: int,
) -> float:
    return float(
        _impl.dirac_mismatch(
            float(eps), float(coupling), float(j), float(s_min), float(s_max),
            int(n_steps), int(i_match),
        )
    )


def eig_bisect(
    count_fn: Callable[[np.ndarray], np.ndarray],
    indices: Sequence[int],
    lo: float,
    hi: float,
    *,
    rel_tol: float = 1e-14,
    abs_floor: float = 0.0,
    max_rounds: int = 40,
    probes: int = 15,
) -> np.ndarray:
    """Eigenvalues with the given 0-based indices via multisection bisection.

    ``count_fn(shifts)`` must return, per shift t, the number of eigenvalues
    strictly below t.  Each round evaluates ``probes`` interior points per
    unconverged target in one batched call, shrinking every bracket by a
    factor of probes+1, so 40 rounds at the default width resolve any double
    from a Gershgorin-sized initial bracket.  Targets sharing a bracket share
    probe evaluations through deduplication.

    A target is frozen once its bracket width falls below
    ``max(rel_tol * |endpoint|, abs_floor)``; the midpoint is returned.
    """
    idx = np.asarray(list(indices), dtype=np.int64)
    if idx.size == 0:
        return np.zeros(0)
    if np.any(idx < 0):
        raise ValueError("eigenvalue indices must be non-negative")
    los = np.full(idx.shape, float(lo))
    his = np.full(idx.shape, float(hi))
    active = np.ones(idx.shape, dtype=bool)
    frac = np.arange(1, probes + 1, dtype=np.float64) / (probes + 1)

    for _ in range(max_rounds):
        width = his - los
        tol = np.maximum(rel_tol * np.maximum(np.abs(los), np.abs(his)), abs_floor)
        active &= width > tol
        if not active.any():
            break
        ai = np.nonzero(active)[0]
        grid = los[ai, None] + width[ai, None] * frac[None, :]
        shifts, inv = np.unique(grid.ravel(), return_inverse=True)
        counts = count_fn(shifts)[inv].reshape(grid.shape)
        # count(t) >= k+1 means the k-th smallest eigenvalue lies below t
        below = counts >= (idx[ai, None] + 1)
        # first probe that is above the eigenvalue becomes the new hi,
        # the last one below it the new lo
        any_hi = below.any(axis=1)
        first_hi = np.argmax(below, axis=1)
        his[ai[any_hi]] = grid[any_hi, first_hi[any_hi]]
        lo_idx = np.where(any_hi, first_hi - 1, probes - 1)
        has_lo = lo_idx >= 0
        los[ai[has_lo]] = grid[has_lo, lo_idx[has_lo]]

    return 0.5 * (los + his)
