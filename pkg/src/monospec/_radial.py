"""Radial grids and the shared discretization rows.

Internal module: :mod:`.oracle` re-exports :class:`RadialGrid` as public API
and :mod:`.susy` builds its ladder factors from the same midpoint rows, so
both discretizations are guaranteed to describe the same operator.

On a logarithmic grid the solver works in the coordinate s = ln r with the
unitary substitution u(s) = sqrt(r) phi(r), which keeps the transformed
operator symmetric.  First-derivative rows live on midpoints: the factor
exp(-s_mid) carries the 1/r Jacobian and the +-1/4 shifts are the exact
midpoint representation of the sqrt(r) conjugation.  On a uniform grid the
weight is 1 and the shifts vanish.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

_SPACINGS = ("uniform", "logarithmic")


@dataclass(frozen=True)
class RadialGrid:
    """Finite radial interval [r_min, r_max] sampled at n interior nodes.

    The Dirichlet walls sit exactly at r_min and r_max; the n stored nodes
    are strictly inside, equispaced in the working coordinate with step
    h = span / (n + 1).  Keeping the walls on the interval ends (not one
    ghost step outside) is what preserves second-order convergence of the
    assembled operators.
    """

    r_min: float
    r_max: float
    n: int
    spacing: str = "logarithmic"

    def __post_init__(self) -> None:
        if not (np.isfinite(self.r_min) and self.r_min > 0.0):
            raise ValueError(f"r_min must be positive and finite, got {self.r_min}")
        if not (np.isfinite(self.r_max) and self.r_max > self.r_min):
            raise ValueError(
                f"r_max must be finite and exceed r_min={self.r_min}, got {self.r_max}"
            )
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise TypeError(f"grid size must be an integer, got {self.n!r}")
        if self.n < 100:
            raise ValueError(f"grid size must be at least 100, got {self.n}")
        if self.spacing not in _SPACINGS:
            raise ValueError(
                f"unknown spacing {self.spacing!r}, expected one of {_SPACINGS}"
            )

    @property
    def is_log(self) -> bool:
        return self.spacing == "logarithmic"

    @cached_property
    def log_nodes(self) -> np.ndarray:
        """The working coordinate s = ln r (log spacing only)."""
        if not self.is_log:
            raise ValueError("log_nodes is only defined for logarithmic spacing")
        s_min = np.log(self.r_min)
        return s_min + self.h * np.arange(1, self.n + 1)

    @cached_property
    def nodes(self) -> np.ndarray:
        if self.is_log:
            return np.exp(self.log_nodes)
        return self.r_min + self.h * np.arange(1, self.n + 1)

    @property
    def h(self) -> float:
        """Step of the working coordinate (s for log, r for uniform)."""
        if self.is_log:
            return (np.log(self.r_max) - np.log(self.r_min)) / (self.n + 1)
        return (self.r_max - self.r_min) / (self.n + 1)

    @cached_property
    def mid_r(self) -> np.ndarray:
        """Radii of the n-1 interior midpoints of the working coordinate."""
        if self.is_log:
            s = self.log_nodes
            return np.exp(0.5 * (s[:-1] + s[1:]))
        r = self.nodes
        return 0.5 * (r[:-1] + r[1:])

    @cached_property
    def mid_weight(self) -> np.ndarray:
        """Jacobian weight 1/r at interior midpoints (ones when uniform)."""
        if self.is_log:
            return 1.0 / self.mid_r
        return np.ones(self.n - 1)

    def with_n(self, n: int) -> "RadialGrid":
        return RadialGrid(self.r_min, self.r_max, int(n), self.spacing)


def first_order_rows(grid: RadialGrid, w_mid: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Midpoint rows of the operator -d/dr + W as an (n-1) x n bidiagonal.

    Returns (alpha, beta): row k of the factor reads
    alpha[k] * v_k + beta[k] * v_{k+1}, with v the node values of the
    (log-frame) wavefunction.  W enters only through its midpoint samples.
    """
    h = grid.h
    if grid.is_log:
        bet = grid.mid_weight  # exp(-s_mid)
        alpha = bet * (1.0 / h + 0.25) + 0.5 * w_mid
        beta = bet * (-1.0 / h + 0.25) + 0.5 * w_mid
    else:
        alpha = 1.0 / h + 0.5 * w_mid
        beta = -1.0 / h + 0.5 * w_mid
    return alpha, beta


def kinetic_tridiag(grid: RadialGrid) -> tuple[np.ndarray, np.ndarray]:
    """Assembled -d^2/dr^2 with Dirichlet ends as symmetric tridiagonal (d, e).

    Built as D^T D from n+1 midpoint derivative rows (two of them against
    ghost nodes held at zero), which keeps the matrix positive semidefinite
    by construction on both spacings.
    """
    n = grid.n
    h = grid.h
    if grid.is_log:
        # row k couples the wall-side neighbor at s_min + k h and the node
        # at s_min + (k+1) h; its midpoint is s_min + (k + 1/2) h
        s_mid_all = np.log(grid.r_min) + 0.5 * h + np.arange(n + 1) * h
        w = np.exp(-s_mid_all)
        lo = w * (-1.0 / h - 0.25)
        hi = w * (1.0 / h - 0.25)
    else:
        lo = np.full(n + 1, -1.0 / h)
        hi = np.full(n + 1, 1.0 / h)
    d = hi[:n] ** 2 + lo[1:] ** 2
    e = lo[1:n] * hi[1:n]
    return d, e
