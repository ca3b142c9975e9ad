"""Independent numerical oracles for the closed-form spectra.

Three routes that share no algebra with the formulas they check:

- :func:`schrodinger_eigen` assembles the second-order channel operator on
  a finite grid and bisects for its lowest eigenvalues (Dirichlet ends).
- :func:`shoot_first_order` integrates the coupled first-order radial
  system from both ends and finds the energy where the two solutions match.
- :func:`matrix_bound_energy` / :func:`matrix_magnetic_level` run the
  factored-ladder eigenvalue route, which is the production solver's own
  machinery but driven as a root find in the energy parameter.

Agreement across routes is what the acceptance suite certifies; each
result carries a grid-refinement error estimate instead of a bare number.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import optimize
from scipy.linalg import LinAlgError, solve_banded

from . import kernels
from ._radial import RadialGrid, kinetic_tridiag
from .electric import CollapseRegimeError, ElectricImpurity, classify
from .model import ScaledEnergy
from .susy import (
    RadialSuperpotential,
    ladder_eigenvalues,
    ladder_matrices,
    resolvable_grid_points,
)

if TYPE_CHECKING:  # pragma: no cover
    from .magnetic import MagneticImpurity
    from .susy import PartnerPotentials

__all__ = [
    "RadialGrid",
    "EigenSolveResult",
    "RefineTask",
    "schrodinger_eigen",
    "shoot_first_order",
    "refine_until",
    "matrix_bound_energy",
    "matrix_magnetic_level",
]

_NODE_CLIP = 1e-8  # relative amplitude below which samples don't count nodes


@dataclass(frozen=True)
class EigenSolveResult:
    """One discrete eigenpair plus its own error bar.

    ``refine_estimate`` is |lambda(n) - lambda(n/2)| / 3, the usual second
    order Richardson error gauge; it must shrink ~4x under grid doubling.
    ``nodes`` counts interior sign changes of the eigenvector.
    """

    eigenvalue: float
    eigenvector: np.ndarray
    nodes: int
    refine_estimate: float
    grid: RadialGrid
    converged: bool = True


def _assemble_channel(
    pot: "PartnerPotentials", channel: str, grid: RadialGrid
) -> tuple[np.ndarray, np.ndarray]:
    c2, _, _ = pot.coefficients(channel)
    if c2 < -0.25:
        raise ValueError(
            f"channel {channel} has inverse-square coefficient {c2} < -1/4: "
            "fall to center, the Dirichlet operator is not bounded below"
        )
    v = pot.values(channel, grid.nodes)
    if not np.all(np.isfinite(v)):
        raise ValueError(
            "grid underflow: the potential is not finite at the innermost "
            f"nodes (r_min = {grid.r_min}); enlarge r_min or reduce stiffness"
        )
    d_kin, e_kin = kinetic_tridiag(grid)
    return d_kin + v, e_kin


def _lowest_eigenvalues(d: np.ndarray, e: np.ndarray, k: int) -> np.ndarray:
    radius = np.zeros_like(d)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo = float(np.min(d - radius))
    hi = float(np.max(d + radius)) + 1.0
    scale = max(float(np.max(np.abs(d))), float(np.max(np.abs(e))))
    floor = 8.0 * np.finfo(np.float64).eps * scale
    count = lambda t: kernels.tridiag_count(d, e, t)
    return kernels.eig_bisect(count, range(k), lo, hi, abs_floor=floor)


def _inverse_iteration(
    d: np.ndarray, e: np.ndarray, lam: float, seed: int
) -> np.ndarray:
    n = d.size
    scale = max(float(np.max(np.abs(d))), float(np.max(np.abs(e))), 1.0)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    shift = lam
    for attempt in range(4):
        ab = np.zeros((3, n))
        ab[0, 1:] = e
        ab[1, :] = d - shift
        ab[2, :-1] = e
        try:
            for _ in range(3):
                v = solve_banded((1, 1), ab, v)
                nrm = np.linalg.norm(v)
                if not np.isfinite(nrm) or nrm == 0.0:
                    raise LinAlgError("inverse iteration lost the vector")
                v /= nrm
            break
        except LinAlgError:
            # exactly singular shift: nudge by a few ulps of the matrix scale
            shift = lam + (attempt + 1) * 64.0 * np.finfo(np.float64).eps * scale
            v = rng.standard_normal(n)
            v /= np.linalg.norm(v)
    # fix an overall sign so results are reproducible bit for bit
    peak = int(np.argmax(np.abs(v)))
    if v[peak] < 0.0:
        v = -v
    return v


def _count_nodes(v: np.ndarray) -> int:
    cut = _NODE_CLIP * float(np.max(np.abs(v)))
    s = np.sign(v[np.abs(v) > cut])
    if s.size < 2:
        return 0
    return int(np.sum(s[1:] != s[:-1]))


def schrodinger_eigen(
    pot: "PartnerPotentials",
    channel: str,
    grid: RadialGrid,
    k: int = 1,
    *,
    seed: int = 12345,
    refine: bool = True,
) -> list[EigenSolveResult]:
    """Lowest k Dirichlet eigenpairs of -d^2/dr^2 + V_channel on the grid.

    The assembled-operator route: accuracy near zero is limited to
    ~eps * ||T||, so structural zero modes belong to the factored ladder
    solver, not here.  Requires c2 >= -1/4 (no fall to center).
    """
    if k < 1:
        raise ValueError(f"need at least one eigenpair, got k = {k}")
    d, e = _assemble_channel(pot, channel, grid)
    lams = _lowest_eigenvalues(d, e, k)
    ests = np.full(k, np.nan)
    if refine:
        coarse = grid.with_n(max(100, grid.n // 2))
        d2, e2 = _assemble_channel(pot, channel, coarse)
        lams2 = _lowest_eigenvalues(d2, e2, k)
        ests = np.abs(lams - lams2) / 3.0
    out = []
    for i in range(k):
        vec = _inverse_iteration(d, e, float(lams[i]), seed)
        out.append(
            EigenSolveResult(
                eigenvalue=float(lams[i]),
                eigenvector=vec,
                nodes=_count_nodes(vec),
                refine_estimate=float(ests[i]),
                grid=grid,
                converged=True,
            )
        )
    return out


def shoot_first_order(
    imp: ElectricImpurity,
    j: float,
    bracket: tuple[float, float],
    *,
    n_steps: int = 6001,
    tol: float = 1e-13,
) -> ScaledEnergy:
    """Bound energy from two-sided integration of the first-order system.

    Integrates outward from the regular power-law branch and inward from
    the decaying branch on a log-radius RK4 grid, then solves for the
    energy where the matching-node cross product vanishes.  The bracket
    must contain exactly one level; endpoints live in (0, 1).
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (0.0 < lo < hi < 1.0):
        raise ValueError(f"bracket must satisfy 0 < lo < hi < 1, got {bracket}")
    data = classify(imp, j)
    if data.classification != "subcritical":
        raise CollapseRegimeError(
            f"shooting needs a subcritical coupling, got {data.classification} "
            f"(nu_sq = {data.nu_sq})",
            nu_sq=data.nu_sq,
        )
    omega_slow = math.sqrt(1.0 - hi * hi)  # slowest decay inside the bracket
    r_min = 1e-6
    r_max = 50.0 / omega_slow
    s_min, s_max = math.log(r_min), math.log(r_max)
    eps_mid = 0.5 * (lo + hi)
    r_turn = max(1.0, 1.0 / math.sqrt(1.0 - eps_mid * eps_mid))
    h = (s_max - s_min) / (n_steps - 1)
    i_match = int(round((math.log(r_turn) - s_min) / h))
    i_match = min(max(i_match, 1), n_steps - 2)

    def mismatch(eps: float) -> float:
        return kernels.dirac_mismatch(eps, imp.g, j, s_min, s_max, n_steps, i_match)

    f_lo, f_hi = mismatch(lo), mismatch(hi)
    if f_lo == 0.0:
        return ScaledEnergy(value=lo)
    if f_hi == 0.0:
        return ScaledEnergy(value=hi)
    if f_lo * f_hi > 0.0:
        raise ValueError(
            f"no level in bracket ({lo}, {hi}): the matching mismatch does "
            "not change sign"
        )
    root = optimize.brentq(mismatch, lo, hi, xtol=tol, rtol=8 * np.finfo(float).eps)
    return ScaledEnergy(value=float(root))


@dataclass(frozen=True)
class RefineTask:
    """A single eigenvalue target for :func:`refine_until`."""

    pot: "PartnerPotentials"
    channel: str
    grid: RadialGrid
    level: int = 0
    seed: int = 12345


def refine_until(
    task: RefineTask, tol: float, max_doublings: int = 6
) -> EigenSolveResult:
    """Double the grid until the Richardson error estimate drops below tol.

    Never raises on non-convergence: the returned result carries
    ``converged = False`` and the best estimate reached.  The eigenvalue is
    Richardson-extrapolated from the last two grids.
    """
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if max_doublings < 0:
        raise ValueError(f"max_doublings must be non-negative, got {max_doublings}")
    grid = task.grid
    d, e = _assemble_channel(task.pot, task.channel, grid)
    lam = float(_lowest_eigenvalues(d, e, task.level + 1)[task.level])
    lam_prev = math.nan
    est = math.inf
    converged = False
    for _ in range(max_doublings):
        grid = grid.with_n(2 * grid.n + 1)  # halves h exactly, walls fixed
        d, e = _assemble_channel(task.pot, task.channel, grid)
        lam_new = float(_lowest_eigenvalues(d, e, task.level + 1)[task.level])
        est = abs(lam_new - lam) / 3.0
        lam_prev, lam = lam, lam_new
        if est <= tol:
            converged = True
            break
    value = lam + (lam - lam_prev) / 3.0 if math.isfinite(lam_prev) else lam
    vec = _inverse_iteration(d, e, lam, task.seed)
    return EigenSolveResult(
        eigenvalue=value,
        eigenvector=vec,
        nodes=_count_nodes(vec),
        refine_estimate=est if math.isfinite(est) else math.nan,
        grid=grid,
        converged=converged,
    )


def _electric_ladder_level(
    imp: ElectricImpurity, nu: float, n: int, eps: float, grid: RadialGrid
) -> float:
    b = imp.g * eps / nu
    w = RadialSuperpotential(a_sq=nu * nu, b_real=b)
    a_op, _ = ladder_matrices(w, grid)
    lam = float(ladder_eigenvalues(a_op, "ata", [n])[0])
    return lam - b * b


def matrix_bound_energy(
    imp: ElectricImpurity,
    j: float,
    n: int,
    *,
    grid_points: int = 2000,
    r_min: float = 1e-4,
    tol: float = 1e-10,
) -> ScaledEnergy:
    """Tower energy from the energy-dependent ladder operator, no closed form.

    Solves F(eps) = eps^2 - 1 - E_n(eps) = 0 by Brent's method, where
    E_n(eps) is the n-th eigenvalue of the factored channel operator whose
    superpotential constant depends on eps.  The closed-form value is used
    only to seed the search bracket; the returned number comes entirely
    from the matrix eigenvalues.  ``grid_points`` is a floor: the grid is
    enlarged automatically when the tail needs finer resolution.
    """
    data = classify(imp, j)
    if data.classification != "subcritical":
        raise CollapseRegimeError(
            f"matrix oracle needs a subcritical coupling, got "
            f"{data.classification} (nu_sq = {data.nu_sq})",
            nu_sq=data.nu_sq,
        )
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"radial index must be a non-negative integer, got {n!r}")
    nu = math.sqrt(data.nu_sq)
    ratio = imp.g / (nu + n)
    eps_hint = 1.0 / math.sqrt(1.0 + ratio * ratio)
    kappa = imp.g * eps_hint / (nu + n)
    r_max = 40.0 / kappa
    w_hint = RadialSuperpotential(a_sq=nu * nu, b_real=imp.g * eps_hint / nu)
    n_pts = max(grid_points, resolvable_grid_points(w_hint, r_min, r_max))
    grid = RadialGrid(r_min, r_max, n_pts, "logarithmic")

    def f(eps: float) -> float:
        return eps * eps - 1.0 - _electric_ladder_level(imp, nu, n, eps, grid)

    lo = max(eps_hint - 0.05, 1e-6)
    hi = min(eps_hint + 0.05, 1.0 - 1e-12)
    f_lo, f_hi = f(lo), f(hi)
    widen = 0
    while f_lo * f_hi > 0.0 and widen < 6:
        lo = max(lo - 0.1, 1e-6)
        hi = min(hi + 0.1, 1.0 - 1e-12)
        f_lo, f_hi = f(lo), f(hi)
        widen += 1
    if f_lo * f_hi > 0.0:
        raise ValueError(
            f"matrix oracle found no sign change around eps = {eps_hint:.6g}"
        )
    root = optimize.brentq(f, lo, hi, xtol=tol)
    return ScaledEnergy(value=float(root))


def matrix_magnetic_level(
    imp: "MagneticImpurity",
    j: float,
    n_breve: int,
    *,
    grid_points: int = 4000,
    r_min: float = 1e-5,
) -> float:
    """Squared ladder eigenvalue of the gapped monopole level, from the grid.

    Returns the n_breve-th eigenvalue of the factored channel operator for
    W = j/r - beta; the closed-form counterpart is
    beta^2 (1 - (j/(j+n))^2) and eps^2 = 1 + that value.
    """
    from .magnetic import superpotential as _magnetic_superpotential

    if not isinstance(n_breve, int) or isinstance(n_breve, bool) or n_breve < 1:
        raise ValueError(f"n_breve must be a positive integer, got {n_breve!r}")
    w = _magnetic_superpotential(imp, j)
    r_max = (40.0 + 2.0 * (j + n_breve)) / imp.beta
    n_pts = max(grid_points, resolvable_grid_points(w, r_min, r_max))
    grid = RadialGrid(r_min, r_max, n_pts, "logarithmic")
    a_op, _ = ladder_matrices(w, grid)
    return float(ladder_eigenvalues(a_op, "ata", [n_breve])[0])
