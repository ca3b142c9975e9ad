"""Supersymmetric factorization of the radial spectral problem.

A superpotential W(r) = a/r - b generates two partner channels

    V1 = W^2 - W' = a(a+1)/r^2 - 2ab/r + b^2
    V2 = W^2 + W' = a(a-1)/r^2 - 2ab/r + b^2

and the first-order ladder operators discretize to rectangular bidiagonal
factors A (for -d/dr + W) and its transpose.  The products A^T A and A A^T
are isospectral except for the zero mode annihilated by A, which exists on
the A^T A side whenever exp(integral W) = r^a exp(-b r) is normalizable.
All product eigenvalues here are computed from the factors directly (never
by assembling the product), which preserves the structural zero and keeps
near-zero accuracy independent of the grid's 1/r_min^2 stiffness.

For couplings past the critical strength the inverse-square coefficient
a^2 turns negative; W becomes imaginary and the V1 channel acquires an
anti-hermitian part.  :func:`hermiticity_defect` measures exactly that.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse

from . import kernels
from ._radial import RadialGrid, first_order_rows, kinetic_tridiag

__all__ = [
    "RadialSuperpotential",
    "PartnerPotentials",
    "GridOperator",
    "BidiagonalOperator",
    "SusyAlgebraReport",
    "IsospectralityReport",
    "partner_potentials",
    "ladder_matrices",
    "ladder_product",
    "ladder_eigenvalues",
    "ladder_zero_mode",
    "resolvable_grid_points",
    "susy_algebra_check",
    "isospectrality_check",
    "hermiticity_defect",
]

# midpoint rows lose diagonal dominance when h * max|r W| grows past ~2;
# refuse well before that instead of returning poisoned spectra
_STABILITY_LIMIT = 1.5


@dataclass(frozen=True)
class RadialSuperpotential:
    """W(r) = a/r - b with a = sqrt(a_sq) taken on the positive branch.

    ``a_sq`` is stored signed: a negative value means the coupling is past
    critical, a is imaginary and the superpotential is no longer real.  A
    complex constant term is carried in ``b_imag`` for the same regime.
    """

    a_sq: float
    b_real: float
    b_imag: float = 0.0

    def __post_init__(self) -> None:
        for name in ("a_sq", "b_real", "b_imag"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")

    @property
    def is_real(self) -> bool:
        return self.a_sq >= 0.0 and self.b_imag == 0.0

    @property
    def a(self) -> float:
        if self.a_sq < 0.0:
            raise ValueError(
                f"superpotential is not real: a_sq = {self.a_sq} < 0"
            )
        return float(np.sqrt(self.a_sq))

    @property
    def b(self) -> float:
        if self.b_imag != 0.0:
            raise ValueError("superpotential has a complex constant term")
        return self.b_real

    @property
    def a_complex(self) -> complex:
        return cmath.sqrt(complex(self.a_sq, 0.0))

    @property
    def b_complex(self) -> complex:
        return complex(self.b_real, self.b_imag)

    @classmethod
    def from_coefficients(cls, a: float, b: float) -> "RadialSuperpotential":
        """Build from real a >= 0 and real b."""
        if a < 0.0:
            raise ValueError(f"a must be the positive root, got {a}")
        return cls(a_sq=float(a) * float(a), b_real=float(b))

    def values(self, r: np.ndarray) -> np.ndarray:
        """W sampled at radii r (real path only)."""
        return self.a / np.asarray(r) - self.b


@dataclass(frozen=True)
class PartnerPotentials:
    """Coefficient triples (c2, c1, c0) of V = c2/r^2 + c1/r + c0."""

    v1: tuple[float, float, float]
    v2: tuple[float, float, float]

    def coefficients(self, channel: str) -> tuple[float, float, float]:
        if channel == "v1":
            return self.v1
        if channel == "v2":
            return self.v2
        raise ValueError(f"unknown channel {channel!r}, expected 'v1' or 'v2'")

    def values(self, channel: str, r: np.ndarray) -> np.ndarray:
        c2, c1, c0 = self.coefficients(channel)
        r = np.asarray(r, dtype=np.float64)
        return c2 / (r * r) + c1 / r + c0


@dataclass(frozen=True)
class GridOperator:
    """Symmetric tridiagonal operator on the nodes of a radial grid."""

    grid: RadialGrid
    diag: np.ndarray
    offdiag: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return (self.diag.size, self.diag.size)

    def norm_max(self) -> float:
        hi = float(np.max(np.abs(self.diag)))
        if self.offdiag.size:
            hi = max(hi, float(np.max(np.abs(self.offdiag))))
        return hi

    def toarray(self) -> np.ndarray:
        n = self.diag.size
        m = np.zeros((n, n))
        m[np.arange(n), np.arange(n)] = self.diag
        m[np.arange(n - 1), np.arange(1, n)] = self.offdiag
        m[np.arange(1, n), np.arange(n - 1)] = self.offdiag
        return m

    def tosparse(self) -> sparse.csr_matrix:
        return sparse.diags(
            [self.offdiag, self.diag, self.offdiag], [-1, 0, 1], format="csr"
        )


@dataclass(frozen=True)
class BidiagonalOperator:
    """Rectangular bidiagonal ladder factor on a radial grid.

    orientation "upper": shape (n-1, n), entries (k,k)=main[k], (k,k+1)=off[k].
    orientation "lower": the transpose layout, shape (n, n-1).
    """

    grid: RadialGrid
    main: np.ndarray
    off: np.ndarray
    orientation: str = "upper"

    def __post_init__(self) -> None:
        if self.orientation not in ("upper", "lower"):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if self.main.size != self.off.size:
            raise ValueError("main and off diagonals must have equal length")

    @property
    def shape(self) -> tuple[int, int]:
        m = self.main.size
        return (m, m + 1) if self.orientation == "upper" else (m + 1, m)

    def transpose(self) -> "BidiagonalOperator":
        flip = "lower" if self.orientation == "upper" else "upper"
        return BidiagonalOperator(self.grid, self.main, self.off, flip)

    def tosparse(self) -> sparse.csr_matrix:
        m = self.main.size
        if self.orientation == "upper":
            return sparse.diags([self.main, self.off], [0, 1], shape=(m, m + 1)).tocsr()
        return sparse.diags([self.main, self.off], [0, -1], shape=(m + 1, m)).tocsr()

    def toarray(self) -> np.ndarray:
        return self.tosparse().toarray()


def partner_potentials(w: RadialSuperpotential) -> PartnerPotentials:
    """Both partner channels of a real superpotential.

    Raises ValueError past critical coupling (a_sq < 0), where the channels
    stop being real; use :func:`hermiticity_defect` there instead.
    """
    if not w.is_real:
        raise ValueError(
            "partner potentials require a real superpotential "
            f"(a_sq = {w.a_sq}, b_imag = {w.b_imag})"
        )
    a, b = w.a, w.b
    return PartnerPotentials(
        v1=(a * (a + 1.0), -2.0 * a * b, b * b),
        v2=(a * (a - 1.0), -2.0 * a * b, b * b),
    )


def ladder_matrices(
    w: RadialSuperpotential, grid: RadialGrid
) -> tuple[BidiagonalOperator, BidiagonalOperator]:
    """Discretized (A, A^dagger) for A = -d/dr + W as bidiagonal factors.

    A^T A reproduces the V2 channel (it annihilates r^a e^{-br}) and A A^T
    the V1 channel.  Raises when the grid cannot resolve the superpotential:
    the midpoint rows need h * max|r W| below ~1.5 on a log grid (h * max|W|
    on a uniform one) to keep the factor's sign structure intact.
    """
    if not w.is_real:
        raise ValueError("ladder factorization requires a real superpotential")
    w_mid = w.values(grid.mid_r)
    if grid.is_log:
        stiffness = grid.h * float(np.max(np.abs(w_mid) * grid.mid_r))
    else:
        stiffness = grid.h * float(np.max(np.abs(w_mid)))
    if stiffness > _STABILITY_LIMIT:
        raise ValueError(
            f"grid cannot resolve the superpotential: h*max|r W| = {stiffness:.3g} "
            f"exceeds {_STABILITY_LIMIT}; increase grid points or shrink the range"
        )
    alpha, beta = first_order_rows(grid, w_mid)
    a_op = BidiagonalOperator(grid, alpha, beta, "upper")
    return a_op, a_op.transpose()


def resolvable_grid_points(
    w: RadialSuperpotential, r_min: float, r_max: float, target: float = 1.0
) -> int:
    """Smallest log-grid size that keeps h * max|r W| at or below target.

    The extremes of |r W(r)| = |a - b r| sit at the interval ends, so this
    is a cheap a-priori bound; pass the result (or more) to
    :class:`~monospec.oracle.RadialGrid` to stay inside the stability guard
    of :func:`ladder_matrices`.
    """
    if not w.is_real:
        raise ValueError("grid sizing requires a real superpotential")
    peak = max(abs(w.a - w.b * r_min), abs(w.a - w.b * r_max))
    span = np.log(r_max / r_min)
    return max(100, int(np.ceil(span * peak / target)) + 1)


def ladder_product(a_op: BidiagonalOperator, side: str) -> GridOperator:
    """Assembled A^T A (side="ata", n x n) or A A^T (side="aat", n-1 x n-1).

    For eigenvalues prefer :func:`ladder_eigenvalues`, which works on the
    factor directly; the assembled form is for residual checks and display.
    """
    if a_op.orientation != "upper":
        a_op = a_op.transpose()
    al, be = a_op.main, a_op.off
    if side == "ata":
        d = np.concatenate([al * al, [0.0]])
        d[1:] += be * be
        e = al * be
    elif side == "aat":
        d = al * al + be * be
        e = be[:-1] * al[1:]
    else:
        raise ValueError(f"unknown side {side!r}, expected 'ata' or 'aat'")
    return GridOperator(a_op.grid, d, e)


def ladder_eigenvalues(
    a_op: BidiagonalOperator,
    side: str,
    indices,
    *,
    rel_tol: float = 1e-14,
) -> np.ndarray:
    """Lowest product eigenvalues by factored Sturm bisection.

    side "ata" for A^T A (carries the structural zero mode at index 0 when
    the kernel vector is normalizable), "aat" for the partner A A^T.
    """
    if a_op.orientation != "upper":
        a_op = a_op.transpose()
    al, be = a_op.main, a_op.off
    hi = float(np.max(np.abs(al) + np.abs(be)))
    hi = hi * hi * (1.0 + 1e-8) + 1.0
    if side == "ata":
        count = lambda t: kernels.product_count_upper(al, be, t)
    elif side == "aat":
        count = lambda t: kernels.product_count_lower(al, be, t)
    else:
        raise ValueError(f"unknown side {side!r}, expected 'ata' or 'aat'")
    return kernels.eig_bisect(count, indices, 0.0, hi, rel_tol=rel_tol)


def ladder_zero_mode(a_op: BidiagonalOperator) -> np.ndarray:
    """Unit-norm node vector annihilated by the upper bidiagonal factor.

    Solves the two-term recurrence alpha[k] v_k + beta[k] v_{k+1} = 0 with
    running rescaling; this is the discrete r^a e^{-br} ground state in the
    working frame of the grid.
    """
    if a_op.orientation != "upper":
        a_op = a_op.transpose()
    al, be = a_op.main, a_op.off
    if np.any(be == 0.0):
        raise ValueError("ladder factor has a zero super-diagonal entry")
    n = al.size + 1
    v = np.empty(n)
    v[0] = 1.0
    for k in range(n - 1):
        v[k + 1] = -al[k] * v[k] / be[k]
        m = abs(v[k + 1])
        if m > 1e100:
            v[: k + 2] /= m
    norm = float(np.linalg.norm(v))
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError("zero-mode recurrence degenerated")
    return v / norm


@dataclass(frozen=True)
class SusyAlgebraReport:
    """Max-norm residuals of the graded algebra built from one ladder pair.

    q_squared_residual:      ||Q^2|| / ||Q||^2          (nilpotency)
    anticommutator_residual: ||{Q, Q^T} - H|| / ||H||    (closure on H)
    commutator_residual:     ||[Q, H]|| / (||Q|| ||H||)  (H commutes with Q)
    """

    q_squared_residual: float
    anticommutator_residual: float
    commutator_residual: float
    tolerance: float
    passed: bool


def _sparse_max(m: sparse.spmatrix) -> float:
    m = m.tocsr()
    m.eliminate_zeros()
    return float(np.max(np.abs(m.data))) if m.nnz else 0.0


def susy_algebra_check(
    a_op: BidiagonalOperator,
    a_dag_op: BidiagonalOperator,
    tol: float = 1e-12,
) -> SusyAlgebraReport:
    """Verify the graded algebra of Q = [[0, 0], [A, 0]] numerically.

    H is taken as the anticommutator {Q, Q^T}; the closure residual compares
    it against the block-diagonal of the independently assembled products,
    so the check crosses two different evaluation routes.
    """
    if a_op.orientation != "upper":
        a_op, a_dag_op = a_dag_op, a_op
    m, n = a_op.shape
    asp = a_op.tosparse()
    z_nn = sparse.csr_matrix((n, n))
    z_nm = sparse.csr_matrix((n, m))
    z_mm = sparse.csr_matrix((m, m))
    q = sparse.bmat([[z_nn, z_nm], [asp, z_mm]], format="csr")
    qd = sparse.csr_matrix(q.T)

    q_norm = _sparse_max(q)
    q_sq = q @ q
    r_nilpotent = _sparse_max(q_sq) / (q_norm * q_norm)

    h = qd @ q + q @ qd
    h_direct = sparse.bmat(
        [
            [ladder_product(a_op, "ata").tosparse(), z_nm],
            [z_nm.T, ladder_product(a_op, "aat").tosparse()],
        ],
        format="csr",
    )
    h_norm = _sparse_max(h_direct)
    r_closure = _sparse_max(h - h_direct) / h_norm

    r_commute = _sparse_max(q @ h - h @ q) / (q_norm * h_norm)

    passed = max(r_nilpotent, r_closure, r_commute) <= tol
    return SusyAlgebraReport(
        q_squared_residual=r_nilpotent,
        anticommutator_residual=r_closure,
        commutator_residual=r_commute,
        tolerance=tol,
        passed=passed,
    )


@dataclass(frozen=True)
class IsospectralityReport:
    """Pairing of the two product spectra above the zero mode."""

    pairs: tuple[tuple[float, float], ...]
    max_rel_mismatch: float
    zero_mode_eigenvalue: float
    partner_min_eigenvalue: float
    extra_zero_mode: bool


def isospectrality_check(
    a_op: BidiagonalOperator,
    a_dag_op: BidiagonalOperator,
    k: int = 4,
) -> IsospectralityReport:
    """Compare the lowest k excited A^T A eigenvalues against A A^T.

    The A^T A spectrum is expected to carry one extra (near-)zero mode; the
    shifted sequences then pair level by level.
    """
    if k < 1:
        raise ValueError(f"need at least one pair, got k={k}")
    if a_op.orientation != "upper":
        a_op, a_dag_op = a_dag_op, a_op
    lam_ata = ladder_eigenvalues(a_op, "ata", range(k + 1))
    lam_aat = ladder_eigenvalues(a_op, "aat", range(k))
    pairs = tuple((float(lam_ata[i + 1]), float(lam_aat[i])) for i in range(k))
    mism = max(
        abs(p - q) / max(abs(p), abs(q), 1e-300) for p, q in pairs
    )
    zero = float(lam_ata[0])
    partner_min = float(lam_aat[0])
    extra = zero <= 1e-6 * max(1.0, partner_min) and partner_min > 100.0 * max(
        zero, 1e-300
    )
    return IsospectralityReport(
        pairs=pairs,
        max_rel_mismatch=float(mism),
        zero_mode_eigenvalue=zero,
        partner_min_eigenvalue=partner_min,
        extra_zero_mode=bool(extra),
    )


def hermiticity_defect(w: RadialSuperpotential, grid: RadialGrid) -> float:
    """Relative anti-hermitian content of the assembled V1-channel operator.

    The operator -d^2/dr^2 + W^2 - W' is assembled with the complex
    continuation of W; the defect is max|H - H^H| / max|H| over matrix
    entries.  It is exactly 0.0 for any real superpotential and strictly
    positive past critical coupling, where a^2 < 0 makes W imaginary.
    """
    a_c = w.a_complex
    b_c = w.b_complex
    c2 = a_c * (a_c + 1.0)
    c1 = -2.0 * a_c * b_c
    c0 = b_c * b_c
    r = grid.nodes
    v = c2 / (r * r) + c1 / r + c0
    d_kin, e_kin = kinetic_tridiag(grid)
    diag = d_kin + v
    num = 2.0 * float(np.max(np.abs(diag.imag)))
    den = max(float(np.max(np.abs(diag))), float(np.max(np.abs(e_kin))))
    return num / den
