"""Bound states of a subcritical charged impurity and the collapse boundary.

The dimensionless coupling g plays against the half-integer angular label j:
below |j| the spectrum is a real Coulomb-like tower accumulating at the gap
edge, at g = |j| the lowest tower state dives, and beyond it the effective
inverse-square coefficient nu^2 = j^2 - g^2 turns negative and no real
bound energy exists (atomic collapse).  Everything here is closed form;
the matrix and shooting routes in :mod:`.oracle` are the independent checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import QuantumNumbers, ScaledEnergy, validate_quantum_numbers
from .specfun import bessel_j
from .susy import RadialSuperpotential

__all__ = [
    "ElectricImpurity",
    "RotationData",
    "CollapseRegimeError",
    "ResonantRegulatorError",
    "classify",
    "bound_energy",
    "susy_eigenvalue",
    "superpotential",
    "matching_inner_ratio",
    "eigenvalue_from_matching",
]

_SUBCRITICAL = "subcritical"
_CRITICAL = "critical"
_SUPERCRITICAL = "supercritical"


class CollapseRegimeError(ValueError):
    """Raised where a real bound level stops existing (g >= |j|).

    Carries ``nu_sq = j^2 - g^2`` so callers can report how far past the
    boundary the request was.
    """

    def __init__(self, message: str, nu_sq: float):
        super().__init__(message)
        self.nu_sq = float(nu_sq)


class ResonantRegulatorError(ValueError):
    """Raised when the inner-region match sits on a zero of the regulator."""


@dataclass(frozen=True)
class ElectricImpurity:
    """Charged impurity with dimensionless coupling g > 0."""

    g: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.g) and self.g > 0.0):
            raise ValueError(f"coupling must be positive and finite, got {self.g}")

    @classmethod
    def from_charge(cls, z: float, alpha_g: float) -> "ElectricImpurity":
        """Impurity of charge number z in a medium with coupling alpha_g."""
        return cls(g=float(z) * float(alpha_g))


@dataclass(frozen=True)
class RotationData:
    """Outcome of the similarity rotation that decouples the radial system.

    For g < |j| the rotation is a real angle eta with sin(eta) = g/j and the
    problem stays hermitian; past |j| the angle (and the spectrum) moves off
    the real axis.
    """

    j: float
    g: float
    nu_sq: float
    eta: float | None
    classification: str
    is_unitary: bool


def _check_half_integer(j: float) -> float:
    two_j = 2.0 * j
    if not math.isfinite(j) or round(two_j) != two_j or int(round(two_j)) % 2 == 0:
        raise ValueError(f"j must be half-integer (odd 2j), got {j}")
    return float(j)


def classify(imp: ElectricImpurity, j: float) -> RotationData:
    """Subcritical / critical / supercritical for angular label j."""
    j = _check_half_integer(j)
    nu_sq = j * j - imp.g * imp.g
    if nu_sq > 0.0:
        kind, eta, unitary = _SUBCRITICAL, math.asin(imp.g / j), True
    elif nu_sq == 0.0:
        kind, eta, unitary = _CRITICAL, math.copysign(math.pi / 2, j), True
    else:
        kind, eta, unitary = _SUPERCRITICAL, None, False
    return RotationData(
        j=j, g=imp.g, nu_sq=nu_sq, eta=eta, classification=kind, is_unitary=unitary
    )


def _require_subcritical(imp: ElectricImpurity, j: float) -> float:
    """Returns nu = sqrt(j^2 - g^2) or raises carrying nu_sq."""
    data = classify(imp, j)
    if data.classification != _SUBCRITICAL:
        raise CollapseRegimeError(
            f"no real bound level: coupling g = {imp.g} is {data.classification} "
            f"for j = {j} (nu_sq = {data.nu_sq})",
            nu_sq=data.nu_sq,
        )
    return math.sqrt(data.nu_sq)


def bound_energy(imp: ElectricImpurity, q: QuantumNumbers) -> ScaledEnergy:
    """Closed-form tower energy in units of the gap, 0 < value < 1.

    Independent cross-checks: :func:`eigenvalue_from_matching` (exponent
    quantization of the decaying outer solution) and the matrix / shooting
    oracles.
    """
    validate_quantum_numbers(q, "electric")
    nu = _require_subcritical(imp, q.j)
    ratio = imp.g / (nu + q.n)
    return ScaledEnergy(value=1.0 / math.sqrt(1.0 + ratio * ratio))


def susy_eigenvalue(imp: ElectricImpurity, q: QuantumNumbers) -> float:
    """Squared ladder eigenvalue of the tower state, by the explicit formula.

    Evaluated literally, without simplifying the bracketed denominator; the
    algebraic identity with (eps*j/nu)^2 - 1 is what the dual-route tests
    verify.  The ground state n = 0 gives exactly 0 (it is annihilated).
    """
    validate_quantum_numbers(q, "electric")
    nu = _require_subcritical(imp, q.j)
    n = float(q.n)
    g = imp.g
    num = g * g * ((nu + n) ** 2 - nu * nu)
    den = ((nu + 0.5 * n) ** 2 - 0.25 * n * n) ** 2 + (g * nu) ** 2
    return num / den


def superpotential(imp: ElectricImpurity, q: QuantumNumbers) -> RadialSuperpotential:
    """W = nu/r - g*eps/nu for the tower anchored at radial index n.

    Past critical coupling nu^2 < 0 is stored signed and the constant term
    is built from the reference energy eps_ref = 1 (the gap edge), giving
    the complex-flagged form used by the hermiticity diagnostics.
    """
    validate_quantum_numbers(q, "electric")
    j = q.j
    nu_sq = j * j - imp.g * imp.g
    if nu_sq > 0.0:
        nu = math.sqrt(nu_sq)
        eps = bound_energy(imp, q).value
        return RadialSuperpotential(a_sq=nu_sq, b_real=imp.g * eps / nu)
    if nu_sq == 0.0:
        raise ValueError(
            f"critical coupling g = {imp.g} = |j|: the 1/r term of the "
            "superpotential vanishes and its constant term diverges"
        )
    alpha = math.sqrt(-nu_sq)
    # b = g * eps_ref / (i alpha) = -i g / alpha at the gap-edge reference
    return RadialSuperpotential(a_sq=nu_sq, b_real=0.0, b_imag=-imp.g / alpha)


def matching_inner_ratio(imp: ElectricImpurity, j: float) -> float:
    """Spinor component ratio of the regularized inner solution at the edge.

    Inside a regulated impurity the components are Bessel functions of
    orders j -+ 1/2 evaluated at the coupling; the ratio fixes the matching
    condition for the outer tail.  Requires j > 0 and subcritical coupling;
    raises :class:`ResonantRegulatorError` when the denominator order sits
    on a Bessel zero.
    """
    j = _check_half_integer(j)
    if j <= 0.0:
        raise ValueError(f"inner matching is defined for j > 0, got {j}")
    _require_subcritical(imp, j)
    num = bessel_j(j + 0.5, imp.g)
    den = bessel_j(j - 0.5, imp.g)
    if abs(den) < 1e-12 * max(1.0, abs(num)):
        raise ResonantRegulatorError(
            f"resonant regulator: J_(j-1/2) vanishes at g = {imp.g} for j = {j}"
        )
    return num / den


def eigenvalue_from_matching(
    imp: ElectricImpurity, j: float, n: int, *, tol: float = 1e-15
) -> ScaledEnergy:
    """Tower energy from the exponent quantization g*eps/omega = nu + n.

    Solved by bisection in eps on (0, 1); omega = sqrt(1 - eps^2).  This is
    the decaying-tail route and never inverts the closed-form expression,
    so it can disagree with :func:`bound_energy` only through the root find.
    """
    j = _check_half_integer(j)
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"radial index must be a non-negative integer, got {n!r}")
    nu = _require_subcritical(imp, j)
    target = nu + n

    def f(eps: float) -> float:
        return imp.g * eps / math.sqrt(1.0 - eps * eps) - target

    lo, hi = 1e-300, 1.0 - 1e-16
    if f(lo) >= 0.0:
        raise ValueError("matching function has no root in (0, 1)")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * hi:
            break
    return ScaledEnergy(value=0.5 * (lo + hi))
