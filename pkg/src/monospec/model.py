"""Physical parameters, dimensionless units, and quantum-number validation.

Internal unit system: lengths in units of n_g*lambda_bar, energies in units
of 1/(n_g*lambda_bar), with v_F*hbar = 1.  All other modules work purely in
these dimensionless variables; conversion happens only at the I/O boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "MediumParams",
    "QuantumNumbers",
    "ScaledEnergy",
    "to_dimensionless",
    "from_dimensionless",
    "validate_quantum_numbers",
]

_DEFAULT_INVERSE_INDEX = 300.0


@dataclass(frozen=True)
class MediumParams:
    """Material constants of the host medium.

    Attributes
    ----------
    n_g : float
        Dimensionless inverse refractive index c/v_F.
    lambda_bar : float
        Reduced Compton wavelength (length units).
    phi_b : float
        Reduced flux quantum (flux units).
    """

    n_g: float = _DEFAULT_INVERSE_INDEX
    lambda_bar: float = 1.0
    phi_b: float = 1.0

    def __post_init__(self) -> None:
        for name in ("n_g", "lambda_bar", "phi_b"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")

    @property
    def length_scale(self) -> float:
        """Internal length unit n_g * lambda_bar."""
        return self.n_g * self.lambda_bar

    @property
    def energy_scale(self) -> float:
        """Internal energy unit 1/(n_g * lambda_bar), with v_F*hbar = 1."""
        return 1.0 / self.length_scale


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """Angular and radial quantum numbers of a bound state.

    The half-integer angular number j is stored doubled (``two_j``) so that
    half-integer invariants are exact integer checks, never float equality.

    Attributes
    ----------
    two_j : int
        Twice the total angular quantum number; odd for admissible states.
    n : int
        Radial index (n >= 0; case-specific floor enforced by
        :func:`validate_quantum_numbers`).
    """

    two_j: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.two_j, int) or isinstance(self.two_j, bool):
            raise ValueError(f"two_j must be an int, got {self.two_j!r}")
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"n must be an int, got {self.n!r}")
        if self.n < 0:
            raise ValueError(f"radial index must be non-negative, got n={self.n}")

    @property
    def j(self) -> float:
        return self.two_j / 2.0

    @classmethod
    def from_j(cls, j: float, n: int) -> "QuantumNumbers":
        """Build from a float j; j must be exactly representable as k/2."""
        two_j = round(2 * j)
        if two_j != 2 * j:
            raise ValueError(f"j={j!r} is not a half-integer")
        return cls(two_j=int(two_j), n=n)


@dataclass(frozen=True)
class ScaledEnergy:
    """A dimensionless energy in internal units.

    Attributes
    ----------
    value : float
        Scaled energy (real part).
    is_real : bool
        False only for supercritical diagnostics.
    imaginary_part : float
        Nonzero only when ``is_real`` is false.
    note : str
        Optional annotation (e.g. "gap-edge state").
    """

    value: float
    is_real: bool = True
    imaginary_part: float = 0.0
    note: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError(f"energy value must be finite, got {self.value!r}")
        if self.is_real and self.imaginary_part != 0.0:
            raise ValueError("is_real=True requires imaginary_part == 0")


def to_dimensionless(energy: float, medium: MediumParams) -> ScaledEnergy:
    """Convert a physical energy to the internal dimensionless scale.

    The scaled value is energy * n_g * lambda_bar (with v_F*hbar = 1), so an
    input equal to the gap scale 1/(n_g*lambda_bar) maps to exactly 1.
    """
    if not (isinstance(energy, (int, float)) and math.isfinite(energy)):
        raise ValueError(f"energy must be finite, got {energy!r}")
    return ScaledEnergy(value=float(energy) * medium.length_scale)


def from_dimensionless(scaled: ScaledEnergy, medium: MediumParams) -> float:
    """Inverse of :func:`to_dimensionless`; round-trips to machine precision."""
    if not scaled.is_real:
        raise ValueError("cannot convert a non-real diagnostic energy to physical units")
    return scaled.value / medium.length_scale


def validate_quantum_numbers(q: QuantumNumbers, case: str) -> QuantumNumbers:
    """Check case-specific admissibility; return ``q`` unchanged if valid.

    Electric case: n >= 0 for j > 0, n >= 1 for j < 0.
    Magnetic case: j > 0 and the radial index (here called n-breve) >= 1;
    the n-breve = 0 state is excluded because it would sit exactly at the
    quantization-condition pole.

    Raises
    ------
    ValueError
        "not half-integer" when 2j is even; "invalid radial index" for a
        disallowed (n, sign j) combination; "unknown case" otherwise.
    """
    if case not in ("electric", "magnetic"):
        raise ValueError(f"unknown case {case!r}; expected 'electric' or 'magnetic'")
    if q.two_j % 2 == 0:
        raise ValueError(f"not half-integer: 2j={q.two_j} is even (j={q.j})")
    if case == "electric":
        if q.two_j < 0 and q.n < 1:
            raise ValueError(
                f"invalid radial index: electric j={q.j} < 0 requires n >= 1, got n={q.n}"
            )
    else:
        if q.two_j <= 0:
            raise ValueError(f"invalid radial index: magnetic sector requires j > 0, got j={q.j}")
        if q.n < 1:
            raise ValueError(
                "invalid radial index: magnetic sector requires n-breve >= 1 "
                f"(n-breve=0 sits on the quantization pole), got {q.n}"
            )
    return q
