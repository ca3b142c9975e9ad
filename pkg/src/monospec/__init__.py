"""Bound-state spectra of planar Dirac quasiparticles around pointlike
impurities, organized around the supersymmetric factorization of the radial
problem.

Quick tour::

    from monospec import ElectricImpurity, QuantumNumbers, bound_energy

    imp = ElectricImpurity(g=0.3)
    bound_energy(imp, QuantumNumbers(two_j=1, n=0)).value   # 0.8

The closed forms live in :mod:`monospec.electric` and
:mod:`monospec.magnetic`; :mod:`monospec.susy` holds the ladder
factorization and its self-checks; :mod:`monospec.oracle` provides the
independent grid and shooting solvers used to certify everything.
"""

from . import kernels
from ._radial import RadialGrid
from .electric import (
    CollapseRegimeError,
    ElectricImpurity,
    ResonantRegulatorError,
    RotationData,
    bound_energy,
    classify,
    eigenvalue_from_matching,
    matching_inner_ratio,
    susy_eigenvalue,
)
from .magnetic import (
    MagneticImpurity,
    RealityAuditReport,
    bound_energy_gapped,
    bound_energy_massless,
    spectrum_reality_audit,
)
from .model import (
    MediumParams,
    QuantumNumbers,
    ScaledEnergy,
    from_dimensionless,
    to_dimensionless,
    validate_quantum_numbers,
)
from .oracle import (
    EigenSolveResult,
    RefineTask,
    matrix_bound_energy,
    matrix_magnetic_level,
    refine_until,
    schrodinger_eigen,
    shoot_first_order,
)
from .specfun import (
    GammaPoleError,
    LogarithmicCaseError,
    WhittakerParams,
    bessel_j,
    gamma_fn,
    spherical_bessel_j,
    tricomi_u,
    whittaker_small_x,
    whittaker_w,
)
from .susy import (
    BidiagonalOperator,
    GridOperator,
    IsospectralityReport,
    PartnerPotentials,
    RadialSuperpotential,
    SusyAlgebraReport,
    hermiticity_defect,
    isospectrality_check,
    ladder_eigenvalues,
    ladder_matrices,
    ladder_zero_mode,
    partner_potentials,
    susy_algebra_check,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    "kernels",
    # model
    "MediumParams",
    "QuantumNumbers",
    "ScaledEnergy",
    "to_dimensionless",
    "from_dimensionless",
    "validate_quantum_numbers",
    # special functions
    "GammaPoleError",
    "LogarithmicCaseError",
    "WhittakerParams",
    "gamma_fn",
    "bessel_j",
    "spherical_bessel_j",
    "tricomi_u",
    "whittaker_w",
    "whittaker_small_x",
    # factorization
    "RadialSuperpotential",
    "PartnerPotentials",
    "GridOperator",
    "BidiagonalOperator",
    "SusyAlgebraReport",
    "IsospectralityReport",
    "partner_potentials",
    "ladder_matrices",
    "ladder_eigenvalues",
    "ladder_zero_mode",
    "susy_algebra_check",
    "isospectrality_check",
    "hermiticity_defect",
    # charged impurity
    "ElectricImpurity",
    "RotationData",
    "CollapseRegimeError",
    "ResonantRegulatorError",
    "classify",
    "bound_energy",
    "susy_eigenvalue",
    "matching_inner_ratio",
    "eigenvalue_from_matching",
    # monopole impurity
    "MagneticImpurity",
    "RealityAuditReport",
    "bound_energy_gapped",
    "bound_energy_massless",
    "spectrum_reality_audit",
    # oracles
    "RadialGrid",
    "EigenSolveResult",
    "RefineTask",
    "schrodinger_eigen",
    "shoot_first_order",
    "refine_until",
    "matrix_bound_energy",
    "matrix_magnetic_level",
]
