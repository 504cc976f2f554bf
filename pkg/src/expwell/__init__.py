"""expwell: exact bound states of the bottomless exponential potential well

    V(y) = V0 / sqrt(1 - exp(-y/delta)) - V0,   V0 < 0,

plus level-count diagnostics, harmonic-generation feasibility thresholds,
an independent shooting-method oracle, and a harness that demonstrates
numerically why a family of claimed Hermite/Kummer closed-form solutions
for this well fails.
"""

from .errors import (
    DivisionDegenerate,
    DomainError,
    ExpwellError,
    IntegrationFailure,
    NoConvergence,
    NotAnEigenvalue,
    NumericalBreakdown,
    ParamMismatch,
    PoleInParameter,
    QuadratureFailure,
    ScanIncomplete,
    TooFewLevels,
)
from .model import (
    HeunParams,
    PhysParams,
    ResidualReport,
    bargmann_integral,
    calogero_constant,
    calogero_integral,
    chadan_estimate,
    generation_threshold,
    heun_params,
    inverse_map_y,
    map_x,
    potential,
    schrodinger_residual,
)
from .oracle import (
    ShootingConfig,
    eigenfunction,
    mismatch,
    refine_eigenvalue,
    shoot_eigenvalues,
)
from .refute import (
    RefuteConfig,
    RefuteReport,
    WrongSolutionParams,
    heun_residual,
    refute_report,
    wrong_energy,
    wrong_psi,
    wrong_u,
)
from .specfun import SeriesResult, clausen_3f2, gauss_2f1, hermite_fn, kummer_1f1
from .spectrum import (
    LevelSet,
    ScanConfig,
    SpectralParams,
    find_levels,
    origin_amplitude,
    s3f2_of_e,
    s_of_e,
    spectral_params,
)
from .wavefunc import (
    BoundState,
    SweepTable,
    build_states,
    energy_intervals,
    matrix_element,
    normalize,
    overlap,
    psi_raw,
    sweep_v0,
)

__version__ = "0.1.0"

__all__ = [
    "BoundState",
    "DivisionDegenerate",
    "DomainError",
    "ExpwellError",
    "HeunParams",
    "IntegrationFailure",
    "LevelSet",
    "NoConvergence",
    "NotAnEigenvalue",
    "NumericalBreakdown",
    "ParamMismatch",
    "PhysParams",
    "PoleInParameter",
    "QuadratureFailure",
    "RefuteConfig",
    "RefuteReport",
    "ResidualReport",
    "ScanConfig",
    "ScanIncomplete",
    "SeriesResult",
    "ShootingConfig",
    "SpectralParams",
    "SweepTable",
    "TooFewLevels",
    "WrongSolutionParams",
    "bargmann_integral",
    "build_states",
    "calogero_constant",
    "calogero_integral",
    "chadan_estimate",
    "clausen_3f2",
    "eigenfunction",
    "energy_intervals",
    "find_levels",
    "gauss_2f1",
    "generation_threshold",
    "hermite_fn",
    "heun_params",
    "heun_residual",
    "inverse_map_y",
    "kummer_1f1",
    "map_x",
    "matrix_element",
    "mismatch",
    "normalize",
    "origin_amplitude",
    "overlap",
    "potential",
    "psi_raw",
    "refine_eigenvalue",
    "refute_report",
    "s3f2_of_e",
    "s_of_e",
    "schrodinger_residual",
    "shoot_eigenvalues",
    "spectral_params",
    "sweep_v0",
    "wrong_energy",
    "wrong_psi",
    "wrong_u",
]
