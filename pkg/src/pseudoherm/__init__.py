"""Numerics for pseudo-Hermitian quantum mechanics.

Dense-matrix tooling for Hamiltonians H = P H^dagger P: three-regime
spectral classification with exceptional-point detection, metric-operator
construction with its quasi-parity sign freedom and boundary singularity,
pseudo-unitary time evolution, and the free two-component relativistic
(Feshbach-Villars form) dynamics on a momentum grid.
"""

from .errors import (
    BrokenPhase,
    ConvergenceFailure,
    DimensionError,
    DimensionMismatch,
    GridMismatch,
    NearDefective,
    NoBracket,
    NotPositiveDefinite,
    NumericalError,
    OverflowRisk,
    ParseError,
    PseudohermError,
    StepRejected,
    ValidationError,
)
from .evolution import Trajectory, check_pseudounitarity, evolve, propagator
from .fv import (
    FvEvolution,
    FvState,
    MomentumGrid,
    charge,
    dispersion,
    fv_block,
    fv_evolve,
    fv_to_kg,
    kg_consistency,
    kg_to_fv,
    two_component_norm,
)
from .io import parse_matrix_file, write_matrix_file
from .linalg import (
    EXPM_SAFE_NORM,
    EigenSystem,
    adjoint,
    as_matrix,
    condition_number,
    eig,
    eigvals_sorted,
    expm,
    matrix_norm,
)
from .metric import (
    HermitizationReport,
    MetricOperator,
    ProfilePoint,
    build_metric,
    metric_singularity_profile,
    verify_hermitization,
)
from .ptalgebra import (
    HERMITIAN_PLUS,
    PT_MINUS,
    Involution,
    ToyParams,
    is_pseudo_hermitian,
    pseudo_inner,
    pseudo_norm,
    random_pseudo_hermitian,
    sigma3,
    toy_hamiltonian,
)
from .spectral import (
    ALL_REAL,
    CONJUGATE_PAIRS,
    EXCEPTIONAL,
    PhasePoint,
    SpectrumReport,
    SweepResult,
    classify,
    locate_exceptional,
    sweep,
    toy_energies,
)

__version__ = "0.1.0"
