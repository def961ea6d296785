"""Metric operators for unbroken-phase pseudo-Hermitian Hamiltonians.

A Hamiltonian with an all-real spectrum becomes Hermitian under a new
inner product <x|eta|y>; eta is built here from the biorthogonal
eigenbasis, carries one +-1 sign choice per eigenvector (the quasi-parity
freedom), and blows up as the parameters approach an eigenvalue
coalescence, which is what the singularity profile quantifies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BrokenPhase,
    DimensionMismatch,
    NearDefective,
    NotPositiveDefinite,
    ValidationError,
)
from .linalg import adjoint, as_matrix, condition_number, eig, matrix_norm
from .ptalgebra import PT_MINUS, ToyParams, toy_hamiltonian
from .spectral import ALL_REAL, classify

#: above this right-eigenvector condition number a metric is flagged
DEFAULT_DEFECT_CEILING = 1.0e8

_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class MetricOperator:
    """Hermitian eta with eta H = H^dagger eta for the H it was built from.

    ``signs`` records the quasi-parity choice per eigenvector; the all-plus
    choice is positive definite. ``near_defective`` marks metrics computed
    from an eigenbasis whose condition number exceeded the ceiling: still
    returned so singularity profiles can approach the coalescence point,
    but not to be trusted blindly.
    """

    eta: np.ndarray
    signs: tuple
    intertwining_residual: float
    min_eigenvalue: float
    cond: float
    eigvec_cond: float
    near_defective: bool = False


def build_metric(
    h,
    signs,
    tol: float = 1.0e-10,
    defect_ceiling: float = DEFAULT_DEFECT_CEILING,
    strict: bool = False,
) -> MetricOperator:
    """Construct eta = sum_n s_n |phi_n><phi_n| from left eigenvectors.

    Right eigenvectors are taken at unit norm and the left ones rescaled to
    <phi_m|psi_n> = delta_mn; that convention pins eta uniquely for each
    sign vector, and reduces it to the identity whenever H is Hermitian
    (so trace(eta) = N at the decoupled reference point).

    Raises BrokenPhase unless the spectrum classifies as all-real.
    Raises NearDefective if the intertwining residual cannot reach ``tol``
    (the eigenbasis is effectively collapsed), or, with ``strict=True``,
    as soon as the eigenvector condition number exceeds ``defect_ceiling``;
    without ``strict`` that situation is only flagged on the result.
    """
    a = as_matrix(h)
    n = a.shape[0]
    signs = tuple(int(s) for s in signs)
    if len(signs) != n or any(s not in (-1, 1) for s in signs):
        raise ValidationError(f"signs must be {n} values of +-1, got {signs!r}")
    report = classify(a)
    if report.phase != ALL_REAL:
        raise BrokenPhase(f"metric needs an all-real spectrum, got {report.phase}")

    system = eig(a)
    left = system.left_vectors  # rows <phi_m|, already biorthonormalized
    eta = left.conj().T @ (np.asarray(signs, dtype=float)[:, None] * left)
    eta = 0.5 * (eta + eta.conj().T)

    scale = max(matrix_norm(eta) * matrix_norm(a), _TINY)
    residual = float(matrix_norm(eta @ a - adjoint(a) @ eta) / scale)
    eigvec_cond = condition_number(system.right_vectors)
    near = bool(eigvec_cond > defect_ceiling)
    if residual > tol:
        raise NearDefective(
            f"intertwining residual {residual:.3e} exceeds tol {tol:.3e} "
            f"(eigenvector condition number {eigvec_cond:.3e})"
        )
    if strict and near:
        raise NearDefective(
            f"eigenvector condition number {eigvec_cond:.3e} exceeds ceiling "
            f"{defect_ceiling:.3e}"
        )
    evals = np.linalg.eigvalsh(eta)
    return MetricOperator(
        eta=eta,
        signs=signs,
        intertwining_residual=residual,
        min_eigenvalue=float(evals[0]),
        cond=condition_number(eta),
        eigvec_cond=float(eigvec_cond),
        near_defective=near,
    )


@dataclass(frozen=True)
class ProfilePoint:
    b: float
    cond: float
    min_eigenvalue: float
    intertwining_residual: float


def metric_singularity_profile(a: float, b_values, tol: float = 1.0e-10):
    """cond(eta) of the all-plus toy metric as b approaches a.

    The condition number is finite on every unbroken-phase point and grows
    without bound toward the coalescence; build_metric errors (broken phase
    at |b| >= |a|) propagate.
    """
    out = []
    for b in b_values:
        m = build_metric(
            toy_hamiltonian(ToyParams(float(a), float(b), PT_MINUS)),
            (1, 1),
            tol=tol,
        )
        out.append(ProfilePoint(
            float(b), m.cond, m.min_eigenvalue, m.intertwining_residual
        ))
    return out


@dataclass(frozen=True)
class HermitizationReport:
    intertwining_residual: float
    #: plain Hermiticity residual of eta^1/2 H eta^-1/2; None if eta is
    #: not positive definite
    hermiticity_residual: float | None
    positive_definite: bool


def verify_hermitization(h, eta, require_positive: bool = False) -> HermitizationReport:
    """Report how well eta Hermitizes H.

    Always reports ||eta H - H^dagger eta|| / (||eta|| ||H||). When eta is
    positive definite it additionally conjugates H by eta^1/2 and reports
    the ordinary Hermiticity residual of the result; for indefinite eta
    that part is skipped, or NotPositiveDefinite is raised when
    ``require_positive`` demands it.
    """
    a = as_matrix(h)
    e = eta.eta if isinstance(eta, MetricOperator) else as_matrix(eta)
    if e.shape != a.shape:
        raise DimensionMismatch(f"metric shape {e.shape} vs matrix {a.shape}")
    scale = max(matrix_norm(e) * matrix_norm(a), _TINY)
    inter = float(matrix_norm(e @ a - adjoint(a) @ e) / scale)

    evals, vecs = np.linalg.eigh(e)
    positive = bool(evals[0] > abs(evals[-1]) * np.finfo(float).eps * e.shape[0])
    if not positive:
        if require_positive:
            raise NotPositiveDefinite(
                f"metric has minimum eigenvalue {evals[0]:.3e}"
            )
        return HermitizationReport(inter, None, False)
    root = (vecs * np.sqrt(evals)) @ vecs.conj().T
    root_inv = (vecs / np.sqrt(evals)) @ vecs.conj().T
    hmat = root @ a @ root_inv
    herm = float(
        matrix_norm(hmat - adjoint(hmat)) / max(matrix_norm(hmat), _TINY)
    )
    return HermitizationReport(inter, herm, True)
