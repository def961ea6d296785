"""Dense complex linear-algebra kernel for desk-scale matrices (N <= ~256).

Thin layer over LAPACK (through numpy/scipy) exposing exactly what the rest
of the toolkit needs: adjoints, eigensystems with biorthogonalized
left/right vectors, a matrix exponential that is valid on defective input,
and condition numbers. IEEE double precision throughout; real input stays
real internally (the real LAPACK drivers are noticeably more accurate at
eigenvalue coalescences), results are returned as complex128.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, OverflowRisk, ValidationError

#: expm meets its ~1e-12 relative accuracy contract up to this spectral norm.
EXPM_SAFE_NORM = 1.0e3

#: default relative residual tolerance for eigensolves
DEFAULT_EIG_TOL = 1.0e-10

_TINY = np.finfo(float).tiny


def as_matrix(m) -> np.ndarray:
    """Validate a square, finite matrix and return it as float64 or complex128."""
    a = np.asarray(m)
    if np.iscomplexobj(a):
        a = a.astype(np.complex128, copy=False)
    else:
        a = a.astype(np.float64, copy=False)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix entries must be finite")
    return a


def adjoint(m) -> np.ndarray:
    """Conjugate transpose. Exact: adjoint(adjoint(M)) == M entrywise."""
    return as_matrix(m).conj().T


def matrix_norm(m) -> float:
    """Spectral norm, the reference scale for all relative tolerances."""
    return float(np.linalg.norm(m, 2))


def _sort_order(w: np.ndarray) -> np.ndarray:
    # descending real part, ties broken by descending imaginary part
    return np.lexsort((-w.imag, -w.real))


def eigvals_sorted(m) -> np.ndarray:
    """Eigenvalues only, in the canonical (Re desc, Im desc) order."""
    w = np.linalg.eigvals(as_matrix(m))
    return w[_sort_order(w)].astype(np.complex128, copy=False)


@dataclass(frozen=True)
class EigenSystem:
    """Spectral data of a generally non-Hermitian matrix.

    ``right_vectors`` holds unit-norm eigenvectors in its columns, ordered
    like ``eigenvalues`` (Re desc, ties Im desc). ``left_vectors`` holds row
    vectors <phi_m| rescaled against the right set, so that for
    diagonalizable input ``left_vectors @ right_vectors ~ I`` and
    ``right_vectors @ diag(eigenvalues) @ left_vectors ~ M``. For defective
    input the rescaling blows up or falls back to a pseudoinverse; the
    right-vector residual is reported either way.
    """

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    residual: float


def eig(m, tol: float = DEFAULT_EIG_TOL) -> EigenSystem:
    """Full eigensystem with biorthogonalized left/right vectors.

    The residual is max_n ||M v_n - w_n v_n|| / ||M||; ConvergenceFailure is
    raised if it cannot reach ``tol`` (a signal to fall back to defectiveness
    analysis rather than trust the decomposition).
    """
    a = as_matrix(m)
    try:
        w, vl, vr = scipy.linalg.eig(a, left=True, right=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    order = _sort_order(w)
    w = w[order].astype(np.complex128, copy=False)
    vr = vr[:, order].astype(np.complex128, copy=False)
    vl = vl[:, order].astype(np.complex128, copy=False)
    vr = vr / np.linalg.norm(vr, axis=0)
    vl = vl / np.linalg.norm(vl, axis=0)

    scale = max(matrix_norm(a), _TINY)
    residual = float(np.max(np.linalg.norm(a @ vr - vr * w, axis=0)) / scale)
    if residual > tol:
        raise ConvergenceFailure(
            f"eigensolve residual {residual:.3e} exceeds tol {tol:.3e}"
        )

    # Rescale the left set against the right one. The overlap matrix is
    # block diagonal over eigenvalue clusters, so this also handles
    # degenerate-but-diagonalizable input; for (near-)defective input it is
    # (near-)singular and the left vectors legitimately blow up.
    overlap = vl.conj().T @ vr
    try:
        left = np.linalg.solve(overlap, vl.conj().T)
    except np.linalg.LinAlgError:
        left = np.linalg.pinv(overlap) @ vl.conj().T
    return EigenSystem(w, vr, left, residual)


def expm(m) -> np.ndarray:
    """Matrix exponential e^M, correct for defective M.

    Scaling-and-squaring with a fixed-order rational (Pade) approximant, so
    no diagonalizability is assumed. Relative accuracy ~1e-12 is guaranteed
    only for matrix_norm(M) <= EXPM_SAFE_NORM; beyond that OverflowRisk is
    raised instead of returning silently degraded output.
    """
    a = as_matrix(m)
    nrm = matrix_norm(a)
    if nrm > EXPM_SAFE_NORM:
        raise OverflowRisk(
            f"matrix norm {nrm:.3e} exceeds safe range {EXPM_SAFE_NORM:.0e}"
        )
    return scipy.linalg.expm(a)


def condition_number(m) -> float:
    """sigma_max / sigma_min, or inf when the matrix is numerically singular."""
    a = as_matrix(m)
    s = np.linalg.svd(a, compute_uv=False)
    floor = s[0] * np.finfo(float).eps * a.shape[0]
    if s[-1] <= floor:
        return float("inf")
    return float(s[0] / s[-1])
