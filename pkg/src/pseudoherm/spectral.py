"""Spectral-regime classification and toy-model phase structure.

Three regimes: all-real spectrum, complex-conjugate pairs, and the
exceptional boundary where eigenvalues and eigenvectors coalesce and the
matrix carries a Jordan block. Includes the closed-form toy spectrum,
parameter sweeps, and bisection onto the regime boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, NoBracket, ValidationError
from .linalg import as_matrix, eig, eigvals_sorted, matrix_norm
from .ptalgebra import HERMITIAN_PLUS, PT_MINUS, ToyParams, toy_hamiltonian

ALL_REAL = "AllReal"
CONJUGATE_PAIRS = "ConjugatePairs"
EXCEPTIONAL = "Exceptional"

#: imaginary-part cut, relative to the spectral radius
DEFAULT_TOL_IMAG = 1.0e-9
#: conjugate-pair matching cut, relative to the matrix norm
DEFAULT_TOL_PAIR = 1.0e-9
#: eigenvector-coalescence cut (radians); also scales eigenvalue clustering
DEFAULT_TOL_DEFECT = 1.0e-6

_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class SpectrumReport:
    """Classified spectrum.

    ``pairing`` lists index pairs (i, j) with lambda_i ~ conj(lambda_j) when
    the phase is ConjugatePairs (real eigenvalues of a mixed spectrum are
    their own partners and are not listed). ``defect`` lists
    (eigenvalue, geometric multiplicity, algebraic multiplicity) for each
    coalesced cluster. ``min_vector_angle`` is the smallest principal angle
    between distinct right eigenvectors; its collapse is the defectiveness
    diagnostic. ``flags`` carries diagnostics such as unpaired eigenvalues
    or a downgraded eigensolve.
    """

    eigenvalues: np.ndarray
    phase: str
    pairing: tuple = ()
    defect: tuple = ()
    min_vector_angle: float = np.pi / 2
    flags: tuple = ()


def toy_energies(params: ToyParams):
    """Closed-form spectrum (-r, +r) with r = sqrt(a^2 +- b^2).

    The sign under the radical follows the toy variant. For a negative
    radicand the principal branch is used: the second root has positive
    imaginary part, the first is its conjugate.
    """
    s = 1.0 if params.sign == HERMITIAN_PLUS else -1.0
    rad = complex(params.a * params.a + s * params.b * params.b)
    root = np.sqrt(rad)
    return (-root, root)


def _cluster_eigenvalues(w: np.ndarray, tol: float) -> list:
    """Transitively chain eigenvalues closer than tol; returns index groups."""
    n = w.size
    labels = list(range(n))

    def find(i):
        while labels[i] != i:
            labels[i] = labels[labels[i]]
            i = labels[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(w[i] - w[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    labels[rj] = ri
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def classify(
    h,
    tol_imag: float = DEFAULT_TOL_IMAG,
    tol_pair: float = DEFAULT_TOL_PAIR,
    tol_defect: float = DEFAULT_TOL_DEFECT,
) -> SpectrumReport:
    """Assign exactly one of the three spectral phases.

    Defectiveness is checked first and wins: in a tol-neighbourhood of an
    eigenvalue coalescence both the real and the conjugate-pair labels are
    numerically meaningless, while the eigenvector collapse is robustly
    visible. It is diagnosed from eigenvalue clustering combined with rank
    loss of the clustered eigenvectors (equivalently, principal angles
    below ``tol_defect``), not from a rank-revealing factorization.

    A ConvergenceFailure from the eigensolve is downgraded to phase
    Exceptional with a diagnostic flag rather than raised.
    """
    a = as_matrix(h)
    n = a.shape[0]
    flags = []
    try:
        system = eig(a)
        w, vr = system.eigenvalues, system.right_vectors
    except ConvergenceFailure:
        w = eigvals_sorted(a)
        return SpectrumReport(
            w, EXCEPTIONAL, (), (), 0.0, ("convergence_failure",)
        )

    if n > 1:
        gram = np.abs(vr.conj().T @ vr)
        np.fill_diagonal(gram, 0.0)
        min_angle = float(np.arccos(np.clip(gram.max(), 0.0, 1.0)))
    else:
        min_angle = np.pi / 2

    norm_scale = max(matrix_norm(a), _TINY)
    defect = []
    for group in _cluster_eigenvalues(w, tol_defect * norm_scale):
        if len(group) < 2:
            continue
        svals = np.linalg.svd(vr[:, group], compute_uv=False)
        geometric = int(np.sum(svals > svals[0] * tol_defect))
        if geometric < len(group):
            defect.append((complex(w[group].mean()), geometric, len(group)))
    if defect:
        return SpectrumReport(w, EXCEPTIONAL, (), tuple(defect), min_angle, tuple(flags))

    radius = float(np.abs(w).max())
    if np.abs(w.imag).max() <= tol_imag * radius:
        return SpectrumReport(w, ALL_REAL, (), (), min_angle, tuple(flags))

    # conjugate-pair matching among the non-real eigenvalues
    nonreal = [i for i in range(n) if abs(w[i].imag) > tol_imag * radius]
    unmatched = set(nonreal)
    pairing = []
    for i in nonreal:
        if i not in unmatched:
            continue
        unmatched.discard(i)
        best, best_dist = None, np.inf
        for j in unmatched:
            dist = abs(w[i] - w[j].conjugate())
            if dist < best_dist:
                best, best_dist = j, dist
        if best is not None and best_dist <= tol_pair * norm_scale:
            unmatched.discard(best)
            pairing.append((i, best))
        else:
            flags.append(f"unpaired_eigenvalue_{i}")
    return SpectrumReport(
        w, CONJUGATE_PAIRS, tuple(pairing), (), min_angle, tuple(flags)
    )


@dataclass(frozen=True)
class PhasePoint:
    """One point of a phase sweep; gap = a^2 - b^2 signs the toy regimes."""

    a: float
    b: float
    phase: str
    gap: float
    eigenvalues: tuple


@dataclass(frozen=True)
class SweepResult:
    points: tuple
    #: (b_lo, b_hi) grid pairs bracketing each phase change
    transitions: tuple


def sweep(
    a: float,
    b_grid,
    tol_imag: float = DEFAULT_TOL_IMAG,
    tol_pair: float = DEFAULT_TOL_PAIR,
    tol_defect: float = DEFAULT_TOL_DEFECT,
) -> SweepResult:
    """Classify toy(a, b) along a strictly monotone grid of b values."""
    bs = np.asarray(b_grid, dtype=float)
    if bs.ndim != 1 or bs.size < 1:
        raise ValidationError("b_grid must be a nonempty 1-d sequence")
    diffs = np.diff(bs)
    if bs.size > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
        raise ValidationError("b_grid must be strictly monotone")
    points = []
    for b in bs:
        report = classify(
            toy_hamiltonian(ToyParams(a, float(b), PT_MINUS)),
            tol_imag, tol_pair, tol_defect,
        )
        points.append(PhasePoint(
            float(a), float(b), report.phase,
            float(a) * float(a) - float(b) * float(b),
            tuple(complex(z) for z in report.eigenvalues),
        ))
    transitions = tuple(
        (points[i].b, points[i + 1].b)
        for i in range(len(points) - 1)
        if points[i].phase != points[i + 1].phase
    )
    return SweepResult(tuple(points), transitions)


def _toy_discriminant(a: float, b: float) -> float:
    # tr^2 - 4 det of the pseudo-Hermitian toy matrix, computed from its
    # entries: positive in the all-real regime, negative in the broken one
    h = toy_hamiltonian(ToyParams(a, b, PT_MINUS))
    tr = h[0, 0] + h[1, 1]
    det = h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
    return float(tr * tr - 4.0 * det)


def locate_exceptional(a: float, b_lo: float, b_hi: float, tol_b: float) -> float:
    """Bisect the discriminant sign onto the regime boundary b* (= |a|).

    The endpoints must classify as AllReal on one side and ConjugatePairs
    on the other, otherwise NoBracket is raised.
    """
    if not (np.isfinite(b_lo) and np.isfinite(b_hi) and b_lo < b_hi):
        raise ValidationError("need finite b_lo < b_hi")
    if not (np.isfinite(tol_b) and tol_b > 0):
        raise ValidationError("tol_b must be positive")
    phases = {
        classify(toy_hamiltonian(ToyParams(a, b, PT_MINUS))).phase
        for b in (b_lo, b_hi)
    }
    if phases != {ALL_REAL, CONJUGATE_PAIRS}:
        raise NoBracket(
            f"phases at endpoints are {sorted(phases)}, need one AllReal and "
            "one ConjugatePairs"
        )
    lo, hi = float(b_lo), float(b_hi)
    d_lo = _toy_discriminant(a, lo)
    for _ in range(200):
        if hi - lo <= tol_b:
            break
        mid = 0.5 * (lo + hi)
        d_mid = _toy_discriminant(a, mid)
        if d_mid == 0.0:
            return mid
        if (d_mid > 0) == (d_lo > 0):
            lo, d_lo = mid, d_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
