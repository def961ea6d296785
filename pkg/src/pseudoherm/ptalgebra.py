"""Involutions, pseudo-Hermiticity, indefinite inner products, and the
two-by-two toy Hamiltonians.

The parity/time-reversal symmetry of every model here is used in its
algebraic form H = P H^dagger P for a Hermitian involution P; no separate
antilinear operator is represented.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ValidationError
from .linalg import adjoint, as_matrix, matrix_norm

HERMITIAN_PLUS = "hermitian_plus"
PT_MINUS = "pt_minus"

_INVOLUTION_TOL = 1.0e-14
_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class Involution:
    """Hermitian matrix P with P @ P = I, the 'parity' of the models."""

    matrix: np.ndarray

    def __post_init__(self):
        p = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", p)
        scale = max(matrix_norm(p), 1.0)
        if matrix_norm(p - p.conj().T) > _INVOLUTION_TOL * scale:
            raise ValidationError("involution must be Hermitian")
        if matrix_norm(p @ p - np.eye(p.shape[0])) > _INVOLUTION_TOL * scale * scale:
            raise ValidationError("involution must square to the identity")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, n: int) -> "Involution":
        return cls(np.eye(n))

    @classmethod
    def from_signs(cls, signs) -> "Involution":
        """Diagonal involution diag(s_1, ..., s_N), s_n = +-1."""
        return cls(np.diag(np.asarray(signs, dtype=float)))


def sigma3() -> Involution:
    """diag(1, -1): the parity of the 2x2 toys and of the free FV blocks."""
    return Involution(np.diag([1.0, -1.0]))


def _as_involution(p) -> Involution:
    return p if isinstance(p, Involution) else Involution(p)


@dataclass(frozen=True)
class ToyParams:
    """Parameters of the 2x2 toy models: diagonal +-a, off-diagonal b.

    sign selects the Hermitian variant [[a, b], [b, -a]] or its
    pseudo-Hermitian partner [[a, b], [-b, -a]].
    """

    a: float
    b: float
    sign: str

    def __post_init__(self):
        if self.sign not in (HERMITIAN_PLUS, PT_MINUS):
            raise ValidationError(f"unknown toy variant {self.sign!r}")
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise ValidationError("a and b must be finite")


def toy_hamiltonian(params: ToyParams) -> np.ndarray:
    """Real 2x2 matrix [[a, b], [+-b, -a]] per the chosen variant."""
    a, b = float(params.a), float(params.b)
    lower = b if params.sign == HERMITIAN_PLUS else -b
    return np.array([[a, b], [lower, -a]])


def is_pseudo_hermitian(h, p, tol: float = 1.0e-12):
    """Test H = P H^dagger P; returns (verdict, relative residual).

    The residual is ||H - P H^dagger P|| / ||H|| and is reported whether or
    not it passes.
    """
    a = as_matrix(h)
    p = _as_involution(p)
    if p.dim != a.shape[0]:
        raise DimensionMismatch(
            f"involution dim {p.dim} vs matrix dim {a.shape[0]}"
        )
    scale = max(matrix_norm(a), _TINY)
    residual = float(matrix_norm(a - p.matrix @ adjoint(a) @ p.matrix) / scale)
    return residual <= tol, residual


def pseudo_inner(p, x, y) -> complex:
    """<x|P|y>, conjugate-linear in x. Indefinite: <x|P|x> can be <= 0."""
    p = _as_involution(p)
    xv = np.asarray(x, dtype=complex).ravel()
    yv = np.asarray(y, dtype=complex).ravel()
    if xv.size != p.dim or yv.size != p.dim:
        raise DimensionMismatch(
            f"vectors of size {xv.size}, {yv.size} vs involution dim {p.dim}"
        )
    return complex(xv.conj() @ (p.matrix @ yv))


def pseudo_norm(p, x) -> complex:
    """<x|P|x>; real up to roundoff, of either sign (the conserved 'charge')."""
    return pseudo_inner(p, x, x)


def random_pseudo_hermitian(n: int, p, seed: int) -> np.ndarray:
    """Seeded random H = B + P B^dagger P.

    The construction surjects onto the P-pseudo-Hermitian class and is
    verifiable in one line with is_pseudo_hermitian. Deterministic for a
    fixed seed. With P = I it collapses to B + B^dagger, i.e. Hermitian.
    """
    p = _as_involution(p)
    if p.dim != n:
        raise DimensionMismatch(f"involution dim {p.dim} vs requested n {n}")
    rng = np.random.default_rng(seed)
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return b + p.matrix @ adjoint(b) @ p.matrix
