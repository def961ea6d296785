"""Time evolution with a conserved indefinite pseudo-norm.

Propagators U = exp(-i H dt) of P-pseudo-Hermitian H satisfy
U^dagger P U = P exactly, in every spectral regime and even at the
coalescence point, because P exp(X) P = exp(P X P) holds for any X. Ordinary
norm conservation is lost in the broken regime; the pseudo-norm is what
survives, and the stepping scheme here keeps it sharp: each piecewise-
constant midpoint step is itself exactly pseudo-unitary, so recorded drift
is pure roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, StepRejected, ValidationError
from .linalg import adjoint, as_matrix, eigvals_sorted, expm, matrix_norm
from .ptalgebra import _as_involution, pseudo_norm


@dataclass(frozen=True)
class Trajectory:
    """Sampled evolution record.

    ``pseudo_norms`` holds <psi|P|psi> per step as computed (complex; the
    imaginary part is roundoff for a valid involution). ``energies`` holds
    the instantaneous eigenvalues of H(t_i), canonically sorted.
    """

    times: np.ndarray
    hamiltonians: list
    states: np.ndarray
    pseudo_norms: np.ndarray
    energies: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or t.size < 1 or not np.all(np.diff(t) > 0):
            raise ValidationError("times must be strictly increasing")


def propagator(h, dt: float) -> np.ndarray:
    """U = exp(-i H dt); valid on defective H via the rational expm."""
    if not np.isfinite(dt):
        raise ValidationError("dt must be finite")
    return expm(-1j * float(dt) * as_matrix(h))


def check_pseudounitarity(u, p) -> float:
    """|| U^dagger P U - P || / || P ||."""
    a = as_matrix(u)
    p = _as_involution(p)
    if p.dim != a.shape[0]:
        raise DimensionMismatch(f"involution dim {p.dim} vs matrix {a.shape[0]}")
    return float(
        matrix_norm(adjoint(a) @ p.matrix @ a - p.matrix)
        / matrix_norm(p.matrix)
    )


def evolve(h_of_t, psi0, times, parity) -> Trajectory:
    """Piecewise-constant midpoint stepping of i d/dt psi = H(t) psi.

    psi_{k+1} = exp(-i H(t_k + dt/2) dt) psi_k: second-order accurate in dt
    for smooth H(t), and exactly pseudo-unitary per step whenever the
    sampled H is parity-pseudo-Hermitian. ``h_of_t`` is either a constant
    matrix or a callable t -> matrix sampled at the step midpoints; the
    pseudo-norm is recorded against the fixed involution ``parity`` (not
    against any state-dependent metric, which need not exist in the broken
    regime).
    """
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size < 1 or not np.all(np.isfinite(t)):
        raise ValidationError("times must be a finite 1-d grid")
    if t.size > 1 and not np.all(np.diff(t) > 0):
        raise ValidationError("times must be strictly increasing")
    p = _as_involution(parity)
    psi = np.asarray(psi0, dtype=complex).ravel().copy()
    if psi.size != p.dim:
        raise DimensionMismatch(f"state size {psi.size} vs involution dim {p.dim}")
    if not np.all(np.isfinite(psi)):
        raise ValidationError("initial state must be finite")

    constant = not callable(h_of_t)
    if constant:
        h_const = as_matrix(h_of_t)
        if h_const.shape[0] != psi.size:
            raise DimensionMismatch("Hamiltonian dim does not match the state")
        energies_const = eigvals_sorted(h_const)
        prop_cache = {}

    states = [psi.copy()]
    pnorms = [pseudo_norm(p, psi)]
    hams = [h_const if constant else as_matrix(h_of_t(t[0]))]
    energies = [energies_const if constant else eigvals_sorted(hams[0])]

    # broken-phase runs can legitimately overflow; that surfaces as
    # StepRejected rather than a warning
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(t.size - 1):
            dt = float(t[k + 1] - t[k])
            if constant:
                u = prop_cache.get(dt)
                if u is None:
                    u = propagator(h_const, dt)
                    prop_cache[dt] = u
                h_next = h_const
            else:
                u = propagator(h_of_t(t[k] + 0.5 * dt), dt)
                h_next = as_matrix(h_of_t(t[k + 1]))
            psi = u @ psi
            pn = pseudo_norm(p, psi)
            if not (np.all(np.isfinite(psi)) and np.isfinite(pn)):
                raise StepRejected(f"non-finite state at t = {t[k + 1]!r}")
            states.append(psi.copy())
            pnorms.append(pn)
            hams.append(h_next)
            energies.append(
                energies_const if constant else eigvals_sorted(h_next)
            )

    return Trajectory(
        times=t,
        hamiltonians=hams,
        states=np.asarray(states),
        pseudo_norms=np.asarray(pnorms),
        energies=np.asarray(energies),
    )
