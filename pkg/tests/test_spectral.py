import numpy as np
import pytest

from pseudoherm import (
    ALL_REAL,
    CONJUGATE_PAIRS,
    EXCEPTIONAL,
    HERMITIAN_PLUS,
    PT_MINUS,
    NoBracket,
    ToyParams,
    ValidationError,
    classify,
    eig,
    locate_exceptional,
    sweep,
    toy_energies,
    toy_hamiltonian,
)


def matched_error(got, want):
    # eigenvalue pairs carry no canonical order once real parts are
    # roundoff-degenerate; compare under the better of the two assignments
    got, want = np.asarray(got), np.asarray(want)
    direct = np.abs(got - want).max()
    swapped = np.abs(got - want[::-1]).max()
    return min(direct, swapped)


def test_toy_energies_examples():
    lo, hi = toy_energies(ToyParams(1.0, 0.5, PT_MINUS))
    # sqrt(0.75) = 0.8660254037844386
    assert abs(lo + 0.8660254037844386) <= 1e-15
    assert abs(hi - 0.8660254037844386) <= 1e-15

    lo, hi = toy_energies(ToyParams(1.0, 1.0, PT_MINUS))
    assert lo == 0 and hi == 0

    lo, hi = toy_energies(ToyParams(3.0, 4.0, HERMITIAN_PLUS))
    assert lo == -5.0 and hi == 5.0


def test_toy_energies_branch_choice():
    # negative radicand: second root on the positive imaginary axis,
    # first root its conjugate; sqrt(3) = 1.7320508075688772
    lo, hi = toy_energies(ToyParams(1.0, 2.0, PT_MINUS))
    assert abs(hi - 1.7320508075688772j) <= 1e-15
    assert abs(lo + 1.7320508075688772j) <= 1e-15


def test_classify_all_real():
    report = classify(toy_hamiltonian(ToyParams(1.0, 0.5, PT_MINUS)))
    assert report.phase == ALL_REAL
    assert matched_error(
        report.eigenvalues, [0.8660254037844386, -0.8660254037844386]
    ) <= 1e-13
    assert report.defect == ()


def test_classify_conjugate_pairs():
    report = classify(toy_hamiltonian(ToyParams(1.0, 2.0, PT_MINUS)))
    assert report.phase == CONJUGATE_PAIRS
    w = sorted(report.eigenvalues, key=lambda z: z.imag)
    assert np.allclose(
        w, [-1.7320508075688772j, 1.7320508075688772j], atol=1e-13
    )
    assert report.pairing == ((0, 1),)
    assert report.flags == ()


def test_classify_exceptional():
    # [[1, 1], [-1, -1]] is nilpotent but nonzero: a double eigenvalue 0
    # with a one-dimensional eigenspace
    report = classify(toy_hamiltonian(ToyParams(1.0, 1.0, PT_MINUS)))
    assert report.phase == EXCEPTIONAL
    assert len(report.defect) == 1
    value, geometric, algebraic = report.defect[0]
    assert abs(value) <= 1e-12
    assert (geometric, algebraic) == (1, 2)
    assert report.min_vector_angle <= 1e-6


def test_classify_precedence_near_coalescence():
    # just off the boundary both labels are numerically meaningless and the
    # eigenvector collapse must win
    for b in (1.0 - 1e-13, 1.0 + 1e-13):
        report = classify(toy_hamiltonian(ToyParams(1.0, b, PT_MINUS)))
        assert report.phase == EXCEPTIONAL
    # a tighter defect cut restores the naive labels
    report = classify(
        toy_hamiltonian(ToyParams(1.0, 1.0 + 1e-13, PT_MINUS)),
        tol_defect=1e-9,
    )
    assert report.phase == CONJUGATE_PAIRS


def test_classify_trichotomy_is_exhaustive():
    rng = np.random.default_rng(0)
    for _ in range(60):
        a, b = rng.uniform(-2, 2, size=2)
        report = classify(toy_hamiltonian(ToyParams(a, b, PT_MINUS)))
        assert report.phase in (ALL_REAL, CONJUGATE_PAIRS, EXCEPTIONAL)


def test_solver_matches_closed_form():
    # invariant: numerical spectrum vs the closed form, relative 1e-12
    rng = np.random.default_rng(1)
    for _ in range(200):
        a, b = rng.uniform(-3, 3, size=2)
        for sign in (PT_MINUS, HERMITIAN_PLUS):
            params = ToyParams(a, b, sign)
            system = eig(toy_hamiltonian(params))
            scale = max(abs(a), abs(b))
            err = matched_error(system.eigenvalues, list(toy_energies(params)))
            assert err <= 1e-12 * scale


def matrix_square_scalar(h):
    # plain IEEE multiply-then-add; BLAS may fuse one product (FMA) and
    # leave ~1e-18 residue where the rounded products cancel exactly
    n = h.shape[0]
    out = np.zeros_like(h)
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                acc += h[i, k] * h[k, j]
            out[i, j] = acc
    return out


def test_nilpotency_at_the_boundary():
    for a in (1.0, 0.3, 2.7, -1.2):
        h = toy_hamiltonian(ToyParams(a, a, PT_MINUS))
        assert np.count_nonzero(matrix_square_scalar(h)) == 0


def test_sweep_example():
    result = sweep(1.0, [0.0, 0.5, 1.0, 1.5, 2.0])
    phases = [p.phase for p in result.points]
    assert phases == [
        ALL_REAL, ALL_REAL, EXCEPTIONAL, CONJUGATE_PAIRS, CONJUGATE_PAIRS
    ]
    assert result.transitions == ((0.5, 1.0), (1.0, 1.5))
    gaps = [p.gap for p in result.points]
    assert gaps == [1.0, 0.75, 0.0, -1.25, -3.0]


def test_sweep_monotone_single_transition_zone():
    # phase order along increasing b is AllReal -> Exceptional ->
    # ConjugatePairs with one transition zone
    rank = {ALL_REAL: 0, EXCEPTIONAL: 1, CONJUGATE_PAIRS: 2}
    result = sweep(1.0, np.linspace(0.0, 2.0, 41))
    ranks = [rank[p.phase] for p in result.points]
    assert all(x <= y for x, y in zip(ranks, ranks[1:]))
    assert 1 <= len(result.transitions) <= 2


def test_sweep_a_zero_is_all_broken():
    result = sweep(0.0, [0.5, 1.0, 2.0])
    assert all(p.phase == CONJUGATE_PAIRS for p in result.points)


def test_sweep_validation():
    assert sweep(1.0, [0.0]).points[0].phase == ALL_REAL
    with pytest.raises(ValidationError):
        sweep(1.0, [])
    with pytest.raises(ValidationError):
        sweep(1.0, [0.0, 1.0, 0.5])


def test_locate_exceptional():
    b_star = locate_exceptional(1.0, 0.5, 2.0, 1e-10)
    assert abs(b_star - 1.0) <= 1e-10
    assert abs(locate_exceptional(2.5, 0.0, 10.0, 1e-8) - 2.5) <= 1e-8
    # the boundary sits at |a|
    assert abs(locate_exceptional(-1.5, 0.5, 3.0, 1e-10) - 1.5) <= 1e-10


def test_locate_exceptional_no_bracket():
    with pytest.raises(NoBracket):
        locate_exceptional(1.0, 0.1, 0.2, 1e-10)
    with pytest.raises(NoBracket):
        locate_exceptional(1.0, 1.5, 2.0, 1e-10)
