"""Command-line front end.

Every command is a pure function of its flags (randomness only enters
through the --seed of a deterministic generator), so re-running a config
writes byte-identical output. Results go to --out (or stdout) in CSV or
JSON; a one-line summary is always printed. Exit codes: 0 success, 2
validation error, 3 numerical failure (the error name goes to stderr).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .errors import NumericalError, ValidationError
from .evolution import evolve
from .fv import (
    FvState,
    MomentumGrid,
    dispersion,
    fv_evolve,
    kg_consistency,
    two_component_norm,
)
from .io import (
    dump_json,
    format_float,
    matrix_to_jsonable,
    parse_matrix_file,
    render_csv,
)
from .linalg import eig
from .metric import build_metric, metric_singularity_profile
from .ptalgebra import (
    HERMITIAN_PLUS,
    PT_MINUS,
    Involution,
    ToyParams,
    sigma3,
    toy_hamiltonian,
)
from .spectral import classify, locate_exceptional, sweep

_TINY = np.finfo(float).tiny


def thread_cap() -> int:
    """Validated PSEUDOHERM_THREADS cap on internal parallelism (0 = auto).

    Evaluation is currently sequential, which satisfies any cap; the value
    is still checked so a misconfigured environment fails loudly.
    """
    raw = os.environ.get("PSEUDOHERM_THREADS")
    if raw is None:
        return 0
    try:
        cap = int(raw)
    except ValueError:
        raise ValidationError(
            f"PSEUDOHERM_THREADS must be an integer, got {raw!r}"
        ) from None
    if cap < 0:
        raise ValidationError("PSEUDOHERM_THREADS must be >= 0")
    return cap


def _parse_complex(text: str) -> complex:
    try:
        return complex(text)
    except ValueError:
        raise ValidationError(f"cannot parse complex number {text!r}") from None


def _parse_complex_list(text: str):
    return [_parse_complex(part) for part in text.split(",")]


def _parse_signs(text: str):
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValidationError(f"cannot parse sign vector {text!r}") from None
    return values


def _pair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _input_matrix(args) -> np.ndarray:
    if getattr(args, "matrix", None):
        return parse_matrix_file(args.matrix)
    if args.a is None or args.b is None:
        raise ValidationError("provide either --matrix or both --a and --b")
    sign = HERMITIAN_PLUS if args.sign == "hermitian-plus" else PT_MINUS
    return toy_hamiltonian(ToyParams(args.a, args.b, sign))


def _deliver(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> None:
    report = classify(_input_matrix(args))
    if args.format == "json":
        payload = dump_json({
            "phase": report.phase,
            "eigenvalues": [_pair(z) for z in report.eigenvalues],
            "pairing": [list(p) for p in report.pairing],
            "defect": [
                _pair(z) + [int(g), int(a)] for z, g, a in report.defect
            ],
            "min_vector_angle": float(report.min_vector_angle),
            "flags": list(report.flags),
        })
    else:
        rows = [
            [str(i), float(z.real), float(z.imag), report.phase]
            for i, z in enumerate(report.eigenvalues)
        ]
        payload = render_csv(["index", "re", "im", "phase"], rows)
    print(report.phase)
    _deliver(args, payload)


def cmd_spectrum(args) -> None:
    system = eig(_input_matrix(args))
    if args.format == "json":
        payload = dump_json({
            "eigenvalues": [_pair(z) for z in system.eigenvalues],
            "residual": float(system.residual),
        })
    else:
        rows = [
            [str(i), float(z.real), float(z.imag)]
            for i, z in enumerate(system.eigenvalues)
        ]
        payload = render_csv(["index", "re", "im"], rows)
    print(f"{system.eigenvalues.size} eigenvalues, residual={system.residual:.3e}")
    _deliver(args, payload)


def cmd_metric(args) -> None:
    h = _input_matrix(args)
    signs = _parse_signs(args.signs) if args.signs else (1,) * h.shape[0]
    m = build_metric(h, signs)
    if args.format == "json":
        payload = dump_json(matrix_to_jsonable(m.eta))
    else:
        rows = [
            [str(i), str(j), float(m.eta[i, j].real), float(m.eta[i, j].imag)]
            for i in range(m.eta.shape[0])
            for j in range(m.eta.shape[1])
        ]
        payload = render_csv(["row", "col", "re", "im"], rows)
    print(
        f"min_eig={format_float(m.min_eigenvalue)} cond={format_float(m.cond)} "
        f"residual={m.intertwining_residual:.3e} near_defective={m.near_defective}"
    )
    _deliver(args, payload)


def cmd_metric_profile(args) -> None:
    bs = np.linspace(args.b_min, args.b_max, args.n)
    points = metric_singularity_profile(args.a, bs)
    if args.format == "json":
        payload = dump_json([
            {
                "b": p.b,
                "cond": p.cond,
                "min_eig": p.min_eigenvalue,
                "residual": p.intertwining_residual,
            }
            for p in points
        ])
    else:
        rows = [
            [p.b, p.cond, p.min_eigenvalue, p.intertwining_residual]
            for p in points
        ]
        payload = render_csv(["b", "cond", "min_eig", "residual"], rows)
    print(
        f"{len(points)} points, cond {points[0].cond:.6g} .. {points[-1].cond:.6g}"
    )
    _deliver(args, payload)


def cmd_sweep(args) -> None:
    result = sweep(args.a, np.linspace(args.b_min, args.b_max, args.n))
    if args.format == "json":
        payload = dump_json({
            "points": [
                {
                    "a": p.a,
                    "b": p.b,
                    "phase": p.phase,
                    "gap": p.gap,
                    "eigenvalues": [_pair(z) for z in p.eigenvalues],
                }
                for p in result.points
            ],
            "transitions": [list(t) for t in result.transitions],
        })
    else:
        rows = [
            [
                p.a, p.b, p.phase,
                float(p.eigenvalues[0].real), float(p.eigenvalues[0].imag),
                float(p.eigenvalues[1].real), float(p.eigenvalues[1].imag),
                p.gap,
            ]
            for p in result.points
        ]
        payload = render_csv(
            ["a", "b", "phase", "re_e1", "im_e1", "re_e2", "im_e2", "gap"],
            rows,
        )
    counts = {}
    for p in result.points:
        counts[p.phase] = counts.get(p.phase, 0) + 1
    summary = " ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    print(f"{summary}; transitions={list(result.transitions)}")
    _deliver(args, payload)


def cmd_locate_ep(args) -> None:
    b_star = locate_exceptional(args.a, args.b_lo, args.b_hi, args.tol)
    if args.format == "json":
        payload = dump_json({"b_star": float(b_star)})
    else:
        payload = render_csv(["b_star"], [[b_star]])
    print(f"b_star={format_float(b_star)}")
    _deliver(args, payload)


def cmd_evolve(args) -> None:
    if args.n_steps < 1:
        raise ValidationError("--n-steps must be >= 1")
    if not args.t_final > 0:
        raise ValidationError("--t-final must be positive")
    sign = HERMITIAN_PLUS if args.sign == "hermitian-plus" else PT_MINUS
    psi0 = _parse_complex_list(args.psi0)
    if len(psi0) != 2:
        raise ValidationError("--psi0 must have two components")
    parity = Involution.identity(2) if args.parity == "identity" else sigma3()
    times = np.linspace(0.0, args.t_final, args.n_steps + 1)
    b0, b1 = args.b0, args.b1 if args.b1 is not None else args.b0

    if b1 == b0:
        h_of_t = toy_hamiltonian(ToyParams(args.a, b0, sign))
    else:
        def h_of_t(t, _a=args.a, _b0=b0, _b1=b1, _tf=args.t_final, _sign=sign):
            return toy_hamiltonian(
                ToyParams(_a, _b0 + (_b1 - _b0) * t / _tf, _sign)
            )

    traj = evolve(h_of_t, psi0, times, parity)
    if args.format == "json":
        payload = dump_json({
            "times": [float(t) for t in traj.times],
            "states": [[_pair(z) for z in row] for row in traj.states],
            "pseudo_norms": [_pair(z) for z in traj.pseudo_norms],
            "energies": [[_pair(z) for z in row] for row in traj.energies],
        })
    else:
        rows = []
        for i, t in enumerate(traj.times):
            s = traj.states[i]
            pn = traj.pseudo_norms[i]
            e = traj.energies[i]
            rows.append([
                float(t),
                float(s[0].real), float(s[0].imag),
                float(s[1].real), float(s[1].imag),
                float(pn.real), float(pn.imag),
                float(e[0].real), float(e[0].imag),
                float(e[1].real), float(e[1].imag),
            ])
        payload = render_csv(
            [
                "t", "re_psi_0", "im_psi_0", "re_psi_1", "im_psi_1",
                "re_pseudo_norm", "im_pseudo_norm",
                "re_e1", "im_e1", "re_e2", "im_e2",
            ],
            rows,
        )
    pn = traj.pseudo_norms
    drift = float(np.abs(pn - pn[0]).max() / max(abs(pn[0]), _TINY))
    print(f"t_final={format_float(traj.times[-1])} pseudo_norm_drift={drift:.3e}")
    _deliver(args, payload)


def cmd_fv_dispersion(args) -> None:
    grid = MomentumGrid.uniform(args.k_min, args.k_max, args.n)
    pairs = [dispersion(k) for k in grid.k_values]
    if args.format == "json":
        payload = dump_json([
            {"k": float(k), "e_minus": lo, "e_plus": hi}
            for k, (lo, hi) in zip(grid.k_values, pairs)
        ])
    else:
        rows = [
            [float(k), lo, hi] for k, (lo, hi) in zip(grid.k_values, pairs)
        ]
        payload = render_csv(["k", "e_minus", "e_plus"], rows)
    print(f"{grid.size} modes, omega_max={format_float(pairs[-1][1])}")
    _deliver(args, payload)


def _seeded_wavepacket(grid: MomentumGrid, seed: int) -> FvState:
    rng = np.random.default_rng(seed)
    k = grid.k_values
    span = float(k[-1] - k[0]) if grid.size > 1 else 1.0
    center = float(k[0]) + span * rng.uniform(0.3, 0.7)
    width = 0.15 * span
    env = np.exp(-(((k - center) / width) ** 2))
    phi = env * (rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size))
    chi = 0.5 * env * (rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size))
    state = FvState(grid, phi, chi)
    scale = np.sqrt(two_component_norm(state))
    return FvState(grid, phi / scale, chi / scale)


def _state_payload(state: FvState, fmt: str) -> str:
    if fmt == "json":
        return dump_json({
            "k_values": [float(k) for k in state.grid.k_values],
            "weights": [float(w) for w in state.grid.weights],
            "phi": [_pair(z) for z in state.phi],
            "chi": [_pair(z) for z in state.chi],
        })
    rows = [
        [
            float(k),
            float(state.phi[i].real), float(state.phi[i].imag),
            float(state.chi[i].real), float(state.chi[i].imag),
        ]
        for i, k in enumerate(state.grid.k_values)
    ]
    return render_csv(["k", "re_phi", "im_phi", "re_chi", "im_chi"], rows)


def cmd_fv_evolve(args) -> None:
    grid = MomentumGrid.uniform(args.k_min, args.k_max, args.n)
    state0 = _seeded_wavepacket(grid, args.seed)
    evo = fv_evolve(state0, args.t_final, args.n_steps)
    if args.format == "json":
        payload = dump_json({
            "times": [float(t) for t in evo.times],
            "charges": [float(q) for q in evo.charges],
        })
    else:
        rows = [[float(t), float(q)] for t, q in zip(evo.times, evo.charges)]
        payload = render_csv(["t", "charge"], rows)
    q0 = evo.charges[0]
    drift = float(np.abs(evo.charges - q0).max() / max(abs(q0), _TINY))
    print(f"Q0={format_float(q0)} charge_drift={drift:.3e}")
    _deliver(args, payload)
    if args.state_out:
        with open(args.state_out, "w") as fh:
            fh.write(_state_payload(evo.states[-1], args.format))


def cmd_kg_check(args) -> None:
    if args.n_steps < 1:
        raise ValidationError("--n-steps must be >= 1")
    psi0 = _parse_complex(args.psi0)
    psi_dot0 = _parse_complex(args.psi_dot0)
    residual = kg_consistency(psi0, psi_dot0, args.k, args.t_final, args.n_steps)
    omega = dispersion(args.k)[1]
    if args.format == "json":
        payload = dump_json({
            "k": float(args.k),
            "omega": float(omega),
            "t_final": float(args.t_final),
            "residual": float(residual),
        })
    else:
        payload = render_csv(
            ["k", "omega", "t_final", "residual"],
            [[float(args.k), omega, float(args.t_final), residual]],
        )
    print(f"kg_residual={residual:.3e}")
    _deliver(args, payload)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudoherm",
        description="Spectral phases, metric operators, and pseudo-unitary "
        "evolution for pseudo-Hermitian Hamiltonians.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_toy_input(p, need_tols=False):
        p.add_argument("--a", type=float, default=None)
        p.add_argument("--b", type=float, default=None)
        p.add_argument(
            "--sign", choices=("pt-minus", "hermitian-plus"), default="pt-minus"
        )
        p.add_argument("--matrix", default=None, help="matrix JSON file instead of --a/--b")

    p = sub.add_parser("classify", parents=[common], help="three-regime spectral phase")
    add_toy_input(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("spectrum", parents=[common], help="raw eigenvalues and residual")
    add_toy_input(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("metric", parents=[common], help="build the metric operator")
    add_toy_input(p)
    p.add_argument("--signs", default=None, help="comma-separated +-1 per eigenvector")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser(
        "metric-profile", parents=[common], help="cond(eta) vs b toward the boundary"
    )
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b-min", type=float, required=True)
    p.add_argument("--b-max", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_metric_profile)

    p = sub.add_parser("sweep", parents=[common], help="phase diagram along a b grid")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b-min", type=float, required=True)
    p.add_argument("--b-max", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("locate-ep", parents=[common], help="bisect the regime boundary")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b-lo", type=float, required=True)
    p.add_argument("--b-hi", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_locate_ep)

    p = sub.add_parser("evolve", parents=[common], help="toy-model time evolution")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b0", type=float, required=True)
    p.add_argument("--b1", type=float, default=None, help="ramp target (default: constant)")
    p.add_argument("--sign", choices=("pt-minus", "hermitian-plus"), default="pt-minus")
    p.add_argument("--t-final", type=float, required=True)
    p.add_argument("--n-steps", type=int, required=True)
    p.add_argument("--psi0", default="1,0", help="comma-separated complex components")
    p.add_argument("--parity", choices=("sigma3", "identity"), default="sigma3")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("fv-dispersion", parents=[common], help="relativistic mode energies")
    p.add_argument("--k-min", type=float, default=0.0)
    p.add_argument("--k-max", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_fv_dispersion)

    p = sub.add_parser(
        "fv-evolve", parents=[common], help="evolve a seeded wavepacket, log the charge"
    )
    p.add_argument("--k-min", type=float, default=-8.0)
    p.add_argument("--k-max", type=float, default=8.0)
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--t-final", type=float, required=True)
    p.add_argument("--n-steps", type=int, required=True)
    p.add_argument("--state-out", default=None, help="also write the final state here")
    p.set_defaults(func=cmd_fv_evolve)

    p = sub.add_parser(
        "kg-check", parents=[common],
        help="residual of one mode against the analytic second-order solution",
    )
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--psi0", default="1")
    p.add_argument("--psi-dot0", default="0")
    p.add_argument("--t-final", type=float, default=20.0)
    p.add_argument("--n-steps", type=int, default=400)
    p.set_defaults(func=cmd_kg_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        thread_cap()
        args.func(args)
    except ValidationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
