"""Command-line front end.

Exit codes: 0 success, 1 physics-invariant violation, 2 argument error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from .analysis import (
    bipartite_entanglement,
    ebit_accounting,
    entanglement_report,
    mutual_information,
    ppt_min_eigenvalue,
)
from .cloning import optimal_fidelity
from .config import m_cap
from .linalg import haar_random_qubit, partial_trace
from .protocol import (
    OUTCOMES,
    PORT,
    BellOutcome,
    ForcedOutcome,
    Sampled,
    SharedSecretState,
    build_telecloning_state,
    reconstruct_secret,
    run_telecloning,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
FIDELITY_TOL = 1e-8
ROUND_TRIP_TOL = 1e-9
RENORMALIZE_TOL = 1e-6

SWEEP_COLUMNS = (
    "m",
    "gamma_theory",
    "gamma_max_abs_err",
    "entropy_bits",
    "min_pt_eig_opposite",
    "mi_same_side_bits",
    "ebits_teleclone",
    "ebits_clone_teleport",
    "ebits_port_flexible",
)

_PRESETS = {
    "zero": (1.0, 0.0),
    "one": (0.0, 1.0),
    "plus": (1 / math.sqrt(2), 1 / math.sqrt(2)),
}


class UsageError(Exception):
    pass


def parse_input(text: str, seed: int) -> tuple[complex, complex]:
    """Preset name or ``re_a,im_a,re_b,im_b``; slightly off-norm input is renormalized."""
    key = text.strip().lower()
    if key in _PRESETS:
        a, b = _PRESETS[key]
        return complex(a), complex(b)
    if key == "random":
        a, b = haar_random_qubit(seed).amplitudes
        return complex(a), complex(b)
    try:
        parts = [float(x) for x in key.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse input {text!r}") from None
    if len(parts) != 4 or not all(math.isfinite(x) for x in parts):
        raise UsageError(f"input needs four finite reals re_a,im_a,re_b,im_b; got {text!r}")
    a, b = complex(parts[0], parts[1]), complex(parts[2], parts[3])
    norm = math.hypot(abs(a), abs(b))
    if abs(norm - 1.0) > RENORMALIZE_TOL:
        raise UsageError(f"input norm {norm:.9g} is not 1 (tolerance {RENORMALIZE_TOL:g})")
    return a / norm, b / norm


def parse_policy(text: str, seed: int):
    if text.strip().lower() == "sample":
        return Sampled(seed)
    try:
        return ForcedOutcome(BellOutcome.parse(text))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_m(m: int, lo: int = 1) -> int:
    cap = m_cap()
    if not lo <= m <= cap:
        raise UsageError(f"--m must lie in [{lo}, {cap}], got {m}")
    return m


def _amps(a: complex, b: complex) -> list:
    return [a.real, a.imag, b.real, b.imag]


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_run(args) -> int:
    m = _check_m(args.m)
    a, b = parse_input(args.input, args.seed)
    policy = parse_policy(args.outcome, args.seed)
    t = run_telecloning(a, b, m, policy, correct_ancilla=not args.no_correct_ancilla)
    err = max(t.max_fidelity_error(), t.max_shrinking_error())
    doc = {
        "m": m,
        "input": _amps(a, b),
        "outcome": t.outcome.short,
        "probability": t.outcome_probability,
        "clone_fidelity_theory": t.gamma_theory,
        "clone_fidelities": list(t.clone_fidelities),
        "max_abs_error": err,
        "seed": args.seed,
    }
    _emit(_dump(doc), args.output)
    return EXIT_OK if err <= FIDELITY_TOL else EXIT_VIOLATION


def cmd_analyze(args) -> int:
    m = _check_m(args.m, lo=2)
    r = entanglement_report(m, all_pairs=args.all_pairs)
    doc = {
        "m": m,
        "total_entanglement_bits": r.total_entanglement_bits,
        "min_pt_eigenvalue_opposite": r.pair_class_opposite.min_pt_eigenvalue,
        "min_pt_eigenvalue_same": r.pair_class_same.min_pt_eigenvalue,
        "entangled_opposite": r.pair_class_opposite.entangled,
        "entangled_same": r.pair_class_same.entangled,
        "mutual_information_same_bits": r.pair_class_same.mutual_information_bits,
        "max_deviation": r.max_deviation,
    }
    doc.update(r.to_dict())
    _emit(_dump(doc), args.output)
    ok = r.max_deviation <= FIDELITY_TOL and (
        r.class_uniformity_deviation is None or r.class_uniformity_deviation <= FIDELITY_TOL
    )
    return EXIT_OK if ok else EXIT_VIOLATION


def sweep_row(m: int, seed: int) -> dict:
    a, b = haar_random_qubit(seed).amplitudes
    errs = [
        run_telecloning(a, b, m, ForcedOutcome(o)).max_fidelity_error() for o in OUTCOMES
    ]
    tc = build_telecloning_state(m)
    s = tc.state
    budget = ebit_accounting(m)
    return {
        "m": m,
        "gamma_theory": optimal_fidelity(1, m),
        "gamma_max_abs_err": max(errs),
        "entropy_bits": bipartite_entanglement(s, tc.sending_side),
        "min_pt_eig_opposite": ppt_min_eigenvalue(partial_trace(s, (PORT, "C1"))),
        # m = 1 has no same-side pair
        "mi_same_side_bits": mutual_information(s, "C1", "C2") if m >= 2 else None,
        "ebits_teleclone": budget.telecloning,
        "ebits_clone_teleport": budget.clone_then_teleport,
        "ebits_port_flexible": budget.port_flexible,
    }


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def cmd_sweep(args) -> int:
    m_max = _check_m(args.m_max)
    rows = [sweep_row(m, args.seed) for m in range(1, m_max + 1)]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in SWEEP_COLUMNS])
        text = buf.getvalue()
    else:
        text = _dump(rows)
    _emit(text, args.output)
    worst = max(row["gamma_max_abs_err"] for row in rows)
    return EXIT_OK if worst <= FIDELITY_TOL else EXIT_VIOLATION


def cmd_secret_share(args) -> int:
    m = _check_m(args.m)
    a, b = parse_input(args.input, args.seed)
    policy = parse_policy(args.outcome, args.seed)
    t = run_telecloning(a, b, m, policy, correct_ancilla=True)
    ra, rb = reconstruct_secret(SharedSecretState.from_transcript(t))
    fid = abs(np.conj(a) * ra + np.conj(b) * rb) ** 2
    doc = {
        "m": m,
        "input": _amps(a, b),
        "outcome": t.outcome.short,
        "probability": t.outcome_probability,
        "reconstructed": _amps(complex(ra), complex(rb)),
        "fidelity": float(fid),
        "seed": args.seed,
    }
    _emit(_dump(doc), args.output)
    return EXIT_OK if fid >= 1 - ROUND_TRIP_TOL else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teleclone", description="Simulate 1->M quantum telecloning and its entanglement structure."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        p.add_argument("--output", "-o", default=None, help="write to file instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        if with_input:
            p.add_argument("--m", type=int, required=True, help="number of clones")
            p.add_argument(
                "--input",
                default="random",
                help="zero|one|plus|random or re_a,im_a,re_b,im_b (default: random)",
            )
            p.add_argument(
                "--outcome", default="sample", help="phi+|phi-|psi+|psi-|sample (default: sample)"
            )

    p = sub.add_parser("run", help="run one telecloning instance")
    common(p)
    p.add_argument("--no-correct-ancilla", action="store_true", help="rotate only the clone qubits")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("analyze", help="entanglement report of the resource state")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--all-pairs", action="store_true", help="check every pair, not one per class")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="tabulate diagnostics for m = 1..m_max")
    common(p, with_input=False)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("secret-share", help="teleclone, then rebuild the input from all A and C qubits")
    common(p)
    p.set_defaults(func=cmd_secret_share)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        # e.g. malformed TELECLONE_M_CAP
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
