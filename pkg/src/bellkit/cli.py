"""Command-line entry point.

Subcommands: chsh, enumerate, optimize, sample, taxonomy, sweep.  Exit codes:
0 success, 2 parse/validation failure, 3 unknown lookup name, 4 I/O failure.
Randomized commands require an explicit --seed; nothing defaults to the clock.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys
from pathlib import Path

import numpy as np

from .behavior import correlators
from .errors import InvalidInputError, UnknownInterpretationError
from .io import (
    FileFormatError,
    RunReport,
    behavior_from_json,
    digest_inputs,
    load_json,
    model_from_json,
    parse_network_text,
    sweep_rows_to_csv,
)
from .lhv import chsh, enumerate_deterministic, lhv_behavior
from .network import estimate_chsh, exact_chsh, sample, verify_markov
from .optimize import seesaw_maximize, sweep
from .quantum import TwoQubitState, basis_state, singlet
from .theses import Thesis, find_interpretation, taxonomy

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_LOOKUP = 3
EXIT_IO = 4

_LOCAL_BOUND = 2.0
_TSIRELSON = 2.0 * math.sqrt(2.0)

_STATE_KEYWORDS = {"singlet": singlet, "00": lambda: basis_state(0),
                   "01": lambda: basis_state(1), "10": lambda: basis_state(2),
                   "11": lambda: basis_state(3)}


def _parse_state(spec: str) -> TwoQubitState:
    """A state spec: a keyword or 8 comma-separated reals (re,im per amplitude)."""
    key = spec.strip().lower()
    if key in _STATE_KEYWORDS:
        return _STATE_KEYWORDS[key]()
    parts = [p for p in spec.replace(" ", "").split(",") if p]
    if len(parts) != 8:
        raise InvalidInputError(
            f"state spec must be a keyword ({', '.join(sorted(_STATE_KEYWORDS))}) "
            f"or 8 comma-separated reals, got {spec!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise InvalidInputError(f"state spec has a non-numeric entry: {exc}") from exc
    amp = np.array([complex(vals[2 * i], vals[2 * i + 1]) for i in range(4)])
    return TwoQubitState.from_amplitudes(amp, tol=1e-6)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


class _IOFailure(Exception):
    pass


def _file_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _seed_value(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {raw!r}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def cmd_chsh(args) -> RunReport:
    text = _read_text(args.input)
    data = load_json(text, args.input)
    if isinstance(data, dict) and "blocks" in data:
        behavior = behavior_from_json(data, args.input)
        kind = "behavior"
    elif isinstance(data, dict) and "lambda" in data:
        behavior = lhv_behavior(model_from_json(data, args.input))
        kind = "model"
    else:
        raise FileFormatError(
            f"{args.input}: expected a behavior file (\"blocks\") or a model file (\"lambda\")")
    e = correlators(behavior)
    s = chsh(e)
    return RunReport(
        command="chsh",
        inputs_digest=digest_inputs({"file": _file_digest(text), "kind": kind}),
        results={
            "input kind": kind,
            "correlators": {"E(a,b)": float(e[0]), "E(a,b')": float(e[1]),
                            "E(a',b)": float(e[2]), "E(a',b')": float(e[3])},
            "S": float(s),
            "local bound |S| <= 2": bool(abs(s) <= _LOCAL_BOUND + 1e-9),
            "quantum bound |S| <= 2*sqrt(2)": bool(abs(s) <= _TSIRELSON + 1e-9),
        },
    )


def cmd_enumerate(args) -> RunReport:
    rows = [[s.a_out, s.a_prime_out, s.b_out, s.b_prime_out, value]
            for s, value in enumerate_deterministic()]
    return RunReport(
        command="enumerate",
        inputs_digest=digest_inputs({}),
        results={
            "strategies (a, a', b, b', S)": rows,
            "count": len(rows),
            "max |S|": max(abs(r[4]) for r in rows),
        },
    )


def cmd_optimize(args) -> RunReport:
    psi = _parse_state(args.state)
    result = seesaw_maximize(psi, seed=args.seed, tol=args.tol)
    st = result.settings
    return RunReport(
        command="optimize",
        inputs_digest=digest_inputs({"state": args.state, "tol": args.tol}),
        seed=args.seed,
        results={
            "best S": result.best_s,
            "|best S|": abs(result.best_s),
            "alice u": [st.alice_u.x, st.alice_u.y, st.alice_u.z],
            "alice u'": [st.alice_u_prime.x, st.alice_u_prime.y, st.alice_u_prime.z],
            "bob v": [st.bob_v.x, st.bob_v.y, st.bob_v.z],
            "bob v'": [st.bob_v_prime.x, st.bob_v_prime.y, st.bob_v_prime.z],
            "iterations": result.iterations,
            "converged": result.converged,
            "perturbations": result.perturbations,
        },
    )


def cmd_sample(args) -> RunReport:
    text = _read_text(args.network)
    spec = parse_network_text(text, args.network)
    dataset = sample(spec, n=args.n, seed=args.seed)
    csv_text = dataset.to_csv()
    _write_text(args.out, csv_text)
    estimate = estimate_chsh(dataset)
    markov = verify_markov(spec)
    return RunReport(
        command="sample",
        inputs_digest=digest_inputs({"file": _file_digest(text), "n": args.n}),
        seed=args.seed,
        results={
            "records": dataset.count,
            "output": args.out,
            "exact S": exact_chsh(spec),
            "estimated S": estimate.s,
            "stderr": estimate.stderr,
            "block counts (ab, ab', a'b, a'b')": list(estimate.per_block_counts),
            "markov residuals": {
                "source/settings independence": markov.source_settings,
                "alice screening": markov.alice_screening,
                "bob screening": markov.bob_screening,
            },
            "generator": f"{dataset.generator} (numpy {dataset.generator_version})",
        },
    )


def _taxonomy_text_table() -> str:
    theses = list(Thesis)
    name_width = max(len(r.name) for r in taxonomy()) + 2
    header = "Interpretation".ljust(name_width) + " | " + " | ".join(
        t.value for t in theses)
    sep = "-" * len(header)
    lines = [header, sep]
    for record in taxonomy():
        cells = [("x" if record.rejected is t else "").center(len(t.value))
                 for t in theses]
        lines.append(record.name.ljust(name_width) + " | " + " | ".join(cells))
    return "\n".join(lines)


def cmd_taxonomy(args) -> RunReport:
    if args.name is None:
        rows = [{"interpretation": r.name, "rejects": r.rejected.value}
                for r in taxonomy()]
        return RunReport(
            command="taxonomy",
            inputs_digest=digest_inputs({}),
            results={"rows": len(rows), "table": rows},
        )
    record = find_interpretation(args.name)
    return RunReport(
        command="taxonomy",
        inputs_digest=digest_inputs({"name": args.name}),
        results={"interpretation": record.name, "rejects": record.rejected.value},
    )


def cmd_sweep(args) -> RunReport:
    psi = _parse_state(args.state)
    rows = sweep(psi, steps=args.steps,
                 theta_start_deg=args.theta_start, theta_end_deg=args.theta_end)
    _write_text(args.out, sweep_rows_to_csv(rows))
    return RunReport(
        command="sweep",
        inputs_digest=digest_inputs({"state": args.state, "steps": args.steps,
                                     "start": args.theta_start, "end": args.theta_end}),
        results={
            "rows": len(rows),
            "output": args.out,
            "first (theta, S)": [rows[0][0], rows[0][1]],
            "last (theta, S)": [rows[-1][0], rows[-1][1]],
            "min S": min(s for _, s in rows),
            "max S": max(s for _, s in rows),
        },
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellkit",
        description="CHSH correlations, local models, and the interpretation taxonomy",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="report format (default: text)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("chsh", help="correlators and CHSH verdicts for a behavior or model file")
    p.add_argument("input", help="path to a behavior or model JSON file")
    p.set_defaults(handler=cmd_chsh)

    p = sub.add_parser("enumerate", help="the 16 deterministic strategies and their S values")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("optimize", help="seesaw-maximize |S| for a pure state")
    p.add_argument("state", help="'singlet', a basis keyword (00/01/10/11), or 8 reals")
    p.add_argument("--seed", type=_seed_value, required=True, help="64-bit generator seed")
    p.add_argument("--tol", type=float, default=1e-10, help="convergence tolerance on |dS|")
    p.set_defaults(handler=cmd_optimize)

    p = sub.add_parser("sample", help="ancestral sampling from a network file, with CHSH estimate")
    p.add_argument("network", help="path to a network JSON file")
    p.add_argument("-n", type=int, required=True, help="number of records")
    p.add_argument("--seed", type=_seed_value, required=True, help="64-bit generator seed")
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("taxonomy", help="interpretations and the thesis each rejects")
    p.add_argument("name", nargs="?", help="optional interpretation name")
    p.set_defaults(handler=cmd_taxonomy)

    p = sub.add_parser("sweep", help="S versus rotation angle of Bob's settings, as CSV")
    p.add_argument("state", help="'singlet', a basis keyword (00/01/10/11), or 8 reals")
    p.add_argument("--steps", type=int, required=True, help="number of rows (>= 2)")
    p.add_argument("--theta-start", type=float, default=0.0, help="first angle in degrees")
    p.add_argument("--theta-end", type=float, default=360.0, help="last angle in degrees")
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(handler=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except UnknownInterpretationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOOKUP
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
        if args.subcommand == "taxonomy" and args.name is None:
            sys.stdout.write("\n" + _taxonomy_text_table() + "\n")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
