"""``qecc-lab`` command line."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report
from .codes import (
    CODE_NAMES,
    CORRECT,
    DECODE_ONLY,
    PROBE,
    EntangledResidual,
    UnclassifiableResidual,
    build_code,
    run_pipeline,
)
from .errors import Y_CONVENTIONS, ErrorSpecError, parse_error_spec
from .statevector import dirac_format

EXIT_OK, EXIT_FAIL, EXIT_BAD_INPUT, EXIT_INTERNAL, EXIT_IO = 0, 1, 2, 3, 4

_POLICY = {"correct": CORRECT, CORRECT: CORRECT, "decode-only": DECODE_ONLY}


def _grid(text: str) -> tuple[int, int]:
    try:
        t, p = text.lower().split("x")
        return int(t), int(p)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 64x128, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qecc-lab", description="Quantum error-correction laboratory.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, code_default=None):
        p.add_argument("--code", choices=CODE_NAMES, default=code_default)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=0)

    sim = sub.add_parser("simulate", help="run one encode/error/correct/decode pipeline")
    common(sim, "shor9")
    sim.add_argument("--error", default="none")
    sim.add_argument("--qubit", type=int, default=None)
    sim.add_argument("--policy", choices=sorted(_POLICY), default="correct")
    sim.add_argument("--y-convention", choices=Y_CONVENTIONS, default=None)

    common(sub.add_parser("tables", help="write the syndrome/residual tables of a code"))
    common(sub.add_parser("doubles", help="sweep every X/Z double error of a code"))

    cur = sub.add_parser("curves", help="write average-fidelity curves")
    common(cur)
    cur.add_argument("--pgrid", default="0:1:101")

    ver = sub.add_parser("verify", help="run the cross-check suite")
    common(ver)
    ver.add_argument("--grid", type=_grid, default=(64, 128))
    ver.add_argument("--corrupt", action="store_true", help="test mode: damage one correction-table entry")
    ver.add_argument("--corrupt-syndrome", default=None)
    return parser


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def cmd_simulate(args) -> int:
    code = build_code(args.code)
    try:
        spec = parse_error_spec(args.error, code.n, args.qubit, args.y_convention)
        result = run_pipeline(code, spec, _POLICY[args.policy], seed=args.seed)
    except (ErrorSpecError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (UnclassifiableResidual, EntangledResidual) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    symbols = {"a": PROBE[0], "b": PROBE[1]}
    out = result.physical_output_error
    lines = [
        f"code: {code.name}   policy: {result.policy}   error: {spec.label()}",
        f"t1 encoded: {dirac_format(result.encoded, symbols=symbols)}",
        f"t2 after error: {dirac_format(result.corrupted, symbols=symbols)}",
    ]
    if spec.form == "arbitrary" and abs(result.error_norm - 1) > 1e-12:
        lines.append(f"renormalized by 1/{result.error_norm:.12g}")
    lines += [
        f"syndrome: {result.syndrome if result.syndrome is not None else 'not an eigenstate'}",
        f"correction: {result.correction.label(with_phase=False)}",
        f"t3 decoded: {dirac_format(result.decoded, symbols=symbols)}",
        f"residual: {result.residual.logical} (phase {result.residual.phase_label})",
        f"output error: {out.label() if out is not None else 'ancillas not in a basis state'}",
        f"fidelity: {result.overlap_fidelity:.12f}",
    ]
    print("\n".join(lines))
    return EXIT_OK


def cmd_tables(args) -> int:
    out_dir = Path(args.out or "tables")
    names = [args.code] if args.code else list(CODE_NAMES)
    try:
        for name in names:
            for table, rows in report.code_tables(name).items():
                stem = f"{name}_{table}" if table == "singles" else f"{name}_table{table}"
                _write(report.format_rows(rows, args.format), str(out_dir / f"{stem}.{args.format}"))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_doubles(args) -> int:
    out_dir = Path(args.out or "tables")
    names = [args.code] if args.code else list(report.LARGE_CODES)
    reports = report.f_reports()
    summary = {}
    try:
        for name in names:
            if name not in report.LARGE_CODES:
                print(f"error: double-error sweeps cover {', '.join(report.LARGE_CODES)}", file=sys.stderr)
                return EXIT_BAD_INPUT
            rows = report.doubles_rows(name)
            _write(report.format_rows(rows, args.format), str(out_dir / f"{name}_doubles.{args.format}"))
            summary[name] = {u: reports[(name, u)].as_dict() for u in ("full-XZ-universe", "paper-tables")}
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def cmd_curves(args) -> int:
    try:
        pgrid = report.parse_pgrid(args.pgrid)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        _write(report.curve_table(pgrid, args.format), args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    corrupt_code = None
    if args.corrupt or args.corrupt_syndrome:
        corrupt_code = args.code or "shor9"
    try:
        result = report.run_verify(corrupt_code, args.corrupt_syndrome, args.seed, args.grid)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        _write(json.dumps(result, indent=2) + "\n", args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if not result["passed"]:
        first = result["first_failure"]
        print(f"FAILED: {first['check']}: {first['detail']}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "tables": cmd_tables,
    "doubles": cmd_doubles,
    "curves": cmd_curves,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
