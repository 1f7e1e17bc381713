"""Table rows, curve data and the cross-check harness behind the command line."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, replace
from fractions import Fraction

import numpy as np

from . import reference_tables
from .codes import CODE_NAMES, CORRECT, DECODE_ONLY, build_code, eigen_syndrome, encode, run_pipeline
from .errors import MINUS_IY, convert_y, double_error_universe
from .fidelity import BlochAngles, average_residual_fidelity, compute_f, fidelity_curve, fidelity_pure
from .fidelity import residual_density, residual_fidelity
from .pauli import PauliString, Syndrome, commutes, parse_pauli, syndrome_of

FIELDS = ("code", "error", "syndrome", "correction", "residual", "phase", "notes")
LARGE_CODES = ("shor9", "steane7", "five5")


@dataclass(frozen=True)
class TableRow:
    code: str
    error: str
    syndrome: str
    correction: str
    residual: str
    phase: str
    notes: str = ""


def _site_order(p: PauliString):
    return [(q, "XYZ".index(p.site(q))) for q in p.support]


def canonical_key(p: PauliString):
    return (p.weight, _site_order(p))


def table_row(code, error: PauliString, notes: str = "", policy: str = CORRECT) -> TableRow:
    result = run_pipeline(code, error, policy)
    if policy == DECODE_ONLY:
        out = result.physical_output_error
        notes = "; ".join(filter(None, [notes, f"output={out.label() if out else 'entangled'}"]))
    return TableRow(
        code=code.name,
        error=error.label(with_phase=False),
        syndrome=str(syndrome_of(error, code)),
        correction=result.correction.label(with_phase=False),
        residual=result.residual.logical,
        phase=result.residual.phase_label,
        notes=notes,
    )


def _err(n: int, label: str) -> PauliString:
    """Error label with Y sites injected as -i X Z."""
    return convert_y(parse_pauli(n, label), MINUS_IY)


def _singles(n, kinds="XYZ"):
    return [_err(n, f"{k}{q}") for q in range(1, n + 1) for k in kinds]


def _rows(code, errors, notes=None, policy=CORRECT):
    errors = sorted(errors, key=canonical_key)
    return [table_row(code, e, (notes or {}).get(e.label(with_phase=False), ""), policy) for e in errors]


def code_tables(name: str) -> dict[str, list[TableRow]]:
    """One list of rows per published table of ``name`` (all singles for the 3-qubit codes)."""
    code = build_code(name)
    if name in ("bitflip3", "phaseflip3"):
        return {"singles": _rows(code, _singles(code.n))}
    tables = {}
    for table, rows in reference_tables.rows_for(name).items():
        errors = [_err(code.n, r.error) for r in rows]
        notes = {}
        if table == "5c":
            extra = [_err(code.n, e) for e in reference_tables.STEANE_UNLISTED]
            notes = {e.label(with_phase=False): "not-listed-in-paper" for e in extra}
            errors += extra
        tables[table] = _rows(code, errors, notes)
        if table == "2":
            decode_only = [_err(code.n, e) for e in reference_tables.SHOR_DECODE_ONLY]
            tables["3"] = _rows(code, decode_only, policy=DECODE_ONLY)
    return dict(sorted(tables.items()))


def doubles_rows(name: str) -> list[TableRow]:
    code = build_code(name)
    listed = set(reference_tables.listed_doubles(name))
    return [
        table_row(code, d.pauli(code.n), "" if d.label in listed else "not-listed-in-paper")
        for d in double_error_universe(code.n)
    ]


def format_rows(rows, fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps([asdict(r) for r in rows], indent=2) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(asdict(r))
    return buf.getvalue()


def f_reports() -> dict:
    """Double-error scores per code and universe, computed from pipeline runs."""
    out = {}
    for name in LARGE_CODES:
        code = build_code(name)
        out[(name, "full-XZ-universe")] = compute_f(code, double_error_universe(code.n))
        out[(name, "paper-tables")] = compute_f(code, reference_tables.listed_doubles(name), "paper-tables")
    return out


def standard_curves(reports=None):
    reports = reports or f_reports()
    f = {key: r.f for key, r in reports.items()}
    return {
        "F_C0": fidelity_curve("C0", None)[0],
        "F_C5": fidelity_curve("C5", f[("five5", "full-XZ-universe")])[0],
        "F_C7_paper": fidelity_curve("C7", f[("steane7", "paper-tables")])[0],
        "F_C7_full": fidelity_curve("C7", f[("steane7", "full-XZ-universe")])[0],
        "F_C9": fidelity_curve("C9", f[("shor9", "full-XZ-universe")])[0],
    }


def parse_pgrid(spec: str) -> list[Fraction]:
    """``START:STOP:STEPS`` evenly spaced exact probabilities (STEPS points, ends included)."""
    try:
        start, stop, steps = spec.split(":")
        start, stop, steps = Fraction(start), Fraction(stop), int(steps)
    except ValueError as exc:
        raise ValueError(f"bad P grid {spec!r}; expected START:STOP:STEPS") from exc
    if steps < 2 or not 0 <= start <= stop <= 1:
        raise ValueError(f"bad P grid {spec!r}")
    return [start + (stop - start) * Fraction(k, steps - 1) for k in range(steps)]


def curve_table(pgrid, fmt: str = "csv", curves=None) -> str:
    curves = curves or standard_curves()
    rows = [[P] + [c(P) for c in curves.values()] for P in pgrid]
    if fmt == "json":
        doc = {
            "coefficients": {k: c.formula() for k, c in curves.items()},
            "rows": [dict(zip(["P", *curves], map(float, r))) for r in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    lines = [f"# {k} = {c.formula()}" for k, c in curves.items()]
    lines.append(",".join(["P", *curves]))
    lines += [",".join(repr(float(v)) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


# ---- cross-check harness ----------------------------------------------------------

class _Checks:
    def __init__(self):
        self.results = []

    def add(self, name, passed, detail=""):
        self.results.append({"check": name, "passed": bool(passed), "detail": detail})


def _corrupt(code, syndrome: Syndrome):
    """Copy of ``code`` whose entry for ``syndrome`` is off by a detectable single-qubit Pauli."""
    table = dict(code.correction_table)
    flip = next(p for p in (_err(code.n, k + "1") for k in "XZY") if not syndrome_of(p, code).is_trivial())
    table[syndrome] = table[syndrome] * flip
    return replace(code, correction_table=table)


def run_verify(corrupt_code: str | None = None, corrupt_syndrome: str | None = None, seed: int = 0,
               grid=(64, 128)) -> dict:
    checks = _Checks()
    codes = {name: build_code(name) for name in CODE_NAMES}
    if corrupt_code:
        code = codes[corrupt_code]
        if corrupt_syndrome is None:
            keys = sorted(str(s) for s in code.correction_table)
            corrupt_syndrome = keys[1 + np.random.default_rng(seed).integers(len(keys) - 1)]
        codes[corrupt_code] = _corrupt(code, Syndrome.parse(corrupt_syndrome))

    for name, code in codes.items():
        bad = [str(s) for s, c in code.correction_table.items() if syndrome_of(c, code) != s]
        checks.add(f"{name}: correction table consistent", not bad, f"wrong entries for syndromes {bad}" if bad else "")
        gens = code.generators
        ok = all(commutes(g, h) for g in gens for h in gens)
        state = encode(code, 0.6, 0.8j)
        ok = ok and all(g.apply(state).allclose(state) for g in gens)
        checks.add(f"{name}: generators commute and stabilize the code", ok)

    single_kinds = {"bitflip3": "X", "phaseflip3": "Z"}
    for name, code in codes.items():
        failures = []
        for e in _singles(code.n, single_kinds.get(name, "XYZ")):
            r = run_pipeline(code, e)
            if r.residual.logical != "I" or abs(r.overlap_fidelity - 1) > 1e-9:
                failures.append(f"{e.label()} (syndrome {r.syndrome}, residual {r.residual})")
        checks.add(f"{name}: single-error recovery", not failures, "; ".join(failures))

    n_doubles = 0
    for name in LARGE_CODES:
        code = codes[name]
        errors = _singles(code.n) + [d.pauli(code.n) for d in double_error_universe(code.n)]
        n_doubles += len(errors) - 3 * code.n
        mismatch = []
        for e in errors:
            if eigen_syndrome(code, e.apply(encode(code, 0.6, 0.8j))) != syndrome_of(e, code):
                mismatch.append(e.label())
        checks.add(f"{name}: eigenvalue and commutation syndromes agree", not mismatch, ", ".join(mismatch))

    shor = codes["shor9"]
    wrong = []
    for label, expected in reference_tables.SHOR_DECODE_ONLY.items():
        out = run_pipeline(shor, _err(9, label), DECODE_ONLY).physical_output_error
        if out != parse_pauli(9, expected):
            wrong.append(f"{label}: got {out}, expected {expected}")
    checks.add("shor9: decode-only outputs", not wrong, "; ".join(wrong))

    for name in LARGE_CODES:
        code = codes[name]
        wrong = []
        for table, rows in reference_tables.rows_for(name).items():
            for row in rows:
                p = _err(code.n, row.error)
                syn = str(syndrome_of(p, code))
                if table in ("1", "2"):
                    syn = syn[:6] if table == "1" else syn[6:]
                res = run_pipeline(code, p).residual.logical
                if syn != row.syndrome or (row.residual and row.residual != res):
                    wrong.append(f"table {table} {row.error}: syndrome {syn}, residual {res}")
        checks.add(f"{name}: published syndrome tables", not wrong, "; ".join(wrong))

    reports = {}
    for name in LARGE_CODES:
        code = codes[name]
        reports[(name, "full-XZ-universe")] = compute_f(code, double_error_universe(code.n))
        reports[(name, "paper-tables")] = compute_f(code, reference_tables.listed_doubles(name), "paper-tables")
    expected = {
        ("shor9", "full-XZ-universe"): (144, {"I": 108, "X": 27, "Y": 0, "Z": 9}, Fraction(5, 6)),
        ("steane7", "paper-tables"): (81, None, Fraction(53, 81)),
        ("steane7", "full-XZ-universe"): (84, None, Fraction(2, 3)),
        ("five5", "full-XZ-universe"): (40, None, Fraction(1, 3)),
    }
    for key, (N, hist, f) in expected.items():
        r = reports[key]
        ok = r.N == N and r.f == f and (hist is None or r.histogram == hist)
        checks.add(f"{key[0]} {key[1]}: f = {f}", ok, f"N={r.N} x={r.x} f={r.f} histogram={r.histogram}")

    for kind in "IXYZ":
        q = average_residual_fidelity(kind, "quadrature", grid)
        exact = average_residual_fidelity(kind, "analytic")
        checks.add(f"quadrature average for {kind}", abs(q - float(exact)) < 1e-9, f"{q!r} vs {exact}")

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(200):
        angles = BlochAngles(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        a, b = np.cos(angles.theta / 2), np.exp(1j * angles.phi) * np.sin(angles.theta / 2)
        for kind in "XYZ":
            worst = max(worst, abs(residual_fidelity(angles, kind) - fidelity_pure((a, b), residual_density(a, b, kind))))
    checks.add("closed-form residual fidelities", worst < 1e-10, f"max deviation {worst:.3e}")

    failures = [c for c in checks.results if not c["passed"]]
    return {
        "passed": not failures,
        "first_failure": failures[0] if failures else None,
        "checks": checks.results,
        "doubles_checked": n_doubles,
        "f": {f"{k[0]}/{k[1]}": r.as_dict() for k, r in reports.items()},
        "corrupted": {"code": corrupt_code, "syndrome": corrupt_syndrome} if corrupt_code else None,
    }
