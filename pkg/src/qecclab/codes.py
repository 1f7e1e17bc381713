"""The five codes: encoders, syndrome extraction, lookup correction, decoders and
residual classification.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

import numpy as np

from .errors import ArbitraryError, DoubleError, ErrorSpec, parse_error_spec
from .pauli import PauliString, Syndrome, multiply, parse_pauli, syndrome_of
from .statevector import (
    CNOT,
    GATE_MATRICES,
    PERMUTE,
    TOFFOLI,
    GateOp,
    H,
    NormalizationError,
    StateVector,
    make_state,
    purity,
    reduced_density,
    run_circuit,
)

CODE_NAMES = ("bitflip3", "phaseflip3", "shor9", "steane7", "five5")
CORRECT = "correct-then-decode"
DECODE_ONLY = "decode-only"
POLICIES = (CORRECT, DECODE_ONLY)

# cos(pi/8), e^{i pi/5} sin(pi/8): |<E psi|psi>| differs for E = I, X, Y, Z
PROBE = (np.cos(np.pi / 8), np.exp(1j * np.pi / 5) * np.sin(np.pi / 8))

_UNITS = (1 + 0j, 1j, -1 + 0j, -1j)


class NotPauliDiagnosable(ValueError):
    """The state is not a +1/-1 eigenstate of every generator."""


class UnclassifiableResidual(RuntimeError):
    pass


class EntangledResidual(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class CodeSpec:
    name: str
    n: int
    generators: tuple[PauliString, ...]
    codewords: tuple[StateVector, StateVector]
    correction_table: dict = field(repr=False)
    groups: tuple[tuple[int, ...], ...] = ()
    encoder: tuple[GateOp, ...] | None = None
    decoder: tuple[GateOp, ...] | None = None
    decode_matrix: np.ndarray | None = field(default=None, repr=False)
    useful_qubit: int = 1

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def generator_labels(self) -> list[str]:
        return [g.label() for g in self.generators]


@dataclass(frozen=True)
class ResidualClass:
    logical: str
    global_phase: complex = 1

    def __post_init__(self):
        if self.logical not in ("I", "X", "Y", "Z"):
            raise ValueError(f"logical residual must be I, X, Y or Z, got {self.logical!r}")
        if abs(abs(self.global_phase) - 1) > 1e-9:
            raise ValueError(f"global phase {self.global_phase} is not unimodular")

    @property
    def phase_label(self) -> str:
        for u, text in zip(_UNITS, ("1", "i", "-1", "-i")):
            if abs(self.global_phase - u) < 1e-9:
                return text
        return f"{self.global_phase:.6g}"

    def __str__(self):
        prefix = {"1": "", "-1": "-", "i": "i", "-i": "-i"}.get(self.phase_label)
        if prefix is None:
            return f"({self.phase_label}){self.logical}"
        return prefix + self.logical


@dataclass(frozen=True, eq=False)
class PipelineResult:
    code: str
    policy: str
    encoded: StateVector
    corrupted: StateVector
    syndrome: Syndrome | None
    correction: PauliString
    decoded: StateVector
    residual: ResidualClass
    physical_output_error: PauliString | None
    overlap_fidelity: float
    error_norm: float = 1.0


# ---- construction -------------------------------------------------------------

def _gens(n: int, labels) -> tuple[PauliString, ...]:
    return tuple(parse_pauli(n, s) for s in labels)


def _single_paulis(n: int):
    for q in range(1, n + 1):
        for kind in "XZY":
            yield parse_pauli(n, f"{kind}{q}")


def _group_tables(n, generators, groups, overrides=None):
    """Per-group lookup: sub-syndrome -> correction.

    Candidates are single-qubit Paulis (X, Z, Y per qubit, ascending) whose
    syndrome vanishes outside the group; ``overrides`` maps a group index to an
    explicit candidate list.
    """
    tables = []
    for gi, group in enumerate(groups):
        others = [i for i in range(len(generators)) if i not in group]
        cands = (overrides or {}).get(gi) or list(_single_paulis(n))
        table = {tuple(0 for _ in group): PauliString.identity(n)}
        for p in cands:
            bits = syndrome_of(p, generators).bits
            if any(bits[i] for i in others):
                continue
            table.setdefault(tuple(bits[i] for i in group), p)
        if len(table) != 2 ** len(group):
            missing = 2 ** len(group) - len(table)
            raise RuntimeError(f"group {group} leaves {missing} sub-syndromes without a correction")
        tables.append(table)
    return tables


def _full_table(n, generators, groups, overrides=None) -> dict:
    tables = _group_tables(n, generators, groups, overrides)
    m = len(generators)
    full = {}
    for bits in cartesian((0, 1), repeat=m):
        corr = PauliString.identity(n)
        for group, table in zip(groups, tables):
            corr = multiply(corr, table[tuple(bits[i] for i in group)])
        full[Syndrome(bits)] = corr
    return full


def _circuit_codewords(n, encoder):
    zero = run_circuit(make_state(n, {1: (1, 0)}), encoder)
    one = run_circuit(make_state(n, {1: (0, 1)}), encoder)
    return zero, one


def _projected_codewords(n, generators):
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1
    state = StateVector(n, amps)
    for g in generators:
        state = (state + g.apply(state)) * 0.5
    zero = state * (1 / state.norm())
    x_logical = PauliString(n, (1 << n) - 1, 0)
    return zero, x_logical.apply(zero)


def _syndrome_decoder(n, codewords, table) -> np.ndarray:
    """Unitary sending E_s|b_L> to |b>|s>, with E_s the table entry for syndrome s."""
    dim = 2**n
    adjoint = np.zeros((dim, dim), dtype=complex)
    half = dim // 2
    for s, corr in table.items():
        s_index = int(str(s), 2)
        for b, word in enumerate(codewords):
            adjoint[:, b * half + s_index] = corr.apply(word).amps
    return adjoint.conj().T


SHOR_ENCODER = (
    CNOT(1, 2), CNOT(1, 3), H(1), H(2), H(3),
    PERMUTE([1, 4, 5, 2, 6, 7, 3, 8, 9]),
    CNOT(7, 8), CNOT(4, 5), CNOT(1, 2), CNOT(7, 9), CNOT(4, 6), CNOT(1, 3),
)
SHOR_DECODER = (
    CNOT(7, 8), CNOT(4, 5), CNOT(1, 2), CNOT(7, 9), CNOT(4, 6), CNOT(1, 3),
    TOFFOLI(8, 9, 7), TOFFOLI(5, 6, 4), TOFFOLI(2, 3, 1),
    PERMUTE([1, 4, 7, 2, 3, 5, 6, 8, 9]),
    H(1), H(2), H(3),
    CNOT(1, 3), CNOT(1, 2), TOFFOLI(2, 3, 1),
)
BITFLIP_ENCODER = (CNOT(1, 2), CNOT(1, 3))
BITFLIP_DECODER = (CNOT(1, 3), CNOT(1, 2), TOFFOLI(3, 2, 1))
PHASEFLIP_ENCODER = (CNOT(1, 2), CNOT(1, 3), H(1), H(2), H(3))
PHASEFLIP_DECODER = (H(1), H(2), H(3), CNOT(1, 3), CNOT(1, 2), TOFFOLI(3, 2, 1))

STEANE_GENERATORS = (
    "X4 X5 X6 X7", "X2 X3 X6 X7", "X1 X3 X5 X7",
    "Z4 Z5 Z6 Z7", "Z2 Z3 Z6 Z7", "Z1 Z3 Z5 Z7",
)
SHOR_GENERATORS = (
    "Z1 Z2", "Z2 Z3", "Z4 Z5", "Z5 Z6", "Z7 Z8", "Z8 Z9",
    "X1 X2 X3 X4 X5 X6", "X4 X5 X6 X7 X8 X9",
)
FIVE_GENERATORS = ("XXZIZ", "ZXXZI", "IZXXZ", "ZIZXX")


def _circuit_code(name, n, gen_labels, groups, encoder, decoder, overrides=None):
    gens = _gens(n, gen_labels)
    return CodeSpec(
        name=name,
        n=n,
        generators=gens,
        codewords=_circuit_codewords(n, encoder),
        correction_table=_full_table(n, gens, groups, overrides),
        groups=groups,
        encoder=encoder,
        decoder=decoder,
    )


def _projector_code(name, n, gen_labels, groups):
    gens = _gens(n, gen_labels)
    words = _projected_codewords(n, gens)
    table = _full_table(n, gens, groups)
    return CodeSpec(
        name=name,
        n=n,
        generators=gens,
        codewords=words,
        correction_table=table,
        groups=groups,
        decode_matrix=_syndrome_decoder(n, words, table),
    )


def build_code(name: str) -> CodeSpec:
    if name == "bitflip3":
        return _circuit_code(name, 3, ("Z1 Z2", "Z2 Z3"), ((0, 1),), BITFLIP_ENCODER, BITFLIP_DECODER)
    if name == "phaseflip3":
        return _circuit_code(name, 3, ("X1 X2", "X2 X3"), ((0, 1),), PHASEFLIP_ENCODER, PHASEFLIP_DECODER)
    if name == "shor9":
        blocks = [parse_pauli(9, s) for s in ("Z1 Z2 Z3", "Z4 Z5 Z6", "Z7 Z8 Z9")]
        return _circuit_code(
            name, 9, SHOR_GENERATORS, ((0, 1), (2, 3), (4, 5), (6, 7)),
            SHOR_ENCODER, SHOR_DECODER, overrides={3: blocks},
        )
    if name == "steane7":
        return _projector_code(name, 7, STEANE_GENERATORS, ((0, 1, 2), (3, 4, 5)))
    if name == "five5":
        return _projector_code(name, 5, FIVE_GENERATORS, ((0, 1, 2, 3),))
    raise ValueError(f"unknown code {name!r}; choose from {', '.join(CODE_NAMES)}")


# ---- pipeline steps -------------------------------------------------------------

def encode(code: CodeSpec, alpha: complex, beta: complex) -> StateVector:
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1) > 1e-12:
        raise NormalizationError(f"|alpha|^2 + |beta|^2 != 1 for ({alpha}, {beta})")
    if code.encoder is not None:
        return run_circuit(make_state(code.n, {1: (alpha, beta)}), code.encoder)
    zero, one = code.codewords
    return zero * alpha + one * beta


def decode(code: CodeSpec, state: StateVector) -> StateVector:
    if state.n != code.n:
        raise ValueError(f"{code.name} decodes {code.n} qubits, got {state.n}")
    if code.decoder is not None:
        return run_circuit(state, code.decoder)
    return StateVector(state.n, code.decode_matrix @ state.amps)


def eigen_syndrome(code: CodeSpec, state: StateVector, atol: float = 1e-9) -> Syndrome:
    bits = []
    for i, g in enumerate(code.generators):
        image = g.apply(state)
        if image.allclose(state, atol):
            bits.append(0)
        elif image.allclose(state * -1, atol):
            bits.append(1)
        else:
            raise NotPauliDiagnosable(f"state is not an eigenstate of generator {i + 1} ({g})")
    return Syndrome(tuple(bits))


def projective_syndrome(code: CodeSpec, state: StateVector, rng_seed: int = 0) -> tuple[Syndrome, StateVector]:
    """Measure the generators one after another with Born-rule outcomes."""
    rng = np.random.default_rng(rng_seed)
    bits = []
    for g in code.generators:
        image = g.apply(state)
        plus = (state + image) * 0.5
        p_plus = min(max(plus.norm() ** 2, 0.0), 1.0)
        if rng.random() < p_plus:
            bits.append(0)
            state = plus * (1 / np.sqrt(p_plus))
        else:
            bits.append(1)
            state = (state - image) * (0.5 / np.sqrt(1 - p_plus))
    return Syndrome(tuple(bits)), state


def syndrome_probabilities(code: CodeSpec, state: StateVector) -> dict[Syndrome, float]:
    """Exact outcome distribution of ``projective_syndrome`` (sums projector norms)."""
    out = {}
    for s in code.correction_table:
        v = state
        for bit, g in zip(s.bits, code.generators):
            image = g.apply(v)
            v = (v - image) * 0.5 if bit else (v + image) * 0.5
        p = v.norm() ** 2
        if p > 1e-15:
            out[s] = p
    return out


def lookup_correction(code: CodeSpec, syndrome: Syndrome) -> PauliString:
    if len(syndrome) != code.n_generators:
        raise ValueError(f"{code.name} syndromes have {code.n_generators} bits, got {len(syndrome)}")
    return code.correction_table[syndrome]


def _snap_unit(z: complex) -> complex:
    for u in _UNITS:
        if abs(z - u) < 1e-9:
            return u
    return z / abs(z)


_LOGICALS = {k: GATE_MATRICES[k] for k in "IXYZ"}


def _qubit1_factor(decoded: StateVector) -> tuple[np.ndarray, int, bool]:
    """Qubit-1 column for the lowest occupied ancilla index, and whether the ancilla is a basis state."""
    m = decoded.amps.reshape(2, -1)
    norms = np.linalg.norm(m, axis=0)
    j = int(np.flatnonzero(norms > 1e-6)[0])
    single = bool(np.all(np.delete(norms, j) < 1e-9))
    return m[:, j] / norms[j], j, single


def classify_residual(code: CodeSpec, decoded: StateVector, alpha: complex, beta: complex) -> ResidualClass:
    rho = reduced_density(decoded, code.useful_qubit)
    if abs(purity(rho) - 1) > 1e-9:
        raise EntangledResidual(f"useful qubit has purity {purity(rho):.12f}")
    phi, _, _ = _qubit1_factor(decoded)
    psi = np.array([alpha, beta], dtype=complex)
    best, best_ov = None, 0j
    for kind, m in _LOGICALS.items():
        ov = np.vdot(m @ psi, phi)
        if best is None or abs(ov) > abs(best_ov) + 1e-12:
            best, best_ov = kind, ov
    if abs(best_ov) < 1 - 1e-9:
        raise UnclassifiableResidual(f"best logical match {best} has overlap {abs(best_ov):.12f}")
    return ResidualClass(best, _snap_unit(best_ov))


def physical_output_error(decoded: StateVector, residual: ResidualClass) -> PauliString | None:
    """Pauli O with decoded == O (psi ⊗ |0...0>), when the ancillas sit in one basis state."""
    _, j, single = _qubit1_factor(decoded)
    if not single:
        return None
    n = decoded.n
    site = parse_pauli(n, f"{residual.logical}1") if residual.logical != "I" else PauliString.identity(n)
    flips = PauliString(n, j, 0)
    out = multiply(site, flips)
    try:
        return out.with_phase(residual.global_phase)
    except ValueError:
        return None


def _as_operator(code: CodeSpec, error):
    if isinstance(error, str):
        return parse_error_spec(error, code.n).operator
    if isinstance(error, ErrorSpec):
        return error.operator
    if isinstance(error, DoubleError):
        return error.pauli(code.n)
    if error is None:
        return PauliString.identity(code.n)
    return error


def run_pipeline(
    code: CodeSpec,
    error,
    policy: str = CORRECT,
    alpha: complex | None = None,
    beta: complex | None = None,
    seed: int = 0,
) -> PipelineResult:
    """Encode, corrupt, optionally correct, decode and classify what is left."""
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; use one of {POLICIES}")
    if alpha is None:
        alpha, beta = PROBE
    op = _as_operator(code, error)
    if op.n != code.n:
        raise ValueError(f"error acts on {op.n} qubits, code {code.name} has {code.n}")
    encoded = encode(code, alpha, beta)
    if isinstance(op, ArbitraryError):
        corrupted, norm = op.apply_with_norm(encoded)
    else:
        corrupted, norm = op.apply(encoded), 1.0
    state = corrupted
    correction = PauliString.identity(code.n)
    try:
        syndrome = eigen_syndrome(code, corrupted)
    except NotPauliDiagnosable:
        syndrome = None
    if policy == CORRECT:
        if syndrome is None:
            syndrome, state = projective_syndrome(code, corrupted, seed)
        correction = lookup_correction(code, syndrome)
        state = correction.apply(state)
    decoded = decode(code, state)
    residual = classify_residual(code, decoded, alpha, beta)
    rho = reduced_density(decoded, code.useful_qubit)
    psi = np.array([alpha, beta], dtype=complex)
    fid = float(np.vdot(psi, rho @ psi).real)
    return PipelineResult(
        code=code.name,
        policy=policy,
        encoded=encoded,
        corrupted=corrupted,
        syndrome=syndrome,
        correction=correction,
        decoded=decoded,
        residual=residual,
        physical_output_error=physical_output_error(decoded, residual),
        overlap_fidelity=fid,
        error_norm=norm,
    )

