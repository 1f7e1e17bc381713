"""Dense statevector simulation for the small registers used by the codes.

Qubits are numbered from 1.  Qubit 1 is the most significant bit of the
amplitude index, so the basis label of index ``i`` printed as an n-bit
binary string reads ``|q1 q2 ... qn>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

MAX_QUBITS = 12
TOL = 1e-12

_SQRT2_INV = 1 / np.sqrt(2)

GATE_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
CNOT_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
TOFFOLI_MATRIX = np.eye(8, dtype=complex)[[0, 1, 2, 3, 4, 5, 7, 6]]


class NormalizationError(ValueError):
    pass


class SizeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StateVector:
    """Immutable n-qubit pure state."""

    n: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise SizeError(f"qubit count {self.n} outside 1..{MAX_QUBITS}")
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.size != 2**self.n:
            raise SizeError(f"expected {2**self.n} amplitudes, got {amps.size}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, bits: str) -> "StateVector":
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int(bits, 2)] = 1
        return cls(len(bits), amps)

    @property
    def dim(self) -> int:
        return 2**self.n

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per qubit (axis q-1 is qubit q)."""
        return self.amps.reshape([2] * self.n)

    def allclose(self, other: "StateVector", atol: float = 1e-9) -> bool:
        return self.n == other.n and np.allclose(self.amps, other.amps, atol=atol, rtol=0)

    def __mul__(self, scalar: complex) -> "StateVector":
        return StateVector(self.n, self.amps * scalar)

    __rmul__ = __mul__

    def __add__(self, other: "StateVector") -> "StateVector":
        _same_size(self, other)
        return StateVector(self.n, self.amps + other.amps)

    def __sub__(self, other: "StateVector") -> "StateVector":
        _same_size(self, other)
        return StateVector(self.n, self.amps - other.amps)

    def __str__(self):
        return dirac_format(self)


@dataclass(frozen=True)
class GateOp:
    kind: str
    targets: tuple[int, ...] = ()
    permutation: tuple[int, ...] = ()

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "permutation", tuple(int(p) for p in self.permutation))
        arity = {"H": 1, "X": 1, "Y": 1, "Z": 1, "CNOT": 2, "TOFFOLI": 3, "PERMUTE": 0}
        if kind not in arity:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if kind != "PERMUTE" and len(self.targets) != arity[kind]:
            raise ValueError(f"{kind} needs {arity[kind]} target(s), got {self.targets}")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"repeated target in {self.targets}")

    def validate(self, n: int) -> None:
        for t in self.targets:
            if not 1 <= t <= n:
                raise IndexError(f"qubit {t} out of range 1..{n}")
        if self.kind == "PERMUTE":
            _check_permutation(self.permutation, n)

    def __str__(self):
        if self.kind == "PERMUTE":
            return f"PERMUTE{list(self.permutation)}"
        return f"{self.kind}({','.join(map(str, self.targets))})"


def H(q):
    return GateOp("H", (q,))


def X(q):
    return GateOp("X", (q,))


def CNOT(control, target):
    return GateOp("CNOT", (control, target))


def TOFFOLI(c1, c2, target):
    return GateOp("TOFFOLI", (c1, c2, target))


def PERMUTE(gather):
    return GateOp("PERMUTE", permutation=tuple(gather))


def _same_size(a: StateVector, b: StateVector) -> None:
    if a.n != b.n:
        raise SizeError(f"qubit counts differ: {a.n} vs {b.n}")


def _check_permutation(gather: Sequence[int], n: int) -> None:
    if sorted(gather) != list(range(1, n + 1)):
        raise ValueError(f"{list(gather)} is not a permutation of 1..{n}")


def _check_normalized(pair) -> np.ndarray:
    v = np.asarray(pair, dtype=complex).reshape(-1)
    if v.size != 2:
        raise ValueError("single-qubit amplitude pair must have two entries")
    if abs(np.vdot(v, v).real - 1) > TOL:
        raise NormalizationError(f"amplitudes {pair} are not normalized")
    return v


def make_state(n: int, assignments: Mapping[int, Sequence[complex]] | Iterable = ()) -> StateVector:
    """Product state; qubits without an assignment start in |0>.

    ``assignments`` is a mapping ``{qubit: (amp0, amp1)}`` or an iterable of
    ``(qubit, (amp0, amp1))`` pairs.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise SizeError(f"qubit count {n} outside 1..{MAX_QUBITS}")
    items = dict(assignments.items() if isinstance(assignments, Mapping) else assignments)
    amps = np.ones(1, dtype=complex)
    for q in range(1, n + 1):
        pair = _check_normalized(items.pop(q)) if q in items else np.array([1, 0], dtype=complex)
        amps = np.kron(amps, pair)
    if items:
        raise IndexError(f"qubits {sorted(items)} out of range 1..{n}")
    return StateVector(n, amps)


def kron(a: StateVector, b: StateVector) -> StateVector:
    if a.n + b.n > MAX_QUBITS:
        raise SizeError(f"combined register of {a.n + b.n} qubits exceeds {MAX_QUBITS}")
    return StateVector(a.n + b.n, np.kron(a.amps, b.amps))


def kron_power(s: StateVector, k: int) -> StateVector:
    out = s
    for _ in range(k - 1):
        out = kron(out, s)
    return out


def _apply_1q(t: np.ndarray, m: np.ndarray, q: int) -> np.ndarray:
    t = np.tensordot(m, t, axes=([1], [q - 1]))
    return np.moveaxis(t, 0, q - 1)


def _controlled_flip(t: np.ndarray, controls: Sequence[int], target: int) -> np.ndarray:
    out = t.copy()
    idx = [slice(None)] * t.ndim
    for c in controls:
        idx[c - 1] = 1
    i0, i1 = list(idx), list(idx)
    i0[target - 1], i1[target - 1] = 0, 1
    out[tuple(i0)], out[tuple(i1)] = t[tuple(i1)], t[tuple(i0)]
    return out


def apply_gate(state: StateVector, op: GateOp) -> StateVector:
    op.validate(state.n)
    if op.kind == "PERMUTE":
        return permute_qubits(state, op.permutation)
    t = state.tensor()
    if op.kind in GATE_MATRICES:
        t = _apply_1q(t, GATE_MATRICES[op.kind], op.targets[0])
    else:
        t = _controlled_flip(t, op.targets[:-1], op.targets[-1])
    return StateVector(state.n, t.reshape(-1))


def run_circuit(state: StateVector, ops: Iterable[GateOp]) -> StateVector:
    for op in ops:
        state = apply_gate(state, op)
    return state


def permute_qubits(state: StateVector, gather: Sequence[int]) -> StateVector:
    """Relabel qubits: new qubit ``i`` holds what old qubit ``gather[i]`` held."""
    _check_permutation(gather, state.n)
    t = np.transpose(state.tensor(), [g - 1 for g in gather])
    return StateVector(state.n, t.reshape(-1))


def inverse_permutation(gather: Sequence[int]) -> list[int]:
    inv = [0] * len(gather)
    for i, g in enumerate(gather, start=1):
        inv[g - 1] = i
    return inv


def overlap(a: StateVector, b: StateVector) -> complex:
    """<a|b>."""
    _same_size(a, b)
    return complex(np.vdot(a.amps, b.amps))


def reduced_density(state: StateVector, q: int) -> np.ndarray:
    if not 1 <= q <= state.n:
        raise IndexError(f"qubit {q} out of range 1..{state.n}")
    m = np.moveaxis(state.tensor(), q - 1, 0).reshape(2, -1)
    return m @ m.conj().T


def purity(rho: np.ndarray) -> float:
    return float(np.trace(rho @ rho).real)


def check_density(rho: np.ndarray, tol: float = TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=tol, rtol=0):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"density matrix has trace {np.trace(rho)}")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def _format_number(z: complex, digits: int = 6) -> str:
    tiny = 10 ** (-digits - 2) * max(abs(z), 1e-300)
    re = f"{z.real if abs(z.real) > tiny else 0.0:.{digits}g}"
    if abs(z.imag) <= tiny:
        return re
    sign = "-" if z.imag < 0 else "+"
    return f"{re}{sign}{abs(z.imag):.{digits}g}i"


_UNIT_PREFIX = ((1, ""), (-1, "-"), (1j, "i*"), (-1j, "-i*"))


def dirac_format(
    state: StateVector,
    tolerance: float = 1e-12,
    symbols: Mapping[str, complex] | None = None,
) -> str:
    """Sum of ``(amplitude)|bits>`` terms in ascending basis order.

    Amplitudes equal to a named value in ``symbols`` times 1, -1, i or -i are
    printed by name, e.g. ``{"a": alpha}`` turns ``alpha`` into ``(a)``.
    """
    terms = []
    for i, amp in enumerate(state.amps):
        if abs(amp) <= tolerance:
            continue
        text = None
        for name, value in (symbols or {}).items():
            for unit, prefix in _UNIT_PREFIX:
                if abs(amp - unit * value) <= max(tolerance, 1e-9):
                    text = prefix + name
                    break
            if text:
                break
        terms.append(f"({text or _format_number(amp)})|{i:0{state.n}b}>")
    return " + ".join(terms) if terms else "0"
