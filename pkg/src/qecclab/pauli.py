"""Symplectic representation of n-qubit Pauli operators.

A ``PauliString`` stands for ``i**phase_exp * X(x_mask) * Z(z_mask)``: the Z
part acts first.  Bit ``n - q`` of a mask belongs to qubit ``q`` so that the
masks print in the same left-to-right order as the kets.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .statevector import GATE_MATRICES, StateVector

_PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_UNITS = (1 + 0j, 1j, -1 + 0j, -1j)
_TOKEN = re.compile(r"([IXYZ])(\d+)")
_LABEL = re.compile(r"^\s*(?P<phase>[+-]?i?)\s*\*?\s*(?P<body>.*?)\s*$")


class PauliParseError(ValueError):
    pass


def _popcount(v: int) -> int:
    return bin(v).count("1")


def unit_exponent(unit: complex, tol: float = 1e-6) -> int:
    """k such that unit == i**k."""
    for k, u in enumerate(_UNITS):
        if abs(complex(unit) - u) < tol:
            return k
    raise ValueError(f"{unit} is not one of 1, i, -1, -i")


def _parity(values: np.ndarray, nbits: int) -> np.ndarray:
    out = np.zeros_like(values)
    for b in range(nbits):
        out ^= (values >> b) & 1
    return out


@dataclass(frozen=True)
class PauliString:
    n: int
    x_mask: int = 0
    z_mask: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a Pauli string needs at least one qubit")
        full = (1 << self.n) - 1
        if self.x_mask & ~full or self.z_mask & ~full:
            raise ValueError(f"mask does not fit in {self.n} bits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def single(cls, kind: str, qubit: int, n: int) -> "PauliString":
        return parse_pauli(n, f"{kind}{qubit}")

    def bit(self, q: int) -> int:
        return 1 << (self.n - q)

    def site(self, q: int) -> str:
        x, z = bool(self.x_mask & self.bit(q)), bool(self.z_mask & self.bit(q))
        return {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[(x, z)]

    @property
    def support(self) -> list[int]:
        return [q for q in range(1, self.n + 1) if self.site(q) != "I"]

    @property
    def weight(self) -> int:
        return _popcount(self.x_mask | self.z_mask)

    @property
    def y_count(self) -> int:
        return _popcount(self.x_mask & self.z_mask)

    @property
    def hermitian_phase(self) -> int:
        """Phase exponent relative to the Hermitian operator with the same masks."""
        return (self.phase_exp - self.y_count) % 4

    def without_phase(self) -> "PauliString":
        """Same masks, phase chosen so the operator is the Hermitian product of sites."""
        return PauliString(self.n, self.x_mask, self.z_mask, self.y_count)

    def with_phase(self, unit: complex) -> "PauliString":
        """Multiply by one of 1, i, -1, -i."""
        return PauliString(self.n, self.x_mask, self.z_mask, self.phase_exp + unit_exponent(unit))

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def phase(self) -> complex:
        return _UNITS[self.phase_exp]

    def label(self, with_phase: bool = True) -> str:
        """Canonical indexed label, e.g. ``-iX2 X3`` or ``X1 Z4``."""
        body = " ".join(f"{self.site(q)}{q}" for q in self.support) or "I"
        return (_PHASE_PREFIX[self.hermitian_phase] if with_phase else "") + body

    def compact(self) -> str:
        """Positional label such as ``XXZIZ`` (no phase)."""
        return "".join(self.site(q) for q in range(1, self.n + 1))

    def __str__(self):
        return self.label()

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def apply(self, state: StateVector) -> StateVector:
        if state.n != self.n:
            raise ValueError(f"Pauli on {self.n} qubits applied to {state.n}-qubit state")
        idx = np.arange(state.dim)
        src = idx ^ self.x_mask
        signs = 1 - 2 * _parity(src & self.z_mask, self.n)
        return StateVector(self.n, self.phase * signs * state.amps[src])


def parse_pauli(n: int, label: str) -> PauliString:
    """Parse ``"XXZIZ"``, ``"X1 Z4"``, ``"X2X3"`` or ``"-iX2 X3"`` (case-insensitive)."""
    m = _LABEL.match(label.replace("−", "-"))
    phase = _PREFIX_PHASE.get(m.group("phase").lower()) if m else None
    if phase is None:
        raise PauliParseError(f"bad phase in Pauli label {label!r}")
    body = re.sub(r"\s+", "", m.group("body")).upper()
    result = PauliString(n, phase_exp=phase)
    if body in ("", "I") and n != 1:
        return result
    if re.fullmatch(r"[IXYZ]+", body) and not re.search(r"\d", body):
        if len(body) != n:
            raise PauliParseError(f"positional label {body!r} has length {len(body)}, expected {n}")
        sites = list(enumerate(body, start=1))
    elif re.fullmatch(r"(?:[IXYZ]\d+)+", body):
        sites = [(int(q), kind) for kind, q in _TOKEN.findall(body)]
    else:
        raise PauliParseError(f"malformed Pauli label {label!r}")
    for q, kind in sites:
        if not 1 <= q <= n:
            raise PauliParseError(f"qubit {q} out of range 1..{n} in {label!r}")
        b = 1 << (n - q)
        x = b if kind in "XY" else 0
        z = b if kind in "ZY" else 0
        result = multiply(result, PauliString(n, x, z, 1 if kind == "Y" else 0))
    return result


def multiply(p: PauliString, q: PauliString) -> PauliString:
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    # Z(z1) X(x2) = (-1)^{|z1 & x2|} X(x2) Z(z1)
    k = p.phase_exp + q.phase_exp + 2 * _popcount(p.z_mask & q.x_mask)
    return PauliString(p.n, p.x_mask ^ q.x_mask, p.z_mask ^ q.z_mask, k)


def inverse(p: PauliString) -> PauliString:
    # (i^k X Z)^-1 = i^-k Z X = i^-k (-1)^{|x&z|} X Z
    return PauliString(p.n, p.x_mask, p.z_mask, -p.phase_exp + 2 * _popcount(p.x_mask & p.z_mask))


def product(paulis: Sequence[PauliString], n: int | None = None) -> PauliString:
    out = PauliString.identity(n if n is not None else paulis[0].n)
    for p in paulis:
        out = multiply(out, p)
    return out


def commutes(p: PauliString, q: PauliString) -> bool:
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    return (_popcount(p.x_mask & q.z_mask) + _popcount(p.z_mask & q.x_mask)) % 2 == 0


def to_dense(p: PauliString, max_qubits: int = 6) -> np.ndarray:
    if p.n > max_qubits:
        raise ValueError(f"refusing to build a dense {2**p.n}x{2**p.n} matrix")
    m = np.ones((1, 1), dtype=complex)
    for q in range(1, p.n + 1):
        b = p.bit(q)
        site = np.eye(2, dtype=complex)
        if p.x_mask & b:
            site = GATE_MATRICES["X"] @ site
        if p.z_mask & b:
            site = site @ GATE_MATRICES["Z"]
        m = np.kron(m, site)
    return p.phase * m


@dataclass(frozen=True)
class Syndrome:
    """Generator eigenvalue bits in the code's generator order (1 means -1)."""

    bits: tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> "Syndrome":
        if not re.fullmatch(r"[01]+", text.strip()):
            raise ValueError(f"syndrome must be a 0/1 string, got {text!r}")
        return cls(tuple(int(c) for c in text.strip()))

    def __str__(self):
        return "".join(map(str, self.bits))

    def __len__(self):
        return len(self.bits)

    def __xor__(self, other: "Syndrome") -> "Syndrome":
        return Syndrome(tuple(a ^ b for a, b in zip(self.bits, other.bits, strict=True)))

    def is_trivial(self) -> bool:
        return not any(self.bits)


def syndrome_of(error: PauliString, code) -> Syndrome:
    """Commutation syndrome against ``code.generators`` (or a generator list)."""
    generators = getattr(code, "generators", code)
    return Syndrome(tuple(0 if commutes(error, g) else 1 for g in generators))
