"""Error operators: single Paulis, coefficient combinations, and double errors."""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .pauli import PauliParseError, PauliString, multiply, parse_pauli
from .statevector import StateVector

STANDARD_Y = "standard_Y"
MINUS_IY = "paper_minus_iY"
Y_CONVENTIONS = (STANDARD_Y, MINUS_IY)

# phase exponent k of i**k * X Z for the injected Y
_Y_PHASE = {STANDARD_Y: 1, MINUS_IY: 3}


class ErrorSpecError(ValueError):
    pass


def _check_convention(y_convention: str) -> None:
    if y_convention not in Y_CONVENTIONS:
        raise ValueError(f"unknown Y convention {y_convention!r}; use one of {Y_CONVENTIONS}")


def pauli_error_op(kind: str, qubit: int, n: int, y_convention: str = MINUS_IY) -> PauliString:
    """Single-qubit Pauli error as an operator on ``n`` qubits.

    Under ``paper_minus_iY`` a Y error is ``-i X Z`` (the negative of the
    standard Y matrix); under ``standard_Y`` it is ``i X Z``.
    """
    _check_convention(y_convention)
    kind = kind.upper()
    if kind not in ("I", "X", "Y", "Z"):
        raise ValueError(f"unknown Pauli kind {kind!r}")
    if not 1 <= qubit <= n:
        raise IndexError(f"qubit {qubit} out of range 1..{n}")
    b = 1 << (n - qubit)
    x = b if kind in "XY" else 0
    z = b if kind in "YZ" else 0
    return PauliString(n, x, z, _Y_PHASE[y_convention] if kind == "Y" else 0)


def convert_y(p: PauliString, y_convention: str) -> PauliString:
    """Re-express every Y site of a Hermitian-labelled Pauli under ``y_convention``."""
    _check_convention(y_convention)
    if y_convention == STANDARD_Y:
        return p
    return PauliString(p.n, p.x_mask, p.z_mask, p.phase_exp + 2 * p.y_count)


@dataclass(frozen=True)
class ArbitraryError:
    """``c_o I + c_x X + c_y Y + c_z Z`` on one qubit."""

    coefficients: tuple[complex, complex, complex, complex]
    qubit: int
    n: int
    y_convention: str = STANDARD_Y

    def terms(self) -> list[tuple[complex, PauliString]]:
        kinds = ("I", "X", "Y", "Z")
        return [
            (c, pauli_error_op(k, self.qubit, self.n, self.y_convention))
            for c, k in zip(self.coefficients, kinds)
            if c != 0
        ]

    def apply_unnormalized(self, state: StateVector) -> StateVector:
        amps = np.zeros(state.dim, dtype=complex)
        for c, p in self.terms():
            amps += c * p.apply(state).amps
        return StateVector(state.n, amps)

    def apply_with_norm(self, state: StateVector) -> tuple[StateVector, float]:
        """Apply and renormalize; also return the norm before renormalizing."""
        out = self.apply_unnormalized(state)
        norm = out.norm()
        if norm < 1e-15:
            raise ErrorSpecError("error operator annihilates the state")
        if abs(norm - 1) > 1e-12:
            out = out * (1 / norm)
        return out, norm

    def apply(self, state: StateVector) -> StateVector:
        return self.apply_with_norm(state)[0]

    def label(self) -> str:
        cs = ",".join(_fmt_coeff(c) for c in self.coefficients)
        return f"c:{cs}@{self.qubit}"


def _fmt_coeff(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return f"{c.real:g}"
    return f"{c.real:g}{c.imag:+g}j"


def arbitrary_error_op(c_o, c_x, c_y, c_z, qubit: int, n: int, y_convention: str = STANDARD_Y) -> ArbitraryError:
    coeffs = tuple(complex(c) for c in (c_o, c_x, c_y, c_z))
    total = sum(abs(c) ** 2 for c in coeffs)
    if total == 0:
        raise ErrorSpecError("all error coefficients are zero")
    if abs(total - 1) > 1e-12:
        raise ErrorSpecError(f"coefficients are not normalized (sum of squares {total})")
    if not 1 <= qubit <= n:
        raise IndexError(f"qubit {qubit} out of range 1..{n}")
    _check_convention(y_convention)
    return ArbitraryError(coeffs, qubit, n, y_convention)


@dataclass(frozen=True, order=True)
class DoubleError:
    """Two single-qubit X/Z errors on distinct qubits, stored with first.qubit < second.qubit."""

    first: tuple[str, int]
    second: tuple[str, int]

    def __post_init__(self):
        (t1, k), (t2, l) = self.first, self.second
        if t1 not in "XZ" or t2 not in "XZ" or len(t1) != 1 or len(t2) != 1:
            raise ValueError(f"double errors are X/Z pairs, got {t1}{k} {t2}{l}")
        if k == l:
            raise ValueError(f"double error needs two distinct qubits, got {k} twice")
        if k > l:
            object.__setattr__(self, "first", (t2, l))
            object.__setattr__(self, "second", (t1, k))

    @classmethod
    def parse(cls, label: str) -> "DoubleError":
        tokens = re.findall(r"([XZ])\s*(\d+)", label.upper())
        if len(tokens) != 2 or re.sub(r"[XZ]\s*\d+|\s", "", label.upper()):
            raise PauliParseError(f"not a two-site X/Z error: {label!r}")
        (t1, k), (t2, l) = tokens
        return cls((t1, int(k)), (t2, int(l)))

    def pauli(self, n: int) -> PauliString:
        return multiply(pauli_error_op(*self.first, n), pauli_error_op(*self.second, n))

    @property
    def label(self) -> str:
        return f"{self.first[0]}{self.first[1]} {self.second[0]}{self.second[1]}"

    @property
    def kinds(self) -> str:
        return self.first[0] + self.second[0]

    def __str__(self):
        return self.label


def double_error_universe(n: int) -> list[DoubleError]:
    """All X/Z pairs on distinct qubits: 4 * C(n, 2) of them."""
    if n not in (5, 7, 9):
        raise ValueError(f"double-error universe defined for n in (5, 7, 9), got {n}")
    return [
        DoubleError((a, k), (b, l))
        for k, l in combinations(range(1, n + 1), 2)
        for a in "XZ"
        for b in "XZ"
    ]


@dataclass(frozen=True)
class ErrorSpec:
    """A parsed error: ``form`` is ``pauli``, ``double`` or ``arbitrary``."""

    form: str
    operator: PauliString | ArbitraryError

    def apply(self, state: StateVector) -> StateVector:
        return self.operator.apply(state)

    @property
    def n(self) -> int:
        return self.operator.n

    def label(self) -> str:
        return self.operator.label()


def parse_error_spec(text: str, n: int, qubit: int | None = None, y_convention: str | None = None) -> ErrorSpec:
    """Parse ``none``, Pauli tokens (``X1``, ``Y3``, ``X2 Z7``) or ``c:co,cx,cy,cz``.

    Y sites in Pauli tokens default to ``paper_minus_iY``; the Y term of a
    coefficient error defaults to ``standard_Y``.
    """
    text = text.strip()
    if text.lower() in ("none", "i", ""):
        return ErrorSpec("pauli", PauliString.identity(n))
    if text.lower().startswith("c:"):
        try:
            coeffs = [complex(c.strip().replace("i", "j")) for c in text[2:].split(",")]
        except ValueError as exc:
            raise ErrorSpecError(f"bad coefficient list in {text!r}") from exc
        if len(coeffs) != 4:
            raise ErrorSpecError(f"expected four coefficients in {text!r}")
        if qubit is None:
            raise ErrorSpecError("coefficient errors need a target qubit")
        return ErrorSpec("arbitrary", arbitrary_error_op(*coeffs, qubit, n, y_convention or STANDARD_Y))
    try:
        p = convert_y(parse_pauli(n, text), y_convention or MINUS_IY)
    except PauliParseError as exc:
        raise ErrorSpecError(str(exc)) from exc
    return ErrorSpec("double" if p.weight == 2 else "pauli", p)
