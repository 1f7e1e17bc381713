"""Published syndrome and residual tables for the Shor, Steane and five-qubit codes.

Each row is ``ReferenceRow(table, error, syndrome, residual, correction)`` where ``residual``
is the logical error expected on the useful qubit after correction, or None
when the table does not state one.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DoubleError


@dataclass(frozen=True)
class ReferenceRow:
    table: str
    error: str
    syndrome: str
    residual: str | None = None
    correction: str | None = None


def _r(table, errors, syndrome, residual=None, correction=None):
    return [ReferenceRow(table, e, syndrome, residual, correction) for e in errors]


# Shor code, bit flips: syndrome on Z1Z2 .. Z8Z9 and the correcting operator
SHOR_BIT_FLIPS = [
    ReferenceRow("1", f"X{q}", s, "I", f"X{q}")
    for q, s in zip(
        range(1, 10),
        ("100000", "110000", "010000", "001000", "001100", "000100", "000010", "000011", "000001"),
    )
]

# Shor code, phase flips: syndrome on g7, g8 and the block correction
_PHASE_BLOCKS = (("10", "Z1 Z2 Z3"), ("11", "Z4 Z5 Z6"), ("01", "Z7 Z8 Z9"))
SHOR_PHASE_FLIPS = [
    ReferenceRow("2", f"Z{q}", _PHASE_BLOCKS[(q - 1) // 3][0], "I", _PHASE_BLOCKS[(q - 1) // 3][1])
    for q in range(1, 10)
]

# Shor code decoded without correction: register left as Pauli * (psi ⊗ |0..0>)
SHOR_DECODE_ONLY = {
    "X1": "X4 X5", "X2": "X4", "X3": "X5",
    "X4": "X6 X7", "X5": "X6", "X6": "X7",
    "X7": "X8 X9", "X8": "X8", "X9": "X9",
    "Z1": "X2 X3", "Z2": "X2 X3", "Z3": "X2 X3",
    "Z4": "X2", "Z5": "X2", "Z6": "X2",
    "Z7": "X3", "Z8": "X3", "Z9": "X3",
    "Y1": "-iX2 X3 X4 X5", "Y2": "-iX2 X3 X4", "Y3": "-iX2 X3 X5",
    "Y4": "-iX2 X6 X7", "Y5": "-iX2 X6", "Y6": "-iX2 X7",
    "Y7": "-iX3 X8 X9", "Y8": "-iX3 X8", "Y9": "-iX3 X9",
}

_BLOCKS = ((1, 2, 3), (4, 5, 6), (7, 8, 9))


def _shor_4a():
    rows = []
    for a, b, c in _BLOCKS:
        for k, rest in ((a, (b, c)), (b, (a, c)), (c, (a, b))):
            syn = SHOR_BIT_FLIPS[k - 1].syndrome + "00"
            rows += _r("4a", [f"X{k}"], syn, "I")
            rows += _r("4a", [f"X{rest[0]} X{rest[1]}"], syn, "Z")
            mixed = [f"Y{k}"] + [f"X{k} Z{o}" for o in rest]
            rows += _r("4a", mixed, SHOR_BIT_FLIPS[k - 1].syndrome + SHOR_PHASE_FLIPS[k - 1].syndrome, "I")
    return rows


def _shor_4b():
    rows = []
    for i, block in enumerate(_BLOCKS):
        syn = "000000" + SHOR_PHASE_FLIPS[block[0] - 1].syndrome
        rows += _r("4b", [f"Z{q}" for q in block], syn, "I")
        o1, o2 = [b for j, b in enumerate(_BLOCKS) if j != i]
        rows += _r("4b", [f"Z{p} Z{q}" for p in o1 for q in o2], syn, "X")
    for a, b, c in _BLOCKS:
        rows += _r("4b", [f"Z{a} Z{b}", f"Z{a} Z{c}", f"Z{b} Z{c}"], "00000000", "I")
    return rows


_4C = """X1X4 10100000 X1X5 10110000 X1X6 10010000 X1X7 10001000 X1X8 10001100
X1X9 10000100 X2X4 11100000 X2X5 11110000 X2X6 11010000 X2X7 11001000
X2X8 11001100 X2X9 11000100 X3X4 01100000 X3X5 01110000 X3X6 01010000
X3X7 01001000 X3X8 01001100 X3X9 01000100 X4X7 00101000 X4X8 00101100
X4X9 00100100 X5X7 00111000 X5X8 00111100 X5X9 00110100 X6X7 00011000
X6X8 00011100 X6X9 00010100"""

_4D = [
    (1, (4, 5, 6), "10000011"), (1, (7, 8, 9), "10000001"),
    (2, (7, 8, 9), "11000001"), (2, (4, 5, 6), "11000011"),
    (3, (4, 5, 6), "01000011"), (3, (7, 8, 9), "01000001"),
    (4, (7, 8, 9), "00100001"), (5, (7, 8, 9), "00110001"), (6, (7, 8, 9), "00010001"),
    (4, (1, 2, 3), "00100010"), (5, (1, 2, 3), "00110010"), (6, (1, 2, 3), "00010010"),
    (7, (1, 2, 3), "00001010"), (8, (1, 2, 3), "00001110"), (9, (1, 2, 3), "00000110"),
    (7, (4, 5, 6), "00001011"), (8, (4, 5, 6), "00001111"), (9, (4, 5, 6), "00000111"),
]


def _pairs(text, table, residual):
    tok = text.split()
    return [ReferenceRow(table, e, s, residual) for e, s in zip(tok[::2], tok[1::2])]


SHOR_DOUBLES = {
    "4a": _shor_4a(),
    "4b": _shor_4b(),
    "4c": _pairs(_4C, "4c", "I"),
    "4d": [ReferenceRow("4d", f"X{k} Z{q}", s, "I") for k, qs, s in _4D for q in qs],
}

# Steane code: (single, doubles sharing its syndrome, syndrome, Y single, Y syndrome)
_5A = [
    (1, ("X2X3", "X4X5", "X6X7"), "000001", "001001"),
    (2, ("X1X3", "X4X6", "X5X7"), "000010", "010010"),
    (3, ("X1X2", "X5X6", "X4X7"), "000011", "011011"),
    (4, ("X1X5", "X2X6", "X3X7"), "000100", "100100"),
    (5, ("X1X4", "X2X7", "X3X6"), "000101", "101101"),
    (6, ("X1X7", "X2X4", "X3X5"), "000110", "110110"),
    (7, ("X1X6", "X2X5", "X3X4"), "000111", "111111"),
]
_5B = [
    (1, ("Z6Z7", "Z2Z3", "Z4Z5"), "001000"),
    (2, ("Z1Z3", "Z4Z6", "Z5Z7"), "010000"),
    (3, ("Z4Z7", "Z1Z2", "Z5Z6"), "011000"),
    (4, ("Z3Z7", "Z1Z5", "Z2Z6"), "100000"),
    (5, ("Z2Z7", "Z1Z4", "Z3Z6"), "101000"),
    (6, ("Z1Z7", "Z2Z4", "Z3Z5"), "110000"),
    (7, ("Z1Z6", "Z2Z5", "Z3Z4"), "111000"),
]
_5C = """X1Z4 100001 X1Z5 101001 X1Z6 110001 X1Z7 111001 X2Z7 111010 X3Z4 100011
X3Z6 110011 X3Z7 111011 X4Z7 111100 X5Z7 111101 X6Z5 101110 X6Z7 111110
X5Z6 110101 Z1X4 001100 Z2X4 010100 Z3X4 011100 Z1X5 001101 Z2X5 010101
Z1X6 001110 Z2X6 010110 Z3X6 011110 Z1X7 001111 Z2X7 010111 Z3X7 011111
Z4X5 100101 Z3X5 011101 Z1X3 001011 X1Z2 010001 X1Z3 011001 X2Z1 001010
X2Z3 011010 X2Z4 100010 X2Z5 101010 X2Z6 110010 Z2X3 010011 X4Z5 101100
X4Z6 110100 Z4X6 100110 X3Z5 101011"""

STEANE = {
    "5a": [
        row
        for k, doubles, s, ys in _5A
        for row in _r("5a", [f"X{k}"], s, "I") + _r("5a", doubles, s, "X") + _r("5a", [f"Y{k}"], ys, "I")
    ],
    "5b": [
        row for k, doubles, s in _5B for row in _r("5b", [f"Z{k}"], s, "I") + _r("5b", doubles, s, "Z")
    ],
    "5c": _pairs(_5C, "5c", "I"),
}

# pairs with an X on qubit 7 that the mixed Steane table does not list
STEANE_UNLISTED = ("X7 Z4", "X7 Z5", "X7 Z6")

# five-qubit code: single, double in the middle column, doubles in the last column
_6A = [
    ("X1", "Z3Z4", ("X4Z5", "Z2X3"), "0101"),
    ("X2", "Z4Z5", ("Z1X5", "Z3X4"), "0010"),
    ("X3", "Z1Z5", ("X1Z2", "Z4X5"), "1001"),
    ("X4", "Z1Z2", ("X1Z5", "X2Z3"), "0100"),
    ("X5", "Z2Z3", ("X3Z4", "Z1X2"), "1010"),
    ("Z1", "X2X5", ("X3Z5", "Z2X4"), "1000"),
    ("Z2", "X1X3", ("Z1X4", "Z3X5"), "1100"),
    ("Z3", "X2X4", ("X1Z4", "Z2X5"), "0110"),
    ("Z4", "X3X5", ("X1Z3", "X2Z5"), "0011"),
    ("Z5", "X1X4", ("X2Z4", "Z1X3"), "0001"),
]
_6B = [
    ("Y1", ("X3X4", "Z2Z5"), "1101"),
    ("Y2", ("X4X5", "Z1Z3"), "1110"),
    ("Y3", ("X1X5", "Z2Z4"), "1111"),
    ("Y4", ("X1X2", "Z3Z5"), "0111"),
    ("Y5", ("X2X3", "Z1Z4"), "1011"),
]

# The five-qubit tables head their residual columns "I, (X), (Z)" and "I, (Y)"
# without tying each listed error to one of them, so doubles carry no residual.
FIVE = {
    "6a": [
        row
        for single, mid, last, s in _6A
        for row in _r("6a", [single], s, "I") + _r("6a", [mid, *last], s)
    ],
    "6b": [row for single, doubles, s in _6B for row in _r("6b", [single], s, "I") + _r("6b", doubles, s)],
}

TABLES = {
    "shor9": {"1": SHOR_BIT_FLIPS, "2": SHOR_PHASE_FLIPS, **SHOR_DOUBLES},
    "steane7": STEANE,
    "five5": FIVE,
}


def rows_for(code: str) -> dict[str, list[ReferenceRow]]:
    return TABLES.get(code, {})


def listed_doubles(code: str) -> list[str]:
    """Every two-site error label that appears in the published tables of ``code``."""
    seen = []
    for rows in rows_for(code).values():
        for row in rows:
            if sum(ch in "XYZ" for ch in row.error) != 2:
                continue
            label = DoubleError.parse(row.error).label
            if label not in seen:
                seen.append(label)
    return seen
