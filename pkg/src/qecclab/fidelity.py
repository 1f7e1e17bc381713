"""Fidelity of the useful qubit and depolarizing-channel average fidelity curves."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .codes import CORRECT, CodeSpec, ResidualClass, run_pipeline
from .errors import DoubleError
from .statevector import GATE_MATRICES, StateVector, check_density

THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class BlochAngles:
    theta: float
    phi: float

    def __post_init__(self):
        if not 0 <= self.theta <= np.pi:
            raise ValueError(f"theta={self.theta} outside [0, pi]")
        if not 0 <= self.phi < 2 * np.pi:
            raise ValueError(f"phi={self.phi} outside [0, 2pi)")


def bloch_state(angles: BlochAngles) -> tuple[complex, complex]:
    return complex(np.cos(angles.theta / 2)), complex(np.exp(1j * angles.phi) * np.sin(angles.theta / 2))


def _ket(psi) -> np.ndarray:
    v = psi.amps if isinstance(psi, StateVector) else np.asarray(psi, dtype=complex)
    if v.shape != (2,):
        raise ValueError("expected a single-qubit state")
    return v


def fidelity_pure(psi, rho) -> float:
    """<psi|rho|psi>."""
    v = _ket(psi)
    return float(np.vdot(v, np.asarray(rho) @ v).real)


def _eigenvalues(m: np.ndarray) -> np.ndarray:
    """Eigenvalues with rounding noise below 1e-12 set to zero."""
    w = np.linalg.eigvalsh(m)
    return np.where(w < 1e-12, 0.0, w)


def fidelity_general(sigma, rho) -> float:
    """|Tr sqrt(sqrt(sigma) rho sqrt(sigma))|^2.

    For a 2x2 PSD matrix M, (Tr sqrt M)^2 = Tr M + 2 sqrt(det M), and
    det(sqrt(sigma) rho sqrt(sigma)) = det(sigma) det(rho). Taking the
    determinants from eigenvalues with the rank cut keeps a pure sigma exact
    (a direct sqrt of a 1e-17 eigenvalue would add ~3e-9).
    """
    sigma, rho = check_density(sigma), check_density(rho)
    det = np.prod(_eigenvalues(sigma)) * np.prod(_eigenvalues(rho))
    return float(np.trace(sigma @ rho).real + 2 * np.sqrt(det))


def _logical(residual) -> str:
    return residual.logical if isinstance(residual, ResidualClass) else str(residual).upper()


def residual_fidelity(angles: BlochAngles, residual) -> float:
    """Fidelity between psi(theta, phi) and E psi for a logical residual E."""
    t, p = angles.theta, angles.phi
    kind = _logical(residual)
    if kind == "I":
        return 1.0
    if kind == "X":
        return (np.sin(t) * np.cos(p)) ** 2
    if kind == "Y":
        return (np.sin(t) * np.sin(p)) ** 2
    if kind == "Z":
        return np.cos(t) ** 2
    raise ValueError(f"unknown residual {residual!r}")


def residual_density(alpha: complex, beta: complex, residual) -> np.ndarray:
    v = GATE_MATRICES[_logical(residual)] @ np.array([alpha, beta], dtype=complex)
    return np.outer(v, v.conj())


def sphere_nodes(grid: tuple[int, int] = (64, 128), rule: str = "gauss"):
    """Nodes (theta, phi) and weights summing to 1 for the uniform measure on the sphere.

    ``gauss`` uses Gauss-Legendre in cos(theta); ``midpoint`` the midpoint rule
    in theta with a sin(theta) weight.  Both use equally spaced phi.
    """
    n_t, n_p = grid
    if n_t < 32 or n_p < 64:
        raise ValueError(f"grid {grid} is below the 32x64 minimum")
    phi = 2 * np.pi * np.arange(n_p) / n_p
    if rule == "gauss":
        u, w = np.polynomial.legendre.leggauss(n_t)
        theta, w_t = np.arccos(u), w / 2
    elif rule == "midpoint":
        h = np.pi / n_t
        theta = (np.arange(n_t) + 0.5) * h
        w_t = np.sin(theta) * h / 2
    else:
        raise ValueError(f"unknown quadrature rule {rule!r}")
    T, P = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(w_t, np.full(n_p, 1 / n_p))
    return T, P, W


def average_residual_fidelity(residual, method: str = "analytic", grid=(64, 128), rule: str = "gauss"):
    """Bloch-sphere average of ``residual_fidelity``.

    ``analytic`` returns an exact Fraction (1 for I, 1/3 otherwise);
    ``quadrature`` integrates numerically and returns a float.
    """
    kind = _logical(residual)
    if method == "analytic":
        return Fraction(1) if kind == "I" else THIRD
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    T, P, W = sphere_nodes(grid, rule)
    if kind == "I":
        vals = np.ones_like(T)
    elif kind == "X":
        vals = (np.sin(T) * np.cos(P)) ** 2
    elif kind == "Y":
        vals = (np.sin(T) * np.sin(P)) ** 2
    else:
        vals = np.cos(T) ** 2
    return float(np.sum(W * vals))


def average_mixture_fidelity(P: float, residual, grid=(64, 128)) -> float:
    """Sphere average of <psi| (1-P^2) psi psi^+ + P^2 E psi (E psi)^+ |psi>, built from states."""
    T, Ph, W = sphere_nodes(grid)
    total = 0.0
    for t, p, w in zip(T.ravel(), Ph.ravel(), W.ravel()):
        a, b = np.cos(t / 2), np.exp(1j * p) * np.sin(t / 2)
        rho = (1 - P**2) * residual_density(a, b, "I") + P**2 * residual_density(a, b, residual)
        total += w * fidelity_pure((a, b), rho)
    return total


@dataclass(frozen=True)
class FNReport:
    code: str
    universe: str
    N: int
    x: int
    histogram: dict = field(default_factory=dict)
    f: Fraction = Fraction(0)

    def as_dict(self) -> dict:
        return {
            "code": self.code,
            "universe": self.universe,
            "N": self.N,
            "x": self.x,
            "histogram": dict(self.histogram),
            "f": str(self.f),
        }


def f_from_counts(x: int, N: int) -> Fraction:
    """Weight 1 for each identity residual and 1/3 for every other one."""
    return (Fraction(x) + Fraction(N - x) * THIRD) / N


def compute_f(code: CodeSpec, universe: Iterable, label: str = "full-XZ-universe") -> FNReport:
    errors = [DoubleError.parse(e) if isinstance(e, str) else e for e in universe]
    if not errors:
        raise ValueError("empty error universe")
    hist = Counter({k: 0 for k in "IXYZ"})
    for e in errors:
        hist[run_pipeline(code, e, CORRECT).residual.logical] += 1
    N, x = len(errors), hist["I"]
    return FNReport(code.name, label, N, x, dict(hist), f_from_counts(x, N))


@dataclass(frozen=True)
class FidelityCurve:
    """``1 - c P`` (linear) or ``1 - c P^2`` (quadratic) with exact c."""

    label: str
    form: str
    coefficient: Fraction

    def __post_init__(self):
        if self.form not in ("linear", "quadratic"):
            raise ValueError(f"unknown curve form {self.form!r}")

    def __call__(self, P):
        if isinstance(P, (int, Fraction)):
            P = Fraction(P)
        power = 1 if self.form == "linear" else 2
        return 1 - self.coefficient * P**power

    def formula(self) -> str:
        var = "P" if self.form == "linear" else "P^2"
        return f"1-({self.coefficient})*{var}"


def fidelity_curve(label: str, f: Fraction | None, P_grid: Sequence = ()) -> tuple[FidelityCurve, list]:
    """Uncorrected qubit (``f`` None): 1 - 2/3 P.  Code with double-error score f: 1 + (f - 1) P^2."""
    for P in P_grid:
        if not 0 <= P <= 1:
            raise ValueError(f"probability {P} outside [0, 1]")
    if f is None:
        curve = FidelityCurve(label, "linear", 1 - THIRD)
    else:
        curve = FidelityCurve(label, "quadratic", 1 - Fraction(f))
    return curve, [curve(P) for P in P_grid]
