from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qecclab.codes import ResidualClass, build_code
from qecclab.errors import double_error_universe
from qecclab.fidelity import (
    THIRD,
    BlochAngles,
    FidelityCurve,
    average_mixture_fidelity,
    average_residual_fidelity,
    bloch_state,
    compute_f,
    f_from_counts,
    fidelity_curve,
    fidelity_general,
    fidelity_pure,
    residual_density,
    residual_fidelity,
    sphere_nodes,
)
from qecclab.statevector import GATE_MATRICES

angles = st.builds(
    BlochAngles,
    st.floats(0, np.pi, allow_nan=False),
    st.floats(0, 2 * np.pi, allow_nan=False, exclude_max=True),
)


def random_density(rng):
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def test_bloch_state_poles():
    assert np.allclose(bloch_state(BlochAngles(0, 1.3)), (1, 0))
    assert np.allclose(bloch_state(BlochAngles(np.pi, 0)), (0, 1))
    assert np.allclose(bloch_state(BlochAngles(np.pi / 2, 0)), (2**-0.5, 2**-0.5))
    with pytest.raises(ValueError):
        BlochAngles(4, 0)
    with pytest.raises(ValueError):
        BlochAngles(1, 2 * np.pi)


def test_fidelity_pure_examples():
    zero = (1, 0)
    assert fidelity_pure(zero, np.diag([1, 0])) == 1
    assert fidelity_pure(zero, np.diag([0, 1])) == 0
    t, p = 0.9, 2.0
    a, b = bloch_state(BlochAngles(t, p))
    z_psi = np.array([a, -b])
    assert fidelity_pure((a, b), np.outer(z_psi, z_psi.conj())) == pytest.approx(np.cos(t) ** 2)


def test_fidelity_general_examples():
    rng = np.random.default_rng(0)
    rho = random_density(rng)
    assert fidelity_general(rho, rho) == pytest.approx(1, abs=1e-10)
    assert fidelity_general(np.diag([1, 0]), np.eye(2) / 2) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        fidelity_general(np.diag([1.5, -0.5]), np.eye(2) / 2)


def test_fidelity_general_matches_pure():
    rng = np.random.default_rng(1)
    for _ in range(100):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        rho = random_density(rng)
        assert abs(fidelity_general(np.outer(v, v.conj()), rho) - fidelity_pure(v, rho)) < 1e-10


def _sqrtm(m):
    w, v = np.linalg.eigh(m)
    return (v * np.sqrt(w)) @ v.conj().T


def test_fidelity_general_matches_matrix_sqrt_on_mixed_states():
    rng = np.random.default_rng(3)
    for _ in range(100):
        sigma, rho = random_density(rng), random_density(rng)
        s = _sqrtm(sigma)
        direct = np.trace(_sqrtm(s @ rho @ s)).real ** 2
        assert abs(fidelity_general(sigma, rho) - direct) < 1e-10
        assert abs(fidelity_general(sigma, rho) - fidelity_general(rho, sigma)) < 1e-10


def test_residual_fidelity_examples():
    assert residual_fidelity(BlochAngles(np.pi / 2, 0), "X") == pytest.approx(1)
    assert residual_fidelity(BlochAngles(np.pi / 2, 0), "Z") == pytest.approx(0)
    assert residual_fidelity(BlochAngles(0.4, 5.0), "I") == 1


def test_closed_forms_match_state_fidelity():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        ang = BlochAngles(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        psi = np.array(bloch_state(ang))
        for kind in "IXYZ":
            moved = GATE_MATRICES[kind] @ psi
            rho = np.outer(moved, moved.conj())
            assert abs(residual_fidelity(ang, kind) - fidelity_pure(psi, rho)) < 1e-10
            assert np.allclose(residual_density(*psi, kind), rho)


@settings(max_examples=50, deadline=None)
@given(angles, st.sampled_from("XYZ"))
def test_phase_invariance(ang, kind):
    values = {residual_fidelity(ang, ResidualClass(kind, u)) for u in (1, 1j, -1, -1j)}
    assert max(values) - min(values) < 1e-15
    assert -1e-12 <= residual_fidelity(ang, kind) <= 1 + 1e-12


def test_analytic_averages():
    assert average_residual_fidelity("I") == 1
    for kind in "XYZ":
        assert average_residual_fidelity(ResidualClass(kind)) == Fraction(1, 3)


@pytest.mark.parametrize("kind", "IXYZ")
def test_quadrature_averages(kind):
    exact = float(average_residual_fidelity(kind))
    assert abs(average_residual_fidelity(kind, "quadrature", (64, 128)) - exact) < 1e-9
    assert abs(average_residual_fidelity(kind, "quadrature", (32, 64)) - exact) < 1e-9


def test_quadrature_weights_integrate_the_sphere():
    T, P, W = sphere_nodes((32, 64))
    assert W.sum() == pytest.approx(1, abs=1e-13)
    # int cos^4 theta over the sphere / 4pi = 1/5
    assert np.sum(W * np.cos(T) ** 4) == pytest.approx(0.2, abs=1e-13)
    with pytest.raises(ValueError):
        sphere_nodes((16, 64))
    with pytest.raises(ValueError):
        sphere_nodes(rule="simpson")


def test_midpoint_rule_is_only_second_order():
    err = abs(average_residual_fidelity("Z", "quadrature", (64, 128), rule="midpoint") - 1 / 3)
    assert 1e-6 < err < 1e-3


def test_f_from_counts():
    assert f_from_counts(108, 144) == Fraction(5, 6)
    assert f_from_counts(0, 40) == THIRD
    assert f_from_counts(42, 84) == Fraction(2, 3)


def test_compute_f_five_qubit():
    code = build_code("five5")
    r = compute_f(code, double_error_universe(5))
    assert (r.N, r.x, r.f) == (40, 0, Fraction(1, 3))
    assert isinstance(r.f, Fraction)
    assert sum(r.histogram.values()) == r.N
    assert r.f == (r.x + Fraction(r.N - r.x, 3)) / r.N
    with pytest.raises(ValueError):
        compute_f(code, [])


def test_curve_coefficients():
    assert fidelity_curve("C9", Fraction(5, 6))[0].formula() == "1-(1/6)*P^2"
    assert fidelity_curve("C7", Fraction(53, 81))[0].formula() == "1-(28/81)*P^2"
    c0, values = fidelity_curve("C0", None, [0, Fraction(1, 2), 1])
    assert c0.formula() == "1-(2/3)*P"
    assert values == [1, Fraction(2, 3), Fraction(1, 3)]
    with pytest.raises(ValueError):
        fidelity_curve("C0", None, [1.5])
    with pytest.raises(ValueError):
        FidelityCurve("x", "cubic", Fraction(1))


@pytest.mark.parametrize("f", [Fraction(1, 3), Fraction(53, 81), Fraction(2, 3), Fraction(5, 6), None])
def test_curves_stay_in_range(f):
    curve, values = fidelity_curve("c", f, [Fraction(k, 50) for k in range(51)])
    assert values[0] == 1
    assert all(THIRD <= v <= 1 for v in values)
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_ordering_inside_the_open_interval():
    curves = [fidelity_curve(lbl, f)[0] for lbl, f in
              [("C9", Fraction(5, 6)), ("C7", Fraction(53, 81)), ("C5", THIRD), ("C0", None)]]
    full_c7 = fidelity_curve("C7", Fraction(2, 3))[0]
    for k in range(1, 100):
        P = Fraction(k, 100)
        c9, c7, c5, c0 = (c(P) for c in curves)
        assert c9 > c7 > c5 > c0
        assert c9 > full_c7(P) > c5
    # with f = 1/3 the quadratic curve meets the linear one at P = 1
    assert curves[2](1) == curves[3](1) == THIRD


@pytest.mark.parametrize("kind,f", [("X", THIRD), ("Z", THIRD), ("I", Fraction(1))])
def test_mixture_average_matches_curve(kind, f):
    curve = fidelity_curve("c", f)[0]
    for P in (0.25, 0.6, 1.0):
        assert abs(average_mixture_fidelity(P, kind, (32, 64)) - float(curve(Fraction(P)))) < 1e-9
