import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qecclab.statevector import (
    CNOT,
    GATE_MATRICES,
    PERMUTE,
    TOFFOLI,
    GateOp,
    H,
    NormalizationError,
    SizeError,
    StateVector,
    X,
    apply_gate,
    dirac_format,
    inverse_permutation,
    kron,
    make_state,
    overlap,
    permute_qubits,
    purity,
    reduced_density,
    run_circuit,
)

A, B = 0.6, 0.8j


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector(n, v / np.linalg.norm(v))


def dense(op, n):
    """Gate matrix on n qubits built basis state by basis state (qubit 1 = MSB)."""
    dim = 2**n
    m = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        bits = [(i >> (n - q)) & 1 for q in range(1, n + 1)]
        if op.kind in ("CNOT", "TOFFOLI"):
            *ctrl, tgt = op.targets
            out = list(bits)
            if all(bits[c - 1] for c in ctrl):
                out[tgt - 1] ^= 1
            j = int("".join(map(str, out)), 2)
            m[j, i] = 1
        else:
            q = op.targets[0]
            g = GATE_MATRICES[op.kind]
            for b in (0, 1):
                out = list(bits)
                out[q - 1] = b
                j = int("".join(map(str, out)), 2)
                m[j, i] += g[b, bits[q - 1]]
    return m


def all_ops(n):
    ops = [GateOp(k, (q,)) for k in "HXYZ" for q in range(1, n + 1)]
    ops += [CNOT(c, t) for c in range(1, n + 1) for t in range(1, n + 1) if c != t]
    if n >= 3:
        ops += [TOFFOLI(a, b, t) for a in range(1, n + 1) for b in range(1, n + 1) for t in range(1, n + 1)
                if len({a, b, t}) == 3]
    return ops


def test_make_state_product_order():
    s = make_state(3, {1: (A, B)})
    expected = np.zeros(8, dtype=complex)
    expected[0b000], expected[0b100] = A, B
    assert np.allclose(s.amps, expected)


def test_make_state_basis_and_plus():
    assert np.allclose(make_state(1, {1: (1, 0)}).amps, [1, 0])
    r = 1 / np.sqrt(2)
    assert np.allclose(make_state(2, [(1, (r, r))]).amps, [r, 0, r, 0])


def test_make_state_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        make_state(2, {1: (1, 1)})


def test_kron():
    assert kron(StateVector.basis("0"), StateVector.basis("1")).allclose(StateVector.basis("01"))
    plus = make_state(1, {1: (1 / np.sqrt(2), 1 / np.sqrt(2))})
    assert np.allclose(kron(plus, plus).amps, 0.5)
    psi = make_state(1, {1: (A, B)})
    big = kron(psi, make_state(6))
    assert big.n == 7 and np.flatnonzero(big.amps).tolist() == [0, 64]
    with pytest.raises(SizeError):
        kron(make_state(7), make_state(6))


def test_gate_examples():
    r = 1 / np.sqrt(2)
    assert np.allclose(apply_gate(StateVector.basis("0"), H(1)).amps, [r, r])
    assert apply_gate(StateVector.basis("10"), CNOT(1, 2)).allclose(StateVector.basis("11"))
    assert apply_gate(StateVector.basis("110"), TOFFOLI(1, 2, 3)).allclose(StateVector.basis("111"))


def test_gate_target_out_of_range():
    with pytest.raises(IndexError):
        apply_gate(StateVector.basis("00"), X(3))
    with pytest.raises(ValueError):
        CNOT(1, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gates_match_dense_matrices(n):
    for op in all_ops(n):
        m = dense(op, n)
        for i in range(2**n):
            basis = np.zeros(2**n)
            basis[i] = 1
            out = apply_gate(StateVector(n, basis), op)
            assert np.allclose(out.amps, m[:, i], atol=1e-12), (op, i)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 10**6))
def test_gates_unitary_and_involutive(n, seed):
    s = random_state(n, seed)
    for op in all_ops(n):
        once = apply_gate(s, op)
        assert abs(once.norm() - 1) < 1e-12
        assert apply_gate(once, op).allclose(s, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.permutations(list(range(1, 6))), st.integers(0, 10**6))
def test_permute_round_trip(gather, seed):
    s = random_state(5, seed)
    there = permute_qubits(s, gather)
    assert permute_qubits(there, inverse_permutation(gather)).allclose(s, atol=1e-12)
    assert sorted(np.abs(there.amps)) == pytest.approx(sorted(np.abs(s.amps)))


def test_permute_gather_semantics():
    assert permute_qubits(StateVector.basis("01"), [2, 1]).allclose(StateVector.basis("10"))
    # new qubit 1 holds old qubit 3
    assert permute_qubits(StateVector.basis("001"), [3, 1, 2]).allclose(StateVector.basis("100"))
    s = random_state(3, 1)
    assert permute_qubits(s, [1, 2, 3]).allclose(s)
    with pytest.raises(ValueError):
        PERMUTE([1, 1, 2]).validate(3)


def test_overlap():
    zero, one = StateVector.basis("0"), StateVector.basis("1")
    assert overlap(zero, zero) == 1
    assert overlap(zero, one) == 0
    theta, phi = 1.1, 0.7
    psi = make_state(1, {1: (np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2))})
    assert overlap(psi, apply_gate(psi, X(1))) == pytest.approx(np.sin(theta) * np.cos(phi))
    with pytest.raises(SizeError):
        overlap(zero, StateVector.basis("00"))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_self_overlap_is_one(n, seed):
    s = random_state(n, seed)
    assert abs(overlap(s, s) - 1) < 1e-12


def test_reduced_density_and_purity():
    rho = reduced_density(StateVector.basis("00"), 1)
    assert np.allclose(rho, np.diag([1, 0]))
    assert purity(rho) == pytest.approx(1)
    bell = run_circuit(StateVector.basis("00"), [H(1), CNOT(1, 2)])
    rho = reduced_density(bell, 1)
    assert np.allclose(rho, np.eye(2) / 2)
    assert purity(rho) == pytest.approx(0.5)


def test_dirac_format():
    s = make_state(3, {1: (A, B)})
    assert dirac_format(s, symbols={"a": A, "b": B}) == "(a)|000> + (b)|100>"
    assert dirac_format(s) == "(0.6)|000> + (0+0.8i)|100>"
    tiny = StateVector(1, [1, 1e-15])
    assert dirac_format(tiny, 1e-12) == "(1)|0>"
    assert dirac_format(StateVector(1, [0, -1j]), symbols={"a": 1}) == "(-i*a)|1>"
