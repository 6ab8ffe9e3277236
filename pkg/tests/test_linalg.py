import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from junta_lab.errors import CapacityError, ParameterError
from junta_lab.linalg import (
    Unitary,
    embed_operator,
    haar_random_unitary,
    nuclear_norm,
    partial_trace,
    tensor_product,
)

from conftest import CNOT, I2, SWAP, X, Z


def brute_partial_trace(m, keep, n):
    """Direct sum over basis states of the traced-out qubits."""
    keep = sorted(keep)
    drop = [q for q in range(1, n + 1) if q not in keep]
    k = len(keep)
    out = np.zeros((2**k, 2**k), dtype=complex)

    def index(bits_keep, bits_drop):
        idx = 0
        for q, b in zip(keep, bits_keep):
            idx |= b << (n - q)
        for q, b in zip(drop, bits_drop):
            idx |= b << (n - q)
        return idx

    def bits(v, width):
        return [(v >> (width - 1 - j)) & 1 for j in range(width)]

    for i in range(2**k):
        for j in range(2**k):
            for d in range(2 ** len(drop)):
                out[i, j] += m[index(bits(i, k), bits(d, len(drop))), index(bits(j, k), bits(d, len(drop)))]
    return out


def test_tensor_examples():
    np.testing.assert_array_equal(tensor_product(I2, I2), np.eye(4))
    np.testing.assert_array_equal(tensor_product(Z, Z), np.diag([1, -1, -1, 1]))
    xx = tensor_product(X, X)
    np.testing.assert_allclose(xx @ xx, np.eye(4))


def test_tensor_capacity():
    big = np.eye(2**7)
    with pytest.raises(CapacityError):
        tensor_product(big, big)


def test_trace_of_tensor_factorises(rng):
    for _ in range(20):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        assert np.isclose(np.trace(tensor_product(a, b)), np.trace(a) * np.trace(b))


def test_partial_trace_examples():
    np.testing.assert_allclose(partial_trace(Unitary(np.eye(4)), [1]), 2 * np.eye(2))
    np.testing.assert_allclose(partial_trace(Unitary(SWAP), [1]), np.eye(2))
    dictator = Unitary(np.diag([1, 1, -1, -1]).astype(complex))
    np.testing.assert_allclose(partial_trace(dictator, [1]), 2 * Z)
    np.testing.assert_allclose(partial_trace(Unitary(CNOT), [1]), np.diag([2, 0]))


def test_partial_trace_empty_keep_is_trace(rng):
    u = haar_random_unitary(8, rng)
    np.testing.assert_allclose(partial_trace(u, []), [[np.trace(u.matrix)]])


def test_partial_trace_rejects_bad_subset(rng):
    with pytest.raises(ParameterError):
        partial_trace(haar_random_unitary(4, rng), [3])


@given(n=st.integers(2, 4), seed=st.integers(0, 2**32 - 1), data=st.data())
@settings(max_examples=30, deadline=None)
def test_partial_trace_matches_brute_force(n, seed, data):
    keep = data.draw(st.sets(st.integers(1, n), min_size=1, max_size=n))
    u = haar_random_unitary(2**n, np.random.default_rng(seed))
    np.testing.assert_allclose(partial_trace(u, keep), brute_partial_trace(u.matrix, keep, n), atol=1e-12)


@given(n=st.integers(2, 5), seed=st.integers(0, 2**32 - 1), data=st.data())
@settings(max_examples=30, deadline=None)
def test_partial_trace_of_junta(n, seed, data):
    keep = sorted(data.draw(st.sets(st.integers(1, n), min_size=1, max_size=n - 1)))
    core = haar_random_unitary(2 ** len(keep), np.random.default_rng(seed))
    u = Unitary(embed_operator(core.matrix, keep, n))
    np.testing.assert_allclose(partial_trace(u, keep), 2 ** (n - len(keep)) * core.matrix, atol=1e-12)


def test_nuclear_norm_examples(rng):
    assert nuclear_norm(np.eye(5)) == pytest.approx(5)
    assert nuclear_norm(2 * Z) == pytest.approx(4)
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    oracle = np.sqrt(np.clip(np.linalg.eigvalsh(m.conj().T @ m), 0, None)).sum()
    assert abs(nuclear_norm(m) - oracle) <= 1e-9


def test_nuclear_norm_errors():
    with pytest.raises(ParameterError):
        nuclear_norm(np.ones((2, 3)))
    with pytest.raises(CapacityError):
        nuclear_norm(np.eye(128))


@given(m=st.sampled_from([2, 4, 8]), seed=st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_nuclear_norm_unitary_invariance(m, seed):
    r = np.random.default_rng(seed)
    a = r.standard_normal((m, m)) + 1j * r.standard_normal((m, m))
    u, v = haar_random_unitary(m, r), haar_random_unitary(m, r)
    assert abs(nuclear_norm(u.matrix @ a @ v.matrix) - nuclear_norm(a)) <= 1e-8


@given(m=st.sampled_from([2, 4, 8, 16]), tau=st.floats(1e-4, 0.5), seed=st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_nuclear_norm_perturbation_bound(m, tau, seed):
    r = np.random.default_rng(seed)
    a = r.standard_normal((m, m)) + 1j * r.standard_normal((m, m))
    e = tau * r.uniform(0, 1, (m, m)) * np.exp(2j * np.pi * r.uniform(size=(m, m)))
    assert abs(nuclear_norm(a + e) - nuclear_norm(a)) <= m**1.5 * tau + 1e-12


def test_haar_determinism_and_unitarity():
    a = haar_random_unitary(2, np.random.default_rng(11))
    b = haar_random_unitary(2, np.random.default_rng(11))
    np.testing.assert_array_equal(a.matrix, b.matrix)
    r = np.random.default_rng(0)
    for dim in (2, 8, 64):
        u = haar_random_unitary(dim, r).matrix
        assert np.max(np.abs(u.conj().T @ u - np.eye(dim))) <= 1e-10


def test_haar_first_moment():
    r = np.random.default_rng(1)
    vals = [abs(haar_random_unitary(2, r).matrix[0, 0]) ** 2 for _ in range(10_000)]
    assert abs(np.mean(vals) - 0.5) <= 0.02


def test_unitary_rejects_non_unitary():
    with pytest.raises(ParameterError):
        Unitary(np.array([[1, 1], [0, 1]], dtype=complex))
    with pytest.raises(ParameterError):
        Unitary(np.eye(3))


def test_unitary_matrix_is_read_only(rng):
    u = haar_random_unitary(4, rng)
    with pytest.raises(ValueError):
        u.matrix[0, 0] = 0


def test_embed_operator_orders_targets():
    # X on qubit 2 of 2 is I ⊗ X
    np.testing.assert_allclose(embed_operator(X, [2], 2), np.kron(I2, X))
    np.testing.assert_allclose(embed_operator(CNOT, [1, 3], 3)[0b101, 0b100], 1)
