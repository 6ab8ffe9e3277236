"""Brute-force ground truth used to certify instances and check samplers."""

from dataclasses import dataclass

from .boolean import (
    BooleanFunction,
    degree_k_influence as bool_degree_k_influence,
    dist_to_k_junta_bool,
    influence_var,
)
from .errors import CapacityError
from .linalg import Unitary
from .pauli import degree_k_influence, dist_to_k_junta, influence_qubit

YES, NO, NEITHER = "YES", "NO", "NEITHER"
MAX_CERTIFY_QUBITS = 6
MAX_CERTIFY_K = 3
MAX_CERTIFY_VARS = 12


@dataclass(frozen=True)
class Certificate:
    classification: str
    distance: float
    witness: tuple


def classify(d, eps1, eps2):
    if d <= eps1:
        return YES
    if d >= eps2:
        return NO
    return NEITHER


def certify_instance_unitary(u, k, eps1, eps2):
    """Exact distance to the k-junta class and the YES/NO/NEITHER label."""
    if not isinstance(u, Unitary):
        u = Unitary(u)
    if u.n > MAX_CERTIFY_QUBITS or k > MAX_CERTIFY_K:
        raise CapacityError(f"certification limited to n <= {MAX_CERTIFY_QUBITS}, k <= {MAX_CERTIFY_K}")
    d, t = dist_to_k_junta(u, k)
    return Certificate(classify(d, eps1, eps2), d, t)


def certify_instance_boolean(f, k, eps1, eps2):
    if f.n > MAX_CERTIFY_VARS:
        raise CapacityError(f"certification limited to n <= {MAX_CERTIFY_VARS}")
    d, t = dist_to_k_junta_bool(f, k)
    return Certificate(classify(d, eps1, eps2), d, t)


def certify(instance, k, eps1, eps2):
    if isinstance(instance, BooleanFunction):
        return certify_instance_boolean(instance, k, eps1, eps2)
    return certify_instance_unitary(instance, k, eps1, eps2)


def exact_influence_profile(instance, k):
    """``[(Inf_i, Inf_i^{<=k}) for i in 1..n]`` for a unitary or Boolean function."""
    if isinstance(instance, BooleanFunction):
        return [
            (influence_var(instance, i), bool_degree_k_influence(instance, i, k))
            for i in range(1, instance.n + 1)
        ]
    if not isinstance(instance, Unitary):
        instance = Unitary(instance)
    return [
        (influence_qubit(instance, i), degree_k_influence(instance, i, k))
        for i in range(1, instance.n + 1)
    ]
