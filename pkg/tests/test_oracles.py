import math

import numpy as np
import pytest

from junta_lab.boolean import BooleanFunction, dist_to_k_junta_bool, embed_unitary
from junta_lab.errors import CapacityError
from junta_lab.linalg import Unitary, embed_operator, haar_random_unitary
from junta_lab.oracles import NEITHER, NO, YES, certify, certify_instance_boolean, certify_instance_unitary, exact_influence_profile
from junta_lab.pauli import dist_to_k_junta

MAJ3 = BooleanFunction.from_callable(3, lambda x: 1 if sum(x) > 0 else -1)
PAR3 = BooleanFunction.from_callable(3, lambda x: x[0] * x[1] * x[2])


def test_unitary_certificates(gates, rng):
    core = haar_random_unitary(4, rng)
    c = certify_instance_unitary(Unitary(embed_operator(core.matrix, [2, 4], 5)), 2, 0.1, 0.5)
    assert c.classification == YES and c.distance == pytest.approx(0, abs=1e-6)
    c = certify_instance_unitary(gates["SWAP"], 1, 0.3, 0.6)
    assert (c.classification, c.distance) == (NO, pytest.approx(math.sqrt(0.5)))
    c = certify_instance_unitary(gates["SWAP"], 1, 0.3, 0.8)
    assert (c.classification, c.distance) == (NEITHER, pytest.approx(math.sqrt(0.5)))


def test_boolean_certificates():
    junta = BooleanFunction.from_callable(4, lambda x: x[0] * x[2])
    assert certify_instance_boolean(junta, 2, 0.1, 0.4).classification == YES
    c = certify_instance_boolean(PAR3, 2, 0.1, 0.4)
    assert (c.classification, c.distance) == (NO, 0.5)
    c = certify(MAJ3, 1, 0.3, 0.6)
    assert (c.classification, c.distance) == (YES, 0.25)


def test_capacity_limits():
    with pytest.raises(CapacityError):
        certify_instance_unitary(Unitary(np.eye(2**7)), 1, 0.1, 0.5)
    with pytest.raises(CapacityError):
        certify_instance_unitary(Unitary(np.eye(2**5)), 4, 0.1, 0.5)
    with pytest.raises(CapacityError):
        certify_instance_boolean(BooleanFunction(np.ones(2**13)), 1, 0.1, 0.5)


def test_influence_profiles(gates):
    assert exact_influence_profile(Unitary(np.eye(8)), 2) == [(0.0, 0.0)] * 3
    prof = exact_influence_profile(gates["CNOT"], 1)
    assert prof[0][1] == pytest.approx(0.25) and prof[1][1] == pytest.approx(0.25)
    for inf, low in exact_influence_profile(MAJ3, 1):
        assert inf == pytest.approx(0.5) and low == pytest.approx(0.25)


def test_embedded_distance_never_exceeds_boolean_bound(rng):
    for _ in range(40):
        n = int(rng.integers(2, 6))
        k = int(rng.integers(1, min(n, 4)))
        f = BooleanFunction(rng.choice([-1, 1], size=2**n))
        du = dist_to_k_junta(embed_unitary(f), k)[0]
        db = dist_to_k_junta_bool(f, k)[0]
        assert du <= math.sqrt(2 * db) + 1e-9
