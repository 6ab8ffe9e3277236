"""Simulation toolkit for tolerant junta testing of unitaries and Boolean functions."""

from .boolean import BooleanFunction, dist_to_k_junta_bool, fourier_transform
from .errors import BudgetExceededError, CapacityError, GenerationError, JuntaLabError, ParameterError
from .extractors import coordinate_extractor, coordinate_extractor_local
from .kernels import BACKEND
from .linalg import Unitary, haar_random_unitary, nuclear_norm, partial_trace
from .oracles import certify
from .pauli import PauliString, dist_to_junta_on, dist_to_k_junta, pauli_spectrum
from .samplers import QueryLedger, fourier_sample, influence_sample, make_rng
from .testers import (
    gapless_tolerant_junta_tester,
    run_tester,
    tolerant_boolean_junta_tester,
    tolerant_boolean_junta_tester_local,
    tolerant_junta_tester,
    tolerant_junta_tester_local,
    warmup_estimator,
)

__version__ = "0.1.0"
