"""Simulated quantum subroutines with exact query accounting.

Fourier-Sample draws from the exact Pauli weight distribution. Influence-Sample
is simulated at the circuit level. The Hadamard test returns binomial shot
statistics around the true amplitude.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import CapacityError, ParameterError
from .linalg import Unitary, apply_local
from .pauli import PauliString, pauli_spectrum

MAX_EXACT_INFLUENCE_QUBITS = 6
_CDF_CACHE_LIMIT = 2**10
_CHUNK = 1 << 18

GATES = {
    "I": np.eye(2, dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "R": np.array([[1, -1j], [-1j, 1]], dtype=complex) / np.sqrt(2),
}


def make_rng(seed):
    """Seeded PCG64 generator; equal seeds reproduce equal transcripts."""
    return np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)


@dataclass
class QueryLedger:
    """Running counts of simulated oracle uses.

    ``marks`` records labelled snapshots so callers can check the order in
    which phases of an algorithm consumed queries.
    """

    fourier_sample_calls: int = 0
    influence_sample_calls: int = 0
    controlled_U_applications: int = 0
    marks: list = field(default_factory=list)

    def snapshot(self):
        return {
            "fourier_sample_calls": self.fourier_sample_calls,
            "influence_sample_calls": self.influence_sample_calls,
            "controlled_U_applications": self.controlled_U_applications,
        }

    def mark(self, label):
        self.marks.append((label, self.snapshot()))


def _ledger(ledger):
    return QueryLedger() if ledger is None else ledger


# --- Fourier-Sample -------------------------------------------------------

def _spectrum_cdf(spec):
    cdf = getattr(spec, "_cdf", None)
    if cdf is None:
        cdf = np.cumsum(spec.weights)
        cdf /= cdf[-1]
        spec._cdf = cdf
    return cdf


def fourier_sample_indices(u, m, rng, ledger=None):
    """``m`` independent Fourier-Sample outcomes as base-4 indices.

    Each outcome counts as one call.
    """
    spec = pauli_spectrum(u)
    cdf = _spectrum_cdf(spec)
    out = np.empty(m, dtype=np.int64)
    for start in range(0, m, _CHUNK):
        stop = min(m, start + _CHUNK)
        out[start:stop] = np.searchsorted(cdf, rng.random(stop - start), side="right")
    np.minimum(out, cdf.shape[0] - 1, out=out)
    _ledger(ledger).fourier_sample_calls += m
    return out


def fourier_sample_masks(u, m, rng, ledger=None):
    """Support bit masks of ``m`` Fourier-Sample outcomes."""
    spec = pauli_spectrum(u)
    return spec.masks[fourier_sample_indices(spec, m, rng, ledger)]


def fourier_sample(u, rng, ledger=None):
    """One Pauli string x drawn with probability |Û(x)|^2."""
    spec = pauli_spectrum(u)
    idx = fourier_sample_indices(spec, 1, rng, ledger)[0]
    return PauliString.from_index(int(idx), spec.n)


def choi_state(u):
    """|v(U)> = (U ⊗ I) Σ_i |i>|i> / sqrt(N), as a length-N^2 vector."""
    m = u.matrix if isinstance(u, Unitary) else np.asarray(u, dtype=complex)
    return m.reshape(-1) / np.sqrt(m.shape[0])


# --- Influence-Sample -----------------------------------------------------

def _check_gates(gates):
    if not gates or any(g not in GATES for g in gates) or len(set(gates)) != len(gates):
        raise ParameterError(f"gate set must be distinct letters from 'IHR', got {gates!r}")
    return gates


def conjugated(u, gate):
    """(V^{⊗n})^† U V^{⊗n} for a single-qubit gate V, cached on ``u``."""
    key = ("conj", gate)
    if key not in u._cache:
        v = GATES[gate]
        m = apply_local(u.matrix, v, u.n, side="right")
        m = apply_local(m, v.conj().T, u.n, side="left")
        u._cache[key] = m
    return u._cache[key]


def _column_cdfs(u, gate):
    """Column-wise CDFs of |W_V|^2, row y shifted by +y and flattened.

    The shift makes one sorted array, so a draw for column y is a single
    ``searchsorted`` at ``y + uniform``.
    """
    key = ("colcdf", gate)
    if key not in u._cache:
        p = np.abs(conjugated(u, gate)) ** 2
        cdf = np.cumsum(p, axis=0)
        cdf /= cdf[-1:, :]
        flat = cdf.T + np.arange(u.dim)[:, None]
        u._cache[key] = np.ascontiguousarray(flat).reshape(-1)
    return u._cache[key]


def _product_state(v, y, n):
    state = np.ones(1, dtype=complex)
    for q in range(n):
        bit = (y >> (n - 1 - q)) & 1
        state = np.kron(state, v[:, bit])
    return state


def _one_influence_draw(u, gate, y, rng):
    v = GATES[gate]
    state = u.matrix @ _product_state(v, y, u.n)
    state = state.reshape([2] * u.n)
    vd = v.conj().T
    for q in range(u.n):
        state = np.moveaxis(np.tensordot(vd, state, axes=([1], [q])), 0, q)
    p = np.abs(state.reshape(-1)) ** 2
    cdf = np.cumsum(p)
    return min(int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right")), p.shape[0] - 1)


def influence_sample_masks(u, m, rng, ledger=None, gates="IHR"):
    """``m`` Influence-Sample outcomes x = y ⊕ y' as integer bit patterns.

    Per draw: y uniform, V uniform from ``gates``, y' measured from
    (V^{⊗n})^† U V^{⊗n} |y>. Qubit 1 is the most significant bit of x.
    """
    if not isinstance(u, Unitary):
        u = Unitary(u)
    gates = _check_gates(gates)
    dim = u.dim
    ys = rng.integers(0, dim, size=m)
    vs = rng.integers(0, len(gates), size=m)
    us = rng.random(m)
    out = np.empty(m, dtype=np.int64)
    if dim <= _CDF_CACHE_LIMIT:
        for g, gate in enumerate(gates):
            sel = np.nonzero(vs == g)[0]
            if sel.size == 0:
                continue
            flat = _column_cdfs(u, gate)
            pos = np.searchsorted(flat, ys[sel] + us[sel], side="right")
            out[sel] = np.clip(pos - ys[sel] * dim, 0, dim - 1)
    else:
        for s in range(m):
            out[s] = _one_influence_draw(u, gates[vs[s]], int(ys[s]), rng)
    _ledger(ledger).influence_sample_calls += m
    return out ^ ys


def influence_sample(u, rng, ledger=None, gates="IHR"):
    """One Influence-Sample outcome as a tuple of bits (x_1, ..., x_n)."""
    if not isinstance(u, Unitary):
        u = Unitary(u)
    x = int(influence_sample_masks(u, 1, rng, ledger, gates)[0])
    return tuple((x >> (u.n - i)) & 1 for i in range(1, u.n + 1))


def influence_sample_exact_distribution(u, gates="IHR"):
    """Exact output law of Influence-Sample by enumerating every (V, y) branch.

    Returns an array ``p`` of length 2^n with ``p[x] = Pr[output = x]``.
    """
    if not isinstance(u, Unitary):
        u = Unitary(u)
    gates = _check_gates(gates)
    if u.n > MAX_EXACT_INFLUENCE_QUBITS:
        raise CapacityError(f"exact enumeration limited to n <= {MAX_EXACT_INFLUENCE_QUBITS}")
    total = np.zeros(u.dim)
    for gate in gates:
        probs = np.ascontiguousarray(np.abs(conjugated(u, gate)) ** 2)
        total += kernels.xor_diagonal_sums(probs)
    return total / (len(gates) * u.dim)


# --- Hadamard test ----------------------------------------------------------

def hadamard_shots(tau, delta):
    """Shots per quadrature: ceil(2 ln(4/δ) / (τ/√2)^2)."""
    if not (0 < tau < 1 and 0 < delta < 1):
        raise ParameterError(f"need 0 < tau, delta < 1, got tau={tau}, delta={delta}")
    return math.ceil(2 * math.log(4 / delta) / (tau / math.sqrt(2)) ** 2)


def hadamard_estimates(amplitudes, shots, rng):
    """Vectorised Hadamard-test estimates of the given true amplitudes."""
    a = np.asarray(amplitudes, dtype=complex)
    p_re = np.clip((1 + a.real) / 2, 0.0, 1.0)
    p_im = np.clip((1 + a.imag) / 2, 0.0, 1.0)
    re = rng.binomial(shots, p_re) / shots
    im = rng.binomial(shots, p_im) / shots
    return (2 * re - 1) + 1j * (2 * im - 1)


def hadamard_test_estimate(u, bra, ket, tau, delta, rng, ledger=None):
    """Estimate <bra|U|ket> to additive error tau with probability >= 1 - delta."""
    if not isinstance(u, Unitary):
        u = Unitary(u)
    if not (0 <= bra < u.dim and 0 <= ket < u.dim):
        raise ParameterError(f"basis indices ({bra}, {ket}) outside [0, {u.dim})")
    m = hadamard_shots(tau, delta)
    est = hadamard_estimates(u.matrix[bra, ket], m, rng)
    _ledger(ledger).controlled_U_applications += 2 * m
    return complex(est)


__all__ = [
    "GATES",
    "QueryLedger",
    "make_rng",
    "fourier_sample",
    "fourier_sample_indices",
    "fourier_sample_masks",
    "choi_state",
    "conjugated",
    "influence_sample",
    "influence_sample_masks",
    "influence_sample_exact_distribution",
    "hadamard_shots",
    "hadamard_estimates",
    "hadamard_test_estimate",
]
