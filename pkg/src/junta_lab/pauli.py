"""Pauli (Fourier) analysis of unitaries and exact distances to junta classes.

Pauli strings are indexed by their base-4 encoding with qubit 1 as the most
significant digit; digit values are 0=I, 1=X, 2=Y, 3=Z.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels, subsets
from .errors import CapacityError, ParameterError
from .linalg import Unitary, nuclear_norm, partial_trace

MAX_SPECTRUM_QUBITS = 8
MAX_JUNTA_SET = 6
PARSEVAL_TOL = 1e-9
LABELS = "IXYZ"

PAULI_MATRICES = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class PauliString:
    word: tuple

    def __post_init__(self):
        if any(d not in (0, 1, 2, 3) for d in self.word):
            raise ParameterError(f"Pauli word {self.word} has symbols outside 0..3")

    @property
    def n(self):
        return len(self.word)

    @property
    def support(self):
        return frozenset(i + 1 for i, d in enumerate(self.word) if d)

    @property
    def weight(self):
        return sum(1 for d in self.word if d)

    @property
    def index(self):
        idx = 0
        for d in self.word:
            idx = 4 * idx + d
        return idx

    @property
    def label(self):
        return "".join(LABELS[d] for d in self.word)

    @classmethod
    def from_index(cls, index, n):
        word = []
        for _ in range(n):
            word.append(index & 3)
            index >>= 2
        return cls(tuple(reversed(word)))

    @classmethod
    def from_label(cls, label):
        return cls(tuple(LABELS.index(c) for c in label.upper()))

    def matrix(self):
        m = np.ones((1, 1), dtype=complex)
        for d in self.word:
            m = np.kron(m, PAULI_MATRICES[d])
        return m


@lru_cache(maxsize=None)
def support_table(n):
    """Support bit mask and weight |x| for every base-4 index of ``n`` qubits."""
    idx = np.arange(4**n, dtype=np.int64)
    masks = np.zeros(4**n, dtype=np.int64)
    for i in range(1, n + 1):
        digit = (idx >> (2 * (n - i))) & 3
        masks |= (digit != 0).astype(np.int64) << (n - i)
    weights = np.array([bin(int(m)).count("1") for m in range(2**n)], dtype=np.int64)[masks]
    masks.flags.writeable = False
    weights.flags.writeable = False
    return masks, weights


class PauliSpectrum:
    """Coefficients Û(x) of ``U = Σ_x Û(x) σ_x`` for all 4^n Pauli strings."""

    def __init__(self, n, coefficients):
        c = np.asarray(coefficients, dtype=complex)
        if c.shape != (4**n,):
            raise ParameterError(f"expected {4**n} coefficients, got {c.shape}")
        c = c.copy()
        c.flags.writeable = False
        self.n = n
        self.coefficients = c
        self.weights = np.abs(c) ** 2
        self.weights.flags.writeable = False
        self.masks, self.support_sizes = support_table(n)

    def __getitem__(self, x):
        if isinstance(x, str):
            x = PauliString.from_label(x)
        if isinstance(x, PauliString):
            x = x.index
        return self.coefficients[x]

    def total_weight(self):
        return float(self.weights.sum())

    def top(self, m):
        """The ``m`` largest weights as ``(PauliString, weight)`` pairs."""
        order = np.argsort(-self.weights, kind="stable")[:m]
        return [(PauliString.from_index(int(i), self.n), float(self.weights[i])) for i in order]


def pauli_spectrum(u):
    """Pauli spectrum of a unitary (n <= 8), cached on the ``Unitary``."""
    if isinstance(u, PauliSpectrum):
        return u
    if not isinstance(u, Unitary):
        u = Unitary(u)
    cached = u._cache.get("spectrum")
    if cached is not None:
        return cached
    n = u.n
    if n > MAX_SPECTRUM_QUBITS:
        raise CapacityError(f"dense Pauli spectrum limited to n <= {MAX_SPECTRUM_QUBITS}")
    # interleave (r_1, c_1, r_2, c_2, ...) so each base-4 digit is 2r + c
    t = u.matrix.reshape([2] * (2 * n))
    order = [a for q in range(n) for a in (q, n + q)]
    buf = np.ascontiguousarray(t.transpose(order)).reshape(-1).astype(complex)
    kernels.pauli_butterfly(buf, n)
    spec = PauliSpectrum(n, buf)
    total = spec.total_weight()
    if abs(total - 1.0) > PARSEVAL_TOL:
        raise ParameterError(f"Parseval violated: total weight {total!r}")
    u._cache["spectrum"] = spec
    return spec


def _qubit(i, n):
    if not 1 <= i <= n:
        raise ParameterError(f"qubit index {i} outside [1, {n}]")
    return 1 << (n - i)


def influence_qubit(u, i):
    s = pauli_spectrum(u)
    bit = _qubit(i, s.n)
    return float(s.weights[(s.masks & bit) != 0].sum())


def degree_k_influence(u, i, k):
    s = pauli_spectrum(u)
    bit = _qubit(i, s.n)
    if not 1 <= k <= s.n:
        raise ParameterError(f"degree bound k={k} outside [1, {s.n}]")
    sel = ((s.masks & bit) != 0) & (s.support_sizes <= k)
    return float(s.weights[sel].sum())


def influence_set(u, subset):
    """Total weight on Pauli strings whose support meets ``subset``."""
    s = pauli_spectrum(u)
    mask = subsets.to_mask(subsets.normalize(subset, s.n), s.n)
    return float(s.weights[(s.masks & mask) != 0].sum())


def dist_unitary(u, v):
    """Phase-minimised normalised Frobenius distance ``sqrt(1 - |Tr(U^† V)|/N)``."""
    a = u.matrix if isinstance(u, Unitary) else np.asarray(u, dtype=complex)
    b = v.matrix if isinstance(v, Unitary) else np.asarray(v, dtype=complex)
    if a.shape != b.shape:
        raise ParameterError(f"dimension mismatch {a.shape} vs {b.shape}")
    overlap = abs(np.vdot(a, b)) / a.shape[0]
    return float(np.sqrt(max(0.0, 1.0 - overlap)))


def dist_to_junta_on(u, subset):
    """Exact distance to unitaries acting only on ``subset``.

    ``sqrt(1 - ||Tr_{T̄}(U)||_* / N)`` with the radicand floored at zero.
    """
    if not isinstance(u, Unitary):
        u = Unitary(u)
    t = subsets.normalize(subset, u.n)
    if len(t) > MAX_JUNTA_SET:
        raise CapacityError(f"|T| = {len(t)} exceeds the SVD limit {MAX_JUNTA_SET}")
    key = ("dist_on", t)
    if key not in u._cache:
        nn = nuclear_norm(partial_trace(u, t))
        u._cache[key] = float(np.sqrt(max(0.0, 1.0 - nn / u.dim)))
    return u._cache[key]


def _candidate_sets(n, k, candidates):
    pool = range(1, n + 1) if candidates is None else subsets.normalize(candidates, n)
    pool = tuple(pool)
    if len(pool) < k:
        return [pool]
    return subsets.k_subsets(pool, k)


MAX_ENUMERATION = 5000


def dist_to_k_junta(u, k, candidates=None):
    """Exact ``min_T dist(U, J_T)`` over size-k subsets of ``candidates``.

    Returns ``(distance, T*)`` with ties broken toward the lexicographically
    smallest subset. If fewer than ``k`` candidates exist, the single subset
    ``T = candidates`` is used.
    """
    if not isinstance(u, Unitary):
        u = Unitary(u)
    if not 0 <= k <= u.n:
        raise ParameterError(f"k={k} outside [0, {u.n}]")
    sets = _candidate_sets(u.n, k, candidates)
    if len(sets) > MAX_ENUMERATION:
        raise CapacityError(f"{len(sets)} candidate subsets exceed {MAX_ENUMERATION}")
    best, arg = None, None
    for t in sets:
        d = dist_to_junta_on(u, t)
        if best is None or d < best - 1e-12:
            best, arg = d, t
    return best, arg
