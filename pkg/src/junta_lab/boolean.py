"""Fourier analysis of Boolean functions f: {±1}^n -> {±1}.

Truth tables are indexed by the input bit pattern b with variable 1 as the
most significant bit, and ``x_i = (-1)^{b_i}``. Subsets S of [n] are stored
as bit masks in the same order, so ``chi_S(x) = (-1)^{popcount(b & S)}``.
"""

from itertools import product

import numpy as np

from . import kernels, subsets
from .errors import CapacityError, ParameterError
from .linalg import MAX_QUBITS, Unitary

MAX_VARS = 14
MAX_ENUMERATION = 5000


class BooleanFunction:
    """Immutable ±1 truth table of length 2^n."""

    __slots__ = ("n", "table", "_spectrum")

    def __init__(self, table):
        t = np.asarray(table)
        if t.ndim != 1:
            raise ParameterError("truth table must be one-dimensional")
        n = int(t.shape[0]).bit_length() - 1
        if t.shape[0] < 2 or 2**n != t.shape[0]:
            raise ParameterError(f"truth table length {t.shape[0]} is not 2^n with n >= 1")
        if n > MAX_VARS:
            raise CapacityError(f"n={n} exceeds {MAX_VARS} variables")
        if not np.all((t == 1) | (t == -1)):
            raise ParameterError("truth table entries must be +1 or -1")
        t = t.astype(np.int8)
        t.flags.writeable = False
        self.n = n
        self.table = t
        self._spectrum = None

    @classmethod
    def from_bits(cls, bits):
        """Build from {0,1} outputs with 0 -> +1 and 1 -> -1."""
        b = np.asarray(bits, dtype=np.int64)
        return cls(1 - 2 * b)

    @classmethod
    def from_callable(cls, n, func):
        """Tabulate ``func`` over {±1}^n inputs given as tuples."""
        return cls([func(tuple(1 - 2 * b for b in bits)) for bits in product((0, 1), repeat=n)])

    def __neg__(self):
        return BooleanFunction(-self.table.astype(np.int64))

    def __eq__(self, other):
        return isinstance(other, BooleanFunction) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"BooleanFunction(n={self.n})"


class FourierSpectrum:
    """Real coefficients f̂(S) indexed by subset bit mask."""

    def __init__(self, n, coefficients):
        c = np.asarray(coefficients, dtype=float).copy()
        c.flags.writeable = False
        self.n = n
        self.coefficients = c

    def __getitem__(self, subset):
        return float(self.coefficients[subsets.to_mask(subsets.normalize(subset, self.n), self.n)])

    def weights(self):
        return self.coefficients**2


def fourier_transform(f):
    """Exact spectrum via the fast Walsh-Hadamard transform, normalised by 2^-n."""
    if f._spectrum is None:
        buf = f.table.astype(np.float64)
        kernels.fwht(buf)
        buf /= 2**f.n
        f._spectrum = FourierSpectrum(f.n, buf)
    return f._spectrum


def _set_sizes(n):
    return np.array([bin(m).count("1") for m in range(2**n)], dtype=np.int64)


def _var(i, n):
    if not 1 <= i <= n:
        raise ParameterError(f"variable index {i} outside [1, {n}]")
    return 1 << (n - i)


def influence_var(f, i):
    """Inf_i(f) = Σ_{S∋i} f̂(S)^2."""
    w = fourier_transform(f).weights()
    bit = _var(i, f.n)
    masks = np.arange(2**f.n)
    return float(w[(masks & bit) != 0].sum())


def influence_var_flip(f, i):
    """Inf_i(f) = Pr_x[f(x) != f(x^{⊕i})], counted directly."""
    bit = _var(i, f.n)
    idx = np.arange(2**f.n)
    return float(np.mean(f.table != f.table[idx ^ bit]))


def degree_k_influence(f, i, k):
    if not 1 <= k <= f.n:
        raise ParameterError(f"degree bound k={k} outside [1, {f.n}]")
    w = fourier_transform(f).weights()
    bit = _var(i, f.n)
    masks = np.arange(2**f.n)
    sel = ((masks & bit) != 0) & (_set_sizes(f.n) <= k)
    return float(w[sel].sum())


def influence_set(f, subset):
    """Inf_T(f) = Σ_{S∩T≠∅} f̂(S)^2."""
    mask = subsets.to_mask(subsets.normalize(subset, f.n), f.n)
    w = fourier_transform(f).weights()
    return float(w[(np.arange(2**f.n) & mask) != 0].sum())


def influence_set_rerandomize(f, subset):
    """Inf_T(f) = 2 Pr_{x,y}[f(x) != f(x^{T̄} y^T)], by exhaustive enumeration."""
    t = subsets.normalize(subset, f.n)
    mask = subsets.to_mask(t, f.n)
    idx = np.arange(2**f.n)
    keep = idx & ~mask
    y = np.arange(2**f.n) & mask
    # distinct y values on T: every subset of the mask
    ys = np.unique(y)
    mismatch = np.mean([np.mean(f.table != f.table[keep | v]) for v in ys])
    return float(2 * mismatch)


def _check_same(f, g):
    if f.n != g.n:
        raise ParameterError(f"variable count mismatch {f.n} vs {g.n}")


def dist_boolean(f, g):
    _check_same(f, g)
    return float(np.mean(f.table != g.table))


def corr_boolean(f, g):
    _check_same(f, g)
    return float(np.mean(f.table.astype(np.int64) * g.table))


def _plurality(f, t):
    """Block sums of f over T̄ for each assignment to T, plus the layout."""
    n, k = f.n, len(t)
    rest = subsets.complement(t, n)
    cube = f.table.astype(np.int64).reshape([2] * n)
    cube = cube.transpose([i - 1 for i in t] + [i - 1 for i in rest])
    sums = cube.reshape(2**k, 2 ** (n - k)).sum(axis=1)
    return sums, rest


def dist_to_junta_on_bool(f, subset):
    """Exact distance to juntas on T and the plurality minimiser g*.

    g*(z) is the sign of f summed over the completions of z, ties -> +1.
    """
    t = subsets.normalize(subset, f.n)
    sums, _ = _plurality(f, t)
    n, k = f.n, len(t)
    block = 2 ** (n - k)
    dist = float(np.sum((block - np.abs(sums)) // 2) / 2**n)
    values = np.where(sums >= 0, 1, -1)
    # expand g* back to the full truth table
    idx = np.arange(2**n)
    z = np.zeros(2**n, dtype=np.int64)
    for pos, i in enumerate(t):
        z |= ((idx >> (n - i)) & 1) << (k - 1 - pos)
    return dist, BooleanFunction(values[z])


def dist_to_k_junta_bool(f, k, candidates=None):
    """Exact ``min_T dist(f, J_T)`` over size-k subsets, lexicographic tie-break."""
    if not 0 <= k <= f.n:
        raise ParameterError(f"k={k} outside [0, {f.n}]")
    pool = tuple(range(1, f.n + 1)) if candidates is None else subsets.normalize(candidates, f.n)
    sets = [pool] if len(pool) < k else subsets.k_subsets(pool, k)
    if len(sets) > MAX_ENUMERATION:
        raise CapacityError(f"{len(sets)} candidate subsets exceed {MAX_ENUMERATION}")
    best, arg = None, None
    for t in sets:
        sums, _ = _plurality(f, t)
        d = float(np.sum((2 ** (f.n - len(t)) - np.abs(sums)) // 2) / 2**f.n)
        if best is None or d < best:
            best, arg = d, t
    return best, arg


def embed_unitary(f):
    """Diagonal unitary U_f = diag(f(x)) over the computational basis."""
    if f.n > MAX_QUBITS:
        raise CapacityError(f"embedding limited to n <= {MAX_QUBITS}")
    return Unitary(np.diag(f.table.astype(complex)), check=False)


def embedded_pauli_index(n):
    """Base-4 index of Z^{S} for every subset mask S (used by identity checks)."""
    masks = np.arange(2**n, dtype=np.int64)
    idx = np.zeros(2**n, dtype=np.int64)
    for i in range(1, n + 1):
        idx |= ((masks >> (n - i)) & 1) * 3 << (2 * (n - i))
    return idx


__all__ = [
    "BooleanFunction",
    "FourierSpectrum",
    "fourier_transform",
    "influence_var",
    "influence_var_flip",
    "degree_k_influence",
    "influence_set",
    "influence_set_rerandomize",
    "dist_boolean",
    "corr_boolean",
    "dist_to_junta_on_bool",
    "dist_to_k_junta_bool",
    "embed_unitary",
    "embedded_pauli_index",
]
