"""Dense complex linear algebra for up to 12 qubits.

Basis indices are big-endian: qubit 1 is the most significant bit.
"""

import numpy as np

from . import subsets
from .errors import CapacityError, ParameterError

MAX_QUBITS = 12
MAX_DIM = 2**MAX_QUBITS
MAX_NUCLEAR_DIM = 2**6
UNITARITY_TOL = 1e-10


def _as_complex_matrix(a):
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ParameterError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ParameterError("matrix has non-finite entries")
    return m


def _qubits_of(dim):
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise ParameterError(f"dimension {dim} is not a power of two >= 2")
    return n


class Unitary:
    """An n-qubit unitary held as a read-only dense matrix.

    Construction checks ``max |U^dagger U - I| <= 1e-10``. Derived data
    (Pauli spectrum, conjugated sampler matrices) is cached on the instance,
    which is safe because the matrix never changes.
    """

    __slots__ = ("matrix", "n", "_cache")

    def __init__(self, matrix, check=True):
        m = _as_complex_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise ParameterError(f"unitary must be square, got {m.shape}")
        if m.shape[0] > MAX_DIM:
            raise CapacityError(f"{m.shape[0]}x{m.shape[0]} exceeds the 2^{MAX_QUBITS} limit")
        n = _qubits_of(m.shape[0])
        if check:
            err = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
            if err > UNITARITY_TOL:
                raise ParameterError(f"matrix is not unitary (max deviation {err:.3e})")
        m = m.copy()
        m.flags.writeable = False
        self.matrix = m
        self.n = n
        self._cache = {}

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __repr__(self):
        return f"Unitary(n={self.n})"

    def __matmul__(self, other):
        return Unitary(self.matrix @ _matrix_of(other))


def _matrix_of(u):
    return u.matrix if isinstance(u, Unitary) else _as_complex_matrix(u)


def tensor_product(a, b):
    """Kronecker product ``a ⊗ b``; ``a`` occupies the more significant qubits."""
    a, b = _matrix_of(a), _matrix_of(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if rows > MAX_DIM or cols > MAX_DIM:
        raise CapacityError(f"tensor product {rows}x{cols} exceeds {MAX_DIM}x{MAX_DIM}")
    return np.kron(a, b)


def partial_trace(u, keep):
    """Trace out every qubit not in ``keep``.

    Returns the ``2^|keep|`` square matrix ``Σ_i (I ⊗ <i|) U (I ⊗ |i>)`` whose
    qubit order is ascending within ``keep``. ``keep = ()`` gives ``[[Tr U]]``.
    """
    m = _matrix_of(u)
    n = _qubits_of(m.shape[0])
    keep = subsets.normalize(keep, n)
    drop = subsets.complement(keep, n)
    k = len(keep)
    t = m.reshape([2] * (2 * n))
    rows = [i - 1 for i in keep] + [i - 1 for i in drop]
    cols = [n + i for i in rows]
    t = t.transpose(rows + cols).reshape(2**k, 2 ** (n - k), 2**k, 2 ** (n - k))
    return np.einsum("iaja->ij", t)


def nuclear_norm(m):
    """Sum of singular values of a square matrix of side at most 64."""
    m = _as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ParameterError(f"nuclear_norm needs a square matrix, got {m.shape}")
    if m.shape[0] > MAX_NUCLEAR_DIM:
        raise CapacityError(f"nuclear_norm limited to {MAX_NUCLEAR_DIM}x{MAX_NUCLEAR_DIM}")
    return float(np.linalg.svd(m, compute_uv=False).sum())


def haar_random_unitary(dim, rng):
    """Haar-distributed unitary from the QR decomposition of a Ginibre matrix.

    The phases of R's diagonal are moved into Q so the law is exactly Haar
    rather than depending on the QR sign convention.
    """
    _qubits_of(dim)
    if dim > MAX_DIM:
        raise CapacityError(f"dimension {dim} exceeds {MAX_DIM}")
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))[None, :]
    return Unitary(q)


def embed_operator(op, targets, n):
    """Place a 2^k x 2^k operator on qubits ``targets`` with identity elsewhere.

    The operator's own qubit order follows ascending ``targets``.
    """
    op = _matrix_of(op)
    targets = subsets.normalize(targets, n)
    k = len(targets)
    if op.shape != (2**k, 2**k):
        raise ParameterError(f"operator shape {op.shape} does not match {k} target qubits")
    if n > MAX_QUBITS:
        raise CapacityError(f"n={n} exceeds {MAX_QUBITS}")
    rest = subsets.complement(targets, n)
    full = np.kron(op, np.eye(2 ** (n - k)))
    order = list(targets) + list(rest)
    # axis a of `full` holds qubit order[a]; invert to natural order
    inv = [order.index(q) for q in range(1, n + 1)]
    t = full.reshape([2] * (2 * n)).transpose(inv + [n + a for a in inv])
    return t.reshape(2**n, 2**n)


def apply_local(m, gate, n, side="left"):
    """Multiply ``gate^{⊗n}`` onto ``m`` from the left or right without forming it."""
    t = np.asarray(m).reshape([2] * (2 * n))
    for q in range(n):
        axis = q if side == "left" else n + q
        if side == "left":
            t = np.tensordot(gate, t, axes=([1], [axis]))
            t = np.moveaxis(t, 0, axis)
        else:
            t = np.tensordot(t, gate, axes=([axis], [0]))
            t = np.moveaxis(t, -1, axis)
    return t.reshape(2**n, 2**n)


def hermitian_exp(g, theta):
    """``exp(i theta G)`` for Hermitian ``G`` via its eigendecomposition."""
    w, v = np.linalg.eigh(g)
    return (v * np.exp(1j * theta * w)[None, :]) @ v.conj().T
