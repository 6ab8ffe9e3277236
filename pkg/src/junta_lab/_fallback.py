"""Numpy implementations of the compiled kernels in ``_kernels.pyx``."""

import numpy as np

BACKEND = "numpy"

# (row, col) digit 2r+c -> Pauli digit, each row is (1/2) conj(sigma_a) flattened
_PAULI_FROM_RC = 0.5 * np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1j, -1j, 0],
        [1, 0, 0, -1],
    ],
    dtype=complex,
)


def fwht(a):
    n = a.shape[0]
    h = 1
    while h < n:
        view = a.reshape(-1, 2, h)
        lo = view[:, 0, :].copy()
        hi = view[:, 1, :]
        view[:, 0, :] += hi
        view[:, 1, :] = lo - hi
        h *= 2


def pauli_butterfly(a, n):
    for q in range(n):
        stride = 4**q
        view = a.reshape(-1, 4, stride)
        view[...] = np.einsum("ab,kbs->kas", _PAULI_FROM_RC, view)


def support_counts(masks, outside, chunk=1 << 16):
    out = np.zeros(outside.shape[0], dtype=np.int64)
    # collapse duplicate masks first; there are at most 2^n distinct values
    values, mult = np.unique(masks, return_counts=True)
    for start in range(0, values.shape[0], chunk):
        v = values[start:start + chunk]
        m = mult[start:start + chunk]
        hit = (v[None, :] & outside[:, None]) != 0
        out += hit.astype(np.int64) @ m
    return out


def extractor_counts(masks, n, k):
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (masks[:, None] >> shifts[None, :]) & 1
    weight = bits.sum(axis=1)
    keep = (weight >= 1) & (weight <= k)
    return bits[keep].sum(axis=0).astype(np.int64)


def xor_diagonal_sums(probs):
    dim = probs.shape[0]
    y = np.arange(dim)
    rows = y[None, :] ^ y[:, None]  # rows[x, y] = y ^ x
    return probs[rows, y[None, :]].sum(axis=1)
