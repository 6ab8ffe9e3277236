# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Signatures mirror :mod:`junta_lab._fallback`."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def fwht(double[::1] a):
    """In-place unnormalised Walsh-Hadamard transform of a length-2^n array."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t h = 1, i, j
    cdef double u, v
    while h < n:
        i = 0
        while i < n:
            for j in range(i, i + h):
                u = a[j]
                v = a[j + h]
                a[j] = u + v
                a[j + h] = u - v
            i += 2 * h
        h *= 2


def pauli_butterfly(double complex[::1] a, int n):
    """In-place per-qubit map from (row, col) digits to Pauli digits.

    ``a`` holds 4^n entries whose base-4 digit for qubit q is ``2*r + c``.
    On return the digit is the Pauli label (0=I, 1=X, 2=Y, 3=Z) and the
    value is the factor ``(1/2) Tr(sigma^dagger B)`` accumulated per qubit.
    """
    cdef Py_ssize_t size = a.shape[0]
    cdef Py_ssize_t stride = 1, block, base, off
    cdef double complex b00, b01, b10, b11
    cdef double complex I = 1j
    cdef int q
    for q in range(n):
        block = 4 * stride
        base = 0
        while base < size:
            for off in range(base, base + stride):
                b00 = a[off]
                b01 = a[off + stride]
                b10 = a[off + 2 * stride]
                b11 = a[off + 3 * stride]
                a[off] = 0.5 * (b00 + b11)
                a[off + stride] = 0.5 * (b01 + b10)
                a[off + 2 * stride] = 0.5 * I * (b01 - b10)
                a[off + 3 * stride] = 0.5 * (b00 - b11)
            base += block
        stride = block


def support_counts(cnp.int64_t[::1] masks, cnp.int64_t[::1] outside):
    """For each entry of ``outside`` count masks that intersect it.

    Masks are histogrammed first, so the pair loop runs over distinct values.
    """
    cdef Py_ssize_t m = masks.shape[0], t = outside.shape[0], i, j, top = 0
    cdef cnp.int64_t o, c
    out = np.zeros(t, dtype=np.int64)
    cdef cnp.int64_t[::1] res = out
    for i in range(m):
        if masks[i] > top:
            top = masks[i]
    hist_arr = np.zeros(top + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] hist = hist_arr
    for i in range(m):
        hist[masks[i]] += 1
    for j in range(t):
        o = outside[j]
        c = 0
        for i in range(1, top + 1):
            if i & o:
                c += hist[i]
        res[j] = c
    return out


def extractor_counts(cnp.int64_t[::1] masks, int n, int k):
    """e[i-1] = number of masks with popcount <= k containing qubit i."""
    cdef Py_ssize_t m = masks.shape[0], s
    cdef cnp.int64_t x
    cdef int w, q
    out = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] e = out
    for s in range(m):
        x = masks[s]
        w = 0
        while x:
            x &= x - 1
            w += 1
        if w == 0 or w > k:
            continue
        x = masks[s]
        for q in range(n):
            if (x >> (n - 1 - q)) & 1:
                e[q] += 1
    return out


def xor_diagonal_sums(double[:, ::1] probs):
    """out[x] = sum_y probs[y ^ x, y] for a square 2^n x 2^n array."""
    cdef Py_ssize_t dim = probs.shape[0], x, y
    cdef double acc
    out = np.zeros(dim, dtype=np.float64)
    cdef double[::1] res = out
    for x in range(dim):
        acc = 0.0
        for y in range(dim):
            acc += probs[y ^ x, y]
        res[x] = acc
    return out
