# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: batched modular Burau determinants.

Same contract as _burau_py.det_series; see that module for the algorithm.
"""

import numpy as np


cdef unsigned long long _pow_mod(unsigned long long b, unsigned long long e,
                                 unsigned long long p) nogil:
    cdef unsigned long long out = 1
    b %= p
    while e:
        if e & 1:
            out = out * b % p
        b = b * b % p
        e >>= 1
    return out


cdef unsigned long long _det_one(long long[:, ::1] M, int d,
                                 unsigned long long p) nogil:
    """Determinant of one d x d matrix mod p, destroying M."""
    cdef unsigned long long det = 1, piv, inv, factor
    cdef int k, r, j, swap
    for k in range(d):
        if M[k, k] == 0:
            swap = -1
            for r in range(k + 1, d):
                if M[r, k] != 0:
                    swap = r
                    break
            if swap < 0:
                return 0
            for j in range(k, d):
                M[k, j], M[swap, j] = M[swap, j], M[k, j]
            det = p - det
        piv = <unsigned long long> M[k, k]
        det = det * piv % p
        if k + 1 < d:
            inv = _pow_mod(piv, p - 2, p)
            for r in range(k + 1, d):
                factor = <unsigned long long> M[r, k] * inv % p
                if factor == 0:
                    continue
                for j in range(k, d):
                    M[r, j] = <long long> ((<unsigned long long> M[r, j]
                               + (p - factor) * <unsigned long long> M[k, j]) % p)
    return det


def det_series(int strands, letters, xs, prime):
    """det(B(w)(x) - I) mod prime for every x in xs (int64 array)."""
    cdef unsigned long long p = <unsigned long long> int(prime)
    cdef long long[::1] lv = np.ascontiguousarray(letters, dtype=np.int64)
    cdef long long[::1] xv = np.ascontiguousarray(xs, dtype=np.int64)
    cdef int d = strands - 1
    cdef Py_ssize_t P = xv.shape[0], i
    out = np.zeros(P, dtype=np.int64)
    cdef long long[::1] ov = out
    if d == 0:
        return out
    cdef long long[:, ::1] M = np.zeros((d, d), dtype=np.int64)
    cdef unsigned long long x, xinv, v
    cdef Py_ssize_t L = lv.shape[0], s
    cdef int e, c, r
    cdef long long[::1] col = np.zeros(d, dtype=np.int64)
    with nogil:
        for i in range(P):
            x = <unsigned long long> xv[i] % p
            xinv = 0
            for r in range(d):
                for c in range(d):
                    M[r, c] = 1 if r == c else 0
            for s in range(L):
                e = <int> lv[s]
                c = (e if e > 0 else -e) - 1
                for r in range(d):
                    col[r] = M[r, c]
                if e > 0:
                    for r in range(d):
                        v = <unsigned long long> col[r]
                        if c >= 1:
                            M[r, c - 1] = <long long> ((<unsigned long long> M[r, c - 1]
                                           + x * v) % p)
                        if c + 1 < d:
                            M[r, c + 1] = <long long> ((<unsigned long long> M[r, c + 1]
                                           + v) % p)
                        M[r, c] = <long long> ((p - x) * v % p)
                else:
                    if xinv == 0:
                        xinv = _pow_mod(x, p - 2, p)
                    for r in range(d):
                        v = <unsigned long long> col[r]
                        if c >= 1:
                            M[r, c - 1] = <long long> ((<unsigned long long> M[r, c - 1]
                                           + v) % p)
                        if c + 1 < d:
                            M[r, c + 1] = <long long> ((<unsigned long long> M[r, c + 1]
                                           + xinv * v) % p)
                        M[r, c] = <long long> ((p - xinv) * v % p)
            for r in range(d):
                M[r, r] = <long long> ((<unsigned long long> M[r, r] + p - 1) % p)
            ov[i] = <long long> _det_one(M, d, p)
    return out
