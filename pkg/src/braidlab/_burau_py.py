"""Pure-Python (numpy) kernel: batched modular Burau determinants.

det_series(strands, letters, xs, prime) evaluates det(B(w)(x) - I) modulo a
31-bit prime at every point of xs at once, where B is the reduced Burau
matrix of the word.  Columns are updated letter by letter; the determinant
uses Gaussian elimination with vectorized Fermat inverses.  All products of
two residues stay below 2**62, so int64 arithmetic is exact.

The compiled backend in _burau_c implements the same contract; both must
return identical arrays.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

BACKEND = "python"


def _mod_pow(base: np.ndarray, exp: int, p: int) -> np.ndarray:
    out = np.ones_like(base)
    b = base % p
    while exp:
        if exp & 1:
            out = out * b % p
        b = b * b % p
        exp >>= 1
    return out


def _burau_values(strands: int, letters: Sequence[int],
                  xs: np.ndarray, p: int) -> np.ndarray:
    """Reduced Burau matrix minus identity, evaluated at each x: (d, d, P)."""
    d = strands - 1
    P = xs.shape[0]
    B = np.zeros((d, d, P), dtype=np.int64)
    idx = np.arange(d)
    B[idx, idx, :] = 1
    xinv = None
    for e in letters:
        c = abs(e) - 1
        col = B[:, c, :].copy()
        if e > 0:
            if c >= 1:
                B[:, c - 1, :] = (B[:, c - 1, :] + xs * col) % p
            if c + 1 < d:
                B[:, c + 1, :] = (B[:, c + 1, :] + col) % p
            B[:, c, :] = (p - xs) * col % p
        else:
            if xinv is None:
                xinv = _mod_pow(xs, p - 2, p)
            if c >= 1:
                B[:, c - 1, :] = (B[:, c - 1, :] + col) % p
            if c + 1 < d:
                B[:, c + 1, :] = (B[:, c + 1, :] + xinv * col) % p
            B[:, c, :] = (p - xinv) * col % p
    B[idx, idx, :] = (B[idx, idx, :] - 1) % p
    return B


def det_series(strands: int, letters: Sequence[int],
               xs: np.ndarray, prime: int) -> np.ndarray:
    """det(B(w)(x) - I) mod prime for every x in xs."""
    p = int(prime)
    xs = np.asarray(xs, dtype=np.int64)
    d = strands - 1
    if d == 0:
        return np.zeros_like(xs)
    M = _burau_values(strands, letters, xs, p)
    P = xs.shape[0]
    det = np.ones(P, dtype=np.int64)
    alive = np.ones(P, dtype=bool)  # points whose determinant is still nonzero
    for k in range(d):
        piv = M[k, k, :]
        need = alive & (piv == 0)
        for r in range(k + 1, d):
            if not need.any():
                break
            swap = need & (M[r, k, :] != 0)
            if swap.any():
                tmp = M[k, :, swap].copy()
                M[k, :, swap] = M[r, :, swap]
                M[r, :, swap] = tmp
                det[swap] = p - det[swap]
                need &= M[k, k, :] == 0
        piv = M[k, k, :]
        dead = alive & (piv == 0)
        if dead.any():
            alive &= ~dead
            # harmless pivot so the batched arithmetic stays defined
            M[k, k, dead] = 1
            piv = M[k, k, :]
        det = det * piv % p
        if k + 1 < d:
            inv = _mod_pow(piv, p - 2, p)
            for r in range(k + 1, d):
                factor = M[r, k, :] * inv % p
                M[r, k:, :] = (M[r, k:, :] - factor * M[k, k:, :]) % p
    det[~alive] = 0
    return det
