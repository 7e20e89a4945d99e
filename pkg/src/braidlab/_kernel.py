"""Exact Burau determinants through modular evaluation.

alexander_det(strands, letters) returns det(B(w) - I) as an exact Laurent
polynomial, where B is the reduced Burau matrix of the word w.  The
polynomial is recovered from its values: evaluate modulo 31-bit primes at
enough integer points (the exponent range is bounded by a tropical pass over
the column updates), interpolate with Newton divided differences, and lift
coefficients by CRT until two consecutive lifts agree (at least two primes
always run; the ladder is fixed, so results are deterministic).

The per-point evaluation lives in a backend: _burau_c (compiled) when built,
_burau_py (numpy) otherwise.  Set BRAIDLAB_KERNEL=c or =py to force one.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .errors import KernelConvergenceError
from .exactmath import LaurentPoly

__all__ = ["alexander_det", "det_series", "BACKEND_NAME", "exponent_bounds"]

_PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
    2147483549, 2147483543, 2147483497, 2147483489, 2147483477,
    2147483423, 2147483399, 2147483353, 2147483323, 2147483269,
    2147483249, 2147483237, 2147483179, 2147483171, 2147483137,
    2147483123, 2147483077, 2147483069, 2147483059, 2147483053,
)


def _load_backend():
    choice = os.environ.get("BRAIDLAB_KERNEL", "").strip().lower()
    if choice not in ("", "c", "py", "python"):
        raise ValueError(f"BRAIDLAB_KERNEL must be 'c' or 'py', not {choice!r}")
    if choice in ("", "c"):
        try:
            from . import _burau_c as backend
            return backend, "c"
        except ImportError:
            if choice == "c":
                raise
    from . import _burau_py as backend
    return backend, "python"


_BACKEND, BACKEND_NAME = _load_backend()


def det_series(strands: int, letters: Sequence[int],
               xs: np.ndarray, prime: int) -> np.ndarray:
    """det(B(w)(x) - I) mod prime at each x, via the active backend."""
    return _BACKEND.det_series(strands, letters, xs, prime)


def exponent_bounds(strands: int, letters: Sequence[int]) -> tuple[int, int]:
    """Safe bounds [lo, hi] on the exponents of det(B(w) - I).

    Tracks, per column, the possible exponent range of the entries through
    the letter-by-letter column updates (a tropical shadow of the real
    computation; cancellation only shrinks the truth).
    """
    d = strands - 1
    lo = [0] * d
    hi = [0] * d
    for e in letters:
        c = abs(e) - 1
        if e > 0:
            if c >= 1:
                lo[c - 1] = min(lo[c - 1], lo[c] + 1)
                hi[c - 1] = max(hi[c - 1], hi[c] + 1)
            if c + 1 < d:
                lo[c + 1] = min(lo[c + 1], lo[c])
                hi[c + 1] = max(hi[c + 1], hi[c])
            lo[c] += 1
            hi[c] += 1
        else:
            if c >= 1:
                lo[c - 1] = min(lo[c - 1], lo[c])
                hi[c - 1] = max(hi[c - 1], hi[c])
            if c + 1 < d:
                lo[c + 1] = min(lo[c + 1], lo[c] - 1)
                hi[c + 1] = max(hi[c + 1], hi[c] - 1)
            lo[c] -= 1
            hi[c] -= 1
    # the determinant picks one entry per column; the subtracted identity
    # contributes exponent 0 on the diagonal
    return (sum(min(x, 0) for x in lo), sum(max(x, 0) for x in hi))


def _mod_pow_vec(base: np.ndarray, exp: int, p: int) -> np.ndarray:
    out = np.ones_like(base)
    b = base % p
    while exp:
        if exp & 1:
            out = out * b % p
        b = b * b % p
        exp >>= 1
    return out


def _interpolate(xs: np.ndarray, ys: np.ndarray, p: int, lo: int) -> np.ndarray:
    """Coefficients of the polynomial g with g(x) = x**(-lo) * ys(x) mod p.

    xs must be consecutive integers starting at 1, so every level-j divided
    difference has denominator j.
    """
    P = xs.shape[0]
    vals = ys % p
    if lo:
        vals = vals * _mod_pow_vec(xs, (-lo) % (p - 1), p) % p
    c = vals.copy()
    for j in range(1, P):
        inv_j = pow(j, -1, p)
        c[j:] = (c[j:] - c[j - 1:P - 1]) * inv_j % p
    coeffs = np.zeros(P, dtype=np.int64)
    shifted = np.zeros(P, dtype=np.int64)
    for j in range(P - 1, -1, -1):
        shifted[1:] = coeffs[:-1]
        shifted[0] = 0
        coeffs = (shifted - int(xs[j]) * coeffs) % p
        coeffs[0] = (coeffs[0] + c[j]) % p
    return coeffs


def alexander_det(strands: int, letters: Sequence[int]) -> LaurentPoly:
    """Exact det(B(w) - I) for the reduced Burau matrix of the word."""
    if strands < 2:
        raise ValueError("need at least 2 strands")
    letters = list(letters)
    if not letters:
        return LaurentPoly.zero()  # det(I - I)
    lo, hi = exponent_bounds(strands, letters)
    P = hi - lo + 1
    xs = np.arange(1, P + 1, dtype=np.int64)
    combined: list[int] = []
    modulus = 1
    prev_lift: list[int] | None = None
    for prime in _PRIMES:
        ys = det_series(strands, letters, xs, prime)
        coeffs = _interpolate(xs, ys, prime, lo)
        if modulus == 1:
            combined = [int(c) for c in coeffs]
            modulus = prime
        else:
            inv = pow(modulus % prime, -1, prime)
            new = []
            for old, r in zip(combined, coeffs):
                delta = (int(r) - old) % prime
                new.append(old + modulus * (delta * inv % prime))
            combined = new
            modulus *= prime
        half = modulus // 2
        lift = [c - modulus if c > half else c for c in combined]
        if prev_lift is not None and lift == prev_lift:
            return LaurentPoly({lo + i: c for i, c in enumerate(lift) if c})
        prev_lift = lift
    raise KernelConvergenceError(
        f"coefficients did not stabilize after {len(_PRIMES)} primes")
