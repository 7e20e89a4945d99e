"""Compare the compiled and pure-python Burau kernels.

Times det_series (the per-prime evaluation loop) and the full exact
alexander_det pipeline on a few torus braids of growing size.

    python3 benchmarks/bench_burau.py
"""

import time

import numpy as np

from braidlab import _burau_py, _kernel
from braidlab.braid import torus_braid

try:
    from braidlab import _burau_c
except ImportError:
    _burau_c = None

PRIME = 2147483647
CASES = [(3, 20), (4, 25), (5, 30), (6, 35), (8, 40)]


def time_backend(backend, strands, letters, xs, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        backend.det_series(strands, letters, xs, PRIME)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    print(f"active kernel: {_kernel.BACKEND_NAME}")
    if _burau_c is None:
        print("compiled kernel not built; timing the python backend only")
    header = f"{'braid':>10} {'points':>6} {'python':>10}"
    if _burau_c is not None:
        header += f" {'compiled':>10} {'speedup':>8}"
    print(header)
    for p, q in CASES:
        word = torus_braid(p, q)
        lo, hi = _kernel.exponent_bounds(word.strands, word.letters)
        xs = np.arange(1, hi - lo + 2, dtype=np.int64)
        t_py = time_backend(_burau_py, word.strands, list(word.letters), xs)
        row = f"T({p},{q})".rjust(10) + f" {len(xs):>6} {t_py * 1e3:>8.2f}ms"
        if _burau_c is not None:
            t_c = time_backend(_burau_c, word.strands, list(word.letters), xs)
            row += f" {t_c * 1e3:>8.2f}ms {t_py / t_c:>7.1f}x"
        print(row)

    print("\nfull alexander_det (exact, CRT over the prime ladder):")
    for p, q in CASES:
        word = torus_braid(p, q)
        t0 = time.perf_counter()
        _kernel.alexander_det(word.strands, list(word.letters))
        print(f"T({p},{q})".rjust(10) + f" {(time.perf_counter() - t0) * 1e3:>8.2f}ms")


if __name__ == "__main__":
    main()
