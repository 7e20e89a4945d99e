import subprocess
import sys

import numpy as np
import pytest

from braidlab import _burau_py, _kernel
from braidlab.braid import BraidWord, torus_braid
from braidlab.closure import reduced_burau

try:
    from braidlab import _burau_c
except ImportError:
    _burau_c = None

WORDS = [
    (2, [1, 1, 1]),
    (3, [1, 2] * 4),
    (3, [1, -2, 1, -2]),
    (4, [1, 2, 3] * 5),
    (5, [1, 2, 3, 4] * 6),
    (4, [2, -3, 2, 1, 1, -3]),
]


@pytest.mark.skipif(_burau_c is None, reason="compiled backend not built")
@pytest.mark.parametrize("strands,letters", WORDS)
def test_backends_agree(strands, letters):
    p = 2147483647
    xs = np.arange(1, 40, dtype=np.int64)
    a = _burau_py.det_series(strands, letters, xs, p)
    b = _burau_c.det_series(strands, letters, xs, p)
    assert np.array_equal(np.asarray(a) % p, np.asarray(b) % p)


@pytest.mark.parametrize("strands,letters", WORDS)
def test_det_series_matches_exact_matrix(strands, letters):
    """Modular evaluation equals the exact reduced Burau determinant."""
    p = 2147483629
    word = BraidWord(strands, letters)
    m = reduced_burau(word)
    n = len(m)
    xs = np.array([2, 3, 5], dtype=np.int64)
    got = np.asarray(_kernel.det_series(strands, letters, xs, p)) % p
    from fractions import Fraction
    for k, x in enumerate(xs):
        rows = [[(m[i][j] - (1 if i == j else 0)).evaluate(Fraction(int(x)))
                 for j in range(n)] for i in range(n)]
        det = _fraction_det(rows)
        assert det.denominator == 1 or pow(det.denominator, -1, p)
        want = int(det.numerator) * pow(int(det.denominator), -1, p) % p
        assert got[k] == want, (strands, letters, x)


def _fraction_det(rows):
    from fractions import Fraction
    n = len(rows)
    rows = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = rows[c][c]
        for r in range(c + 1, n):
            f = rows[r][c] / inv
            for j in range(c, n):
                rows[r][j] -= f * rows[c][j]
    return det


def test_exponent_bounds_contain_support():
    for strands, letters in WORDS:
        lo, hi = _kernel.exponent_bounds(strands, letters)
        det = _kernel.alexander_det(strands, letters)
        if not det.is_zero:
            assert lo <= det.min_exp()
            assert det.max_exp() <= hi


def test_alexander_det_deterministic():
    a = _kernel.alexander_det(4, [1, 2, 3] * 5)
    b = _kernel.alexander_det(4, [1, 2, 3] * 5)
    assert a == b


def test_alexander_det_empty_word():
    assert _kernel.alexander_det(3, []).is_zero


def test_kernel_env_override():
    code = (
        "from braidlab import _kernel\n"
        "print(_kernel.BACKEND_NAME)\n"
        "print(_kernel.alexander_det(3, [1, 2, 1, 2]).to_json_dict())\n"
    )
    out_py = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True, env={"BRAIDLAB_KERNEL": "py"})
    assert out_py.returncode == 0, out_py.stderr
    assert out_py.stdout.splitlines()[0] == "python"
    out_auto = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env={})
    assert out_auto.returncode == 0, out_auto.stderr
    assert out_py.stdout.splitlines()[1] == out_auto.stdout.splitlines()[1]


def test_kernel_env_rejects_unknown():
    out = subprocess.run(
        [sys.executable, "-c", "import braidlab._kernel"],
        capture_output=True, text=True, env={"BRAIDLAB_KERNEL": "fortran"})
    assert out.returncode != 0
