import os
import subprocess
import sys

import numpy as np
import pytest

from semiloc import _accel
from semiloc.constructions import matrix_algebra, path_algebra, prime_field, truncated_polynomial, upper_triangular

needs_numba = pytest.mark.skipif(_accel.numba_kernels is None, reason="numba missing")

ALGEBRAS = [
    lambda: matrix_algebra(2, 2),
    lambda: upper_triangular(prime_field(2), 3)[0],
    lambda: truncated_polynomial(4, 3),
    lambda: path_algebra(3, 3, [(0, 1), (1, 2)], 2),
]


def test_encode_decode_roundtrip():
    idx = np.arange(3**4)
    c = _accel.decode_indices(idx, 4, 3)
    assert np.array_equal(_accel.encode_coords(c, 3), idx)
    assert c[1].tolist() == [0, 0, 0, 1]  # most significant digit first


@needs_numba
def test_rref_backends_agree(rng):
    for p in (2, 3, 7):
        for _ in range(10):
            m = rng.integers(0, p, size=rng.integers(1, 9, 2))
            a = _accel.numpy_kernels.rref_inplace(m.copy(), p)
            b = _accel.numba_kernels.rref_inplace(m.copy(), p)
            assert all(np.array_equal(x, y) for x, y in zip(a, b))


@needs_numba
@pytest.mark.parametrize("make", ALGEBRAS)
def test_unit_flags_backends_agree(make):
    A = make()
    a = _accel.numpy_kernels.unit_flags_range(A.dim, A.p, A.const)
    b = _accel.numba_kernels.unit_flags_range(A.dim, A.p, A.const)
    assert np.array_equal(np.asarray(a, bool), np.asarray(b, bool))
    coords = _accel.decode_indices(np.arange(A.p**A.dim), A.dim, A.p)
    c = _accel.numba_kernels.unit_flags_coords(coords, A.const, A.p)
    assert np.array_equal(np.asarray(c, bool), np.asarray(a, bool))


@pytest.mark.parametrize("make", ALGEBRAS)
def test_unit_count_oracle(make):
    # a unit x is exactly an element whose left multiplication is invertible
    A = make()
    flags = _accel.unit_flags_range(A.dim, A.p, A.const)
    coords = _accel.decode_indices(np.arange(A.p**A.dim), A.dim, A.p)
    from semiloc.linalg import rank

    oracle = [rank(A.left_matrix(x), A.p) == A.dim for x in coords]
    assert flags.tolist() == oracle


def test_known_unit_counts():
    # |GL2(F2)| = 6, |units of UT3(F2)| = 2^3, units of F3[x]/(x^4) = 2*3^3
    assert _accel.unit_flags_range(4, 2, matrix_algebra(2, 2).const).sum() == 6
    assert _accel.unit_flags_range(6, 2, upper_triangular(prime_field(2), 3)[0].const).sum() == 8
    assert _accel.unit_flags_range(4, 3, truncated_polynomial(4, 3).const).sum() == 54


@needs_numba
@pytest.mark.parametrize("make", ALGEBRAS)
def test_radical_search_backends_agree(make):
    A = make()
    units = _accel.unit_flags_range(A.dim, A.p, A.const)
    rstack = np.ascontiguousarray(A.const.transpose(1, 0, 2))
    a = _accel.numpy_kernels.quasi_regular_search(A.dim, A.p, rstack, A.unit, units)
    b = _accel.numba_kernels.quasi_regular_search(A.dim, A.p, rstack, A.unit, units)
    assert np.array_equal(np.asarray(a).reshape(-1, A.dim), np.asarray(b).reshape(-1, A.dim))


def test_env_flag_selects_numpy():
    env = dict(os.environ, SEMILOC_NUMBA="0")
    out = subprocess.run(
        [sys.executable, "-c", "from semiloc import _accel; print(_accel.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
