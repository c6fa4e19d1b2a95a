import numpy as np
import pytest
from hypothesis import given, strategies as st

from semiloc.errors import ValidationError
from semiloc.linalg import Subspace, invert, nullspace, rank, reduce, rref, solve

from conftest import all_vectors

PRIMES = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    p = draw(PRIMES)
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c), p


def test_identity_full_rank():
    red = reduce(np.eye(3, dtype=np.int64), 2)
    assert red.rank == 3
    assert red.kernel_basis.shape == (0, 3)


def test_zero_matrix_kernel_is_everything():
    red = reduce(np.zeros((2, 4), dtype=np.int64), 5)
    assert red.rank == 0
    assert red.kernel_basis.shape == (4, 4)


def test_rank_one_over_gf5():
    m = np.array([[1, 2], [2, 4]])
    red = reduce(m, 5)
    assert red.rank == 1
    k = red.kernel_basis
    assert k.shape == (1, 2)
    # (3, 1) up to scaling: 1*3 + 2*1 = 5 = 0
    assert (k[0, 0] * 1 - 3 * k[0, 1]) % 5 == 0
    assert not (m @ k[0] % 5).any()


@given(matrices())
def test_kernel_matches_enumeration(mp):
    m, p = mp
    if m.shape[1] > 4 and p > 3:
        m = m[:, :4]
    ker = nullspace(m, p, cols=m.shape[1])
    vecs = all_vectors(m.shape[1], p)
    true_kernel = vecs[~((vecs @ m.T) % p).any(axis=1)] if m.shape[0] else vecs
    assert len(true_kernel) == p ** ker.shape[0]
    assert not ((ker @ m.T) % p).any()


@given(matrices())
def test_rank_nullity(mp):
    m, p = mp
    red = reduce(m, p)
    assert red.rank + red.kernel_basis.shape[0] == m.shape[1]


@given(matrices())
def test_rref_is_idempotent_and_canonical(mp):
    m, p = mp
    r, piv = rref(m, p)
    r2, piv2 = rref(r, p)
    assert np.array_equal(r, r2) and np.array_equal(piv, piv2)
    # row operations on m do not change the rref
    if m.shape[0] >= 2:
        m2 = m.copy()
        m2[0] = (m2[0] + 2 * m2[1]) % p
        assert np.array_equal(rref(m2, p)[0], r)


def test_solve_identity_and_inconsistent():
    b = np.array([1, 0, 2])
    assert np.array_equal(solve(np.eye(3, dtype=np.int64), b, 3), b)
    assert solve(np.zeros((2, 2), dtype=np.int64), np.array([1, 0]), 3) is None


def test_solve_random_consistent_6x6(rng):
    m = rng.integers(0, 3, (6, 6))
    x0 = rng.integers(0, 3, 6)
    b = m @ x0 % 3
    x = solve(m, b, 3)
    assert x is not None
    assert np.array_equal(m @ x % 3, b)


def test_solve_free_variables_zero():
    # x0 + x1 = 1 over GF(2): deterministic choice puts the free variable to 0
    assert solve(np.array([[1, 1]]), np.array([1]), 2).tolist() == [1, 0]


def test_solve_dimension_mismatch():
    with pytest.raises((ValidationError, ValueError)):
        solve(np.eye(2, dtype=np.int64), np.array([1, 2, 3]), 5)


@given(PRIMES, st.integers(1, 4), st.data())
def test_invert(p, n, data):
    vals = data.draw(st.lists(st.integers(0, p - 1), min_size=n * n, max_size=n * n))
    m = np.array(vals, dtype=np.int64).reshape(n, n)
    inv = invert(m, p)
    if rank(m, p) < n:
        assert inv is None
    else:
        assert np.array_equal(m @ inv % p, np.eye(n, dtype=np.int64))
        assert np.array_equal(inv @ m % p, np.eye(n, dtype=np.int64))


def test_invert_non_square():
    with pytest.raises((ValidationError, ValueError)):
        invert(np.zeros((2, 3), dtype=np.int64), 3)


def test_subspace_canonical_equality():
    a = Subspace([[1, 1, 0], [0, 1, 1]], 2)
    b = Subspace([[1, 0, 1], [1, 1, 0]], 2)
    assert a == b
    assert a.contains([0, 1, 1])
    assert not a.contains([1, 0, 0])


def test_subspace_lattice_ops():
    p = 3
    a = Subspace([[1, 0, 0, 0], [0, 1, 0, 0]], p)
    b = Subspace([[0, 1, 0, 0], [0, 0, 1, 0]], p)
    assert (a + b).dim == 3
    assert a.intersect(b) == Subspace([[0, 1, 0, 0]], p)
    assert a.intersect(b) <= a and a <= a + b
    comp = a.complement_pivots()
    assert len(comp) == 2


@given(matrices(4, 4), matrices(4, 4))
def test_dimension_formula(m1, m2):
    (a, p), (b, _) = m1, m2
    n = min(a.shape[1], b.shape[1])
    A = Subspace(a[:, :n] % p, p, n)
    B = Subspace(b[:, :n] % p, p, n)
    assert (A + B).dim + A.intersect(B).dim == A.dim + B.dim


def test_coordinates_roundtrip(rng):
    U = Subspace(rng.integers(0, 5, (3, 6)), 5, 6)
    c = rng.integers(0, 5, U.dim)
    v = c @ U.basis % 5
    assert np.array_equal(U.coordinates(v), c)
