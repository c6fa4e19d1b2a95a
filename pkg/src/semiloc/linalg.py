"""Exact dense linear algebra over prime fields.

Matrices are plain ``numpy.int64`` arrays with entries in ``[0, p)``; the
modulus travels as an explicit argument.  Row reduction pivots on the first
nonzero column and the smallest row index, so every result is reproducible.
"""

from typing import NamedTuple, Optional

import numpy as np

from . import _accel
from .errors import ValidationError


def is_prime(p):
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def check_prime(p):
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValidationError(f"modulus {p!r} is not prime")
    if p >= 2**31:
        raise ValidationError("moduli are limited to word-size primes below 2**31")
    return int(p)


def as_matrix(m, p, cols=None):
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        if cols is not None and a.size == 0:
            a = a.reshape(0, cols)
        else:
            a = a.reshape(1, -1) if a.size else a.reshape(0, cols or 0)
    if a.ndim != 2:
        raise ValidationError("expected a 2-d matrix")
    return a % p


def matmul(a, b, p):
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def identity(n):
    return np.eye(n, dtype=np.int64)


class Reduction(NamedTuple):
    rref: np.ndarray
    rank: int
    pivots: np.ndarray
    kernel_basis: np.ndarray


def rref(m, p):
    """Reduced row echelon form (zero rows kept at the bottom) and pivots."""
    a = np.array(m, dtype=np.int64) % p
    if a.size == 0:
        return a, np.zeros(0, dtype=np.int64)
    rank, pivots = _accel.rref_inplace(a, p)
    return a, np.asarray(pivots, dtype=np.int64)


def row_space(m, p):
    """Canonical basis (nonzero rref rows) of the row space of ``m``."""
    a = np.asarray(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    r, piv = rref(a, p)
    return r[: len(piv)].copy()


def rank(m, p):
    return len(rref(m, p)[1])


def _kernel_from_rref(r, pivots, cols, p):
    free = [c for c in range(cols) if c not in set(pivots.tolist())]
    ker = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        ker[t, f] = 1
        for i, c in enumerate(pivots):
            ker[t, c] = (-r[i, f]) % p
    return row_space(ker, p) if len(free) else ker


def reduce(m, p):
    """Row reduce ``m``: rref, rank and a canonical basis of {x : m x^T = 0}."""
    a = np.asarray(m, dtype=np.int64)
    if a.ndim != 2:
        raise ValidationError("expected a 2-d matrix")
    r, pivots = rref(a, p)
    ker = _kernel_from_rref(r, pivots, a.shape[1], p)
    return Reduction(r, len(pivots), pivots, ker)


def nullspace(m, p, cols=None):
    """Canonical basis (rows) of the right kernel {x : m @ x = 0}."""
    a = np.asarray(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.shape[0] == 0:
        n = a.shape[1] if cols is None else cols
        return np.eye(n, dtype=np.int64)
    return reduce(a, p).kernel_basis


def left_nullspace(m, p):
    """Canonical basis (rows) of {v : v @ m = 0}."""
    a = np.asarray(m, dtype=np.int64)
    return nullspace(a.T, p, cols=a.shape[0])


def solve(m, b, p) -> Optional[np.ndarray]:
    """Some x with m @ x = b, free variables set to zero; None if inconsistent."""
    a = np.asarray(m, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.shape[0]:
        raise ValidationError(f"dimension mismatch: {a.shape} vs {b.shape}")
    rows, cols = a.shape
    if rows == 0:
        return np.zeros(cols, dtype=np.int64)
    aug = np.hstack([a % p, (b % p).reshape(-1, 1)])
    r, pivots = rref(aug, p)
    if len(pivots) and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, cols]
    return x


def solve_many(m, rhs, p):
    """Solve m @ X = rhs column by column; None if any column is inconsistent."""
    a = np.asarray(m, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    rows, cols = a.shape
    k = rhs.shape[1]
    if rows == 0:
        return np.zeros((cols, k), dtype=np.int64)
    aug = np.hstack([a % p, rhs % p])
    r, pivots = rref(aug, p)
    if len(pivots) and pivots[-1] >= cols:
        return None
    x = np.zeros((cols, k), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, cols:]
    return x


def invert(m, p) -> Optional[np.ndarray]:
    a = np.asarray(m, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError("invert needs a square matrix")
    n = a.shape[0]
    if n == 0:
        return a.copy()
    aug = np.hstack([a % p, np.eye(n, dtype=np.int64)])
    r, pivots = rref(aug, p)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        return None
    return r[:, n:].copy()


class Subspace:
    """A subspace of GF(p)^n held as its canonical (rref) basis.

    Two subspaces of the same ambient space are equal exactly when their
    basis matrices are equal.  ``owner`` optionally names the algebra or
    module the coordinates refer to; mixing owners raises.
    """

    __slots__ = ("p", "ambient", "basis", "pivots", "owner")

    def __init__(self, vectors, p, ambient=None, owner=None, canonical=False):
        v = np.asarray(vectors, dtype=np.int64)
        if v.ndim == 1:
            v = v.reshape(1, -1) if v.size else v.reshape(0, ambient or 0)
        if ambient is None:
            ambient = v.shape[1]
        if v.shape[0] == 0:
            v = np.zeros((0, ambient), dtype=np.int64)
        if v.shape[1] != ambient:
            raise ValidationError("vector length does not match ambient dimension")
        if canonical:
            basis = v % p
            pivots = np.array([int(np.flatnonzero(row)[0]) for row in basis], dtype=np.int64)
        else:
            r, pivots = rref(v, p) if v.shape[0] else (v, np.zeros(0, dtype=np.int64))
            basis = r[: len(pivots)].copy()
        basis.setflags(write=False)
        self.p = p
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots
        self.owner = owner

    @classmethod
    def zero(cls, ambient, p, owner=None):
        return cls(np.zeros((0, ambient), dtype=np.int64), p, ambient, owner, canonical=True)

    @classmethod
    def full(cls, ambient, p, owner=None):
        return cls(np.eye(ambient, dtype=np.int64), p, ambient, owner, canonical=True)

    @property
    def dim(self):
        return self.basis.shape[0]

    def _check(self, other):
        if self.ambient != other.ambient or self.p != other.p:
            raise ValidationError("subspaces live in different spaces")
        if self.owner is not None and other.owner is not None and self.owner != other.owner:
            raise ValidationError("subspaces belong to different owners")

    def reduce_vector(self, v):
        """Representative of v modulo the subspace, zero on the pivot columns."""
        v = np.array(v, dtype=np.int64) % self.p
        if self.dim:
            v = (v - v[..., self.pivots] @ self.basis) % self.p
        return v

    def contains(self, v):
        v = np.asarray(v, dtype=np.int64)
        red = self.reduce_vector(v)
        if red.ndim == 1:
            return not red.any()
        return not red.any(axis=-1).any()

    def coordinates(self, v):
        """Coordinates of v (assumed in the subspace) in the canonical basis."""
        return np.asarray(v, dtype=np.int64)[..., self.pivots] % self.p

    def __le__(self, other):
        other_ = other
        self._check(other_)
        return self.dim == 0 or other_.contains(self.basis)

    def __ge__(self, other):
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        return self.dim == other.dim and np.array_equal(self.basis, other.basis)

    def __hash__(self):
        return hash((self.p, self.ambient, self.basis.tobytes()))

    def __add__(self, other):
        self._check(other)
        return Subspace(np.vstack([self.basis, other.basis]), self.p, self.ambient, self.owner or other.owner)

    def intersect(self, other):
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.p, self.owner or other.owner)
        # a @ U = b @ W  <=>  (a, -b) in the left kernel of [U; W]
        stacked = np.vstack([self.basis, (-other.basis) % self.p])
        ker = left_nullspace(stacked, self.p)
        vecs = (ker[:, : self.dim] @ self.basis) % self.p
        return Subspace(vecs, self.p, self.ambient, self.owner or other.owner)

    def complement_pivots(self):
        """Standard basis indices spanning a complement: the non-pivot columns."""
        piv = set(self.pivots.tolist())
        return np.array([c for c in range(self.ambient) if c not in piv], dtype=np.int64)

    def image(self, matrix):
        """Image of the subspace under the row-vector map v -> v @ matrix."""
        matrix = np.asarray(matrix, dtype=np.int64)
        return Subspace((self.basis @ matrix) % self.p, self.p, matrix.shape[1])

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})"
