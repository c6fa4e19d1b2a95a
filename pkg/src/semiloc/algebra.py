"""Structure-constant algebras over GF(p), their elements, ideals and morphisms.

An algebra of dimension n is stored as an n x n x n array ``const`` with
``b_i * b_j = sum_k const[i, j, k] b_k`` and a unit coordinate vector.
Associativity and the unit laws are checked when the algebra is built.

Algebra morphisms act on coordinate *columns*: ``phi(x) = matrix @ x``, with
``matrix`` of shape (codomain.dim, domain.dim).
"""

import itertools

import numpy as np

from . import _accel
from .errors import (
    AssociativityViolation,
    BudgetExceeded,
    DimensionCapExceeded,
    IdealContainsUnit,
    ModulusMismatch,
    NotMultiplicative,
    UnitNotPreserved,
    UnitViolation,
    ValidationError,
)
from .linalg import Subspace, check_prime, invert, solve

MAX_DIM = 64
DEFAULT_BUDGET = 2**20

_ids = itertools.count(1)


class StructureAlgebra:
    """Finite-dimensional associative unital algebra over GF(p)."""

    def __init__(self, p, const, unit, name="", check=True, allow_large=False):
        self.p = check_prime(p)
        const = np.array(const, dtype=np.int64)
        if const.size == 0:
            const = const.reshape(0, 0, 0)
        n = const.shape[0]
        if const.shape != (n, n, n):
            raise ValidationError(f"structure constants must be n x n x n, got {const.shape}")
        unit = np.array(unit, dtype=np.int64).reshape(-1)
        if unit.shape != (n,):
            raise ValidationError("unit vector has the wrong length")
        if n > MAX_DIM and not allow_large:
            raise DimensionCapExceeded(f"dim {n} exceeds the cap {MAX_DIM}; pass allow_large=True")
        self.const = const % self.p
        self.unit = unit % self.p
        self.const.setflags(write=False)
        self.unit.setflags(write=False)
        self.dim = n
        self.id = next(_ids)
        self.name = name or f"A{self.id}"
        self._cache = {}
        if check:
            self._validate()

    def _validate(self):
        c, p, n = self.const, self.p, self.dim
        if n == 0:
            return
        for i in range(n):
            # (b_i b_j) b_k and b_i (b_j b_k), all j, k at once
            left = np.einsum("jm,mkl->jkl", c[i], c) % p
            right = np.einsum("jkm,ml->jkl", c, c[i]) % p
            bad = np.argwhere((left != right).any(axis=2))
            if bad.size:
                j, k = bad[0]
                raise AssociativityViolation(i, int(j), int(k))
        eye = np.eye(n, dtype=np.int64)
        ul = np.einsum("i,ijk->jk", self.unit, c) % p
        ur = np.einsum("j,ijk->ik", self.unit, c) % p
        for i in range(n):
            if not (np.array_equal(ul[i], eye[i]) and np.array_equal(ur[i], eye[i])):
                raise UnitViolation(i)

    # -- arithmetic on coordinate vectors
    def mul(self, x, y):
        return np.einsum("i,j,ijk->k", np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64), self.const) % self.p

    def left_matrix(self, x):
        """Row-convention matrix of a -> x a."""
        return np.einsum("i,ijk->jk", np.asarray(x, dtype=np.int64), self.const) % self.p

    def right_matrix(self, x):
        """Row-convention matrix of a -> a x."""
        return np.einsum("j,ijk->ik", np.asarray(x, dtype=np.int64), self.const) % self.p

    @property
    def left_stack(self):
        return self.const

    @property
    def right_stack(self):
        return np.ascontiguousarray(self.const.transpose(1, 0, 2))

    def element(self, coords):
        return AlgebraElement(self, coords)

    def one(self):
        return AlgebraElement(self, self.unit)

    def zero(self):
        return AlgebraElement(self, np.zeros(self.dim, dtype=np.int64))

    def basis(self, i):
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return AlgebraElement(self, v)

    def basis_elements(self):
        return [self.basis(i) for i in range(self.dim)]

    @property
    def size(self):
        return self.p**self.dim

    def is_commutative(self):
        return np.array_equal(self.const, self.const.transpose(1, 0, 2))

    def opposite(self):
        if "opposite" not in self._cache:
            op = StructureAlgebra(self.p, self.const.transpose(1, 0, 2), self.unit, name=f"{self.name}^op", check=False)
            op._cache["opposite"] = self
            self._cache["opposite"] = op
        return self._cache["opposite"]

    def center(self):
        """Subspace of central elements."""
        n = self.dim
        if n == 0:
            return Subspace.zero(0, self.p, self.id)
        # x central iff x b_i = b_i x for every i: sum_j x_j (c[j,i,:] - c[i,j,:]) = 0
        diff = (self.const.transpose(1, 0, 2) - self.const) % self.p  # [i, j, k]
        system = diff.transpose(0, 2, 1).reshape(n * n, n)
        from .linalg import nullspace

        return Subspace(nullspace(system, self.p, cols=n), self.p, n, self.id, canonical=True)

    def all_coords(self, budget=DEFAULT_BUDGET):
        if self.size > budget:
            raise BudgetExceeded(f"{self.p}^{self.dim} elements exceed budget {budget}")
        return _accel.decode_indices(np.arange(self.size), self.dim, self.p)

    def unit_table(self, budget=DEFAULT_BUDGET):
        """Unit flag of every element, in enumeration order (cached)."""
        if self.size > budget:
            raise BudgetExceeded(f"{self.p}^{self.dim} elements exceed budget {budget}")
        if "units" not in self._cache:
            self._cache["units"] = _accel.unit_flags_range(self.dim, self.p, self.const)
        return self._cache["units"]

    def __repr__(self):
        return f"StructureAlgebra({self.name!r}, p={self.p}, dim={self.dim})"


def make_algebra(p, const, unit, name="", allow_large=False):
    """Validated algebra; raises AssociativityViolation or UnitViolation."""
    return StructureAlgebra(p, const, unit, name=name, allow_large=allow_large)


class AlgebraElement:
    __slots__ = ("owner", "coords")

    def __init__(self, owner, coords):
        coords = np.array(coords, dtype=np.int64).reshape(-1) % owner.p
        if coords.shape != (owner.dim,):
            raise ValidationError("coordinate vector has the wrong length")
        coords.setflags(write=False)
        self.owner = owner
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.owner is not self.owner:
                raise ValidationError("elements of different algebras")
            return other.coords
        if isinstance(other, (int, np.integer)):
            return (int(other) * self.owner.unit) % self.owner.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return AlgebraElement(self.owner, self.coords + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return AlgebraElement(self.owner, self.coords - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return AlgebraElement(self.owner, o - self.coords)

    def __neg__(self):
        return AlgebraElement(self.owner, -self.coords)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return AlgebraElement(self.owner, self.coords * int(other))
        o = self._coerce(other)
        return AlgebraElement(self.owner, self.owner.mul(self.coords, o))

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return AlgebraElement(self.owner, self.coords * int(other))
        return NotImplemented

    def __pow__(self, e):
        r = self.owner.one()
        for _ in range(e):
            r = r * self
        return r

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return other.owner is self.owner and np.array_equal(self.coords, other.coords)
        if isinstance(other, (int, np.integer)):
            return np.array_equal(self.coords, (int(other) * self.owner.unit) % self.owner.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.owner.id, self.coords.tobytes()))

    def is_zero(self):
        return not self.coords.any()

    def is_unit(self):
        return is_unit(self)

    def inverse(self):
        """Two-sided inverse, or None for a non-unit."""
        A = self.owner
        # solve x a = 1 via the right-multiplication-by-a map on row vectors
        x = solve(A.right_matrix(self.coords).T, A.unit, A.p)
        if x is None:
            return None
        return AlgebraElement(A, x)

    def is_idempotent(self):
        return self * self == self

    def is_nilpotent(self):
        x = self
        for _ in range(self.owner.dim + 1):
            if x.is_zero():
                return True
            x = x * self
        return x.is_zero()

    def __repr__(self):
        return f"{self.owner.name}{self.coords.tolist()}"


def is_unit(a):
    """True iff left multiplication by ``a`` is invertible."""
    A = a.owner
    if A.dim == 0:
        return True
    return invert(A.left_matrix(a.coords), A.p) is not None


class AlgebraMorphism:
    """Unital multiplicative linear map; validated on construction."""

    def __init__(self, domain, codomain, matrix, check=True, name=""):
        if domain.p != codomain.p:
            raise ModulusMismatch("morphism between algebras over different fields")
        m = np.array(matrix, dtype=np.int64).reshape(codomain.dim, domain.dim) % domain.p
        m.setflags(write=False)
        self.domain = domain
        self.codomain = codomain
        self.matrix = m
        self.name = name
        if check:
            _check_morphism(m, domain, codomain)

    def __call__(self, x):
        if isinstance(x, AlgebraElement):
            if x.owner is not self.domain:
                raise ValidationError("element is not in the domain")
            return AlgebraElement(self.codomain, self.matrix @ x.coords)
        return (self.matrix @ np.asarray(x, dtype=np.int64)) % self.domain.p

    def then(self, other):
        """The composite ``other o self``."""
        return compose(other, self)

    def kernel(self):
        from .linalg import nullspace

        return Subspace(nullspace(self.matrix, self.domain.p, cols=self.domain.dim), self.domain.p, self.domain.dim, self.domain.id, canonical=True)

    def image(self):
        return Subspace(self.matrix.T, self.domain.p, self.codomain.dim, self.codomain.id)

    def is_onto(self):
        return self.image().dim == self.codomain.dim

    def __repr__(self):
        return f"AlgebraMorphism({self.domain.name} -> {self.codomain.name})"


def _check_morphism(m, A, B):
    p = A.p
    if not np.array_equal((m @ A.unit) % p, B.unit):
        raise UnitNotPreserved(f"phi(1_{A.name}) != 1_{B.name}")
    if A.dim == 0:
        return
    lhs = np.einsum("ka,ija->ijk", m, A.const) % p
    rhs = np.einsum("ai,bj,abk->ijk", m, m, B.const) % p
    bad = np.argwhere((lhs != rhs).any(axis=2))
    if bad.size:
        i, j = bad[0]
        raise NotMultiplicative(int(i), int(j))


def validate_morphism(matrix, A, B, name=""):
    return AlgebraMorphism(A, B, matrix, check=True, name=name)


def identity_morphism(A):
    return AlgebraMorphism(A, A, np.eye(A.dim, dtype=np.int64), check=False, name="id")


def compose(psi, phi):
    """psi o phi."""
    if phi.codomain is not psi.domain:
        raise ValidationError("morphisms are not composable")
    return AlgebraMorphism(phi.domain, psi.codomain, psi.matrix @ phi.matrix, check=False)


# ---------------------------------------------------------------- ideals


def subspace(A, vectors):
    return Subspace(np.asarray(vectors, dtype=np.int64).reshape(-1, A.dim), A.p, A.dim, A.id)


def _products(A, X, Y):
    """All products x y with x a row of X and y a row of Y, as rows."""
    if len(X) == 0 or len(Y) == 0:
        return np.zeros((0, A.dim), dtype=np.int64)
    return np.einsum("ai,bj,ijk->abk", X, Y, A.const).reshape(-1, A.dim) % A.p


def is_ideal(A, I):
    if I.dim == 0:
        return True
    basis = np.eye(A.dim, dtype=np.int64)
    return I.contains(_products(A, I.basis, basis)) and I.contains(_products(A, basis, I.basis))


def ideal_generated(A, gens):
    """Smallest two-sided ideal containing ``gens`` (elements or coordinate rows)."""
    rows = [g.coords if isinstance(g, AlgebraElement) else np.asarray(g) for g in gens]
    cur = subspace(A, rows) if rows else Subspace.zero(A.dim, A.p, A.id)
    basis = np.eye(A.dim, dtype=np.int64)
    while True:
        grown = np.vstack([cur.basis, _products(A, cur.basis, basis), _products(A, basis, cur.basis)])
        nxt = subspace(A, grown)
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def right_ideal_generated(A, gens):
    rows = [g.coords if isinstance(g, AlgebraElement) else np.asarray(g) for g in gens]
    cur = subspace(A, rows) if rows else Subspace.zero(A.dim, A.p, A.id)
    basis = np.eye(A.dim, dtype=np.int64)
    while True:
        nxt = subspace(A, np.vstack([cur.basis, _products(A, cur.basis, basis)]))
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def ideal_product(A, I, K):
    """The ideal I K spanned by all products."""
    return subspace(A, _products(A, I.basis, K.basis)) if I.dim and K.dim else Subspace.zero(A.dim, A.p, A.id)


def subalgebra_generated(A, gens):
    """Smallest subalgebra (with the unit of A) containing ``gens``."""
    rows = [g.coords if isinstance(g, AlgebraElement) else np.asarray(g) for g in gens]
    cur = subspace(A, [A.unit] + rows)
    while True:
        nxt = subspace(A, np.vstack([cur.basis, _products(A, cur.basis, cur.basis)]))
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def algebra_generators(A):
    """Indices of basis elements that generate A as a unital algebra (cached)."""
    if "generators" not in A._cache:
        gens = []
        cur = subalgebra_generated(A, [])
        for i in range(A.dim):
            e = np.zeros(A.dim, dtype=np.int64)
            e[i] = 1
            if not cur.contains(e):
                gens.append(i)
                cur = subalgebra_generated(A, [np.eye(A.dim, dtype=np.int64)[j] for j in gens])
        A._cache["generators"] = gens
    return A._cache["generators"]


def subalgebra(A, S, name=""):
    """Algebra on the canonical basis of a multiplicatively closed subspace S ∋ 1.

    Returns the new algebra and its inclusion morphism into A.
    """
    B = S.basis
    d = B.shape[0]
    prods = _products(A, B, B)
    if not S.contains(prods) or not S.contains(A.unit):
        raise ValidationError("subspace is not a unital subalgebra")
    const = S.coordinates(prods).reshape(d, d, d)
    sub = StructureAlgebra(A.p, const, S.coordinates(A.unit), name=name or f"sub({A.name})", check=False)
    incl = AlgebraMorphism(sub, A, B.T, check=False, name="inclusion")
    return sub, incl


class Quotient:
    """Result of ``quotient_by_ideal``: the algebra, its projection, and a section."""

    def __init__(self, algebra, projection, ideal, complement):
        self.algebra = algebra
        self.projection = projection
        self.ideal = ideal
        self.complement = complement

    def __iter__(self):
        return iter((self.algebra, self.projection))

    def lift(self, y):
        """A preimage of quotient coordinates ``y`` (supported on the complement)."""
        A = self.projection.domain
        x = np.zeros(A.dim, dtype=np.int64)
        x[self.complement] = np.asarray(y, dtype=np.int64) % A.p
        return x


def quotient_by_ideal(A, I, name=""):
    """A/I on the complement basis given by the non-pivot columns of I."""
    if not is_ideal(A, I):
        raise ValidationError("subspace is not a two-sided ideal")
    if A.dim and I.contains(A.unit):
        raise IdealContainsUnit(f"the ideal contains 1 of {A.name}")
    comp = I.complement_pivots()
    d = len(comp)
    # projection: reduce modulo I, read the complement coordinates
    proj = I.reduce_vector(np.eye(A.dim, dtype=np.int64))[:, comp].T % A.p
    sub = A.const[np.ix_(comp, comp)]
    const = np.einsum("ijk,lk->ijl", sub, proj) % A.p if d else np.zeros((0, 0, 0), dtype=np.int64)
    Q = StructureAlgebra(A.p, const, proj @ A.unit % A.p, name=name or f"{A.name}/I", check=False)
    pi = AlgebraMorphism(A, Q, proj, check=False, name="projection")
    return Quotient(Q, pi, I, comp)
