"""Finite-dimensional right modules over structure-constant algebras.

A module M of dimension m over A stores one m x m matrix per basis vector of
A.  Vectors are rows and the action is ``v . a = v @ rho(a)``, so that
``rho(a b) = rho(a) @ rho(b)``.  Homomorphisms follow the same convention: a
hom f: M -> N is an (dim M) x (dim N) matrix X with ``f(v) = v @ X`` and
``rho_M(a) @ X = X @ rho_N(a)`` for all a.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_BUDGET, StructureAlgebra, algebra_generators
from .errors import NotAHomomorphism, NotASubmodule, ValidationError
from .linalg import Subspace, left_nullspace, nullspace
from . import radical as _rad

_ids = itertools.count(1)


class FdModule:
    def __init__(self, algebra, actions, name="", check=True):
        A = algebra
        actions = np.array(actions, dtype=np.int64) % A.p
        if actions.ndim != 3 or actions.shape[0] != A.dim or actions.shape[1] != actions.shape[2]:
            if A.dim == 0 and actions.size == 0:
                actions = actions.reshape(0, 0, 0)
            else:
                raise ValidationError(f"actions must be dim(A) x m x m, got {actions.shape}")
        actions.setflags(write=False)
        self.algebra = A
        self.actions = actions
        self.dim = actions.shape[1]
        self.p = A.p
        self.id = next(_ids)
        self.name = name or f"M{self.id}"
        self._cache = {}
        if check:
            self._validate()

    def _validate(self):
        A, rho, p = self.algebra, self.actions, self.p
        if A.dim == 0:
            if self.dim:
                raise ValidationError("the zero ring has only the zero module")
            return
        if not np.array_equal(self.rho(A.unit), np.eye(self.dim, dtype=np.int64)):
            raise ValidationError("the unit does not act as the identity")
        lhs = np.einsum("iab,jbc->ijac", rho, rho) % p
        rhs = np.einsum("ijk,kac->ijac", A.const, rho) % p
        bad = np.argwhere((lhs != rhs).any(axis=(2, 3)))
        if bad.size:
            i, j = bad[0]
            raise ValidationError(f"rho(b{i}) rho(b{j}) != rho(b{i} b{j})")

    def rho(self, a):
        """Action matrix of an algebra element (coordinates)."""
        a = getattr(a, "coords", a)
        return np.einsum("i,iab->ab", np.asarray(a, dtype=np.int64), self.actions) % self.p

    def act(self, v, a):
        return (np.asarray(v, dtype=np.int64) @ self.rho(a)) % self.p

    def zero_subspace(self):
        return Subspace.zero(self.dim, self.p, self.id)

    def full_subspace(self):
        return Subspace.full(self.dim, self.p, self.id)

    def span(self, vectors):
        if self.dim == 0:
            return self.zero_subspace()
        v = np.asarray(vectors, dtype=np.int64).reshape(-1, self.dim)
        return Subspace(v, self.p, self.dim, self.id)

    def __repr__(self):
        return f"FdModule({self.name!r}, dim={self.dim}, over={self.algebra.name})"


class ModuleHom:
    def __init__(self, domain, codomain, matrix, check=True):
        if domain.algebra is not codomain.algebra:
            raise ValidationError("modules over different algebras")
        X = np.array(matrix, dtype=np.int64).reshape(domain.dim, codomain.dim) % domain.p
        X.setflags(write=False)
        self.domain = domain
        self.codomain = codomain
        self.matrix = X
        if check and not is_homomorphism(domain, codomain, X):
            raise NotAHomomorphism("matrix does not intertwine the actions")

    def __call__(self, v):
        return (np.asarray(v, dtype=np.int64) @ self.matrix) % self.domain.p

    def then(self, g):
        """g o self."""
        if g.domain is not self.codomain:
            raise ValidationError("homs are not composable")
        return ModuleHom(self.domain, g.codomain, self.matrix @ g.matrix, check=False)

    def kernel(self):
        return Subspace(left_nullspace(self.matrix, self.domain.p), self.domain.p, self.domain.dim, self.domain.id, canonical=True)

    def image(self):
        return Subspace(self.matrix, self.domain.p, self.codomain.dim, self.codomain.id)

    def is_mono(self):
        return self.kernel().dim == 0

    def is_epi(self):
        return self.image().dim == self.codomain.dim

    def is_iso(self):
        return self.domain.dim == self.codomain.dim and self.is_mono()

    def __repr__(self):
        return f"ModuleHom({self.domain.name} -> {self.codomain.name})"


def is_homomorphism(M, N, X):
    p = M.p
    lhs = np.einsum("iab,bc->iac", M.actions, X) % p
    rhs = np.einsum("ab,ibc->iac", X, N.actions) % p
    return np.array_equal(lhs, rhs)


# ---------------------------------------------------------------- constructions


def regular_module(A):
    """A as a right module over itself: rho(b_i) is right multiplication by b_i."""
    if "regular" not in A._cache:
        A._cache["regular"] = FdModule(A, A.right_stack, name=f"{A.name}_{A.name}", check=False)
    return A._cache["regular"]


@dataclass
class DirectSum:
    module: FdModule
    injections: list
    projections: list
    offsets: list


def direct_sum(*mods, name=""):
    if not mods:
        raise ValidationError("direct sum of nothing; pass at least one module")
    A = mods[0].algebra
    if any(M.algebra is not A for M in mods):
        raise ValidationError("modules over different algebras")
    m = sum(M.dim for M in mods)
    acts = np.zeros((A.dim, m, m), dtype=np.int64)
    offsets, o = [], 0
    for M in mods:
        acts[:, o : o + M.dim, o : o + M.dim] = M.actions
        offsets.append(o)
        o += M.dim
    S = FdModule(A, acts, name=name or " + ".join(M.name for M in mods), check=False)
    inj, proj = [], []
    for M, o in zip(mods, offsets):
        i = np.zeros((M.dim, m), dtype=np.int64)
        i[:, o : o + M.dim] = np.eye(M.dim, dtype=np.int64)
        inj.append(ModuleHom(M, S, i, check=False))
        proj.append(ModuleHom(S, M, i.T, check=False))
    return DirectSum(S, inj, proj, offsets)


def free_module(A, r):
    R = regular_module(A)
    if r == 0:
        return zero_module(A)
    return direct_sum(*([R] * r), name=f"{A.name}^{r}").module if r > 1 else R


def zero_module(A):
    return FdModule(A, np.zeros((A.dim, 0, 0), dtype=np.int64), name="0", check=False)


def submodule_generated(M, vectors):
    cur = M.span(vectors) if len(vectors) else M.zero_subspace()
    while True:
        if cur.dim == 0 or cur.dim == M.dim:
            return cur
        grown = np.einsum("va,iab->ivb", cur.basis, M.actions).reshape(-1, M.dim) % M.p
        nxt = M.span(np.vstack([cur.basis, grown]))
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def is_submodule(M, U):
    if U.dim == 0:
        return True
    images = np.einsum("va,iab->ivb", U.basis, M.actions).reshape(-1, M.dim) % M.p
    return U.contains(images)


def submodule(M, U, name=""):
    """U as a module in its canonical basis, with the inclusion hom."""
    if not is_submodule(M, U):
        raise NotASubmodule("subspace is not closed under the action")
    B = U.basis
    acts = U.coordinates(np.einsum("va,iab->ivb", B, M.actions) % M.p)
    S = FdModule(M.algebra, acts, name=name or f"sub({M.name})", check=False)
    return S, ModuleHom(S, M, B, check=False)


def quotient_module(M, U, name=""):
    """M/U on the complement of the pivot columns of U, with the projection."""
    if not is_submodule(M, U):
        raise NotASubmodule("subspace is not closed under the action")
    comp = U.complement_pivots()
    proj = U.reduce_vector(np.eye(M.dim, dtype=np.int64))[:, comp] % M.p
    acts = M.actions[:, comp, :] @ proj % M.p
    Q = FdModule(M.algebra, acts, name=name or f"{M.name}/U", check=False)
    return Q, ModuleHom(M, Q, proj, check=False)


def module_from_presentation(A, P):
    """Cokernel of A^c -> A^r given by an r x c matrix of elements of A.

    Entries of ``P`` are coordinate vectors (or AlgebraElements).  The
    relations are the columns of P viewed as elements of A^r; the result is
    A^r modulo the submodule they generate, with the quotient map from A^r.
    """
    rows = [[getattr(x, "coords", x) for x in row] for row in P]
    r = len(rows)
    if r == 0:
        raise ValidationError("presentation needs at least one generator")
    c = len(rows[0])
    F = free_module(A, r)
    rels = []
    for j in range(c):
        rels.append(np.concatenate([np.asarray(rows[i][j], dtype=np.int64) for i in range(r)]) % A.p)
    U = submodule_generated(F, np.array(rels).reshape(-1, F.dim)) if rels else F.zero_subspace()
    return quotient_module(F, U, name=f"coker({r}x{c})")


def restrict_scalars(phi, M):
    """M_S viewed as a module over the domain R of phi: R -> S."""
    if phi.codomain is not M.algebra:
        raise ValidationError("module is not over the codomain of phi")
    acts = np.einsum("ki,kab->iab", phi.matrix, M.actions) % M.p
    return FdModule(phi.domain, acts, name=f"{M.name}|{phi.domain.name}", check=False)


def dual(M):
    """Linear dual Hom(M, GF(p)) as a right module over the opposite algebra."""
    if "dual" not in M._cache:
        D = FdModule(M.algebra.opposite(), M.actions.transpose(0, 2, 1), name=f"{M.name}*", check=False)
        D._cache["dual"] = M
        M._cache["dual"] = D
    return M._cache["dual"]


def dual_hom(f):
    """The transpose hom N* -> M* of f: M -> N."""
    return ModuleHom(dual(f.codomain), dual(f.domain), f.matrix.T, check=False)


# ---------------------------------------------------------------- homs


def hom_matrices(M, N):
    """Stack of basis matrices of Hom_A(M, N), canonical (rref) order."""
    A = M.algebra
    if M.algebra is not N.algebra:
        raise ValidationError("modules over different algebras")
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return np.zeros((0, m, n), dtype=np.int64), np.zeros(0, dtype=np.int64)
    eq = []
    Im, In = np.eye(m, dtype=np.int64), np.eye(n, dtype=np.int64)
    for g in algebra_generators(A):
        eq.append(np.kron(M.actions[g], In) - np.kron(Im, N.actions[g].T))
    system = np.vstack(eq) % A.p if eq else np.zeros((0, m * n), dtype=np.int64)
    ker = nullspace(system, A.p, cols=m * n)
    pivots = np.array([int(np.flatnonzero(r)[0]) for r in ker], dtype=np.int64)
    return ker.reshape(-1, m, n), pivots


def hom_basis(M, N):
    mats, _ = hom_matrices(M, N)
    return [ModuleHom(M, N, X, check=False) for X in mats]


class EndoAlgebra:
    """End_A(M) as a structure-constant algebra, product f * g = f o g."""

    def __init__(self, module):
        mats, pivots = hom_matrices(module, module)
        d = mats.shape[0]
        self.module = module
        self.matrices = mats
        self.pivots = pivots
        p = module.p
        # b_i * b_j = b_i o b_j has matrix X_j @ X_i in the row convention
        if d == 0:
            const, unit = np.zeros((0, 0, 0), dtype=np.int64), np.zeros(0, dtype=np.int64)
        else:
            prods = np.einsum("jab,ibc->ijac", mats, mats) % p
            const = prods.reshape(d, d, -1)[:, :, pivots]
            unit = self.coords(np.eye(module.dim, dtype=np.int64))
        self.algebra = StructureAlgebra(p, const, unit, name=f"End({module.name})", check=d <= 24, allow_large=True)

    @property
    def dim(self):
        return self.algebra.dim

    def coords(self, X):
        X = np.asarray(X, dtype=np.int64)
        return X.reshape(*X.shape[:-2], -1)[..., self.pivots] % self.module.p

    def matrix(self, coords):
        return np.einsum("k,kab->ab", np.asarray(coords, dtype=np.int64), self.matrices) % self.module.p

    def hom(self, coords):
        return ModuleHom(self.module, self.module, self.matrix(coords), check=False)

    def homs(self):
        return [ModuleHom(self.module, self.module, X, check=False) for X in self.matrices]

    def contains(self, X):
        """Is the matrix X an endomorphism (i.e. in the span of the basis)."""
        X = np.asarray(X, dtype=np.int64) % self.module.p
        return np.array_equal(self.matrix(self.coords(X)), X)


def endo_algebra(M):
    if "endo" not in M._cache:
        M._cache["endo"] = EndoAlgebra(M)
    return M._cache["endo"]


# ---------------------------------------------------------------- radical series


@dataclass(frozen=True)
class StructuralSeries:
    socle: Subspace
    radical_sub: Subspace
    top_dim: int
    socle_multiplicities: tuple
    top_multiplicities: tuple

    @property
    def socle_length(self):
        return sum(self.socle_multiplicities)

    @property
    def top_length(self):
        return sum(self.top_multiplicities)


def section_multiplicities(M, V, W, budget=DEFAULT_BUDGET):
    """Multiplicity of each simple module in the semisimple section V/W of M.

    Requires V J(A) contained in W; the S_i-isotypic part is (V e_i + W)/W for
    the lifted central idempotent e_i of block i.
    """
    st = _rad.structure(M.algebra, budget)
    out = []
    for b, e in zip(st.blocks, st.central_lifts):
        ve = (V.basis @ M.rho(e)) % M.p if V.dim else np.zeros((0, M.dim), dtype=np.int64)
        d = M.span(np.vstack([ve, W.basis])).dim - W.dim
        size = b.n * b.k
        if d % size:
            raise ArithmeticError("isotypic dimension is not a multiple of the simple dimension")
        out.append(d // size)
    return tuple(out)


def radical_submodule(M, budget=DEFAULT_BUDGET):
    """M J(A)."""
    J = _rad.radical(M.algebra, budget).radical
    if J.dim == 0 or M.dim == 0:
        return M.zero_subspace()
    imgs = np.einsum("ji,iab->jab", J.basis, M.actions) % M.p  # rho(j) for each radical basis vector
    return M.span(imgs.reshape(-1, M.dim))


def socle(M, budget=DEFAULT_BUDGET):
    """{v : v J(A) = 0}."""
    J = _rad.radical(M.algebra, budget).radical
    if J.dim == 0 or M.dim == 0:
        return M.full_subspace()
    imgs = np.einsum("ji,iab->ajb", J.basis, M.actions) % M.p
    H = imgs.reshape(M.dim, -1)
    return Subspace(left_nullspace(H, M.p), M.p, M.dim, M.id, canonical=True)


def structural_series(M, budget=DEFAULT_BUDGET):
    if "series" not in M._cache:
        soc = socle(M, budget)
        rad = radical_submodule(M, budget)
        zero = M.zero_subspace()
        M._cache["series"] = StructuralSeries(
            soc,
            rad,
            M.dim - rad.dim,
            section_multiplicities(M, soc, zero, budget),
            section_multiplicities(M, M.full_subspace(), rad, budget),
        )
    return M._cache["series"]


def goldie_dims(M, budget=DEFAULT_BUDGET):
    """(Goldie dimension, dual Goldie dimension) = (socle length, top length)."""
    s = structural_series(M, budget)
    return s.socle_length, s.top_length


@dataclass(frozen=True)
class Position:
    essential: bool
    superfluous: bool


def submodule_position(M, U, budget=DEFAULT_BUDGET):
    """Essential iff U contains the socle; superfluous iff U lies in M J(A)."""
    if not is_submodule(M, U):
        raise NotASubmodule("subspace is not closed under the action")
    s = structural_series(M, budget)
    return Position(s.socle <= U, U <= s.radical_sub)


def top_module(M, budget=DEFAULT_BUDGET):
    """M / M J(A) with its projection."""
    return quotient_module(M, radical_submodule(M, budget), name=f"top({M.name})")
