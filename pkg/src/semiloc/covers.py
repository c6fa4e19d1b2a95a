"""Projective covers, injective envelopes and top complements.

Covers are built from lifted primitive idempotents: P(M) is a sum of
indecomposable projectives e_i A, one per simple summand of the top of M.
Envelopes come from duality, E(M) = P(M*)* over the opposite algebra.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_BUDGET
from .errors import CertificateFailure, ValidationError
from .linalg import Subspace, nullspace, solve
from . import modules as _m
from . import radical as _rad


@dataclass
class ProjectiveCover:
    module: _m.FdModule  # P
    epi: _m.ModuleHom  # P -> M
    kernel: Subspace  # ker(epi) inside P
    summands: list  # (block index, generator in M) per indecomposable summand

    def __iter__(self):
        return iter((self.module, self.epi, self.kernel))


@dataclass
class InjectiveEnvelope:
    module: _m.FdModule  # E
    mono: _m.ModuleHom  # M -> E

    def __iter__(self):
        return iter((self.module, self.mono))


def indecomposable_projective(A, i, budget=DEFAULT_BUDGET):
    """e_i A for the lifted primitive idempotent of block i, cached on A."""
    key = ("indproj", i)
    if key not in A._cache:
        e = _rad.structure(A, budget).primitive_lifts[i]
        R = _m.regular_module(A)
        U = R.span(A.left_matrix(e))  # rows are e * b_j
        P, incl = _m.submodule(R, U, name=f"e{i}{A.name}")
        A._cache[key] = (P, incl, e)
    return A._cache[key]


def _generator_hom(A, i, M, m, budget):
    """The hom e_i A -> M sending e_i to m (m must satisfy m e_i = m)."""
    P, incl, _ = indecomposable_projective(A, i, budget)
    # a basis vector u of e_i A (an element of A) goes to m . u
    X = np.einsum("ui,a,iab->ub", incl.matrix, m, M.actions) % M.p
    return P, X


def projective_cover(M, budget=DEFAULT_BUDGET):
    if "projcover" in M._cache:
        return M._cache["projcover"]
    A = M.algebra
    st = _rad.structure(A, budget)
    series = _m.structural_series(M, budget)
    pieces, gens = [], []
    image = series.radical_sub
    for i, mult in enumerate(series.top_multiplicities):
        if not mult:
            continue
        cand = M.span(M.rho(st.primitive_lifts[i])).basis  # basis of M e_i
        for _ in range(mult):
            m = next(v for v in cand if not image.contains(v))
            P_i, X = _generator_hom(A, i, M, m, budget)
            pieces.append((P_i, X))
            gens.append((i, m.copy()))
            image = image + M.span(X)
    if not pieces:
        P = _m.zero_module(A)
        epi = _m.ModuleHom(P, M, np.zeros((0, M.dim), dtype=np.int64), check=False)
    else:
        ds = _m.direct_sum(*[P_i for P_i, _ in pieces], name=f"P({M.name})")
        P = ds.module
        epi = _m.ModuleHom(P, M, np.vstack([X for _, X in pieces]), check=False)
    if not epi.is_epi():
        raise CertificateFailure("projective cover map is not onto")
    cover = ProjectiveCover(P, epi, epi.kernel(), gens)
    M._cache["projcover"] = cover
    return cover


def injective_envelope(M, budget=DEFAULT_BUDGET):
    if "injenv" in M._cache:
        return M._cache["injenv"]
    D = _m.dual(M)
    pc = projective_cover(D, budget)
    E = _m.dual(pc.module)
    if E.algebra is not M.algebra:
        raise CertificateFailure("opposite of the opposite algebra lost its identity")
    mono = _m.ModuleHom(M, E, pc.epi.matrix.T, check=False)
    env = InjectiveEnvelope(E, mono)
    M._cache["injenv"] = env
    return env


def extension_check(E, budget=DEFAULT_BUDGET, max_dim=12):
    """Baer-style test: every hom from a right ideal aA into E extends to A.

    The restriction Hom(A, E) -> Hom(aA, E) is x -> (u -> x.u); it is onto
    exactly when dim E - dim{x : x aA = 0} equals dim Hom(aA, E).  Principal
    right ideals are enumerated exhaustively, together with J(A).
    """
    A = E.algebra
    if A.dim > max_dim:
        raise ValidationError("extension check is limited to small algebras")
    R = _m.regular_module(A)
    ideals = {}
    for a in A.all_coords(budget):
        U = _m.submodule_generated(R, A.left_matrix(a))
        ideals[U] = None
    ideals[R.span(_rad.radical(A, budget).radical.basis)] = None
    for U in ideals:
        if U.dim == 0:
            continue
        I, incl = _m.submodule(R, U)
        acts = np.einsum("ui,ixy->uxy", incl.matrix, E.actions)  # rho_E(u) per ideal basis u
        ann = nullspace(acts.transpose(1, 0, 2).reshape(E.dim, -1).T % E.p, E.p, cols=E.dim)
        restricted = E.dim - ann.shape[0]
        if restricted != len(_m.hom_basis(I, E)):
            return False
    return True


def build_top_complement(M, budget=DEFAULT_BUDGET):
    """A finitely presented N with top(M) + top(N) free over A/J of least rank.

    Each missing simple S_i is presented as A / ((1 - e_i)A + e_i J), a
    cyclic module with top S_i.  Returns (N, rank).
    """
    A = M.algebra
    st = _rad.structure(A, budget)
    mult = _m.structural_series(M, budget).top_multiplicities
    ns = [b.n for b in st.blocks]
    rank = max([-(-mu // n) for mu, n in zip(mult, ns)], default=0)
    parts = []
    J = st.radical.basis
    for i, (mu, n) in enumerate(zip(mult, ns)):
        missing = rank * n - mu
        if not missing:
            continue
        e = st.primitive_lifts[i]
        rels = [(A.unit - e) % A.p] + [A.mul(e, j) for j in J]
        S, _ = _m.module_from_presentation(A, [rels])
        parts.extend([S] * missing)
    if not parts:
        return _m.zero_module(A), rank
    N = parts[0] if len(parts) == 1 else _m.direct_sum(*parts, name=f"N({M.name})").module
    return N, rank


def is_free_top(M, rank=None, budget=DEFAULT_BUDGET):
    """Is top(M) isomorphic to (A/J)^rank (rank inferred when omitted)."""
    st = _rad.structure(M.algebra, budget)
    mult = _m.structural_series(M, budget).top_multiplicities
    ns = [b.n for b in st.blocks]
    if rank is None:
        rank = mult[0] // ns[0] if ns else 0
    return all(mu == rank * n for mu, n in zip(mult, ns))


# ---------------------------------------------------------------- hom equations


def hom_equation(basis, left, right, target, p):
    """Solve sum_k c_k (left @ H_k @ right) = target for coefficients c.

    Returns (particular solution or None, kernel basis).  ``left``/``right``
    may be None for identity.
    """
    basis = np.asarray(basis, dtype=np.int64)
    if basis.shape[0] == 0:
        ok = not np.asarray(target).any()
        return (np.zeros(0, dtype=np.int64) if ok else None), np.zeros((0, 0), dtype=np.int64)
    imgs = basis
    if left is not None:
        imgs = np.einsum("ab,kbc->kac", left, imgs)
    if right is not None:
        imgs = np.einsum("kab,bc->kac", imgs, right)
    cols = imgs.reshape(basis.shape[0], -1).T % p
    x = solve(cols, np.asarray(target, dtype=np.int64).reshape(-1) % p, p)
    ker = nullspace(cols, p, cols=basis.shape[0])
    return x, ker


class Lifter:
    """Lift endomorphisms along a cover or extend them along an envelope.

    mode "cover": given epi pi: P -> M and f in End(M), find g in End(P)
    with g pi = pi f.  mode "envelope": given mono iota: M -> E and f, find
    g in End(E) with iota g = f iota.  ``lift(X, rng)`` returns the matrix
    of g; with an rng a random element of the solution coset is returned.
    """

    def __init__(self, hom, mode):
        self.hom = hom
        self.mode = mode
        big = hom.domain if mode == "cover" else hom.codomain
        self.big = big
        self.endo = _m.endo_algebra(big)
        self.p = big.p

    def lift(self, X, rng=None):
        H = self.hom.matrix
        X = np.asarray(X, dtype=np.int64)
        if self.mode == "cover":
            c, ker = hom_equation(self.endo.matrices, None, H, H @ X, self.p)
        else:
            c, ker = hom_equation(self.endo.matrices, H, None, X @ H, self.p)
        if c is None:
            raise CertificateFailure(f"no {self.mode} lift exists for an endomorphism")
        if rng is not None and len(ker):
            c = (c + rng.integers(0, self.p, len(ker)) @ ker) % self.p
        return self.endo.matrix(c)
