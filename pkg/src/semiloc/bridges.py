"""Ring morphisms out of End(M) into semisimple targets.

Every target is a quotient of an endomorphism algebra by its radical, or a
product of such.  The spectral side uses End(E)/J for an injective envelope
E, the dual side End(P)/J for a projective cover P.  Each bridge is built by
lifting (or extending) the basis endomorphisms of M, reading coordinates,
and reducing modulo the radical; a second, randomly chosen lifting must give
the same matrix.
"""

from dataclasses import dataclass, field

import numpy as np

from . import covers as _cov
from . import modules as _m
from . import radical as _rad
from .algebra import DEFAULT_BUDGET, AlgebraMorphism
from .constructions import product
from .errors import CertificateFailure, CoverViolation, NotBiuniform
from .linalg import Subspace, nullspace
from .local import is_local

PSI = "psi-step1"
SPECTRAL = "phi-spectral"
DUAL = "psi-dual"
CHI = "chi"
BIGPHI = "bigPhi"
PAIR = "pair-phi-psi"


@dataclass
class BridgeMorphism:
    source: _m.EndoAlgebra
    morphism: AlgebraMorphism
    tag: str
    aux: dict = field(default_factory=dict)

    @property
    def target(self):
        return self.morphism.codomain

    @property
    def matrix(self):
        return self.morphism.matrix

    def kernel(self):
        return self.morphism.kernel()

    def image_of(self, X):
        """Bridge image of an endomorphism given as a matrix."""
        return self.morphism(self.source.coords(X))

    def locality(self, budget=2**16, seed=0):
        return is_local(self.morphism, budget, seed=seed)


class _Reduced:
    """End(B)/J(End(B)) with the map from endomorphism matrices of B."""

    def __init__(self, B, budget=DEFAULT_BUDGET):
        self.endo = _m.endo_algebra(B)
        self.quotient = _rad.semisimple_quotient(self.endo.algebra, budget)
        self.algebra = self.quotient.algebra

    def __call__(self, X):
        return self.quotient.projection(self.endo.coords(X))


def _top_data(M, budget):
    """Section and projection matrices for M -> M/MJ."""
    T, q = _m.top_module(M, budget)
    U = _m.radical_submodule(M, budget)
    comp = U.complement_pivots()
    section = np.eye(M.dim, dtype=np.int64)[comp]
    return T, q.matrix, section


def _assemble(source, target, columns, tag, aux, check=True):
    mat = np.array(columns, dtype=np.int64).T.reshape(target.dim, source.dim) if len(columns) else np.zeros(
        (target.dim, source.dim), dtype=np.int64
    )
    return BridgeMorphism(source, AlgebraMorphism(source.algebra, target, mat, check=check, name=tag), tag, aux)


def _product_target(*algs):
    P, _ = product(*algs)
    return P


def _cross_check(first, second, what):
    if not np.array_equal(first, second):
        raise CertificateFailure(f"{what}: image depends on the chosen lifting")


# ---------------------------------------------------------------- spectral / dual


def spectral_bridge(M, budget=DEFAULT_BUDGET, seed=0):
    """f -> class of an extension of f to E(M), in End(E(M))/J."""
    key = ("bridge", SPECTRAL)
    if key in M._cache:
        return M._cache[key]
    src = _m.endo_algebra(M)
    env = _cov.injective_envelope(M, budget)
    red = _Reduced(env.module, budget)
    lifter = _cov.Lifter(env.mono, "envelope")
    rng = np.random.default_rng(seed)
    cols = []
    for X in src.matrices:
        img = red(lifter.lift(X))
        _cross_check(img, red(lifter.lift(X, rng)), "spectral bridge")
        cols.append(img)
    b = _assemble(src, red.algebra, cols, SPECTRAL, {"envelope": env})
    M._cache[key] = b
    return b


def dual_bridge(M, budget=DEFAULT_BUDGET, seed=0):
    """f -> class of a lifting of f to P(M), in End(P(M))/J."""
    key = ("bridge", DUAL)
    if key in M._cache:
        return M._cache[key]
    src = _m.endo_algebra(M)
    pc = _cov.projective_cover(M, budget)
    red = _Reduced(pc.module, budget)
    lifter = _cov.Lifter(pc.epi, "cover")
    rng = np.random.default_rng(seed)
    cols = []
    for X in src.matrices:
        img = red(lifter.lift(X))
        _cross_check(img, red(lifter.lift(X, rng)), "dual bridge")
        cols.append(img)
    b = _assemble(src, red.algebra, cols, DUAL, {"cover": pc})
    M._cache[key] = b
    return b


def pair_bridge(M, budget=DEFAULT_BUDGET, seed=0):
    s = spectral_bridge(M, budget, seed)
    d = dual_bridge(M, budget, seed)
    tgt = _product_target(s.target, d.target)
    mat = np.vstack([s.matrix, d.matrix])
    return BridgeMorphism(s.source, AlgebraMorphism(s.source.algebra, tgt, mat, name=PAIR), PAIR, {})


# ---------------------------------------------------------------- ideals


@dataclass
class IdealPair:
    I: Subspace  # endomorphisms with essential kernel
    K: Subspace  # endomorphisms with superfluous image

    def comparable(self):
        return self.I <= self.K or self.K <= self.I


def ideal_pair(M, budget=DEFAULT_BUDGET):
    """I_A = {f : soc(M) in ker f} and K_A = {f : im f in MJ}, in End(M) coordinates.

    Both conditions are linear in f, so each ideal is a nullspace over the
    hom basis.
    """
    E = _m.endo_algebra(M)
    s = _m.structural_series(M, budget)
    d = E.dim
    if d == 0:
        z = Subspace.zero(0, M.p, E.algebra.id)
        return IdealPair(z, z)
    soc_imgs = np.einsum("va,kab->kvb", s.socle.basis, E.matrices).reshape(d, -1)
    I = Subspace(nullspace(soc_imgs.T % M.p, M.p, cols=d), M.p, d, E.algebra.id, canonical=True)
    red = s.radical_sub.reduce_vector(E.matrices).reshape(d, -1)
    K = Subspace(nullspace(red.T % M.p, M.p, cols=d), M.p, d, E.algebra.id, canonical=True)
    return IdealPair(I, K)


# ---------------------------------------------------------------- step 1 psi


def step1_psi(M, cover=None, budget=DEFAULT_BUDGET, seed=0):
    """psi(f) = (f mod MJ, f_1 mod KJ) for a cover 0 -> K -> F -> M -> 0.

    Without an explicit cover, M is first completed by the top complement N
    so that W = M + N has free top, and the projective cover of W is used
    (it is then free of the same rank).  The source is End(W).
    """
    aux = {}
    if cover is None:
        N, rank = _cov.build_top_complement(M, budget)
        W = M if N.dim == 0 else _m.direct_sum(M, N, name=f"{M.name}+N").module
        if not _cov.is_free_top(W, rank, budget):
            raise CertificateFailure("top complement does not give a free top")
        cover = _cov.projective_cover(W, budget)
        aux.update(complement=N, rank=rank)
    else:
        W = cover.epi.codomain
    F = cover.module
    K = cover.kernel
    if not K <= _m.radical_submodule(F, budget):
        raise CoverViolation("kernel of the cover is not inside F J")
    Kmod, kincl = _m.submodule(F, K, name="K")
    src = _m.endo_algebra(W)
    TW, qW, sW = _top_data(W, budget)
    TK, qK, sK = _top_data(Kmod, budget)
    endo_TW = _m.endo_algebra(TW)
    endo_TK = _m.endo_algebra(TK)
    tgt = _product_target(endo_TW.algebra, endo_TK.algebra)
    lifter = _cov.Lifter(cover.epi, "cover")
    rng = np.random.default_rng(seed)

    def image(X, r=None):
        top_part = endo_TW.coords(sW @ X @ qW % W.p)
        G = lifter.lift(X, r)
        f1 = K.coordinates(K.basis @ G % W.p) if K.dim else np.zeros((0, 0), dtype=np.int64)
        k_part = endo_TK.coords(sK @ f1 @ qK % W.p) if TK.dim else np.zeros(0, dtype=np.int64)
        return np.concatenate([top_part, k_part])

    cols = []
    for X in src.matrices:
        img = image(X)
        _cross_check(img, image(X, rng), "step-1 psi")
        cols.append(img)
    aux.update(module=W, cover=cover, kernel_module=Kmod)
    return _assemble(src, tgt, cols, PSI, aux)


# ---------------------------------------------------------------- chi and Phi


def chi_bridge(M, budget=DEFAULT_BUDGET, seed=0):
    """chi(f) = (P(f), P(f_1)) for the copresentation 0 -> M -> E(M) -> L_1 -> 0."""
    src = _m.endo_algebra(M)
    env = _cov.injective_envelope(M, budget)
    L0 = env.module
    L1, q = _m.quotient_module(L0, env.mono.image(), name=f"E({M.name})/{M.name}")
    red0 = _Reduced(L0, budget)
    lift0 = _cov.Lifter(env.mono, "envelope")
    comp = env.mono.image().complement_pivots()
    section = np.eye(L0.dim, dtype=np.int64)[comp]  # L1 basis -> L0
    if L1.dim:
        env1 = _cov.injective_envelope(L1, budget)
        red1 = _Reduced(env1.module, budget)
        lift1 = _cov.Lifter(env1.mono, "envelope")
        tgt = _product_target(red0.algebra, red1.algebra)
    else:
        tgt = red0.algebra
    rng = np.random.default_rng(seed)

    def image(X, r=None):
        G = lift0.lift(X, r)
        if not L1.dim:
            return red0(G)
        f1 = section @ G @ q.matrix % M.p
        return np.concatenate([red0(G), red1(lift1.lift(f1, r))])

    cols = []
    for X in src.matrices:
        img = image(X)
        _cross_check(img, image(X, rng), "chi")
        cols.append(img)
    return _assemble(src, tgt, cols, CHI, {"L0": L0, "L1": L1})


def bigPhi_bridge(M, budget=DEFAULT_BUDGET, seed=0):
    """Phi(f) = (F(f), F(f_1)) for the projective cover 0 -> K -> P -> M -> 0."""
    src = _m.endo_algebra(M)
    pc = _cov.projective_cover(M, budget)
    P = pc.module
    K = pc.kernel
    Kmod, _ = _m.submodule(P, K, name=f"K({M.name})")
    red0 = _Reduced(P, budget)
    lift0 = _cov.Lifter(pc.epi, "cover")
    if K.dim:
        pcK = _cov.projective_cover(Kmod, budget)
        red1 = _Reduced(pcK.module, budget)
        lift1 = _cov.Lifter(pcK.epi, "cover")
        tgt = _product_target(red0.algebra, red1.algebra)
    else:
        tgt = red0.algebra
    rng = np.random.default_rng(seed)

    def image(X, r=None):
        G = lift0.lift(X, r)
        if not K.dim:
            return red0(G)
        f1 = K.coordinates(K.basis @ G % M.p)
        return np.concatenate([red0(G), red1(lift1.lift(f1, r))])

    cols = []
    for X in src.matrices:
        img = image(X)
        _cross_check(img, image(X, rng), "Phi")
        cols.append(img)
    return _assemble(src, tgt, cols, BIGPHI, {"P": P, "K": Kmod})


# ---------------------------------------------------------------- bounds and dichotomy


@dataclass(frozen=True)
class Bounds:
    codim_end: int
    dim: int
    codim: int
    dim_cokernel: int  # Goldie dimension of E(M)/M
    codim_kernel: int  # dual Goldie dimension of ker(P(M) -> M)

    @property
    def b1(self):
        return self.codim_end <= self.dim + self.dim_cokernel

    @property
    def b2(self):
        return self.codim_end <= self.dim + self.codim

    @property
    def b3(self):
        return self.codim_end <= self.codim + self.codim_kernel

    def equalities(self):
        return (
            self.codim_end == self.dim + self.dim_cokernel,
            self.codim_end == self.dim + self.codim,
            self.codim_end == self.codim + self.codim_kernel,
        )


def bounds_report(M, budget=DEFAULT_BUDGET):
    E = _m.endo_algebra(M)
    c_end = _rad.ring_codim(E.algebra, budget)
    dim, codim = _m.goldie_dims(M, budget)
    env = _cov.injective_envelope(M, budget)
    L1, _ = _m.quotient_module(env.module, env.mono.image())
    pc = _cov.projective_cover(M, budget)
    Kmod, _ = _m.submodule(pc.module, pc.kernel)
    return Bounds(c_end, dim, codim, _m.goldie_dims(L1, budget)[0], _m.goldie_dims(Kmod, budget)[1])


@dataclass
class BiuniformCase:
    case: int
    ideals: IdealPair
    radical: Subspace
    maximal_ideals: list


def biuniform_classify(M, budget=DEFAULT_BUDGET):
    """Decide the comparable / two-maximal-ideal dichotomy for a biuniform M.

    Certificates: case 1 requires End(M) local with radical I_A + K_A; case 2
    requires I_A, K_A maximal with intersection J(End(M)).
    """
    if _m.goldie_dims(M, budget) != (1, 1):
        raise NotBiuniform("module is not both uniform and couniform")
    E = _m.endo_algebra(M)
    pair = ideal_pair(M, budget)
    st = _rad.structure(E.algebra, budget)
    J = st.radical
    if pair.comparable():
        big = pair.I + pair.K
        if not (len(st.blocks) == 1 and st.blocks[0].n == 1 and big == J):
            raise CertificateFailure("comparable ideals but End(M) is not local with radical I + K")
        return BiuniformCase(1, pair, J, [big])
    from .local import _is_maximal

    if not (pair.I.intersect(pair.K) == J and _is_maximal(E.algebra, pair.I, budget) and _is_maximal(E.algebra, pair.K, budget)):
        raise CertificateFailure("incomparable ideals fail the two-maximal-ideal certificate")
    return BiuniformCase(2, pair, J, [pair.I, pair.K])
