"""Local morphisms: deciding locality, the basic calculus, support induction.

A ring morphism phi: R -> S is local when phi(r) invertible forces r
invertible.  Locality is decided by enumeration when R is small enough and
otherwise by seeded sampling, which can only refute it.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _accel
from . import radical as _rad
from .algebra import (
    MAX_DIM,
    DEFAULT_BUDGET,
    AlgebraMorphism,
    compose,
    is_unit,
    subalgebra,
    subspace,
)
from .constructions import lift, product, product_factors
from .errors import CertificateFailure, CodomainNotFieldProduct, NotLocal
from .linalg import Subspace

SAMPLES = 10**5
_CHUNK = 1 << 15

LOCAL = "local"
NOT_LOCAL = "not-local"
UNKNOWN = "unknown-budget"


@dataclass(frozen=True)
class LocalityReport:
    verdict: str
    witness: Optional[tuple]
    elements_checked: int
    method: str  # exhaustive | sampled
    morphism: Optional[AlgebraMorphism] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if (self.witness is not None) != (self.verdict == NOT_LOCAL):
            raise CertificateFailure("witness present iff verdict is not-local")
        if self.witness is not None and self.morphism is not None:
            phi = self.morphism
            r = np.array(self.witness, dtype=np.int64)
            if is_unit(phi.domain.element(r)) or not is_unit(phi.codomain.element(phi(r))):
                raise CertificateFailure("locality witness does not re-verify")

    @property
    def is_local(self):
        return self.verdict == LOCAL


def _unit_flags(A, coords):
    if A.dim == 0:
        return np.ones(len(coords), dtype=bool)
    return np.asarray(_accel.unit_flags_coords(np.ascontiguousarray(coords), A.const, A.p), dtype=bool)


def _first_violation(phi, coords):
    """Index of the first r with phi(r) a unit and r not a unit, or -1."""
    R, S = phi.domain, phi.codomain
    imgs = (coords @ phi.matrix.T) % R.p
    cand = np.flatnonzero(_unit_flags(S, imgs))
    if not cand.size:
        return -1
    hits = cand[~_unit_flags(R, coords[cand])]
    return int(hits[0]) if hits.size else -1


def is_local(phi, budget=DEFAULT_BUDGET, samples=SAMPLES, seed=0):
    R = phi.domain
    p, n = R.p, R.dim
    if R.size <= budget:
        total = R.size
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            coords = _accel.decode_indices(idx, n, p)
            hit = _first_violation(phi, coords)
            if hit >= 0:
                w = tuple(int(c) for c in coords[hit])
                return LocalityReport(NOT_LOCAL, w, start + hit + 1, "exhaustive", phi)
        return LocalityReport(LOCAL, None, total, "exhaustive", phi)
    rng = np.random.default_rng(seed)
    done = 0
    while done < samples:
        k = min(_CHUNK, samples - done)
        coords = rng.integers(0, p, size=(k, n), dtype=np.int64)
        hit = _first_violation(phi, coords)
        if hit >= 0:
            w = tuple(int(c) for c in coords[hit])
            return LocalityReport(NOT_LOCAL, w, done + hit + 1, "sampled", phi)
        done += k
    return LocalityReport(UNKNOWN, None, done, "sampled", phi)


# ---------------------------------------------------------------- basic calculus


@dataclass
class Lemma21Report:
    clauses: dict  # clause name -> "pass" | "skipped" | verdict string

    def passed(self):
        return all(v in ("pass", "skipped", LOCAL, UNKNOWN) for v in self.clauses.values())


def lemma21_suite(phi, psi=None, budget=DEFAULT_BUDGET, lift_sizes=(2, 3), seed=0, samples=SAMPLES):
    """Check the kernel, radical-image, matrix-lift and composition clauses.

    Raises CertificateFailure naming the clause that fails.
    """
    R, S = phi.domain, phi.codomain
    out = {}
    rep = is_local(phi, budget, seed=seed)
    if rep.verdict == LOCAL:
        JR = _rad.radical(R, budget).radical
        if not phi.kernel() <= JR:
            raise CertificateFailure("clause 1: kernel of a local morphism is not inside J(R)")
        out["kernel-in-radical"] = "pass"
        if phi.is_onto():
            img = subspace(S, (JR.basis @ phi.matrix.T) % R.p) if JR.dim else Subspace.zero(S.dim, S.p, S.id)
            if img != _rad.radical(S, budget).radical:
                raise CertificateFailure("clause 2: phi(J(R)) != J(S) for an onto local morphism")
            out["radical-image"] = "pass"
            for n in lift_sizes:
                if n * n * max(R.dim, S.dim) > MAX_DIM:
                    out[f"matrix-lift-{n}"] = "skipped"
                    continue
                v = is_local(lift(phi, n), budget, samples, seed).verdict
                if v == NOT_LOCAL:
                    raise CertificateFailure(f"clause 2: M_{n}(phi) is not local")
                out[f"matrix-lift-{n}"] = v
        else:
            out["radical-image"] = "skipped"
    else:
        out["kernel-in-radical"] = "skipped"
    if psi is not None:
        both = compose(psi, phi)
        v_psi = is_local(psi, budget, seed=seed).verdict
        v_both = is_local(both, budget, seed=seed).verdict
        if rep.verdict == LOCAL and v_psi == LOCAL:
            if v_both == NOT_LOCAL:
                raise CertificateFailure("clause 3: composite of local morphisms is not local")
            out["composition"] = "pass"
        else:
            out["composition"] = "skipped"
        if v_both == LOCAL:
            if rep.verdict == NOT_LOCAL:
                raise CertificateFailure("clause 4: psi o phi local but phi not local")
            out["cancellation"] = "pass"
        else:
            out["cancellation"] = "skipped"
    return Lemma21Report(out)


# ---------------------------------------------------------------- field products


def field_blocks(S, budget=DEFAULT_BUDGET):
    """(factors, offsets) when S is an explicit product of fields."""
    rec = product_factors(S)
    factors, offsets = rec if rec is not None else ((S,), (0,))
    for D in factors:
        dec = _rad.structure(D, budget)
        if dec.radical.dim or len(dec.blocks) != 1 or dec.blocks[0].n != 1:
            raise CodomainNotFieldProduct(f"factor {D.name} is not a field")
    return factors, offsets


def supports(phi, coords, factors, offsets):
    """Boolean matrix: row r, column i set when tau_i(r) != 0."""
    imgs = (np.atleast_2d(coords) @ phi.matrix.T) % phi.domain.p
    cols = [imgs[:, o : o + D.dim].any(axis=1) for D, o in zip(factors, offsets)]
    return np.stack(cols, axis=1) if cols else np.zeros((len(imgs), 0), dtype=bool)


@dataclass(frozen=True)
class SupportProfile:
    k: int
    ell: int  # least nonzero support size
    minimal_element: tuple
    minimal_support: tuple
    approximate: bool
    histogram: tuple  # count of elements per support size 0..k


def support_profile(phi, budget=DEFAULT_BUDGET, samples=SAMPLES, seed=0):
    R = phi.domain
    factors, offsets = field_blocks(phi.codomain, budget)
    k = len(factors)
    if R.size <= budget:
        coords = R.all_coords(budget)
        approx = False
    else:
        rng = np.random.default_rng(seed)
        coords = np.vstack([np.eye(R.dim, dtype=np.int64), rng.integers(0, R.p, (samples, R.dim))])
        approx = True
    sup = supports(phi, coords, factors, offsets)
    d = sup.sum(axis=1)
    hist = tuple(int((d == s).sum()) for s in range(k + 1))
    nz = np.flatnonzero(d > 0)
    if nz.size == 0:
        return SupportProfile(k, 0, (), (), approx, hist)
    ell = int(d[nz].min())
    cand = nz[d[nz] == ell]
    # lexicographic tie-break on coordinates
    best = min(cand, key=lambda i: tuple(coords[i]))
    return SupportProfile(
        k, ell, tuple(int(c) for c in coords[best]), tuple(np.flatnonzero(sup[best]).tolist()), approx, hist
    )


@dataclass
class ProducteResult:
    m: int
    indices: tuple
    maximal_ideals: list  # ker tau_{i_j} as Subspaces of R
    morphism: AlgebraMorphism  # (tau_{i_1}, ..., tau_{i_m})
    residue_dims: tuple  # dim of tau_{i_j}(R), a subfield of D_{i_j}
    checks: dict


def _projected_ring(phi, idx, factors, offsets, budget):
    """tau_idx(R) as an algebra, with the coordinate map from R."""
    P, _ = product(*[factors[i] for i in idx])
    cols = np.concatenate([np.arange(offsets[i], offsets[i] + factors[i].dim) for i in idx])
    proj = phi.matrix[cols, :]  # P.dim x R.dim
    img = subspace(P, proj.T)
    sub, incl = subalgebra(P, img)
    return sub, incl, proj, P


def _select(phi, idx, factors, offsets, budget, trace):
    if len(idx) == 1:
        trace.append(("single", idx))
        return list(idx)
    sub, incl, proj, P = _projected_ring(phi, idx, factors, offsets, budget)
    st = _rad.structure(sub, budget)
    if len(st.blocks) > 1:
        e = incl(st.central_lifts[0])
        sub_off = np.cumsum([0] + [factors[i].dim for i in idx])
        side = [bool(e[sub_off[j] : sub_off[j + 1]].any()) for j in range(len(idx))]
        left = tuple(i for i, s in zip(idx, side) if s)
        right = tuple(i for i, s in zip(idx, side) if not s)
        trace.append(("split", left, right))
        return _select(phi, left, factors, offsets, budget, trace) + _select(phi, right, factors, offsets, budget, trace)
    # no nontrivial idempotent: least nonzero support within the projected ring
    coords = sub.all_coords(budget)
    vals = (coords @ incl.matrix.T) % sub.p
    sub_off = np.cumsum([0] + [factors[i].dim for i in idx])
    sup = np.stack([vals[:, sub_off[j] : sub_off[j + 1]].any(axis=1) for j in range(len(idx))], axis=1)
    d = sup.sum(axis=1)
    nz = np.flatnonzero(d > 0)
    ell = int(d[nz].min())
    if ell == len(idx):
        trace.append(("full", idx))
        return [min(idx)]
    cand = nz[d[nz] == ell]
    best = min(cand, key=lambda i: tuple(coords[i]))
    r = coords[best]
    if not st.radical.contains(r):
        raise CertificateFailure("minimal-support element is not in the radical")
    keep = tuple(i for j, i in enumerate(idx) if not sup[best, j])
    trace.append(("support", tuple(int(c) for c in vals[best]), keep))
    return _select(phi, keep, factors, offsets, budget, trace)


def producte_decompose(phi, budget=DEFAULT_BUDGET, seed=0):
    R = phi.domain
    factors, offsets = field_blocks(phi.codomain, budget)
    if is_local(phi, budget, seed=seed).verdict != LOCAL:
        raise NotLocal("morphism is not certified local")
    trace = []
    chosen = _select(phi, tuple(range(len(factors))), factors, offsets, budget, trace)
    if len(chosen) > len(factors):
        raise CertificateFailure("support induction selected more indices than factors")
    chosen = tuple(sorted(chosen))
    P, _ = product(*[factors[i] for i in chosen])
    cols = np.concatenate([np.arange(offsets[i], offsets[i] + factors[i].dim) for i in chosen])
    tau = AlgebraMorphism(R, P, phi.matrix[cols, :], name="tau")
    kernels, res_dims = [], []
    for i in chosen:
        t = phi.matrix[offsets[i] : offsets[i] + factors[i].dim, :]
        kernels.append(AlgebraMorphism(R, factors[i], t, check=False).kernel())
        res_dims.append(subspace(factors[i], t.T).dim)
    st = _rad.structure(R, budget)
    JR = st.radical
    checks = {}
    checks["tau-local"] = is_local(tau, budget, seed=seed).verdict == LOCAL
    checks["kernel-is-radical"] = tau.kernel() == JR
    checks["m-is-block-count"] = len(chosen) == len(st.blocks)
    blocks = sorted((b.n, b.k) for b in st.blocks)
    checks["residue-blocks"] = blocks == sorted((1, d) for d in res_dims)
    maximal = all(_is_maximal(R, K, budget) for K in kernels) and len(set(kernels)) == len(kernels)
    checks["maximal-ideals"] = maximal
    return ProducteResult(len(chosen), chosen, kernels, tau, tuple(res_dims), checks)


def _is_maximal(R, K, budget):
    from .algebra import quotient_by_ideal

    if K.contains(R.unit):
        return False
    q = quotient_by_ideal(R, K)
    st = _rad.structure(q.algebra, budget)
    return st.radical.dim == 0 and len(st.blocks) == 1


@dataclass
class DosResult:
    case: int
    index: Optional[int]  # case 1: the tau_i that is local
    maximal_ideals: list
    radical: Subspace


def dos_classify(phi, budget=DEFAULT_BUDGET, seed=0):
    """Two-factor dichotomy for a local phi: R -> D_1 x D_2."""
    R = phi.domain
    factors, offsets = field_blocks(phi.codomain, budget)
    if len(factors) != 2:
        raise CodomainNotFieldProduct("dichotomy needs exactly two field factors")
    if is_local(phi, budget, seed=seed).verdict != LOCAL:
        raise NotLocal("morphism is not certified local")
    st = _rad.structure(R, budget)
    JR = st.radical
    taus = [
        AlgebraMorphism(R, D, phi.matrix[o : o + D.dim, :], check=False) for D, o in zip(factors, offsets)
    ]
    local_ring = len(st.blocks) == 1 and st.blocks[0].n == 1
    if local_ring:
        for i, t in enumerate(taus):
            if is_local(t, budget, seed=seed).verdict == LOCAL:
                K = t.kernel()
                if K != JR or not _is_maximal(R, K, budget):
                    raise CertificateFailure("case 1 maximal ideal does not re-verify")
                return DosResult(1, i, [K], JR)
        raise CertificateFailure("local ring but neither tau_i is local")
    kers = [t.kernel() for t in taus]
    if phi.kernel() != JR or kers[0] == kers[1] or not all(_is_maximal(R, K, budget) for K in kers):
        raise CertificateFailure("case 2 certificates do not re-verify")
    return DosResult(2, None, kers, JR)


@dataclass(frozen=True)
class CampsDicks:
    codim_R: int
    codim_S: int
    holds: bool


def camps_dicks_check(phi, budget=DEFAULT_BUDGET, seed=0):
    if is_local(phi, budget, seed=seed).verdict != LOCAL:
        raise NotLocal("morphism is not certified local")
    a = _rad.ring_codim(phi.domain, budget)
    b = _rad.ring_codim(phi.codomain, budget)
    return CampsDicks(a, b, a <= b)
