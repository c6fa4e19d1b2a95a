"""Verification suites, one per implemented result.

A suite draws ``count`` instances from seeded generators (instance ``i``
uses ``default_rng([seed, i])``), runs the relevant constructions and
checks, and records per-instance numbers and verdicts.  Failures are
recorded and the suite carries on unless ``fail_fast`` is set.

The report has a flat ``key = value`` text form and a JSON form.  Both are
deterministic in (suite, seed, count, budget); only ``wall_time`` varies.
"""

import json
import time
import traceback
from dataclasses import dataclass, field

import numpy as np

from . import bridges as _br
from . import covers as _cov
from . import generators as _gen
from . import local as _loc
from . import modules as _m
from . import radical as _rad
from .algebra import DEFAULT_BUDGET, AlgebraMorphism, compose, is_unit
from .constructions import diagonal, prime_field, upper_triangular
from .errors import SemilocError

ENUM = 2**16  # End(M) enumerability threshold for exhaustive bridge checks
LIFT_SAMPLES = 4000  # sampling for matrix lifts too large to enumerate


@dataclass
class Record:
    index: int
    ok: bool
    data: dict = field(default_factory=dict)
    error: str = ""


@dataclass
class SuiteReport:
    suite: str
    seed: int
    count: int
    budget: int
    records: list
    census: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self):
        return sum(r.ok for r in self.records)

    @property
    def failed(self):
        return len(self.records) - self.passed

    @property
    def ok(self):
        return self.failed == 0

    def payload(self):
        """Everything except timing, as plain JSON-able data."""
        return {
            "suite": self.suite,
            "seed": self.seed,
            "count": self.count,
            "budget": self.budget,
            "passed": self.passed,
            "failed": self.failed,
            "census": self.census,
            "instances": [
                {"index": r.index, "ok": r.ok, "error": r.error, **r.data} for r in self.records
            ],
        }

    def payload_bytes(self):
        return json.dumps(self.payload(), sort_keys=True).encode()

    def to_json(self):
        d = self.payload()
        d["wall_time"] = round(self.wall_time, 3)
        return json.dumps(d, sort_keys=True, indent=1)

    def to_text(self):
        lines = [
            f"suite = {self.suite}",
            f"seed = {self.seed}",
            f"count = {self.count}",
            f"budget = {self.budget}",
        ]
        for r in self.records:
            pre = f"instance[{r.index}]"
            lines.append(f"{pre}.verdict = {'pass' if r.ok else 'FAIL'}")
            for k in sorted(r.data):
                lines.append(f"{pre}.{k} = {_fmt(r.data[k])}")
            if r.error:
                lines.append(f"{pre}.error = {r.error}")
        for k in sorted(self.census):
            lines.append(f"census.{k} = {_fmt(self.census[k])}")
        lines.append(f"summary.passed = {self.passed}")
        lines.append(f"summary.failed = {self.failed}")
        lines.append(f"wall_time = {self.wall_time:.3f}")
        return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    return str(v)


# ---------------------------------------------------------------- instance sources


def _local_morphism(rng, budget):
    A = _gen.random_algebra(rng, cap=2**10)
    morphs = _gen.local_morphisms(A, rng, budget)
    label, phi = morphs[int(rng.integers(0, len(morphs)))]
    return label, phi, A._cache.get("family", "")


def _ut_inclusion(p=2):
    return "UT2-in-M2", upper_triangular(prime_field(p), 2)[1], "triangular"


def _field_map(rng, budget, want=None):
    """A local morphism into an explicit product of fields (``want`` factors if given)."""
    for _ in range(64):
        A = _gen.random_algebra(rng, cap=2**10)
        fp = _gen.field_product_map(A, budget)
        if fp is None:
            continue
        k = len(_rad.structure(A, budget).blocks)
        if rng.integers(0, 2):
            _, incl = _gen.subalgebra(A, _gen.subalgebra_generated(A, [rng.integers(0, A.p, A.dim)]))
            phi, label = compose(fp, incl), "subalgebra-to-fields"
        else:
            phi, label = fp, "field-product"
        if want is None or k == want:
            return label, phi
        if want == 2 and k == 1:
            F = fp.codomain
            d, _ = diagonal(F, 2)
            return label + "+diagonal", compose(d, phi)
    raise SemilocError("no field-product morphism found")


def _ut_diagonal_entries():
    UT, incl = upper_triangular(prime_field(2), 2)
    return "UT2-diagonal", _gen.field_product_map(UT)


def _radical_ok(B, budget):
    """Is the radical of End(B) cheap: trace form, or enumeration below ENUM."""
    d = _m.endo_algebra(B).dim
    return B.p > d or B.p**d <= min(budget, ENUM)


def tractable(M, budget):
    """Every endomorphism algebra the bridges touch has a computable radical."""
    env = _cov.injective_envelope(M, budget)
    pc = _cov.projective_cover(M, budget)
    L1, _ = _m.quotient_module(env.module, env.mono.image())
    K, _ = _m.submodule(pc.module, pc.kernel)
    mods = [M, env.module, pc.module]
    if L1.dim:
        mods.append(_cov.injective_envelope(L1, budget).module)
    if K.dim:
        mods.append(_cov.projective_cover(K, budget).module)
    return all(_radical_ok(B, budget) for B in mods)


def _module(rng, budget=DEFAULT_BUDGET, max_dim=6, end_cap=2**12, cap=2**10, primes=(2, 3)):
    for _ in range(32):
        A = _gen.random_algebra(rng, cap=cap, primes=primes)
        M = _gen.random_module(A, rng, max_dim=max_dim, end_cap=end_cap)
        if tractable(M, budget):
            return M
    raise SemilocError("no tractable module found")


def _locality(morphism, budget, seed=0):
    """Exhaustive within the budget, otherwise sampled."""
    return _loc.is_local(morphism, budget, seed=seed)


# ---------------------------------------------------------------- suites


def suite_L21(i, rng, budget):
    label, phi, fam = _local_morphism(rng, budget)
    # psi: the radical projection of the codomain, local by construction
    psi = _rad.semisimple_quotient(phi.codomain, budget).projection
    rep = _loc.lemma21_suite(phi, psi, budget, seed=i, samples=LIFT_SAMPLES)
    return {"morphism": label, "family": fam, "domain": phi.domain.name, **{f"clause.{k}": v for k, v in rep.clauses.items()}}, {
        "passed": rep.passed()
    }


def suite_T24(i, rng, budget):
    label, phi, fam = _ut_inclusion() if i == 0 else _local_morphism(rng, budget)
    v = _loc.is_local(phi, budget, seed=i)
    cd = _loc.camps_dicks_check(phi, budget, seed=i)
    data = {"morphism": label, "family": fam, "domain": phi.domain.name, "locality": v.verdict, "codim_R": cd.codim_R, "codim_S": cd.codim_S}
    return data, {"local": v.verdict == _loc.LOCAL, "codim-inequality": cd.holds}


def suite_P25(i, rng, budget):
    label, phi = _ut_diagonal_entries() if i == 0 else _field_map(rng, budget)
    res = _loc.producte_decompose(phi, budget, seed=i)
    nb = len(_rad.structure(phi.domain, budget).blocks)
    data = {"morphism": label, "domain": phi.domain.name, "m": res.m, "indices": list(res.indices), "blocks": nb}
    checks = dict(res.checks)
    checks["m-equals-blocks"] = res.m == nb
    return data, checks


def suite_C26(i, rng, budget):
    label, phi = _ut_diagonal_entries() if i == 0 else _field_map(rng, budget, want=2)
    res = _loc.dos_classify(phi, budget, seed=i)
    st = _rad.structure(phi.domain, budget)
    data = {"morphism": label, "domain": phi.domain.name, "case": res.case}
    local_ring = len(st.blocks) == 1
    return data, {"case-matches-ring": (res.case == 1) == local_ring}


def suite_P27(i, rng, budget):
    phi, M = _gen.restriction_pairs(rng)
    MR = _m.restrict_scalars(phi, M)
    ES, ER = _m.endo_algebra(M), _m.endo_algebra(MR)
    cols = [ER.coords(X) for X in ES.matrices]
    mat = np.array(cols, dtype=np.int64).T.reshape(ER.dim, ES.dim)
    incl = AlgebraMorphism(ES.algebra, ER.algebra, mat, name="End(M_S)->End(M_R)")
    v = _locality(incl, budget, seed=i)
    data = {
        "R": phi.domain.name,
        "S": phi.codomain.name,
        "dim_end_S": ES.dim,
        "dim_end_R": ER.dim,
        "codim_end_S": _rad.ring_codim(ES.algebra, budget),
        "locality": v.verdict,
    }
    return data, {"inclusion-local": v.verdict != _loc.NOT_LOCAL, "exhaustive": v.method == "exhaustive"}


def _top_map(M, budget):
    """The ring morphism End(M) -> End(M/MJ)."""
    E = _m.endo_algebra(M)
    T, q, section = _br._top_data(M, budget)
    ET = _m.endo_algebra(T)
    cols = [ET.coords(section @ X @ q % M.p) for X in E.matrices]
    mat = np.array(cols, dtype=np.int64).T.reshape(ET.dim, E.dim)
    return AlgebraMorphism(E.algebra, ET.algebra, mat, name="End(M)->End(M/MJ)")


def suite_P31(i, rng, budget):
    for _ in range(64):
        A = _gen.random_algebra(rng, cap=2**10)
        if A.is_commutative():
            break
    M = _gen.random_module(A, rng, max_dim=6, end_cap=2**12)
    phi = _top_map(M, budget)
    v = _locality(phi, budget, seed=i)
    data = {"algebra": A.name, "module_dim": M.dim, "end_dim": phi.domain.dim, "locality": v.verdict}
    return data, {"commutative": A.is_commutative(), "top-map-local": v.verdict == _loc.LOCAL}


def suite_T33(i, rng, budget):
    for _ in range(32):
        A = _gen.random_algebra(rng, cap=2**9)
        r = int(rng.integers(1, 3))
        c = int(rng.integers(0, 3))
        P = [[rng.integers(0, A.p, A.dim) for _ in range(c)] for _ in range(r)]
        M, _ = _m.module_from_presentation(A, P)
        if M.dim == 0 or M.dim > 6:
            continue
        N, rank = _cov.build_top_complement(M, budget)
        W = M if N.dim == 0 else _m.direct_sum(M, N).module
        if W.p ** _m.endo_algebra(W).dim <= ENUM:
            break
    psi = _br.step1_psi(M, budget=budget, seed=i)
    v = psi.locality(budget=budget, seed=i)
    E = _m.endo_algebra(M)
    st = _rad.structure(E.algebra, budget)
    data = {
        "algebra": A.name,
        "module_dim": M.dim,
        "complement_dim": N.dim,
        "rank": rank,
        "end_dim": E.dim,
        "end_codim": _rad.ring_codim(E.algebra, budget),
        "psi_source_dim": psi.source.dim,
        "locality": v.verdict,
    }
    checks = {
        "end-semilocal": st.decomposition.verify(),
        "free-top": _cov.is_free_top(W, rank, budget),
        "psi-local": v.verdict == _loc.LOCAL,
    }
    return data, checks


def suite_P44(i, rng, budget):
    M = _module(rng, budget)
    env = _cov.injective_envelope(M, budget)
    EE = _m.endo_algebra(env.module)
    g = _rad.ring_codim(EE.algebra, budget)
    d = _m.goldie_dims(M, budget)[0]
    ess = _m.submodule_position(env.module, env.mono.image(), budget).essential
    data = {"algebra": M.algebra.name, "module_dim": M.dim, "goldie_dim": d, "goldie_end_E_mod_J": g}
    return data, {"dim-equality": d == g, "essential-image": ess, "mono": env.mono.is_mono()}


def _combos(E, p, rng, extra=8):
    mats = list(E.matrices)
    for _ in range(extra):
        if E.dim:
            mats.append(E.matrix(rng.integers(0, p, E.dim)))
    return mats


def _unit_in(target, v):
    return is_unit(target.element(np.asarray(v)))


def suite_C45(i, rng, budget):
    M = _module(rng, budget)
    E = _m.endo_algebra(M)
    b = _br.spectral_bridge(M, budget, seed=i)
    v = b.locality(budget=budget, seed=i)
    mono_iso, inv_mono = True, True
    for X in _combos(E, M.p, rng):
        f = _m.ModuleHom(M, M, X, check=False)
        mono_iso &= (not f.is_mono()) or f.is_iso()
        inv_mono &= _unit_in(b.target, b.image_of(X)) == f.is_mono()
    ideals = _br.ideal_pair(M, budget)
    data = {"algebra": M.algebra.name, "module_dim": M.dim, "end_dim": E.dim, "locality": v.verdict}
    return data, {
        "mono-is-iso": mono_iso,
        "unit-iff-mono": inv_mono,
        "kernel-is-I": b.kernel() == ideals.I,
        "spectral-local": v.verdict != _loc.NOT_LOCAL,
    }


def suite_T54(i, rng, budget):
    M = _module(rng, budget)
    b = _br.chi_bridge(M, budget, seed=i)
    v = b.locality(budget=budget, seed=i)
    bd = _br.bounds_report(M, budget)
    data = {
        "algebra": M.algebra.name,
        "module_dim": M.dim,
        "locality": v.verdict,
        "method": v.method,
        "codim_end": bd.codim_end,
        "dim": bd.dim,
        "dim_cokernel": bd.dim_cokernel,
        "b1_equality": bd.equalities()[0],
    }
    return data, {"chi-local": v.verdict != _loc.NOT_LOCAL, "b1": bd.b1}


def suite_P63(i, rng, budget):
    M = _module(rng, budget)
    E = _m.endo_algebra(M)
    b = _br.dual_bridge(M, budget, seed=i)
    pc = _cov.projective_cover(M, budget)
    EP = _m.endo_algebra(pc.module)
    g = _rad.ring_codim(EP.algebra, budget)
    cod = _m.goldie_dims(M, budget)[1]
    inv_epi = True
    for X in _combos(E, M.p, rng):
        f = _m.ModuleHom(M, M, X, check=False)
        inv_epi &= _unit_in(b.target, b.image_of(X)) == f.is_epi()
    ideals = _br.ideal_pair(M, budget)
    sup = _m.submodule_position(pc.module, pc.kernel, budget).superfluous
    data = {"algebra": M.algebra.name, "module_dim": M.dim, "codim": cod, "goldie_end_P_mod_J": g}
    return data, {
        "unit-iff-epi": inv_epi,
        "codim-equality": g == cod,
        "kernel-is-K": b.kernel() == ideals.K,
        "superfluous-kernel": sup,
    }


def suite_P64(i, rng, budget):
    M = _module(rng, budget)
    b = _br.pair_bridge(M, budget, seed=i)
    ideals = _br.ideal_pair(M, budget)
    v = b.locality(budget=budget, seed=i)
    inter = ideals.I.intersect(ideals.K)
    data = {
        "algebra": M.algebra.name,
        "module_dim": M.dim,
        "dim_I": ideals.I.dim,
        "dim_K": ideals.K.dim,
        "dim_kernel": b.kernel().dim,
        "locality": v.verdict,
    }
    return data, {"kernel-is-I-cap-K": b.kernel() == inter, "pair-local": v.verdict != _loc.NOT_LOCAL}


def suite_C65(i, rng, budget):
    M = _module(rng, budget)
    bd = _br.bounds_report(M, budget)
    data = {
        "algebra": M.algebra.name,
        "module_dim": M.dim,
        "codim_end": bd.codim_end,
        "dim": bd.dim,
        "codim": bd.codim,
        "b2_equality": bd.equalities()[1],
    }
    return data, {"b2": bd.b2}


def _biuniform(rng, budget):
    for _ in range(64):
        M = _module(rng, budget)
        if _m.goldie_dims(M, budget) == (1, 1):
            return M
        # fall back to an indecomposable projective or simple of the same algebra
        A = M.algebra
        nb = len(_rad.structure(A, budget).blocks)
        P = _cov.indecomposable_projective(A, int(rng.integers(0, nb)), budget)[0]
        if _m.goldie_dims(P, budget) == (1, 1) and P.p ** _m.endo_algebra(P).dim <= 2**12:
            return P
    return _gen.simple_module(prime_field(2), 0)


def suite_C67(i, rng, budget):
    M = _biuniform(rng, budget)
    c = _br.biuniform_classify(M, budget)
    data = {
        "algebra": M.algebra.name,
        "module_dim": M.dim,
        "case": c.case,
        "dim_I": c.ideals.I.dim,
        "dim_K": c.ideals.K.dim,
        "comparable": c.ideals.comparable(),
    }
    return data, {"classified": c.case in (1, 2)}


def suite_T72(i, rng, budget):
    M = _module(rng, budget)
    b = _br.bigPhi_bridge(M, budget, seed=i)
    v = b.locality(budget=budget, seed=i)
    data = {"algebra": M.algebra.name, "module_dim": M.dim, "target_dim": b.target.dim, "locality": v.verdict, "method": v.method}
    return data, {"Phi-local": v.verdict != _loc.NOT_LOCAL}


def suite_T73(i, rng, budget):
    M = _module(rng, budget)
    bd = _br.bounds_report(M, budget)
    data = {
        "algebra": M.algebra.name,
        "module_dim": M.dim,
        "codim_end": bd.codim_end,
        "codim": bd.codim,
        "codim_kernel": bd.codim_kernel,
        "b3_equality": bd.equalities()[2],
    }
    return data, {"b3": bd.b3}


SUITES = {
    "L2.1": suite_L21,
    "T2.4": suite_T24,
    "P2.5": suite_P25,
    "C2.6": suite_C26,
    "P2.7": suite_P27,
    "P3.1": suite_P31,
    "T3.3": suite_T33,
    "P4.4": suite_P44,
    "C4.5": suite_C45,
    "T5.4": suite_T54,
    "P6.3": suite_P63,
    "P6.4": suite_P64,
    "C6.5": suite_C65,
    "C6.7": suite_C67,
    "T7.2": suite_T72,
    "T7.3": suite_T73,
}


def _census(suite, records):
    c = {}
    ok = [r for r in records if r.ok]
    if suite == "C6.7":
        c["case1"] = sum(r.data.get("case") == 1 for r in ok)
        c["case2"] = sum(r.data.get("case") == 2 for r in ok)
    for key in ("b1_equality", "b2_equality", "b3_equality"):
        if any(key in r.data for r in ok):
            c[key] = sum(bool(r.data.get(key)) for r in ok)
    if any("locality" in r.data for r in ok):
        for verdict in (_loc.LOCAL, _loc.NOT_LOCAL, _loc.UNKNOWN):
            c[f"verdict.{verdict}"] = sum(r.data.get("locality") == verdict for r in records)
    return c


def run_one(suite, index, seed, budget):
    rng = np.random.default_rng([seed, index])
    try:
        data, checks = SUITES[suite](index, rng, budget)
    except (SemilocError, AssertionError, ArithmeticError) as exc:
        return Record(index, False, {}, f"{type(exc).__name__}: {exc}")
    except Exception as exc:  # internal error, still reported per instance
        tb = traceback.format_exception_only(type(exc), exc)[-1].strip()
        return Record(index, False, {}, f"internal: {tb}")
    data = dict(data)
    for k, v in checks.items():
        data[f"check.{k}"] = bool(v)
    return Record(index, all(bool(v) for v in checks.values()), data)


def run_suite(suite, count=100, seed=0, budget=DEFAULT_BUDGET, fail_fast=False, progress=None):
    if suite not in SUITES:
        raise KeyError(suite)
    t0 = time.perf_counter()
    records = []
    for i in range(count):
        rec = run_one(suite, i, seed, budget)
        records.append(rec)
        if progress:
            progress(rec)
        if fail_fast and not rec.ok:
            break
    rep = SuiteReport(suite, seed, count, budget, records, _census(suite, records))
    rep.wall_time = time.perf_counter() - t0
    return rep
