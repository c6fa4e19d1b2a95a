"""Jacobson radical, semisimple quotient, Wedderburn block data, ring
codimension and idempotent lifting."""

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from . import _accel
from .algebra import (
    DEFAULT_BUDGET,
    AlgebraElement,
    StructureAlgebra,
    ideal_product,
    quotient_by_ideal,
    subspace,
)
from .errors import BudgetExceeded, CharTooSmall, SplitBudgetExceeded, ValidationError
from .linalg import Subspace, nullspace, rank, row_space
from .poly import FpPoly, factor, is_irreducible

SPLIT_TRIALS = 64


@dataclass(frozen=True)
class RadicalReport:
    radical: Subspace
    nilpotency_index: int
    method: str  # "trace-iteration" | "brute-force"


def nilpotency_index(A, J):
    """Least k with J^k = 0 (1 for J = 0)."""
    power, k = J, 1
    while power.dim:
        if k > A.dim + 1:
            raise ArithmeticError("radical is not nilpotent; the radical computation is wrong")
        power = ideal_product(A, power, J)
        k += 1
    return k


def radical_bruteforce(A, budget=DEFAULT_BUDGET):
    """J(A) = {x : 1 - a x is a unit for every a in A}, by enumeration."""
    if A.size > budget:
        raise BudgetExceeded(f"{A.p}^{A.dim} elements exceed the budget {budget}")
    if A.dim == 0:
        J = Subspace.zero(0, A.p, A.id)
        return RadicalReport(J, 1, "brute-force")
    units = A.unit_table(budget)
    basis = _accel.quasi_regular_search(A.dim, A.p, A.right_stack, A.unit, units)
    J = Subspace(basis.reshape(-1, A.dim), A.p, A.dim, A.id)
    return RadicalReport(J, nilpotency_index(A, J), "brute-force")


def radical_trace(A):
    """J(A) = {x : tr(L_{a x}) = 0 for all a}; valid when p > dim(A)."""
    if A.p <= A.dim:
        raise CharTooSmall(f"trace-form radical needs p > dim, got p={A.p}, dim={A.dim}")
    n = A.dim
    if n == 0:
        return RadicalReport(Subspace.zero(0, A.p, A.id), 1, "trace-iteration")
    traces = np.einsum("kjj->k", A.const) % A.p
    gram = np.einsum("ijk,k->ij", A.const, traces) % A.p
    J = Subspace(nullspace(gram, A.p, cols=n), A.p, n, A.id, canonical=True)
    return RadicalReport(J, nilpotency_index(A, J), "trace-iteration")


def radical(A, budget=DEFAULT_BUDGET):
    """Cached radical: trace form when p > dim(A), enumeration otherwise.

    Algebras built as explicit products are handled factor by factor, since
    J(A x B) = J(A) x J(B).
    """
    rep = A._cache.get("radical")
    if rep is None:
        rec = A._cache.get("factors")
        if rec is not None and len(rec[0]) > 1:
            rep = _product_radical(A, rec, budget)
        else:
            rep = radical_trace(A) if A.p > A.dim else radical_bruteforce(A, budget)
        A._cache["radical"] = rep
    return rep


def _product_radical(A, rec, budget):
    rows, methods = [], set()
    for f, o in zip(*rec):
        r = radical(f, budget)
        methods.add(r.method)
        for v in r.radical.basis:
            w = np.zeros(A.dim, dtype=np.int64)
            w[o : o + f.dim] = v
            rows.append(w)
    J = subspace(A, rows) if rows else Subspace.zero(A.dim, A.p, A.id)
    method = methods.pop() if len(methods) == 1 else "mixed"
    return RadicalReport(J, nilpotency_index(A, J), method)


def semisimple_quotient(A, budget=DEFAULT_BUDGET):
    """A/J(A) with its canonical projection (a ``Quotient``)."""
    q = A._cache.get("ss_quotient")
    if q is None:
        J = radical(A, budget).radical
        q = quotient_by_ideal(A, J, name=f"{A.name}/J")
        # the quotient is semisimple by construction
        q.algebra._cache["radical"] = RadicalReport(Subspace.zero(q.algebra.dim, A.p, q.algebra.id), 1, "inherited")
        A._cache["ss_quotient"] = q
    return q


# ---------------------------------------------------------------- polynomials in elements


def power_sequence(A, x, unit, count):
    rows = [np.asarray(unit, dtype=np.int64) % A.p]
    for _ in range(count):
        rows.append(A.mul(rows[-1], x))
    return np.array(rows)


def minimal_polynomial(A, x, unit=None):
    """Monic minimal polynomial of x inside the corner algebra with identity ``unit``."""
    unit = A.unit if unit is None else np.asarray(unit, dtype=np.int64)
    p = A.p
    rows = [unit % p]
    while True:
        nxt = A.mul(rows[-1], x)
        rows.append(nxt)
        k = len(rows) - 1
        # relation sum_{i<k} c_i x^i + x^k = 0
        sol = nullspace(np.array(rows).T, p, cols=len(rows))
        if len(sol):
            for v in sol:
                if v[k] % p:
                    v = (v * pow(int(v[k]), p - 2, p)) % p
                    return FpPoly(v.tolist(), p)
        if k > A.dim + 1:
            raise ArithmeticError("minimal polynomial search overran the dimension")


def evaluate(A, f, x, unit=None):
    """f(x) with x^0 = ``unit``."""
    unit = A.unit if unit is None else np.asarray(unit, dtype=np.int64)
    acc = np.zeros(A.dim, dtype=np.int64)
    pw = unit % A.p
    for c in f.coeffs:
        acc = (acc + c * pw) % A.p
        pw = A.mul(pw, x)
    return acc


def crt_idempotents(mu):
    """Polynomials e_i with e_i = 1 mod q_i and 0 mod q_j, where q_i = f_i^m_i
    are the primary parts of ``mu``.  Evaluated at x they give orthogonal
    idempotents summing to 1."""
    parts = [g**m for g, m in factor(mu)]
    out = []
    for q in parts:
        cof = mu // q
        u = cof.inverse_mod(q)
        out.append((u * cof) % mu)
    return parts, out


# ---------------------------------------------------------------- Wedderburn


@dataclass
class Block:
    n: int  # matrix size
    k: int  # residue field degree over GF(p)
    idempotent: np.ndarray  # central primitive idempotent (coordinates)

    @property
    def dim(self):
        return self.n * self.n * self.k


@dataclass
class SemisimpleDecomposition:
    algebra: StructureAlgebra
    blocks: List[Block] = field(default_factory=list)

    @property
    def total_dim(self):
        return sum(b.dim for b in self.blocks)

    @property
    def codim(self):
        return sum(b.n for b in self.blocks)

    def verify(self):
        S = self.algebra
        if self.total_dim != S.dim:
            raise ArithmeticError("block dimensions do not add up")
        tot = np.zeros(S.dim, dtype=np.int64)
        for i, bi in enumerate(self.blocks):
            e = bi.idempotent
            if not np.array_equal(S.mul(e, e), e):
                raise ArithmeticError("block idempotent is not idempotent")
            if not S.center().contains(e):
                raise ArithmeticError("block idempotent is not central")
            for bj in self.blocks[i + 1 :]:
                if S.mul(e, bj.idempotent).any():
                    raise ArithmeticError("block idempotents are not orthogonal")
            tot = (tot + e) % S.p
        if S.dim and not np.array_equal(tot, S.unit):
            raise ArithmeticError("block idempotents do not sum to 1")
        return True


def _span_times(A, e, vectors):
    """Subspace spanned by e * v for the rows v."""
    if len(vectors) == 0:
        return Subspace.zero(A.dim, A.p, A.id)
    prods = np.einsum("i,aj,ijk->ak", e, vectors, A.const) % A.p
    return subspace(A, prods)


def wedderburn_decompose(S, trials=SPLIT_TRIALS, seed=0):
    """Central primitive idempotents and (n_i, k_i) block data of a semisimple S."""
    if radical(S).radical.dim:
        raise ValidationError("wedderburn_decompose needs a semisimple algebra")
    cached = S._cache.get("wedderburn")
    if cached is not None:
        return cached
    rng = np.random.default_rng(seed)
    p = S.p
    Z = S.center()
    pending = [S.unit.copy()] if S.dim else []
    done = []
    while pending:
        e = pending.pop()
        eZ = _span_times(S, e, Z.basis)
        candidates = list(eZ.basis)
        split = False
        certified = False
        attempts = 0
        while not (split or certified):
            if candidates:
                z = candidates.pop(0)
            else:
                attempts += 1
                if attempts > trials:
                    raise SplitBudgetExceeded(f"could not split a central block of dim {eZ.dim}")
                z = (rng.integers(0, p, eZ.dim) @ eZ.basis) % p
            mu = minimal_polynomial(S, z, e)
            facs, idems = crt_idempotents(mu)
            if len(facs) >= 2:
                pending.extend(evaluate(S, f, z, e) for f in idems)
                split = True
            elif mu.degree == eZ.dim and is_irreducible(mu):
                certified = True
        if certified:
            done.append(e)
    blocks = []
    for e in done:
        k = _span_times(S, e, Z.basis).dim
        d = _span_times(S, e, np.eye(S.dim, dtype=np.int64)).dim
        n = math.isqrt(d // k)
        if n * n * k != d:
            raise ArithmeticError(f"block of dim {d} with center degree {k} is not a matrix block")
        blocks.append(Block(n, k, e))
    blocks.sort(key=lambda b: tuple((-b.idempotent).tolist()))
    dec = SemisimpleDecomposition(S, blocks)
    dec.verify()
    S._cache["wedderburn"] = dec
    return dec


def ring_codim(A, budget=DEFAULT_BUDGET):
    """Length of A/J(A) as a module over itself: the sum of the block sizes n_i."""
    if A.dim == 0:
        return 0
    return wedderburn_decompose(semisimple_quotient(A, budget).algebra).codim


# ---------------------------------------------------------------- idempotents


def lift_idempotent(A, ebar, budget=DEFAULT_BUDGET):
    """Exact idempotent of A over an idempotent ``ebar`` of A/J(A).

    Starts from any preimage and applies e -> 3e^2 - 2e^3, which squares the
    defect e^2 - e, ceil(log2(nilpotency index)) times.
    """
    q = semisimple_quotient(A, budget)
    Q = q.algebra
    ebar = ebar.coords if isinstance(ebar, AlgebraElement) else np.asarray(ebar, dtype=np.int64)
    if not np.array_equal(Q.mul(ebar, ebar), ebar % A.p):
        raise ValidationError("ebar is not an idempotent of the semisimple quotient")
    e = q.lift(ebar)
    steps = math.ceil(math.log2(radical(A, budget).nilpotency_index)) if A.dim else 0
    for _ in range(steps):
        e2 = A.mul(e, e)
        e = (3 * e2 - 2 * A.mul(e2, e)) % A.p
    if not np.array_equal(A.mul(e, e), e):
        raise ArithmeticError("idempotent lifting did not converge")
    return AlgebraElement(A, e)


def corner_dim(A, f):
    """dim f A f."""
    if A.dim == 0:
        return 0
    left = np.einsum("i,ijk->jk", f, A.const) % A.p  # a -> f a
    right = np.einsum("j,ijk->ik", f, A.const) % A.p  # a -> a f
    return rank(left @ right % A.p, A.p)


def primitive_idempotent(S, block, trials=SPLIT_TRIALS, seed=0):
    """A primitive idempotent of the simple block ``block`` of a semisimple S."""
    rng = np.random.default_rng(seed)
    p = S.p
    f = block.idempotent.copy()
    attempts = 0
    while corner_dim(S, f) > block.k:
        left = np.einsum("i,ijk->jk", f, S.const) % p
        right = np.einsum("j,ijk->ik", f, S.const) % p
        corner = row_space(left @ right % p, p)
        attempts += 1
        if attempts > trials:
            raise SplitBudgetExceeded("could not find a primitive idempotent")
        y = (rng.integers(0, p, corner.shape[0]) @ corner) % p
        mu = minimal_polynomial(S, y, f)
        facs, idems = crt_idempotents(mu)
        if len(facs) < 2:
            continue
        options = [evaluate(S, g, y, f) for g in idems]
        f = min(options, key=lambda g: (corner_dim(S, g), tuple(g.tolist())))
    return f


@dataclass
class RadicalStructure:
    """Radical data of an algebra bundled with lifts to the algebra itself."""

    algebra: StructureAlgebra
    report: RadicalReport
    quotient: object
    decomposition: SemisimpleDecomposition
    central_lifts: list  # lifted central idempotents, one per block
    primitive_bar: list  # primitive idempotent of each block in A/J
    primitive_lifts: list  # lifted primitive idempotents

    @property
    def radical(self):
        return self.report.radical

    @property
    def blocks(self):
        return self.decomposition.blocks


def structure(A, budget=DEFAULT_BUDGET):
    st = A._cache.get("structure")
    if st is None:
        rep = radical(A, budget)
        q = semisimple_quotient(A, budget)
        dec = wedderburn_decompose(q.algebra)
        central = [lift_idempotent(A, b.idempotent, budget).coords for b in dec.blocks]
        prim_bar = [primitive_idempotent(q.algebra, b) for b in dec.blocks]
        prim = [lift_idempotent(A, e, budget).coords for e in prim_bar]
        st = RadicalStructure(A, rep, q, dec, central, prim_bar, prim)
        A._cache["structure"] = st
    return st
