"""Seeded instance generators: algebra families, modules and local morphisms.

Every generator takes a numpy Generator (or a seed) and is deterministic in
it.  Sizes are capped so that the algebras, and the endomorphism algebras
of the generated modules, stay enumerable.
"""

import numpy as np

from . import covers as _cov
from . import modules as _m
from . import radical as _rad
from .algebra import (
    AlgebraMorphism,
    StructureAlgebra,
    compose,
    ideal_generated,
    quotient_by_ideal,
    subalgebra,
    subalgebra_generated,
    subspace,
)
from .constructions import (
    diagonal,
    finite_field,
    matrix_algebra,
    matrix_extension,
    path_algebra,
    prime_field,
    product,
    trivial_extension,
    truncated_polynomial,
    upper_triangular,
)
from .errors import DimensionCapExceeded, ValidationError
from .io import Instance

ENUM_CAP = 2**16


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


# ---------------------------------------------------------------- algebra families


def triangular(n=2, p=2, k=1):
    D = prime_field(p) if k == 1 else finite_field(p, k)
    return upper_triangular(D, n)[0]


def parse_quiver(text):
    """'0>1,1>2' -> (3, [(0, 1), (1, 2)])."""
    arrows = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        a, b = part.split(">")
        arrows.append((int(a), int(b)))
    n = 1 + max([max(a) for a in arrows], default=0)
    return n, arrows


def quiver_algebra(quiver="0>1", length=2, p=2):
    n, arrows = parse_quiver(quiver)
    return path_algebra(p, n, arrows, length, name=f"kQ[{quiver}]/len>{length}")


def random_trivial_extension(p=2, r=2, m=2, seed=0):
    """K = GF(p)^r with V = sum of m one-dimensional pieces e_i K e_j.

    Each basis vector of V gets a random (left, right) vertex pair; the
    idempotent e_a acts on the left as the identity on vectors whose left
    vertex is a, and similarly on the right.
    """
    rng = _rng(seed)
    K, _ = product(*([prime_field(p)] * r)) if r > 1 else (prime_field(p), None)
    pairs = [tuple(int(x) for x in rng.integers(0, r, 2)) for _ in range(m)]
    left = np.zeros((r, m, m), dtype=np.int64)
    right = np.zeros((r, m, m), dtype=np.int64)
    for v, (a, b) in enumerate(pairs):
        left[a, v, v] = 1
        right[b, v, v] = 1
    T = trivial_extension(K, left, right, name=f"GF({p})^{r}|x V{pairs}")
    return T


def random_subalgebra(p=2, n=3, gens=1, seed=0, ambient="triangular"):
    """Subalgebra of UT_n(GF(p)) (or M_n) generated by random elements."""
    rng = _rng(seed)
    A = triangular(n, p) if ambient == "triangular" else matrix_algebra(p, n)
    vecs = [rng.integers(0, p, A.dim) for _ in range(gens)]
    S = subalgebra_generated(A, vecs)
    sub, _ = subalgebra(A, S, name=f"sub{A.name}")
    return sub


def _small_factor(rng, p):
    choice = int(rng.integers(0, 4))
    if choice == 0:
        return prime_field(p)
    if choice == 1:
        return truncated_polynomial(int(rng.integers(2, 4)), p)
    if choice == 2:
        return triangular(2, p)
    return finite_field(p, 2)


def random_product(p=2, parts=2, seed=0):
    rng = _rng(seed)
    P, _ = product(*[_small_factor(rng, p) for _ in range(parts)])
    return P


def matrix_family(n=2, p=2, base="truncated-poly"):
    B = truncated_polynomial(2, p) if base == "truncated-poly" else prime_field(p)
    return matrix_extension(B, n)


FAMILIES = {
    "triangular": lambda rng, n=2, p=2, k=1: triangular(int(n), int(p), int(k)),
    "truncated-poly": lambda rng, n=2, p=2: truncated_polynomial(int(n), int(p)),
    "path-algebra": lambda rng, quiver="0>1", length=2, p=2: quiver_algebra(quiver, int(length), int(p)),
    "trivial-ext": lambda rng, p=2, r=2, m=2: random_trivial_extension(int(p), int(r), int(m), rng),
    "product": lambda rng, p=2, parts=2: random_product(int(p), int(parts), rng),
    "matrix": lambda rng, n=2, p=2, base="truncated-poly": matrix_family(int(n), int(p), base),
    "random-subalgebra": lambda rng, p=2, n=3, gens=1, ambient="triangular": random_subalgebra(
        int(p), int(n), int(gens), rng, ambient
    ),
}


def generate(family, params=None, seed=0, count=1, cap=ENUM_CAP):
    """Instances of one family; each carries its provenance in ``meta``."""
    if family not in FAMILIES:
        raise ValidationError(f"unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}")
    params = dict(params or {})
    out = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        try:
            A = FAMILIES[family](rng, **params)
        except TypeError as exc:
            raise ValidationError(f"bad parameters for {family}: {exc}") from None
        if A.size > cap:
            raise DimensionCapExceeded(f"{A.name} has {A.p}^{A.dim} elements, above the cap {cap}")
        meta = {"family": family, "seed": seed, "index": i}
        meta.update({k: str(v) for k, v in sorted(params.items())})
        out.append(Instance("algebra", f"{family}-{seed}-{i}", A, {k: str(v) for k, v in meta.items()}))
    return out


# ---------------------------------------------------------------- random algebras for suites


_SUITE_FAMILIES = ("triangular", "truncated-poly", "path-algebra", "trivial-ext", "product", "matrix", "random-subalgebra")
_QUIVERS = ("0>1", "0>1,1>2", "0>1,0>2", "0>1,2>1", "0>0", "0>1,1>0", "0>1,0>1")


def random_algebra(rng, cap=2**12, primes=(2, 3), family=None):
    """An algebra from a rotating family choice with at most ``cap`` elements."""
    rng = _rng(rng)
    for _ in range(64):
        fam = family or _SUITE_FAMILIES[int(rng.integers(0, len(_SUITE_FAMILIES)))]
        p = int(rng.choice(primes))
        if fam == "triangular":
            A = triangular(int(rng.integers(1, 4)), p)
        elif fam == "truncated-poly":
            A = truncated_polynomial(int(rng.integers(1, 5)), p)
        elif fam == "path-algebra":
            A = quiver_algebra(_QUIVERS[int(rng.integers(0, len(_QUIVERS)))], int(rng.integers(1, 3)), p)
        elif fam == "trivial-ext":
            A = random_trivial_extension(p, int(rng.integers(1, 3)), int(rng.integers(1, 3)), rng)
        elif fam == "product":
            A = random_product(p, 2, rng)
        elif fam == "matrix":
            A = matrix_algebra(p, 2) if rng.integers(0, 2) else matrix_family(2, p)
        else:
            A = random_subalgebra(p, 3, int(rng.integers(1, 3)), rng)
        if A.size <= cap:
            A._cache["family"] = fam
            return A
    raise DimensionCapExceeded("could not draw an algebra under the cap")


def random_small_char_algebra(rng, primes=(3, 5, 7, 11, 13), cap=2**14):
    """An algebra with p > dim (the trace-form regime), enumerable under ``cap``."""
    rng = _rng(rng)
    for _ in range(256):
        p = int(rng.choice(primes))
        fam = int(rng.integers(0, 6))
        if fam == 0:
            A = truncated_polynomial(int(rng.integers(1, min(p, 5))), p)
        elif fam == 1:
            A = triangular(2, p)
        elif fam == 2:
            A = quiver_algebra(_QUIVERS[int(rng.integers(0, len(_QUIVERS)))], 1, p)
        elif fam == 3:
            A = random_trivial_extension(p, int(rng.integers(1, 3)), int(rng.integers(1, 3)), rng)
        elif fam == 4:
            A, _ = product(prime_field(p), truncated_polynomial(int(rng.integers(1, 3)), p))
        else:
            A = random_subalgebra(p, 2, 1, rng, ambient="matrix")
        if A.dim < p and A.size <= cap:
            return A
    raise DimensionCapExceeded("could not draw a small-dimension algebra")


# ---------------------------------------------------------------- morphisms


def field_product_map(A, budget=2**20):
    """A -> A/J -> prod of fields e_i (A/J), when every block has n_i = 1.

    Returns None if some block is a proper matrix algebra.
    """
    st = _rad.structure(A, budget)
    if any(b.n != 1 for b in st.blocks):
        return None
    S = st.quotient.algebra
    fields, maps = [], []
    for i, b in enumerate(st.blocks):
        e = b.idempotent
        rows = S.left_matrix(e)  # rows e * s_j span e S
        U = subspace(S, rows)
        B = U.basis
        prods = np.einsum("ai,bj,ijk->abk", B, B, S.const) % S.p
        const = U.coordinates(prods)
        F = StructureAlgebra(S.p, const, U.coordinates(e), name=f"F{i}")
        fields.append(F)
        maps.append(U.coordinates(rows).T)  # s -> coordinates of e s  (as columns)
    P, _ = product(*fields)
    m = np.vstack(maps) @ st.quotient.projection.matrix % A.p
    return AlgebraMorphism(A, P, m, name="A->prod(fields)")


def local_morphisms(A, rng, budget=2**20):
    """A list of (label, morphism) pairs that are local by construction."""
    rng = _rng(rng)
    out = []
    q = _rad.semisimple_quotient(A, budget)
    out.append(("radical-projection", q.projection))
    J = _rad.radical(A, budget).radical
    if J.dim:
        r = (rng.integers(0, A.p, J.dim) @ J.basis) % A.p
        I = ideal_generated(A, [r])
        out.append(("partial-projection", quotient_by_ideal(A, I).projection))
    vecs = [rng.integers(0, A.p, A.dim)]
    sub, incl = subalgebra(A, subalgebra_generated(A, vecs))
    out.append(("subalgebra-inclusion", incl))
    d, _ = diagonal(A, 2)
    out.append(("diagonal", d))
    fp = field_product_map(A, budget)
    if fp is not None:
        out.append(("field-product", fp))
        out.append(("subalgebra-to-fields", compose(fp, incl)))
    return out


def triangular_inclusions(p=2, n=2, k=1):
    D = prime_field(p) if k == 1 else finite_field(p, k)
    UT, incl = upper_triangular(D, n)
    return incl


# ---------------------------------------------------------------- modules


def simple_module(A, i, budget=2**20):
    P, _, _ = _cov.indecomposable_projective(A, i, budget)
    return _m.top_module(P, budget)[0]


def random_module(A, rng, max_dim=8, end_cap=ENUM_CAP, budget=2**20):
    """A random finite-dimensional module whose End(M) has at most end_cap elements."""
    rng = _rng(rng)
    st = _rad.structure(A, budget)
    nb = len(st.blocks)
    for _ in range(64):
        kind = int(rng.integers(0, 6))
        if kind == 0:
            r = int(rng.integers(1, 3))
            c = int(rng.integers(0, 3))
            P = [[rng.integers(0, A.p, A.dim) for _ in range(c)] for _ in range(r)]
            M, _ = _m.module_from_presentation(A, P)
        elif kind == 1:
            M = simple_module(A, int(rng.integers(0, nb)), budget)
        elif kind == 2:
            M = _cov.indecomposable_projective(A, int(rng.integers(0, nb)), budget)[0]
        elif kind == 3:
            M = _cov.injective_envelope(simple_module(A, int(rng.integers(0, nb)), budget), budget).module
        elif kind == 4:
            R = _m.regular_module(A)
            v = rng.integers(0, A.p, A.dim)
            M, _ = _m.quotient_module(R, _m.submodule_generated(R, A.left_matrix(v)))
        else:
            a = simple_module(A, int(rng.integers(0, nb)), budget)
            b = _cov.indecomposable_projective(A, int(rng.integers(0, nb)), budget)[0]
            M = _m.direct_sum(a, b).module
        if M.dim == 0 or M.dim > max_dim:
            continue
        if A.p ** _m.endo_algebra(M).dim > end_cap:
            continue
        return M
    return simple_module(A, 0, budget)


def module_instances(rng, count, cap=2**10, max_dim=6, end_cap=2**12, primes=(2, 3)):
    rng = _rng(rng)
    out = []
    for i in range(count):
        sub = np.random.default_rng([int(rng.integers(0, 2**31)), i])
        A = random_algebra(sub, cap=cap, primes=primes)
        out.append((A, random_module(A, sub, max_dim=max_dim, end_cap=end_cap)))
    return out


def restriction_pairs(rng):
    """(phi: R -> S, M over S) pairs for scalar restriction."""
    rng = _rng(rng)
    p = int(rng.choice((2, 3)))
    kind = int(rng.integers(0, 3))
    if kind == 0:
        K = finite_field(p, 2)
        phi = AlgebraMorphism(prime_field(p), K, K.unit.reshape(-1, 1))
        return phi, _m.regular_module(K)
    if kind == 1:
        incl = triangular_inclusions(p, 2)
        S = incl.codomain
        M = simple_module(S, 0)
        return incl, M
    A = random_algebra(rng, cap=2**8, primes=(p,))
    sub, incl = subalgebra(A, subalgebra_generated(A, [rng.integers(0, p, A.dim)]))
    return incl, random_module(A, rng, max_dim=5, end_cap=2**10)
