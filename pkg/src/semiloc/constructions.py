"""Standard algebras: prime and finite fields, truncated polynomials, matrix
extensions, triangular algebras, trivial extensions, products and truncated
path algebras."""

import numpy as np

from .algebra import AlgebraMorphism, StructureAlgebra, make_algebra, subalgebra, subspace
from .errors import BimoduleViolation, ModulusMismatch, ValidationError
from .linalg import check_prime
from .poly import FpPoly


def prime_field(p):
    return make_algebra(p, [[[1]]], [1], name=f"GF({p})")


def zero_algebra(p):
    return make_algebra(p, np.zeros((0, 0, 0), dtype=np.int64), [], name="0")


def polynomial_quotient(f, name=""):
    """GF(p)[x]/(f) on the monomial basis 1, x, ..., x^(d-1)."""
    if not isinstance(f, FpPoly):
        raise ValidationError("expected an FpPoly")
    f = f.monic()
    d, p = f.degree, f.p
    if d < 1:
        raise ValidationError("modulus polynomial must have positive degree")
    const = np.zeros((d, d, d), dtype=np.int64)
    x = FpPoly.x(p)
    for i in range(d):
        for j in range(d):
            r = (x ** (i + j)) % f
            for k, c in enumerate(r.coeffs):
                const[i, j, k] = c
    unit = np.zeros(d, dtype=np.int64)
    unit[0] = 1
    return make_algebra(p, const, unit, name=name or f"GF({p})[x]/({f.coeffs})")


def truncated_polynomial(n, p):
    """GF(p)[x]/(x^n)."""
    check_prime(p)
    return polynomial_quotient(FpPoly([0] * n + [1], p), name=f"GF({p})[x]/(x^{n})")


def finite_field(p, k, modulus=None):
    """GF(p^k) as a k-dimensional GF(p)-algebra, from the first monic irreducible."""
    from .poly import is_irreducible

    if modulus is None:
        for tail in range(p**k):
            coeffs = [(tail // p**i) % p for i in range(k)] + [1]
            f = FpPoly(coeffs, p)
            if is_irreducible(f):
                modulus = f
                break
    return polynomial_quotient(modulus, name=f"GF({p}^{k})")


def matrix_algebra(p, n):
    return matrix_extension(prime_field(p), n)


def _mat_index(r, s, i, n, d):
    return (r * n + s) * d + i


def matrix_extension(A, n, name=""):
    """M_n(A); basis E_rs (x) b_i at index (r*n + s)*dim(A) + i."""
    if n < 1:
        raise ValidationError("matrix size must be at least 1")
    d = A.dim
    N = n * n * d
    const = np.zeros((N, N, N), dtype=np.int64)
    for r in range(n):
        for s in range(n):
            for u in range(n):
                a = _mat_index(r, s, 0, n, d)
                b = _mat_index(s, u, 0, n, d)
                c = _mat_index(r, u, 0, n, d)
                const[a : a + d, b : b + d, c : c + d] = A.const
    unit = np.zeros(N, dtype=np.int64)
    for r in range(n):
        i = _mat_index(r, r, 0, n, d)
        unit[i : i + d] = A.unit
    return StructureAlgebra(A.p, const, unit, name=name or f"M{n}({A.name})", check=N <= 32)


def lift(phi, n, domain=None, codomain=None):
    """Entrywise morphism M_n(R) -> M_n(S) induced by phi."""
    R = domain or matrix_extension(phi.domain, n)
    S = codomain or matrix_extension(phi.codomain, n)
    m = np.kron(np.eye(n * n, dtype=np.int64), phi.matrix)
    return AlgebraMorphism(R, S, m, name=f"M{n}(phi)")


def upper_triangular(D, n, name=""):
    """Upper-triangular subalgebra of M_n(D) and its inclusion morphism."""
    M = matrix_extension(D, n)
    d = D.dim
    rows = []
    for r in range(n):
        for s in range(r, n):
            for i in range(d):
                v = np.zeros(M.dim, dtype=np.int64)
                v[_mat_index(r, s, i, n, d)] = 1
                rows.append(v)
    UT, incl = subalgebra(M, subspace(M, rows), name=name or f"UT{n}({D.name})")
    return UT, incl


def direct_product(A, B, name=""):
    """A x B with its two projections."""
    if A.p != B.p:
        raise ModulusMismatch("factors over different fields")
    P, projs = product(A, B, name=name)
    return P, projs[0], projs[1]


def product(*factors, name=""):
    """Direct product of several algebras and the list of projections."""
    if not factors:
        raise ValidationError("need at least one factor")
    p = factors[0].p
    if any(f.p != p for f in factors):
        raise ModulusMismatch("factors over different fields")
    N = sum(f.dim for f in factors)
    const = np.zeros((N, N, N), dtype=np.int64)
    unit = np.zeros(N, dtype=np.int64)
    offsets = []
    o = 0
    for f in factors:
        const[o : o + f.dim, o : o + f.dim, o : o + f.dim] = f.const
        unit[o : o + f.dim] = f.unit
        offsets.append(o)
        o += f.dim
    P = StructureAlgebra(p, const, unit, name=name or " x ".join(f.name for f in factors), check=False)
    projs = []
    for f, o in zip(factors, offsets):
        m = np.zeros((f.dim, N), dtype=np.int64)
        m[:, o : o + f.dim] = np.eye(f.dim, dtype=np.int64)
        projs.append(AlgebraMorphism(P, f, m, check=False, name=f"proj->{f.name}"))
    P._cache["factors"] = (tuple(factors), tuple(offsets))
    return P, projs


def product_factors(P):
    """(factors, offsets) of an algebra presented as a product, else None.

    Products built by ``product`` carry the record.  Otherwise the basis is
    split into contiguous runs that no nonzero structure constant links; two
    or more runs mean the constants are block diagonal, and the blocks are
    read off as factors (this is how products come back from a file).
    """
    if "factors" not in P._cache:
        P._cache["factors"] = _split_blocks(P)
    return P._cache["factors"]


def _split_blocks(P):
    n = P.dim
    if n < 2:
        return None
    i, j, k = np.nonzero(P.const)
    # reach[a] = largest index linked to a basis vector <= a
    reach = np.arange(n)
    for x, y, z in zip(i, j, k):
        lo, hi = min(x, y, z), max(x, y, z)
        reach[lo] = max(reach[lo], hi)
    cuts, far = [0], 0
    for a in range(n - 1):
        far = max(far, reach[a])
        if far == a:
            cuts.append(a + 1)
    if len(cuts) == 1:
        return None
    cuts.append(n)
    factors, offsets = [], []
    for lo, hi in zip(cuts, cuts[1:]):
        blk = np.arange(lo, hi)
        const = P.const[np.ix_(blk, blk, blk)]
        factors.append(StructureAlgebra(P.p, const, P.unit[lo:hi], name=f"{P.name}[{lo}:{hi}]"))
        offsets.append(lo)
    return tuple(factors), tuple(offsets)


def diagonal(A, k):
    """Diagonal embedding A -> A^k."""
    P, projs = product(*([A] * k))
    m = np.vstack([np.eye(A.dim, dtype=np.int64)] * k)
    return AlgebraMorphism(A, P, m, name="diagonal"), projs


def product_map(domain, morphisms, codomain=None):
    """The morphism x -> (f_1(x), ..., f_k(x)) into the product of the codomains."""
    if codomain is None:
        codomain, _ = product(*[f.codomain for f in morphisms])
    return AlgebraMorphism(domain, codomain, np.vstack([f.matrix for f in morphisms]))


def trivial_extension(K, left, right, name=""):
    """K |x V with (k, v)(k', v') = (k k', k.v' + v.k').

    ``left[i]`` and ``right[i]`` are the row-convention matrices of the left and
    right actions of the basis element b_i of K on V:  b_i . v = v @ left[i]
    and v . b_i = v @ right[i].
    """
    if not K.is_commutative():
        raise ValidationError("the base algebra must be commutative")
    p, d = K.p, K.dim
    left = np.asarray(left, dtype=np.int64) % p
    right = np.asarray(right, dtype=np.int64) % p
    if left.shape[0] != d or right.shape != left.shape or left.shape[1] != left.shape[2]:
        raise BimoduleViolation("action arrays must be dim(K) x m x m")
    m = left.shape[1]
    eye = np.eye(m, dtype=np.int64)
    lu = np.einsum("i,ijk->jk", K.unit, left) % p
    ru = np.einsum("i,ijk->jk", K.unit, right) % p
    if not (np.array_equal(lu, eye) and np.array_equal(ru, eye)):
        raise BimoduleViolation("the unit of K does not act as the identity")
    for i in range(d):
        for j in range(d):
            prod_ij = np.einsum("k,kab->ab", K.const[i, j], left) % p
            # (b_i b_j) . v = b_i . (b_j . v) = v @ left[j] @ left[i]
            if not np.array_equal(prod_ij, left[j] @ left[i] % p):
                raise BimoduleViolation(f"left action not associative at ({i}, {j})")
            prod_ij = np.einsum("k,kab->ab", K.const[i, j], right) % p
            if not np.array_equal(prod_ij, right[i] @ right[j] % p):
                raise BimoduleViolation(f"right action not associative at ({i}, {j})")
            if not np.array_equal(left[i] @ right[j] % p, right[j] @ left[i] % p):
                raise BimoduleViolation(f"left and right actions do not commute at ({i}, {j})")
    N = d + m
    const = np.zeros((N, N, N), dtype=np.int64)
    const[:d, :d, :d] = K.const
    for i in range(d):
        # b_i * v_j = v_j @ left[i]  -> row j of left[i]
        const[i, d:, d:] = left[i]
        # v_j * b_i = v_j @ right[i]
        const[d:, i, d:] = right[i]
    unit = np.concatenate([K.unit, np.zeros(m, dtype=np.int64)])
    return make_algebra(p, const, unit, name=name or f"{K.name}|x V{m}")


def path_algebra(p, n_vertices, arrows, max_length, name=""):
    """Truncated path algebra of a quiver, paths of length > max_length set to 0.

    ``arrows`` is a list of (source, target) pairs.  Paths compose left to
    right: a path ending at v times a path starting at v is their
    concatenation.  For acyclic quivers and max_length large enough this is
    the full path algebra.
    """
    check_prime(p)
    frontier = [((a,), arrows[a][0], arrows[a][1]) for a in range(len(arrows))]
    walks = []
    length = 1
    while frontier and length <= max_length:
        walks.extend(frontier)
        frontier = [
            (w + (a,), s, arrows[a][1])
            for (w, s, t) in frontier
            for a in range(len(arrows))
            if arrows[a][0] == t
        ]
        length += 1
        if len(walks) > 64:
            raise ValidationError("path algebra exceeds the dimension cap")
    index = {("e", v): v for v in range(n_vertices)}
    for w, s, t in walks:
        index[("w", w)] = len(index)
    src = {("e", v): v for v in range(n_vertices)}
    tgt = dict(src)
    for w, s, t in walks:
        src[("w", w)] = s
        tgt[("w", w)] = t
    keys = list(index)
    N = len(keys)
    const = np.zeros((N, N, N), dtype=np.int64)
    for x in keys:
        for y in keys:
            if tgt[x] != src[y]:
                continue
            if x[0] == "e":
                z = y
            elif y[0] == "e":
                z = x
            else:
                z = ("w", x[1] + y[1])
                if z not in index:
                    continue
            const[index[x], index[y], index[z]] = 1
    unit = np.zeros(N, dtype=np.int64)
    unit[:n_vertices] = 1
    A = make_algebra(p, const, unit, name=name or f"kQ({n_vertices},{len(arrows)},<= {max_length})")
    A._cache["paths"] = keys
    return A
