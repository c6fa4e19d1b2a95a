import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semiloc.algebra import AlgebraMorphism, compose, ideal_generated, quotient_by_ideal
from semiloc.constructions import (
    diagonal,
    direct_product,
    finite_field,
    prime_field,
    product,
    truncated_polynomial,
    upper_triangular,
)
from semiloc.errors import CodomainNotFieldProduct, NotLocal
from semiloc.generators import field_product_map, local_morphisms, random_algebra
from semiloc.local import (
    LOCAL,
    NOT_LOCAL,
    UNKNOWN,
    camps_dicks_check,
    dos_classify,
    is_local,
    lemma21_suite,
    producte_decompose,
    support_profile,
)
from semiloc.radical import radical, ring_codim, semisimple_quotient


def locality_oracle(phi):
    """Definition check with per-element rank tests, no shared kernels."""
    from semiloc.linalg import rank

    R, S = phi.domain, phi.codomain
    for c in itertools.product(range(R.p), repeat=R.dim):
        r = np.array(c, dtype=np.int64)
        img = phi(r)
        if rank(S.left_matrix(img), S.p) == S.dim and rank(R.left_matrix(r), R.p) < R.dim:
            return False
    return True


def ut2_into_m2(p=2):
    return upper_triangular(prime_field(p), 2)[1]


# -- paper examples: the canonical projection and the triangular embedding


@pytest.mark.parametrize("make", [lambda: upper_triangular(prime_field(2), 2)[0], lambda: truncated_polynomial(3, 3),
                                  lambda: upper_triangular(finite_field(2, 2), 2)[0]])
def test_projection_mod_radical_is_local(make):
    A = make()
    rep = is_local(semisimple_quotient(A).projection)
    assert rep.verdict == LOCAL and rep.method == "exhaustive" and rep.elements_checked == A.size


@pytest.mark.parametrize("p", [2, 3])
def test_triangular_embedding_is_local(p):
    assert is_local(ut2_into_m2(p)).verdict == LOCAL


def test_triangular_over_gf4_embedding_is_local():
    _, incl = upper_triangular(finite_field(2, 2), 2)
    assert is_local(incl).verdict == LOCAL


def test_triangular_mod_radical_is_two_fields():
    U, _ = upper_triangular(prime_field(3), 2)
    fp = field_product_map(U)
    assert fp.codomain.dim == 2 and is_local(fp).verdict == LOCAL
    assert fp.kernel() == radical(U).radical


def test_first_factor_projection_not_local():
    F = prime_field(2)
    _, p1, _ = direct_product(F, F)
    rep = is_local(p1)
    assert rep.verdict == NOT_LOCAL and rep.witness == (1, 0)


def test_sampled_mode():
    _, incl = upper_triangular(prime_field(2), 2)
    rep = is_local(incl, budget=2, samples=500, seed=3)
    assert rep.method == "sampled" and rep.verdict == UNKNOWN and rep.elements_checked == 500
    F = prime_field(2)
    _, p1, _ = direct_product(F, F)
    rep = is_local(p1, budget=1, samples=500, seed=0)
    assert rep.verdict == NOT_LOCAL and rep.witness == (1, 0)


@given(st.integers(0, 2**32 - 1))
def test_is_local_matches_definition(seed):
    rng = np.random.default_rng(seed)
    A = random_algebra(rng, cap=2**7)
    morphs = local_morphisms(A, rng)
    # plus a projection onto a factor of A x A, which is rarely local
    P, projs = product(A, A)
    morphs.append(("factor", projs[0]))
    for _, phi in morphs:
        if phi.domain.size > 2**8:
            continue
        assert (is_local(phi).verdict == LOCAL) == locality_oracle(phi)


# -- kernel / radical / lift / composition calculus


def test_lemma21_onto_projection():
    A = truncated_polynomial(3, 2)
    rep = lemma21_suite(semisimple_quotient(A).projection)
    assert rep.passed()
    assert rep.clauses["kernel-in-radical"] == "pass" and rep.clauses["radical-image"] == "pass"
    assert rep.clauses["matrix-lift-2"] == LOCAL


def test_lemma21_embedding_only_kernel_clause():
    rep = lemma21_suite(ut2_into_m2())
    assert rep.passed() and rep.clauses["radical-image"] == "skipped"


def test_lemma21_composite_of_projections():
    A = truncated_polynomial(4, 3)
    x = A.basis(1).coords
    I = ideal_generated(A, [A.mul(A.mul(x, x), x)])
    q1 = quotient_by_ideal(A, I)
    q2 = semisimple_quotient(q1.algebra)
    rep = lemma21_suite(q1.projection, q2.projection)
    assert rep.passed()
    assert rep.clauses["composition"] == "pass" and rep.clauses["cancellation"] == "pass"
    assert is_local(compose(q2.projection, q1.projection)).verdict == LOCAL


@settings(max_examples=20)
@given(st.integers(0, 2**32 - 1))
def test_composition_properties(seed):
    rng = np.random.default_rng(seed)
    A = random_algebra(rng, cap=2**7)
    morphs = [m for _, m in local_morphisms(A, rng)]
    phi = morphs[int(rng.integers(0, len(morphs)))]
    B = phi.codomain
    if B.size > 2**12:
        return
    psis = [m for _, m in local_morphisms(B, rng) if m.domain is B and m.codomain.size <= 2**12]
    for psi in psis:
        assert lemma21_suite(phi, psi, lift_sizes=(), samples=200).passed()


# -- field products


def test_support_profiles():
    F = prime_field(3)
    d, _ = diagonal(F, 2)
    sp = support_profile(d)
    assert sp.ell == 2 and sp.histogram == (1, 0, 2)
    G = prime_field(2)
    P, _, _ = direct_product(G, G)
    ident = AlgebraMorphism(P, P, np.eye(2, dtype=np.int64))
    assert support_profile(ident).ell == 1
    U, _ = upper_triangular(prime_field(2), 2)
    assert support_profile(field_product_map(U)).ell == 1


def test_support_profile_rejects_non_field_codomain():
    with pytest.raises(CodomainNotFieldProduct):
        support_profile(ut2_into_m2())


def test_producte_examples():
    G = prime_field(2)
    P, _, _ = direct_product(G, G)
    r = producte_decompose(AlgebraMorphism(P, P, np.eye(2, dtype=np.int64)))
    assert r.m == 2 and r.indices == (0, 1) and all(r.checks.values())
    d, _ = diagonal(prime_field(3), 2)
    r = producte_decompose(d)
    assert r.m == 1 and all(r.checks.values())
    U, _ = upper_triangular(prime_field(2), 2)
    r = producte_decompose(field_product_map(U))
    assert r.m == 2 and all(r.checks.values())
    assert all(K.dim == 2 for K in r.maximal_ideals)
    assert r.maximal_ideals[0] != r.maximal_ideals[1]


def test_producte_needs_local():
    G = prime_field(2)
    P, p1, _ = direct_product(G, G)
    Q, _, _ = direct_product(G, G)
    swap_then_first = AlgebraMorphism(P, Q, [[1, 0], [1, 0]], check=False)
    with pytest.raises(NotLocal):
        producte_decompose(swap_then_first)


@given(st.integers(0, 2**32 - 1))
def test_producte_block_count(seed):
    rng = np.random.default_rng(seed)
    A = random_algebra(rng, cap=2**8)
    fp = field_product_map(A)
    if fp is None:
        return
    r = producte_decompose(fp)
    assert all(r.checks.values())
    assert r.m == ring_codim(A)


def test_dos_classify():
    d, _ = diagonal(prime_field(3), 2)
    assert dos_classify(d).case == 1
    U, _ = upper_triangular(prime_field(2), 2)
    res = dos_classify(field_product_map(U))
    assert res.case == 2 and len(res.maximal_ideals) == 2
    G = prime_field(2)
    P, _, _ = direct_product(G, G)
    res = dos_classify(AlgebraMorphism(P, P, np.eye(2, dtype=np.int64)))
    assert res.case == 2 and res.radical.dim == 0
    # a single field factor is not a two-factor codomain
    with pytest.raises(CodomainNotFieldProduct):
        dos_classify(field_product_map(truncated_polynomial(2, 2)))


def test_camps_dicks_examples():
    A = truncated_polynomial(3, 2)
    cd = camps_dicks_check(semisimple_quotient(A).projection)
    assert cd.codim_R == cd.codim_S == 1
    cd = camps_dicks_check(ut2_into_m2())
    assert (cd.codim_R, cd.codim_S, cd.holds) == (2, 2, True)
    d, _ = diagonal(prime_field(2), 2)
    cd = camps_dicks_check(d)
    assert (cd.codim_R, cd.codim_S, cd.holds) == (1, 2, True)
    G = prime_field(2)
    _, p1, _ = direct_product(G, G)
    with pytest.raises(NotLocal):
        camps_dicks_check(p1)
