import numpy as np
import pytest
from hypothesis import given, strategies as st

from semiloc.algebra import AlgebraMorphism
from semiloc.constructions import finite_field, matrix_algebra, prime_field, truncated_polynomial, upper_triangular
from semiloc.errors import NotAHomomorphism, NotASubmodule, ValidationError
from semiloc.generators import module_instances, random_algebra, random_module
from semiloc.modules import (
    FdModule,
    ModuleHom,
    direct_sum,
    endo_algebra,
    free_module,
    goldie_dims,
    hom_basis,
    module_from_presentation,
    quotient_module,
    regular_module,
    restrict_scalars,
    structural_series,
    submodule,
    submodule_generated,
    submodule_position,
    zero_module,
)
from semiloc.radical import ring_codim, structure


def ut2():
    return upper_triangular(prime_field(2), 2)  # basis E11, E12, E22


def ut2_simple(A, which):
    acts = np.zeros((3, 1, 1), dtype=np.int64)
    acts[0 if which == 1 else 2, 0, 0] = 1
    return FdModule(A, acts, name=f"S{which}")


def test_action_validation():
    A = truncated_polynomial(2, 3)
    with pytest.raises(ValidationError):
        FdModule(A, [[[0]], [[0]]])  # unit acts as 0
    with pytest.raises(ValidationError):
        FdModule(A, [[[1]], [[1]]])  # x acts as 1 but x^2 = 0
    with pytest.raises(ValidationError):
        FdModule(A, np.zeros((3, 1, 1)))


def test_presentation_empty_is_free():
    A = truncated_polynomial(2, 3)
    M, q = module_from_presentation(A, [[]])
    assert M.dim == 2 and q.is_iso()


def test_presentation_x_gives_simple():
    A = truncated_polynomial(2, 3)
    M, q = module_from_presentation(A, [[[0, 1]]])
    assert M.dim == 1 and q.is_epi()
    assert goldie_dims(M) == (1, 1)


def test_presentation_ut2_e11():
    A, _ = ut2()
    M, _ = module_from_presentation(A, [[[1, 0, 0]]])
    # e11 A = span{E11, E12}, so A / e11 A has dimension 3 - 2
    assert M.dim == 1
    assert structural_series(M).top_length == 1


def test_regular_modules():
    assert regular_module(prime_field(2)).dim == 1
    T = regular_module(truncated_polynomial(2, 3))
    s = structural_series(T)
    assert s.socle.dim == 1 and s.radical_sub.dim == 1 and s.socle == s.radical_sub
    M2 = regular_module(matrix_algebra(2, 2))
    s = structural_series(M2)
    assert s.socle.dim == 4 and s.radical_sub.dim == 0
    assert goldie_dims(M2) == (2, 2)


def test_homs_between_simples():
    A, _ = ut2()
    S1, S2 = ut2_simple(A, 1), ut2_simple(A, 2)
    assert hom_basis(S1, S2) == [] and hom_basis(S2, S1) == []
    assert len(hom_basis(S1, S1)) == 1
    with pytest.raises(NotAHomomorphism):
        ModuleHom(regular_module(A), S1, [[0], [0], [1]])


def test_endo_examples():
    A, _ = ut2()
    S1 = ut2_simple(A, 1)
    E = endo_algebra(S1)
    assert E.dim == 1
    T = endo_algebra(regular_module(truncated_polynomial(2, 3)))
    assert T.dim == 2 and T.algebra.is_commutative()
    assert [(b.n, b.k) for b in structure(T.algebra).blocks] == [(1, 1)]
    SS = endo_algebra(direct_sum(S1, S1).module)
    assert SS.dim == 4 and structure(SS.algebra).radical.dim == 0
    assert [(b.n, b.k) for b in structure(SS.algebra).blocks] == [(2, 1)]


def test_structural_series_uniserial_length3():
    M = regular_module(truncated_polynomial(3, 3))
    s = structural_series(M)
    assert s.socle.dim == 1 and s.radical_sub.dim == 2
    assert goldie_dims(M) == (1, 1)


def test_structural_series_free_ut2():
    A, _ = ut2()
    s = structural_series(free_module(A, 1))
    assert s.socle_length == 2 and s.top_length == 2
    assert s.socle.dim == 2 and s.radical_sub.dim == 1


def test_goldie_semisimple_sum():
    A, _ = ut2()
    M = direct_sum(ut2_simple(A, 1), ut2_simple(A, 2), ut2_simple(A, 2)).module
    assert goldie_dims(M) == (3, 3)


def test_positions():
    R = regular_module(truncated_polynomial(2, 3))
    full = submodule_position(R, R.full_subspace())
    assert full.essential and not full.superfluous
    zero = submodule_position(R, R.zero_subspace())
    assert zero.superfluous and not zero.essential
    x = submodule_position(R, R.span([[0, 1]]))
    assert x.essential and x.superfluous
    with pytest.raises(NotASubmodule):
        submodule_position(regular_module(matrix_algebra(2, 2)), regular_module(matrix_algebra(2, 2)).span([[0, 1, 0, 0]]))


def test_restrict_identity_and_field_extension():
    K = finite_field(2, 2)
    R = regular_module(K)
    ident = AlgebraMorphism(K, K, np.eye(2, dtype=np.int64))
    assert np.array_equal(restrict_scalars(ident, R).actions, R.actions)
    phi = AlgebraMorphism(prime_field(2), K, K.unit.reshape(-1, 1))
    Mr = restrict_scalars(phi, R)
    assert Mr.dim == 2
    assert endo_algebra(R).dim == 2 and endo_algebra(Mr).dim == 4


def test_restrict_ut2_into_m2():
    _, incl = ut2()
    S = incl.codomain
    # simple M2 module: row vectors, rho(E_rs) = E_rs
    acts = np.array([[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]])
    V = FdModule(S, acts)
    Vr = restrict_scalars(incl, V)
    assert Vr.dim == 2
    # End over M2 is GF(2), over UT2 still contained and at least as large
    assert endo_algebra(V).dim <= endo_algebra(Vr).dim


def test_submodules_and_quotients():
    R = regular_module(truncated_polynomial(3, 2))
    U = submodule_generated(R, [[0, 1, 0]])
    assert U.dim == 2
    S, inc = submodule(R, U)
    Q, pr = quotient_module(R, U)
    assert S.dim + Q.dim == R.dim
    assert inc.is_mono() and pr.is_epi()
    assert not inc.then(pr).matrix.any()


def test_zero_module():
    Z = zero_module(matrix_algebra(2, 2))
    assert Z.dim == 0 and goldie_dims(Z) == (0, 0)


@given(st.integers(0, 2**32 - 1))
def test_dims_additive(seed):
    rng = np.random.default_rng(seed)
    A = random_algebra(rng, cap=2**8)
    M = random_module(A, rng, max_dim=5, end_cap=2**10)
    N = random_module(A, rng, max_dim=5, end_cap=2**10)
    S = direct_sum(M, N).module
    gm, gn, gs = goldie_dims(M), goldie_dims(N), goldie_dims(S)
    assert gs == (gm[0] + gn[0], gm[1] + gn[1])


@given(st.integers(0, 2**32 - 1))
def test_regular_codim_equals_ring_codim(seed):
    A = random_algebra(np.random.default_rng(seed), cap=2**9)
    assert goldie_dims(regular_module(A))[1] == ring_codim(A)


@given(st.integers(0, 2**32 - 1))
def test_end_of_regular_is_algebra(seed):
    A = random_algebra(np.random.default_rng(seed), cap=2**9)
    E = endo_algebra(regular_module(A))
    assert E.dim == A.dim
    # a -> left multiplication by a is an isomorphism A -> End(A_A)
    align = np.array([E.coords(A.left_matrix(b)) for b in np.eye(A.dim, dtype=np.int64)]).T
    assert np.array_equal(align @ A.unit % A.p, E.algebra.unit)
    rng = np.random.default_rng(seed)
    x, y = rng.integers(0, A.p, (2, A.dim))
    assert np.array_equal(align @ A.mul(x, y) % A.p, E.algebra.mul(align @ x % A.p, align @ y % A.p))


@given(st.integers(0, 2**32 - 1))
def test_hom_space_intertwines_and_mono_is_iso(seed):
    rng = np.random.default_rng(seed)
    (A, M), = module_instances(rng, 1, cap=2**8, max_dim=5, end_cap=2**10)
    E = endo_algebra(M)
    for X in E.matrices:
        assert np.array_equal(np.einsum("iab,bc->iac", M.actions, X) % M.p, np.einsum("ab,ibc->iac", X, M.actions) % M.p)
    for _ in range(8):
        f = E.hom(rng.integers(0, M.p, E.dim))
        assert f.is_mono() == f.is_epi() == f.is_iso()
