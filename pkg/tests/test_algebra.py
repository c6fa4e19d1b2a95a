import numpy as np
import pytest
from hypothesis import given, strategies as st

from semiloc import _accel
from semiloc.algebra import (
    AlgebraMorphism,
    StructureAlgebra,
    compose,
    ideal_generated,
    identity_morphism,
    is_ideal,
    quotient_by_ideal,
    subalgebra_generated,
    subspace,
)
from semiloc.constructions import (
    diagonal,
    direct_product,
    finite_field,
    lift,
    matrix_algebra,
    path_algebra,
    prime_field,
    product_factors,
    trivial_extension,
    truncated_polynomial,
    upper_triangular,
)
from semiloc.errors import (
    AssociativityViolation,
    BimoduleViolation,
    DimensionCapExceeded,
    IdealContainsUnit,
    ModulusMismatch,
    NotMultiplicative,
    UnitNotPreserved,
    UnitViolation,
    ValidationError,
)
from semiloc.generators import random_algebra


def unit_count(A):
    return int(_accel.unit_flags_range(A.dim, A.p, A.const).sum())


def test_bad_associativity_rejected():
    # b0 b0 = b1, b1 b0 = b0, everything else 0 and no unit: not associative
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 1] = 1
    c[1, 0, 0] = 1
    with pytest.raises(AssociativityViolation):
        StructureAlgebra(2, c, [1, 0])


def test_bad_unit_rejected():
    A = truncated_polynomial(2, 3)
    with pytest.raises(UnitViolation):
        StructureAlgebra(3, A.const, [0, 1])


def test_shape_and_prime_checks():
    with pytest.raises(ValidationError):
        StructureAlgebra(2, np.zeros((2, 2, 3)), [1, 0])
    with pytest.raises(ValidationError):
        StructureAlgebra(4, [[[1]]], [1])


def test_dimension_cap():
    with pytest.raises(DimensionCapExceeded):
        StructureAlgebra(2, np.zeros((65, 65, 65), dtype=np.int64), np.zeros(65), check=False)


def test_element_arithmetic_mat2():
    M = matrix_algebra(2, 2)  # basis E11, E12, E21, E22
    e12 = M.basis(1)
    e21 = M.basis(2)
    assert (e12 * e21).coords.tolist() == [1, 0, 0, 0]
    assert (e21 * e12).coords.tolist() == [0, 0, 0, 1]
    assert (e12 * e12).is_zero() and e12.is_nilpotent()
    g = M.one() + e12
    assert g.is_unit() and (g * g.inverse()) == M.one()
    assert M.basis(0).is_idempotent()


@pytest.mark.parametrize(
    "make,units",
    [
        (lambda: matrix_algebra(2, 2), 6),
        (lambda: matrix_algebra(3, 2), 48),
        (lambda: finite_field(2, 3), 7),
        (lambda: finite_field(3, 2), 8),
        (lambda: truncated_polynomial(3, 2), 4),
        (lambda: upper_triangular(prime_field(3), 2)[0], 2 * 2 * 3),
    ],
)
def test_unit_group_orders(make, units):
    assert unit_count(make()) == units


def test_path_algebra_single_arrow_is_ut2():
    Q = path_algebra(2, 2, [(0, 1)], 2)
    U, _ = upper_triangular(prime_field(2), 2)
    assert Q.dim == U.dim == 3
    assert unit_count(Q) == unit_count(U) == 2
    # explicit isomorphism: e0 -> E11, e1 -> E22, arrow -> E12
    assert not Q.is_commutative() and not U.is_commutative()
    assert Q.center().dim == U.center().dim == 1


def test_finite_field_is_field():
    F = finite_field(2, 4)
    assert F.dim == 4 and unit_count(F) == 15 and F.is_commutative()


def test_center_of_matrix_algebra_is_scalars():
    assert matrix_algebra(3, 2).center().dim == 1
    assert truncated_polynomial(3, 2).center().dim == 3


def test_opposite():
    U, _ = upper_triangular(prime_field(2), 2)
    Uo = U.opposite()
    x, y = U.basis(0).coords, U.basis(1).coords
    assert np.array_equal(Uo.mul(x, y), U.mul(y, x))


def test_morphism_validation():
    F = prime_field(2)
    P, p1, p2 = direct_product(F, F)
    assert p1.is_onto() and p1.kernel().dim == 1
    with pytest.raises(UnitNotPreserved):
        AlgebraMorphism(F, P, [[1], [0]])
    T = truncated_polynomial(2, 2)
    with pytest.raises(NotMultiplicative):
        # x -> x in F2 x F2 coordinates: (1,0)+(0,1)... send x to (1,0): x^2=0 but (1,0)^2 != 0
        AlgebraMorphism(T, P, [[1, 1], [1, 0]])
    with pytest.raises(ModulusMismatch):
        AlgebraMorphism(F, prime_field(3), [[1]])


def test_composition_and_diagonal():
    F = prime_field(3)
    d, projs = diagonal(F, 3)
    for pr in projs:
        assert np.array_equal(compose(pr, d).matrix, identity_morphism(F).matrix)
    assert d.then(projs[0]).matrix.tolist() == [[1]]


def test_lift_of_projection():
    F = prime_field(2)
    P, p1, _ = direct_product(F, F)
    L = lift(p1, 2)
    assert L.domain.dim == 8 and L.codomain.dim == 4 and L.is_onto()


def test_ideals_and_quotients():
    T = truncated_polynomial(4, 3)
    x = T.basis(1).coords
    I = ideal_generated(T, [T.mul(x, x)])
    assert I.dim == 2 and is_ideal(T, I)
    q = quotient_by_ideal(T, I)
    assert q.algebra.dim == 2
    assert q.projection.is_onto() and q.projection.kernel() == I
    with pytest.raises(IdealContainsUnit):
        quotient_by_ideal(T, ideal_generated(T, [T.unit]))
    with pytest.raises(ValidationError):
        quotient_by_ideal(matrix_algebra(2, 2), subspace(matrix_algebra(2, 2), [[0, 1, 0, 0]]))


def test_subalgebra_generated():
    M = matrix_algebra(2, 2)
    S = subalgebra_generated(M, [[0, 1, 0, 0]])
    assert S.dim == 2  # span{1, E12}


def test_trivial_extension_and_bimodule_check():
    F = prime_field(2)
    E = trivial_extension(F, [np.eye(2, dtype=np.int64)], [np.eye(2, dtype=np.int64)])
    assert E.dim == 3 and unit_count(E) == 4  # (1, v) for every v
    with pytest.raises(BimoduleViolation):
        trivial_extension(F, [np.zeros((2, 2), dtype=np.int64)], [np.eye(2, dtype=np.int64)])


def test_product_factors_detected_on_rebuilt_algebra():
    F = prime_field(2)
    P, _, _ = direct_product(F, truncated_polynomial(2, 2))
    Q = StructureAlgebra(2, P.const, P.unit)
    facs = product_factors(Q)
    assert facs is not None and [f.dim for f in facs[0]] == [1, 2]


@given(st.integers(0, 2**32 - 1))
def test_generated_algebras_are_associative_and_unital(seed):
    A = random_algebra(np.random.default_rng(seed))
    # re-validate from scratch
    StructureAlgebra(A.p, A.const, A.unit)
    rng = np.random.default_rng(seed + 1)
    x, y, z = (rng.integers(0, A.p, A.dim) for _ in range(3))
    assert np.array_equal(A.mul(A.mul(x, y), z), A.mul(x, A.mul(y, z)))
    assert np.array_equal(A.mul(A.unit, x), x % A.p)
    # rows of L_x are x b_j, so x z = z L_x and L_{xy} = L_y L_x
    assert np.array_equal(z @ A.left_matrix(x) % A.p, A.mul(x, z))
    assert np.array_equal(A.left_matrix(A.mul(x, y)), A.left_matrix(y) @ A.left_matrix(x) % A.p)
