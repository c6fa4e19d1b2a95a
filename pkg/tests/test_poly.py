import itertools
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from semiloc.poly import FpPoly, factor, is_irreducible


def monic_polys(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield FpPoly(list(tail) + [1], p)


def trial_oracle(f):
    for e in range(1, f.degree // 2 + 1):
        for g in monic_polys(f.p, e):
            if (f % g).is_zero():
                return False
    return f.degree >= 1


def mobius(n):
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def gauss_count(p, d):
    return sum(mobius(d // e) * p**e for e in range(1, d + 1) if d % e == 0) // d


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)])
def test_irreducible_count_matches_gauss(p, d):
    got = sum(is_irreducible(f) for f in monic_polys(p, d))
    assert got == gauss_count(p, d)


@pytest.mark.parametrize("p,d", [(2, 4), (2, 6), (3, 4), (5, 4)])
def test_irreducibility_matches_trial_division(p, d):
    for f in monic_polys(p, d):
        assert is_irreducible(f) == trial_oracle(f), f


def test_known_polys():
    assert is_irreducible(FpPoly([1, 1, 1], 2))  # x^2+x+1
    assert not is_irreducible(FpPoly([1, 0, 1], 2))  # (x+1)^2
    assert is_irreducible(FpPoly([1, 1, 0, 0, 1], 2))  # x^4+x+1
    assert not is_irreducible(FpPoly([1, 0, 1, 0, 1], 2))  # (x^2+x+1)^2
    assert not is_irreducible(FpPoly([3], 5))


@st.composite
def polys(draw, max_deg=8):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    cs = draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=max_deg + 1))
    return FpPoly(cs, p)


@given(polys())
def test_factor_product_and_certificate(f):
    if f.is_zero():
        return
    facs = factor(f)
    prod = reduce(lambda a, t: a * t[0] ** t[1], facs, FpPoly([1], f.p))
    assert prod == f.monic()
    for g, e in facs:
        assert g.is_monic() and e >= 1 and trial_oracle(g)


@given(polys(), polys())
def test_ring_axioms(f, g):
    if f.p != g.p:
        return
    assert f * g == g * f
    assert (f + g) - g == f
    if not g.is_zero():
        q, r = divmod(f, g)
        assert q * g + r == f
        assert r.is_zero() or r.degree < g.degree


def test_inverse_mod():
    m = FpPoly([1, 1, 0, 1], 2)  # x^3+x+1
    for f in monic_polys(2, 2):
        if not f.gcd(m).degree:
            assert (f * f.inverse_mod(m)) % m == FpPoly([1], 2)


def test_eval_and_repr():
    f = FpPoly([1, 0, 2], 3)
    assert f(1) == 0 and f(0) == 1
    assert "x^2" in repr(f)
