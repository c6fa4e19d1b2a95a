"""Univariate polynomials over GF(p) and their factorisation.

Arithmetic and Cantor-Zassenhaus factorisation come from
``sympy.polys.galoistools``; irreducibility of every returned factor is
re-certified here independently (root search below degree 4, distinct-degree
gcd test above).
"""

from functools import reduce as _fold

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_div,
    gf_factor,
    gf_gcd,
    gf_gcdex,
    gf_mul,
    gf_pow_mod,
    gf_sub,
)

from .errors import ValidationError
from .linalg import check_prime


def _strip(coeffs, p):
    c = [int(x) % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class FpPoly:
    """Polynomial with coefficients listed from the constant term upward."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p):
        self.p = check_prime(p)
        self.coeffs = _strip(coeffs, self.p)

    @classmethod
    def x(cls, p):
        return cls([0, 1], p)

    @classmethod
    def constant(cls, c, p):
        return cls([c], p)

    # sympy works with dense lists, highest degree first
    def _gf(self):
        return [ZZ(c) for c in reversed(self.coeffs)]

    @classmethod
    def _from_gf(cls, g, p):
        return cls([int(c) for c in reversed(g)], p)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self):
        if self.is_zero():
            return self
        inv = pow(self.leading, self.p - 2, self.p)
        return FpPoly([c * inv for c in self.coeffs], self.p)

    def _same(self, other):
        if isinstance(other, int):
            return FpPoly([other], self.p)
        if other.p != self.p:
            raise ValidationError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._same(other)
        return self._from_gf(gf_add(self._gf(), other._gf(), self.p, ZZ), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same(other)
        return self._from_gf(gf_sub(self._gf(), other._gf(), self.p, ZZ), self.p)

    def __rsub__(self, other):
        return self._same(other) - self

    def __neg__(self):
        return FpPoly([-c for c in self.coeffs], self.p)

    def __mul__(self, other):
        other = self._same(other)
        return self._from_gf(gf_mul(self._gf(), other._gf(), self.p, ZZ), self.p)

    __rmul__ = __mul__

    def __pow__(self, e):
        return _fold(lambda a, b: a * b, [self] * e, FpPoly([1], self.p))

    def __divmod__(self, other):
        other = self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = gf_div(self._gf(), other._gf(), self.p, ZZ)
        return self._from_gf(q, self.p), self._from_gf(r, self.p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, FpPoly):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __call__(self, x):
        return sum(c * x**k for k, c in enumerate(self.coeffs)) % self.p

    def gcd(self, other):
        return self._from_gf(gf_gcd(self._gf(), self._same(other)._gf(), self.p, ZZ), self.p)

    def inverse_mod(self, modulus):
        """Inverse of self modulo ``modulus``; they must be coprime."""
        s, _, g = gf_gcdex(self._gf(), modulus._gf(), self.p, ZZ)
        g = self._from_gf(g, self.p)
        if g.degree != 0:
            raise ValidationError("polynomials are not coprime")
        return (self._from_gf(s, self.p) * pow(g.leading, self.p - 2, self.p)) % modulus

    def pow_mod(self, e, modulus):
        return self._from_gf(gf_pow_mod(self._gf(), e, modulus._gf(), self.p, ZZ), self.p)

    def __repr__(self):
        if self.is_zero():
            return f"FpPoly(0, p={self.p})"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c:
                mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
                terms.append(f"{c}{mono}" if c != 1 or k == 0 else mono)
        return f"FpPoly({' + '.join(terms)}, p={self.p})"


def is_irreducible(f):
    """Certify irreducibility of a nonzero polynomial of positive degree."""
    if f.degree < 1:
        return False
    p = f.p
    if f.degree == 1:
        return True
    if f.degree <= 3:
        return all(f(a) != 0 for a in range(p))
    # no factor of degree d <= deg/2 divides f  <=>  gcd(x^(p^d) - x, f) = 1
    g = f.monic()
    x = FpPoly.x(p)
    h = x
    for _ in range(1, f.degree // 2 + 1):
        h = h.pow_mod(p, g)
        if (h - x).gcd(g).degree > 0:
            return False
    return True


def factor(f):
    """Irreducible monic factors of ``f`` with multiplicities.

    The product of ``factor[i][0] ** factor[i][1]`` equals ``f.monic()``.
    """
    if f.is_zero():
        raise ValidationError("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    _, facs = gf_factor(f._gf(), f.p, ZZ)
    out = [(FpPoly._from_gf(g, f.p), int(e)) for g, e in facs]
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    for g, _ in out:
        if not is_irreducible(g):
            raise ArithmeticError(f"factor {g} failed the irreducibility certificate")
    return out
