"""Exact cyclotomic numbers: Q(zeta_n) as Q[x] modulo the n-th cyclotomic polynomial.

Elements are kept as sparse maps exponent -> Fraction in the group algebra
Q[Z/n] and reduced modulo Phi_n only when a canonical form is needed
(equality, rationality tests).  Orders are promoted to a common multiple
automatically, so additive-character values of different conductors combine.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficient tuple (low degree first) of the n-th cyclotomic polynomial."""
    # divide x^n - 1 by all Phi_d, d | n, d < n
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d:
            continue
        q = cyclotomic_poly(d)
        poly = _polydiv_exact(poly, list(q))
    return tuple(poly)


def _polydiv_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert all(c == 0 for c in num[:len(den) - 1]) and all(
        c == 0 for c in num[len(den) - 1:]), "non-exact cyclotomic division"
    return out


class CycInt:
    """Element of Q(zeta_order), stored sparsely as sum c_e * zeta**e."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=None):
        self.order = int(order)
        cc = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Fraction(c)
                if c:
                    e %= self.order
                    cc[e] = cc.get(e, Fraction(0)) + c
        self.coeffs = {e: c for e, c in cc.items() if c}

    @staticmethod
    def root(order, exp=1, coeff=1):
        return CycInt(order, {exp % order: Fraction(coeff)})

    @staticmethod
    def const(order, c):
        return CycInt(order, {0: Fraction(c)})

    def promote(self, order):
        assert order % self.order == 0
        k = order // self.order
        return CycInt(order, {e * k: c for e, c in self.coeffs.items()})

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycInt.const(self.order, other)
        n = self.order * other.order // gcd(self.order, other.order)
        return self.promote(n), other.promote(n)

    def __add__(self, other):
        a, b = self._common(other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return CycInt(a.order, out)

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._common(other)
        return b + (-a)

    def __mul__(self, other):
        a, b = self._common(other)
        out = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = (e1 + e2) % a.order
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return CycInt(a.order, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        assert isinstance(k, int)
        if k < 0:
            raise ValueError("negative powers only for roots of unity")
        out = CycInt.const(self.order, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        """Complex conjugation zeta -> zeta**(-1)."""
        return CycInt(self.order, {(-e) % self.order: c
                                   for e, c in self.coeffs.items()})

    def reduced(self):
        """Canonical coefficient tuple of length deg Phi_order."""
        phi = cyclotomic_poly(self.order)
        deg = len(phi) - 1
        dense = [Fraction(0)] * self.order
        for e, c in self.coeffs.items():
            dense[e] += c
        # remainder of dense modulo phi
        for i in range(self.order - 1, deg - 1, -1):
            c = dense[i]
            if not c:
                continue
            dense[i] = Fraction(0)
            for j in range(deg):
                dense[i - deg + j] -= c * phi[j]
        return tuple(dense[:deg])

    def is_zero(self):
        return all(c == 0 for c in self.reduced())

    def is_rational(self):
        r = self.reduced()
        return all(c == 0 for c in r[1:])

    def to_rational(self):
        r = self.reduced()
        assert all(c == 0 for c in r[1:]), "value is not rational: %r" % (self,)
        return r[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycInt.const(self.order, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b = self._common(other)
        return (a - b).is_zero()

    def __hash__(self):
        return hash((self.order, self.reduced()))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join("%s*z%d^%d" % (c, self.order, e)
                          for e, c in sorted(self.coeffs.items()))


def additive_character(x, p):
    """Value of the standard character psi of Q_p with conductor Z_p.

    For a Fraction x, psi(x) = exp(2*pi*i*{x}_p) where {x}_p is the p-adic
    fractional part; the result is an exact root of unity of p-power order.
    """
    x = Fraction(x)
    den = x.denominator
    k = 0
    while den % p == 0:
        den //= p
        k += 1
    if k == 0:
        return CycInt.const(1, 1)
    mod = p ** k
    c = x.numerator * pow(x.denominator // mod, -1, mod) % mod
    return CycInt.root(mod, c)
