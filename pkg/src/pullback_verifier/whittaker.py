"""Whittaker-model values: spherical Hecke-eigenvalue combinations, the
twisted Steinberg newvector on GL(2, Q_r) in exact arithmetic, its coset
sums, and the archimedean lowest-weight Whittaker value.

The Steinberg newvector W is pinned down by: W(diag(y,1)) = xi(y)|y| for
v(y) >= 0 and 0 otherwise (xi the unramified quadratic twist, xi(r) = a_r),
right invariance under the local Gamma_0, trivial central character, an
additive character of conductor Z_r, and Atkin-Lehner eigenvalue -a_r.
Evaluation anywhere routes through an exact Iwasawa step landing either in
the Gamma_0 cell or in the reflected cell.
"""

import cmath
import math
from fractions import Fraction

from .exactring import (Poly, RatFunc, mono, symmetric_quotient, CycInt,
                        additive_character, qval, geometric_sum)


def hecke_beta(k):
    """Eigenvalue polynomial of the k-th spherical Hecke operator:
    R^k (alpha^(k+1) - beta^(k+1)) / (alpha - beta); zero for k < 0."""
    if k < 0:
        return Poly()
    return Poly.monomial(mono(R=k)) * symmetric_quotient(k + 1)


def hecke_series(x_mono):
    """sum_k beta_k x^k for a monomial x of positive Y-exponent, assembled
    from two geometric sums."""
    al = Poly.symbol("alpha")
    be = Poly.symbol("beta")
    ga = geometric_sum(1, al * Poly.monomial(mono(R=1)) * x_mono)
    gb = geometric_sum(1, be * Poly.monomial(mono(R=1)) * x_mono)
    return (RatFunc(al) * ga - RatFunc(be) * gb) / RatFunc(al - be)


# ---------------------------------------------------------------------------
# 2x2 exact matrix utilities over Q (viewed inside GL_2(Q_r))
# ---------------------------------------------------------------------------

def m2(a, b, c, d):
    return ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))


def m2_mul(x, y):
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def m2_inv(x):
    (a, b), (c, d) = x
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


def same_gamma0_coset(g1, g2, r):
    """g1 Gamma_0 == g2 Gamma_0 in GL_2(Q_r)."""
    (a, b), (c, d) = m2_mul(m2_inv(g1), g2)
    if any(qval(x, r) < 0 for x in (a, b, c, d)):
        return False
    if qval(a * d - b * c, r) != 0:
        return False
    return qval(c, r) >= 1


def _gamma0_generators(r):
    g = _primitive_root_sq(r)
    return [m2(1, 1, 0, 1), m2(1, -1, 0, 1), m2(1, 0, r, 1), m2(1, 0, -r, 1),
            m2(g, 0, 0, 1), m2(1, 0, 0, g), m2(-1, 0, 0, 1)]


def _primitive_root_sq(r):
    rr = r * r
    order = rr - r
    for g in range(2, rr):
        if g % r == 0:
            continue
        k, y = 1, g % rr
        while y != 1:
            y = y * g % rr
            k += 1
        if k == order:
            return g
    raise AssertionError


def gamma0_double_coset_reps(r, h, max_size=100000):
    """Right-coset representatives of Gamma_0 h Gamma_0 / Gamma_0, found as
    the orbit of h Gamma_0 under left multiplication by Gamma_0 generators."""
    gens = _gamma0_generators(r)
    reps = [h]
    frontier = [h]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = m2_mul(g, x)
                if not any(same_gamma0_coset(y, z, r) for z in reps):
                    reps.append(y)
                    nxt.append(y)
                    if len(reps) > max_size:
                        raise AssertionError("double coset too large")
        frontier = nxt
    return reps


def k_coset_reps(r, h):
    """Right-coset representatives of (K h Gamma_0) / Gamma_0 where K is the
    full maximal compact: products of K/Gamma_0 representatives with the
    Gamma_0-double-coset representatives of h, deduplicated."""
    kappas = [m2(1, 0, 0, 1)] + [m2_mul(m2(1, c, 0, 1), m2(0, 1, -1, 0))
                                 for c in range(r)]
    inner = gamma0_double_coset_reps(r, h)
    reps = []
    for k in kappas:
        for x in inner:
            y = m2_mul(k, x)
            if not any(same_gamma0_coset(y, z, r) for z in reps):
                reps.append(y)
    return reps


# ---------------------------------------------------------------------------
# the Steinberg newvector
# ---------------------------------------------------------------------------

class SteinbergModel:
    """Local data of the twisted Steinberg component: prime r, sign a_r."""

    def __init__(self, r, a_r=1):
        assert a_r in (1, -1)
        self.r = r
        self.a_r = a_r

    def _diag_value(self, y, reflected):
        """W(diag(y,1)) resp. W(diag(y,1) w0) as an exact rational."""
        if reflected:
            y = y * self.r
        v = qval(y, self.r)
        if v < 0:
            return Fraction(0)
        out = Fraction(self.a_r ** int(v), self.r ** int(v))
        return -self.a_r * out if reflected else out

    def value(self, g):
        """W(g) for g in GL_2(Q_r) with Fraction entries, as a CycInt."""
        (a, b), (c, d) = g
        det = a * d - b * c
        assert det != 0
        if c == 0 or (d != 0 and qval(c, self.r) > qval(d, self.r)):
            # g = u(b/d) diag(det/d, d) gamma0
            w = self._diag_value(det / (d * d), reflected=False)
            if w == 0:
                return CycInt.const(1, 0)
            return additive_character(b / d, self.r) * CycInt.const(1, w)
        # g = u(a/c) w0 diag(c, -b') u(d/c): reflect, W(diag(det/c^2,1) w0)
        w = self._diag_value(det / (c * c), reflected=True)
        if w == 0:
            return CycInt.const(1, 0)
        return additive_character(a / c, self.r) * CycInt.const(1, w)

    def coset_sum(self, n, side):
        """Exact sum of W over the r^(2n) coset representatives of the
        level-n Cartan cell ('upper': A_n family, 'lower': w A_n w family);
        both sides evaluate to 1 for every n >= 1, and to 1 at n = 0."""
        if n == 0:
            return Fraction(1)
        r = self.r
        total = CycInt.const(1, 0)
        for m in range(r ** (2 * n)):
            if side == "upper":
                g = m2(r ** n, Fraction(m, r ** n), 0, Fraction(1, r ** n))
            elif side == "lower":
                g = m2(Fraction(1, r ** n), 0, Fraction(-m * r, r ** n), r ** n)
            else:
                raise ValueError(side)
            total = total + self.value(g)
        return total.to_rational()

    def k_average(self, h):
        """Sum of W over (K h Gamma_0)/Gamma_0; vanishes for every h because
        the only K-invariant Whittaker vector is zero."""
        total = CycInt.const(1, 0)
        for g in k_coset_reps(self.r, h):
            total = total + self.value(g)
        return total


def arch_whittaker(x, b, ell):
    """The archimedean lowest-weight value e(x) e^(-2 pi b^2) b^ell."""
    assert b > 0
    return cmath.exp(2j * math.pi * x) * math.exp(-2 * math.pi * b * b) * b ** ell
