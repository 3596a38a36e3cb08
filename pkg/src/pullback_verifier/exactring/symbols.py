"""Multivariate Laurent polynomials and rational functions over exact rationals.

The fixed symbol set is ``(Y, R, alpha, beta, lam)``:

* ``Y`` stands for ``q**(-(s + 1/2))`` and is the single series variable.
* ``R`` stands for ``q**(1/2)`` so that ``q == R**2`` and every half-integral
  power of ``q`` is an honest Laurent monomial.
* ``alpha``, ``beta`` are the unramified (Satake) parameters, ``lam`` the
  value of the unramified quadratic-algebra character on a uniformizer.

A monomial is a 5-tuple of integer exponents (negative allowed), a polynomial
a ``{monomial: Fraction}`` map with zero coefficients absent.  Rational
functions are pairs of polynomials in a canonical form that makes equality a
coefficient-wise comparison.
"""

from fractions import Fraction

SYMBOLS = ("Y", "R", "alpha", "beta", "lam")
NSYM = len(SYMBOLS)
_INDEX = {name: i for i, name in enumerate(SYMBOLS)}

ZERO_MONO = (0,) * NSYM


class NonConvergent(Exception):
    """Raised when a formal geometric series has no positive Y-exponent ratio."""


def mono(**exps):
    """Monomial from keyword exponents, e.g. ``mono(Y=6, R=2)``."""
    m = [0] * NSYM
    for name, e in exps.items():
        m[_INDEX[name]] = int(e)
    return tuple(m)


def mono_mul(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


def mono_pow(m, k):
    return tuple(a * k for a in m)


class Poly:
    """Laurent polynomial: immutable wrapper around a monomial->Fraction dict."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        self.coeffs = {m: c for m, c in coeffs.items() if c != 0}

    # -- constructors -------------------------------------------------
    @staticmethod
    def const(c):
        c = Fraction(c)
        return Poly({ZERO_MONO: c}) if c else Poly()

    @staticmethod
    def monomial(m, c=1):
        c = Fraction(c)
        return Poly({tuple(m): c}) if c else Poly()

    @staticmethod
    def symbol(name):
        return Poly.monomial(mono(**{name: 1}))

    # -- predicates ----------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    def is_unit_monomial(self):
        return len(self.coeffs) == 1

    def __eq__(self, other):
        other = _as_poly(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        assert isinstance(k, int) and k >= 0
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure ----------------------------------------------------
    def degree(self, name):
        """Max exponent of a symbol (None on the zero polynomial)."""
        i = _INDEX[name]
        if not self.coeffs:
            return None
        return max(m[i] for m in self.coeffs)

    def min_degree(self, name):
        i = _INDEX[name]
        if not self.coeffs:
            return None
        return min(m[i] for m in self.coeffs)

    def shift(self, m):
        """Multiply by the monomial ``m``."""
        return Poly({mono_mul(mm, m): c for mm, c in self.coeffs.items()})

    def truncate(self, name, n):
        """Drop monomials with exponent of ``name`` above ``n``."""
        i = _INDEX[name]
        return Poly({m: c for m, c in self.coeffs.items() if m[i] <= n})

    def reduce_lambda_sq(self):
        """Impose ``lam**2 == 1`` by reducing lam-exponents mod 2."""
        i = _INDEX["lam"]
        out = {}
        for m, c in self.coeffs.items():
            mm = list(m)
            mm[i] = mm[i] % 2
            mm = tuple(mm)
            v = out.get(mm, 0) + c
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return Poly(out)

    def reduce_alpha_beta_one(self):
        """Impose ``alpha * beta == 1``: send alpha^i beta^j to alpha^(i-j).

        This is the exact quotient map onto Laurent polynomials in alpha; it
        implements the trivial-central-character specialization.
        """
        ia = _INDEX["alpha"]
        ib = _INDEX["beta"]
        out = {}
        for m, c in self.coeffs.items():
            mm = list(m)
            mm[ia] = m[ia] - m[ib]
            mm[ib] = 0
            mm = tuple(mm)
            v = out.get(mm, 0) + c
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return Poly(out)

    def eval(self, point):
        """Exact evaluation; ``point`` maps symbol name -> Fraction.

        ``R`` may instead be given as ``R2`` (the value of R**2) when every
        R-exponent is even.
        """
        vals = {}
        r2 = point.get("R2")
        total = Fraction(0)
        for m, c in self.coeffs.items():
            term = c
            for i, e in enumerate(m):
                if e == 0:
                    continue
                name = SYMBOLS[i]
                if name == "R" and r2 is not None and "R" not in point:
                    assert e % 2 == 0, "odd R-exponent needs an explicit R value"
                    key = ("R2", e)
                    if key not in vals:
                        vals[key] = Fraction(r2) ** (e // 2)
                    term *= vals[key]
                    continue
                key = (name, e)
                if key not in vals:
                    vals[key] = Fraction(point[name]) ** e
                term *= vals[key]
            total += term
        return total

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs):
            c = self.coeffs[m]
            factors = []
            if c != 1 or m == ZERO_MONO:
                factors.append(str(c))
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(SYMBOLS[i])
                elif e:
                    factors.append("%s^%d" % (SYMBOLS[i], e))
            parts.append("*".join(factors))
        return " + ".join(parts)


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError("cannot coerce %r to Poly" % (x,))


ONE = Poly.const(1)


class RatFunc:
    """Quotient of Laurent polynomials in canonical form.

    Canonicalization: clear the common monomial shift so the denominator has
    min exponent 0 in every symbol, then scale so that the lexicographically
    smallest denominator monomial has coefficient 1.  Equality is tested by
    cross multiplication, so no polynomial gcd is ever required.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = ONE if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        # shift so den has min exponent 0 per symbol
        shift = tuple(-min(m[i] for m in den.coeffs) for i in range(NSYM))
        if any(shift):
            den = den.shift(shift)
            num = num.shift(shift)
        lead = min(den.coeffs)
        c = den.coeffs[lead]
        if c != 1:
            inv = Fraction(1) / c
            num = Poly({m: v * inv for m, v in num.coeffs.items()})
            den = Poly({m: v * inv for m, v in den.coeffs.items()})
        self.num = num
        self.den = den

    @staticmethod
    def const(c):
        return RatFunc(Poly.const(c))

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other):
        return _as_ratfunc(other) + (-self)

    def __mul__(self, other):
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other.num.is_zero():
            raise ZeroDivisionError
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _as_ratfunc(other) / self

    def __eq__(self, other):
        return ratfunc_eq(self, _as_ratfunc(other))

    def __hash__(self):  # hash by canonical pair; equal-but-unreduced pairs may differ
        return hash((self.num, self.den))

    def reduce_lambda_sq(self):
        return RatFunc(self.num.reduce_lambda_sq(), self.den.reduce_lambda_sq())

    def series_Y(self, order):
        """Power-series expansion in Y through Y**order, as a Poly.

        Requires the Y-constant part of the denominator to be a single
        invertible monomial in the remaining symbols.
        """
        i = _INDEX["Y"]
        assert self.den.min_degree("Y") == 0, "denominator has negative Y order"
        d0 = Poly({m: c for m, c in self.den.coeffs.items() if m[i] == 0})
        assert d0.is_unit_monomial(), "Y-constant denominator part not invertible"
        (m0, c0), = d0.coeffs.items()
        inv0 = Poly.monomial(tuple(-e for e in m0), Fraction(1) / c0)
        t = (self.den - d0) * inv0          # strictly positive Y-order
        assert t.is_zero() or t.min_degree("Y") >= 1
        geom = Poly.const(1)
        power = Poly.const(1)
        if not t.is_zero():
            k = 1
            while k * t.min_degree("Y") <= order:
                power = (power * (-t)).truncate("Y", order)
                geom = geom + power
                k += 1
        return (self.num * inv0 * geom).truncate("Y", order)

    def eval(self, point):
        return self.num.eval(point) / self.den.eval(point)

    def __repr__(self):
        if self.den == ONE:
            return repr(self.num)
        return "(%s) / (%s)" % (self.num, self.den)


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    raise TypeError("cannot coerce %r to RatFunc" % (x,))


def ratfunc_eq(a, b, lam_sq_one=False, alpha_beta_one=False):
    """True iff num(a)*den(b) - num(b)*den(a) is the zero polynomial,
    optionally modulo the relations lam**2 = 1 and/or alpha*beta = 1."""
    a = _as_ratfunc(a)
    b = _as_ratfunc(b)
    diff = a.num * b.den - b.num * a.den
    if lam_sq_one:
        diff = diff.reduce_lambda_sq()
    if alpha_beta_one:
        diff = diff.reduce_alpha_beta_one()
    return diff.is_zero()


def geometric_sum(first, ratio):
    """Closed form of ``sum_{n>=0} first * ratio**n`` as a RatFunc.

    ``ratio`` must be a single monomial (optionally with coefficient) whose
    Y-exponent is strictly positive; this is the formal surrogate of
    convergence.  Sums starting at n0 are obtained by passing
    ``first * ratio**n0``.
    """
    first = _as_ratfunc(first)
    ratio = _as_poly(ratio)
    if not ratio.is_unit_monomial():
        raise ValueError("ratio must be a single monomial")
    (m, _), = ratio.coeffs.items()
    if m[_INDEX["Y"]] <= 0:
        raise NonConvergent("ratio %r has non-positive Y-exponent" % (ratio,))
    return first / RatFunc(ONE - ratio)


def symmetric_quotient(m):
    """The polynomial (alpha**m - beta**m)/(alpha - beta) = sum alpha^i beta^j.

    Exactness of the division is checked; m = 0 gives 0.
    """
    assert m >= 0
    out = Poly({mono(alpha=i, beta=m - 1 - i): Fraction(1) for i in range(m)})
    check = out * (Poly.symbol("alpha") - Poly.symbol("beta"))
    want = Poly.monomial(mono(alpha=m)) - Poly.monomial(mono(beta=m))
    assert check == want, "division (alpha^m - beta^m)/(alpha - beta) not exact"
    return out
