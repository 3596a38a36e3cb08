"""Exact quadratic-field elements and local etale-algebra elements.

``QuadElem`` models a + b*sqrt(-d) with Fraction coordinates.  The three local
algebras over Q_q are

* inert:    the field Q_q(sqrt(-d)), q odd, -d a non-residue mod q,
* split:    Q_q + Q_q with conjugation swapping the factors,
* ramified: Q_q[pi]/(pi**2 + d) with v(pi) = 1, v(q) = 2, q | d.

Valuations are exact on exact inputs; there is no precision tracking.
"""

from fractions import Fraction

INF = float("inf")


def qval(x, q):
    """q-adic valuation of a Fraction/int (INF on zero)."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n = x.numerator
    while n % q == 0:
        n //= q
        v += 1
    d = x.denominator
    while d % q == 0:
        d //= q
        v -= 1
    return v


class NotUnit(Exception):
    pass


class QuadElem:
    """Element a + b*sqrt(-d) of the imaginary quadratic field Q(sqrt(-d))."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=1):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)
        assert self.d > 0

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            assert other.d == self.d, "mixed field discriminants"
            return other
        return QuadElem(other, 0, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadElem(self.a * o.a - self.d * self.b * o.b,
                        self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self):
        return QuadElem(self.a, -self.b, self.d)

    def norm(self):
        """N(x) = x * conj(x) = a**2 + d*b**2, a rational."""
        return self.a * self.a + self.d * self.b * self.b

    def trace(self):
        return 2 * self.a

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError
        return QuadElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.a == other and self.b == 0
        return (isinstance(other, QuadElem) and self.d == other.d
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return "(%s + %s*sqrt(-%d))" % (self.a, self.b, self.d)


def quad_alpha(d):
    """The integral generator used in the Klingen-Levi constant matrix.

    For d = 3 mod 4 this is (1 + sqrt(-d))/2, otherwise sqrt(-d); in both
    cases alpha is an algebraic integer with alpha + conj(alpha) in Z.
    """
    if d % 4 == 3:
        return QuadElem(Fraction(1, 2), Fraction(1, 2), d)
    return QuadElem(0, 1, d)


# ---------------------------------------------------------------------------
# local algebra contexts
# ---------------------------------------------------------------------------

def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def splitting_type(q, d):
    """How q behaves in Q(sqrt(-d)): 'inert', 'split' or 'ramified'."""
    assert q % 2 == 1 and q >= 3, "odd primes only"
    if d % q == 0:
        return "ramified"
    return "inert" if legendre(-d, q) == -1 else "split"


class LocalRing:
    """Context object for one of the three local algebras L_q."""

    def __init__(self, q, d, kind=None):
        self.q = int(q)
        self.d = int(d)
        actual = splitting_type(q, d)
        if kind is None:
            kind = actual
        if kind != actual:
            raise ValueError("q = %d, d = %d is %s, not %s" % (q, d, actual, kind))
        self.kind = kind
        if kind == "ramified":
            assert qval(d, q) == 1, "ramified case needs q || d"

    # element constructors ------------------------------------------------
    def from_rational(self, x):
        x = Fraction(x)
        if self.kind == "split":
            return SplitElem(x, x, self)
        if self.kind == "ramified":
            return RamElem(x, 0, self)
        return InertElem(QuadElem(x, 0, self.d), self)

    def from_quad(self, z):
        """Image of a global a + b*sqrt(-d) in L_q."""
        if isinstance(z, (int, Fraction)):
            return self.from_rational(z)
        assert z.d == self.d
        if self.kind == "inert":
            return InertElem(z, self)
        if self.kind == "ramified":
            # sqrt(-d) = pi here
            return RamElem(z.a, z.b, self)
        # split: sqrt(-d) maps to (r, -r) for a square root r of -d mod q,
        # refined q-adically (Hensel) far enough for every exact use we make.
        r = self._sqrt_minus_d()
        return SplitElem(z.a + z.b * r, z.a - z.b * r, self)

    def _sqrt_minus_d(self, prec=40):
        # Hensel lift of a square root of -d mod q, as an integer mod q**prec
        q, d = self.q, self.d
        r = next(x for x in range(1, q) if (x * x + d) % q == 0)
        mod = q
        while mod < q ** prec:
            mod *= q
            r = (r - (r * r + d) * pow(2 * r, -1, mod)) % mod
        return Fraction(r)

    def uniformizer(self):
        if self.kind == "split":
            return SplitElem(Fraction(self.q), Fraction(1), self)  # q_1 = (q, 1)
        if self.kind == "ramified":
            return RamElem(0, 1, self)
        return self.from_rational(self.q)

    def zero(self):
        return self.from_rational(0)

    def one(self):
        return self.from_rational(1)


class _LocalBase:
    __slots__ = ("ring",)

    def _coerce(self, other):
        if isinstance(other, type(self)):
            assert other.ring.q == self.ring.q
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.from_rational(other)
        if isinstance(other, QuadElem):
            return self.ring.from_quad(other)
        raise TypeError(repr(other))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    __radd__ = lambda self, other: self + other
    __rmul__ = lambda self, other: self * other

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def is_integral(self):
        return self.val() >= 0

    def is_unit(self):
        return self.val() == 0


class InertElem(_LocalBase):
    """Element of the unramified quadratic field extension of Q_q."""

    __slots__ = ("z",)

    def __init__(self, z, ring):
        self.z = z
        self.ring = ring

    def __add__(self, other):
        o = self._coerce(other)
        return InertElem(self.z + o.z, self.ring)

    def __neg__(self):
        return InertElem(-self.z, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        return InertElem(self.z * o.z, self.ring)

    def conj(self):
        return InertElem(self.z.conj(), self.ring)

    def inverse(self):
        return InertElem(self.z.inverse(), self.ring)

    def norm(self):
        return self.z.norm()

    def val(self):
        """min of the coordinate valuations; v(q) = 1."""
        return min(qval(self.z.a, self.ring.q), qval(self.z.b, self.ring.q))

    def is_zero(self):
        return self.z.is_zero()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.z == o.z

    def __hash__(self):
        return hash(("inert", self.ring.q, self.z))

    def __repr__(self):
        return repr(self.z)


class SplitElem(_LocalBase):
    """Element of Q_q + Q_q; conjugation swaps the coordinates."""

    __slots__ = ("x1", "x2")

    def __init__(self, x1, x2, ring):
        self.x1 = Fraction(x1)
        self.x2 = Fraction(x2)
        self.ring = ring

    def __add__(self, other):
        o = self._coerce(other)
        return SplitElem(self.x1 + o.x1, self.x2 + o.x2, self.ring)

    def __neg__(self):
        return SplitElem(-self.x1, -self.x2, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        return SplitElem(self.x1 * o.x1, self.x2 * o.x2, self.ring)

    def conj(self):
        return SplitElem(self.x2, self.x1, self.ring)

    def inverse(self):
        if self.x1 == 0 or self.x2 == 0:
            raise ZeroDivisionError("non-invertible split element")
        return SplitElem(1 / self.x1, 1 / self.x2, self.ring)

    def norm(self):
        return self.x1 * self.x2

    def val_pair(self):
        q = self.ring.q
        return (qval(self.x1, q), qval(self.x2, q))

    def val(self):
        return min(self.val_pair())

    def is_zero(self):
        return self.x1 == 0 and self.x2 == 0

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.x1 == o.x1 and self.x2 == o.x2

    def __hash__(self):
        return hash(("split", self.ring.q, self.x1, self.x2))

    def __repr__(self):
        return "(%s, %s)" % (self.x1, self.x2)


class RamElem(_LocalBase):
    """Element x + y*pi of the ramified quadratic extension, pi**2 = -d."""

    __slots__ = ("x", "y")

    def __init__(self, x, y, ring):
        self.x = Fraction(x)
        self.y = Fraction(y)
        self.ring = ring

    def __add__(self, other):
        o = self._coerce(other)
        return RamElem(self.x + o.x, self.y + o.y, self.ring)

    def __neg__(self):
        return RamElem(-self.x, -self.y, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        d = self.ring.d
        return RamElem(self.x * o.x - d * self.y * o.y,
                       self.x * o.y + self.y * o.x, self.ring)

    def conj(self):
        return RamElem(self.x, -self.y, self.ring)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError
        return RamElem(self.x / n, -self.y / n, self.ring)

    def norm(self):
        return self.x * self.x + self.ring.d * self.y * self.y

    def val(self):
        """pi-adic valuation: v(pi) = 1, v(q) = 2.

        The two summands x and y*pi always have valuations of opposite
        parity, so the minimum is exact with no cancellation.
        """
        q = self.ring.q
        vx = qval(self.x, q)
        vy = qval(self.y, q)
        return min(2 * vx if vx is not INF else INF,
                   2 * vy + 1 if vy is not INF else INF)

    def is_zero(self):
        return self.x == 0 and self.y == 0

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash(("ram", self.ring.q, self.x, self.y))

    def __repr__(self):
        if self.y == 0:
            return str(self.x)
        return "(%s + %s*pi)" % (self.x, self.y)


def local_val(x):
    """Scalar valuation of a local element (component-wise min when split)."""
    return x.val()


def unit_part_residue(x):
    """For an inert element, the residue of x / q**val(x) in F_{q^2}.

    Returned as a coordinate pair (a mod q, b mod q); the caller interprets
    it in whatever residue-field encoding it uses.
    """
    v = x.val()
    assert v is not INF and v == int(v)
    q = x.ring.q
    u = x * x.ring.from_rational(Fraction(1, q ** int(v)))
    a, b = u.z.a, u.z.b
    assert a.denominator % q and b.denominator % q
    am = a.numerator * pow(a.denominator, -1, q) % q
    bm = b.numerator * pow(b.denominator, -1, q) % q
    return (am, bm)
