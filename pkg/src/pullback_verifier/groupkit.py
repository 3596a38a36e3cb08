"""Exact matrix layer: similitude groups, congruence-subgroup predicates, the
constant matrices of the pullback setup, and the block-interleaving embedding
GU(2,2) x GU(1,1) -> GU(3,3).

Matrices are tuples of tuples.  Entries may be Fractions, QuadElem, or local
algebra elements; the operations dispatch on a tiny duck-typed surface
(+, *, unary -, conj(), inverse()).
"""

from fractions import Fraction

from .exactring import (QuadElem, LocalRing, InertElem, SplitElem, RamElem,
                        quad_alpha, qval, INF)
from . import finitegeom


class SimilitudeMismatch(Exception):
    pass


class NotUnitary(Exception):
    pass


class RingMismatch(Exception):
    pass


class NotInGroup(Exception):
    pass


# ---------------------------------------------------------------------------
# scalar helpers
# ---------------------------------------------------------------------------

def conj(x):
    if isinstance(x, (int, Fraction)):
        return x
    return x.conj()


def inv_scalar(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(1) / Fraction(x)
    return x.inverse()


def is_zero(x):
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


# ---------------------------------------------------------------------------
# matrix helpers
# ---------------------------------------------------------------------------

def mat(rows):
    return tuple(tuple(r) for r in rows)


def mat_map(f, M):
    return tuple(tuple(f(x) for x in row) for row in M)


def zeros_like(M, one):
    n = len(M)
    return tuple(tuple(one * 0 for _ in range(n)) for _ in range(n))


def eye(n, one=Fraction(1)):
    return tuple(tuple(one if i == j else one * 0 for j in range(n))
                 for i in range(n))


def mat_mul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    assert len(A[0]) == m
    return tuple(tuple(sum((A[i][t] * B[t][j] for t in range(1, m)),
                           A[i][0] * B[0][j]) for j in range(k))
                 for i in range(n))


def mat_add(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_neg(A):
    return tuple(tuple(-a for a in row) for row in A)


def mat_scalar(c, A):
    return tuple(tuple(c * a for a in row) for row in A)


def transpose(A):
    return tuple(zip(*A))


def conj_transpose(A):
    return tuple(tuple(conj(A[j][i]) for j in range(len(A))) for i in range(len(A[0])))


def mat_eq(A, B):
    if len(A) != len(B) or len(A[0]) != len(B[0]):
        return False
    return all(is_zero(a - b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def jmat(n, one=Fraction(1)):
    """The 2n x 2n form matrix [[0, I_n], [-I_n, 0]]."""
    z = one * 0
    return tuple(tuple(one if j == i + n else (-one if j == i - n else z)
                       for j in range(2 * n)) for i in range(2 * n))


def mat_det(A):
    """Determinant by Gaussian elimination over a field; split elements are
    handled component-wise."""
    n = len(A)
    if isinstance(A[0][0], SplitElem):
        ring = A[0][0].ring
        d1 = _frac_det([[x.x1 for x in row] for row in A])
        d2 = _frac_det([[x.x2 for x in row] for row in A])
        return SplitElem(d1, d2, ring)
    a = [list(row) for row in A]
    det = None
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(a[r][col])), None)
        if piv is None:
            return a[0][0] * 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        pval = a[col][col]
        det = pval if det is None else det * pval
        pinv = inv_scalar(pval)
        for r in range(col + 1, n):
            if not is_zero(a[r][col]):
                f = a[r][col] * pinv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det if sign == 1 else -det


def _frac_det(a):
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def mat_inv_field(A):
    """Inverse by Gauss-Jordan; entries must form a field (or be split with
    invertible components)."""
    n = len(A)
    if isinstance(A[0][0], SplitElem):
        ring = A[0][0].ring
        m1 = _frac_inv([[x.x1 for x in row] for row in A])
        m2 = _frac_inv([[x.x2 for x in row] for row in A])
        return tuple(tuple(SplitElem(m1[i][j], m2[i][j], ring)
                           for j in range(n)) for i in range(n))
    one = _one_like(A[0][0])
    a = [list(row) + [one if i == j else one * 0 for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(a[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        pinv = inv_scalar(a[col][col])
        a[col] = [pinv * x for x in a[col]]
        for r in range(n):
            if r != col and not is_zero(a[r][col]):
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(a[i][n + j] for j in range(n)) for i in range(n))


def _frac_inv(a):
    n = len(a)
    aug = [row + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular component")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [inv * x for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [[aug[i][n + j] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# similitude groups
# ---------------------------------------------------------------------------

def similitude(g, form="hermitian"):
    """The multiplier mu with (conj g)^t J g = mu J (hermitian form) or
    g^t J g = mu J (symplectic form); None when g is not in the group.

    For the hermitian form mu must land in the fixed base ring.
    """
    n2 = len(g)
    assert n2 % 2 == 0
    one = _one_like(g[0][0])
    J = jmat(n2 // 2, one)
    left = conj_transpose(g) if form == "hermitian" else transpose(g)
    T = mat_mul(mat_mul(left, J), g)
    mu = T[0][n2 // 2]
    if is_zero(mu):
        return None
    if form == "hermitian" and not is_zero(mu - conj(mu)):
        return None
    if not mat_eq(T, mat_scalar(mu, J)):
        return None
    return mu


def _one_like(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(1)
    return x * 0 + 1


def gu_inverse(g, form="hermitian"):
    """Group inverse via the form: g^-1 = mu^-1 J^-1 (conj g)^t J."""
    mu = similitude(g, form)
    if mu is None:
        raise NotInGroup("no similitude")
    return j_sandwich_inverse(g, mu, form)


def j_sandwich_inverse(g, mu, form="hermitian"):
    """mu^-1 J^-1 (conj g)^t J computed by block permutation and signs; no
    matrix multiplications.  The caller guarantees mu is the multiplier."""
    n2 = len(g)
    n = n2 // 2
    B = conj_transpose(g) if form == "hermitian" else transpose(g)
    rows = []
    for i in range(n2):
        ii = i + n if i < n else i - n
        row = []
        for j in range(n2):
            jj = j + n if j < n else j - n
            x = B[ii][jj]
            row.append(x if (i < n) == (j < n) else -x)
        rows.append(tuple(row))
    out = tuple(rows)
    if is_zero(mu - _one_like(mu)):
        return out
    return mat_scalar(inv_scalar(mu), out)


def multiplier_entry(g, form="hermitian"):
    """The would-be multiplier read off one entry of (conj g)^t J g; callers
    on trusted group elements use it to avoid the full similitude check."""
    n2 = len(g)
    n = n2 // 2
    acc = None
    for k in range(n2):
        x = conj(g[k][0]) if form == "hermitian" else g[k][0]
        y = g[k + n][n] if k < n else -g[k - n][n]
        term = x * y
        acc = term if acc is None else acc + term
    return acc


# ---------------------------------------------------------------------------
# constant library
# ---------------------------------------------------------------------------

def Qmat():
    """The fixed 6x6 symplectic element used to seed the section supports."""
    return mat_map(Fraction, mat([
        [0, 1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, -1],
        [0, 0, 0, 0, 1, -1],
        [0, 0, 0, 1, 0, 0],
        [0, 1, 1, 0, 0, 0]]))


def theta_mat(d):
    """The 4x4 unitary unipotent built from alpha = (b + sqrt(-d))/2."""
    al = quad_alpha(d)
    z = QuadElem(0, 0, d)
    o = QuadElem(1, 0, d)
    return mat([[o, z, z, z],
                [al, o, z, z],
                [z, z, o, -al.conj()],
                [z, z, z, o]])


def s_matrices():
    """The five integral 4x4 coset representatives s_1 .. s_5."""
    s1 = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    s2 = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
    s3 = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    s4 = [[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [1, 0, -1, 0]]
    s5 = [[0, -1, 0, 0], [-1, 0, 0, 0], [0, 1, 0, -1], [0, 0, -1, 0]]
    return [mat_map(Fraction, mat(s)) for s in (s1, s2, s3, s4, s5)]


def w2():
    return mat_map(Fraction, mat([[0, 1], [-1, 0]]))


def u2(x):
    return mat([[_one_like(x), x], [x * 0, _one_like(x)]])


def t2(b):
    return mat([[b, b * 0], [b * 0, inv_scalar(b)]])


def a_n_matrix(ring, n):
    """Cartan-cell representative diag(w^n, conj(w^n)^-1) for the uniformizer w.

    The conjugate in the second slot keeps the multiplier equal to 1 in the
    ramified case (where conj(w) = -w); for inert w = q it is just q^-n.
    """
    w = ring.uniformizer()
    wn = _power(w, n) if n >= 0 else _power(w.inverse(), -n)
    return mat([[wn, ring.zero()], [ring.zero(), wn.conj().inverse()]])


def a_mk_matrix(ring, m, k):
    """Split-case representative: image of diag(q^(m+k), q^m) in U(1,1)."""
    assert ring.kind == "split"
    q = Fraction(ring.q)
    e1 = SplitElem(q ** (m + k), q ** (-m), ring)
    e2 = SplitElem(q ** m, q ** (-m - k), ring)
    return mat([[e1, ring.zero()], [ring.zero(), e2]])


def _power(x, n):
    out = _one_like(x)
    for _ in range(n):
        out = out * x
    return out


def m1_matrix(a):
    """Klingen-Levi torus part; a an invertible element with a conjugate."""
    z = a * 0
    o = _one_like(a)
    return mat([[a, z, z, z],
                [z, o, z, z],
                [z, z, inv_scalar(conj(a)), z],
                [z, z, z, o]])


def m2_matrix(b):
    """Klingen-Levi GU(1,1) part; the (3,3) entry is the multiplier of b."""
    lam = similitude(b, "hermitian")
    if lam is None:
        raise NotUnitary("m2 argument is not a unitary similitude")
    al, be = b[0]
    ga, de = b[1]
    z = al * 0
    o = _one_like(al)
    return mat([[o, z, z, z],
                [z, al, z, be],
                [z, z, lam * o, z],
                [z, ga, z, de]])


def klingen_levi(a, b):
    """The pair (m1(a), m2(b)); raises NotUnitary when b fails the form test."""
    return m1_matrix(a), m2_matrix(b)


def embed_iota(g1, g2):
    """Block-interleaved embedding of (4x4, 2x2) pairs with equal multipliers
    into the 6x6 unitary similitude group."""
    mu1 = similitude(g1, "hermitian")
    mu2 = similitude(g2, "hermitian")
    if mu1 is None or mu2 is None or not is_zero(mu1 - mu2):
        raise SimilitudeMismatch("blocks have different multipliers")
    A = [[g1[0][0], g1[0][1]], [g1[1][0], g1[1][1]]]
    B = [[g1[0][2], g1[0][3]], [g1[1][2], g1[1][3]]]
    C = [[g1[2][0], g1[2][1]], [g1[3][0], g1[3][1]]]
    D = [[g1[2][2], g1[2][3]], [g1[3][2], g1[3][3]]]
    a, b = g2[0]
    c, dd = g2[1]
    z = a * 0
    rows = [
        [A[0][0], A[0][1], z, B[0][0], B[0][1], z],
        [A[1][0], A[1][1], z, B[1][0], B[1][1], z],
        [z, z, a, z, z, -b],
        [C[0][0], C[0][1], z, D[0][0], D[0][1], z],
        [C[1][0], C[1][1], z, D[1][0], D[1][1], z],
        [z, z, -c, z, z, dd],
    ]
    return mat(rows)


def omega_mat(d):
    """Q * iota(Theta, 1) over Q(sqrt(-d))."""
    th = theta_mat(d)
    one2 = eye(2, QuadElem(1, 0, d))
    Q = mat_map(lambda x: QuadElem(x, 0, d), Qmat())
    return mat_mul(Q, embed_iota(th, one2))


# ---------------------------------------------------------------------------
# integrality and residue helpers
# ---------------------------------------------------------------------------

def entry_val(x, q=None):
    if isinstance(x, (int, Fraction)):
        assert q is not None
        return qval(x, q)
    if isinstance(x, QuadElem):
        assert q is not None
        return min(qval(x.a, q), qval(x.b, q))
    return x.val()


def mat_min_val(g, q=None):
    return min(entry_val(x, q) for row in g for x in row)


def mat_integral(g, q=None):
    return all(entry_val(x, q) >= 0 for row in g for x in row)


def det_is_unit(g, q=None):
    d = mat_det(g)
    return not is_zero(d) and entry_val(d, q) == 0


def mat_residue(g, ctx):
    """Reduce an integral matrix with inert-local / quadratic / rational
    entries to a flat tuple over F_{p^2} in the given context."""
    p = ctx.p
    out = []
    for row in g:
        for x in row:
            if isinstance(x, (int, Fraction)):
                a, b = Fraction(x), Fraction(0)
            elif isinstance(x, QuadElem):
                a, b = x.a, x.b
            elif isinstance(x, InertElem):
                a, b = x.z.a, x.z.b
            else:
                raise RingMismatch("no residue map for %r" % (x,))
            if a.denominator % p == 0 or b.denominator % p == 0:
                raise RingMismatch("entry not integral at %d" % p)
            am = a.numerator * pow(a.denominator, -1, p) % p
            bm = b.numerator * pow(b.denominator, -1, p) % p
            out.append(ctx.encode(am, bm))
    return tuple(out)


# ---------------------------------------------------------------------------
# subgroup membership
# ---------------------------------------------------------------------------

class SubgroupTag:
    """Named congruence-subgroup tests; instantiate via the constructors."""

    def __init__(self, name, p=None, d=None):
        self.name = name
        self.p = p
        self.d = d

    def __repr__(self):
        bits = [self.name]
        if self.p is not None:
            bits.append("p=%d" % self.p)
        return "SubgroupTag(%s)" % ", ".join(bits)


def _block_lower_left_zero(g, half):
    return all(is_zero(g[i][j]) for i in range(half, len(g)) for j in range(half))


def subgroup_member(g, tag):
    """Exact membership test for the subgroup named by ``tag``.

    Raises RingMismatch when entries cannot support the required test.
    """
    name, p = tag.name, tag.p
    n2 = len(g)
    if name == "GSp2n":
        return similitude(g, "symplectic") is not None
    if name == "GUnn":
        return similitude(g, "hermitian") is not None
    if name == "P_Siegel_H":
        return (similitude(g, "hermitian") is not None
                and _block_lower_left_zero(g, n2 // 2))
    if name == "P_Klingen":
        return (similitude(g, "hermitian") is not None
                and all(is_zero(g[i][0]) for i in range(1, 4)))
    if name in ("K_H", "K_G", "K_F"):
        return (similitude(g, "hermitian") is not None
                and mat_integral(g, p) and det_is_unit(g, p))
    if name in ("U_H", "U_G"):
        if not subgroup_member(g, SubgroupTag("K_H", p)):
            return False
        pairs = finitegeom.klingen_mask(n2)
        return all(entry_val(g[i][j], p) >= 1 for (i, j) in pairs)
    if name in ("Iprime_H", "Iprime_G"):
        if not subgroup_member(g, SubgroupTag("K_H", p)):
            return False
        ctx = finitegeom.fq2(p, tag.d)
        res = mat_residue(g, ctx)
        return finitegeom.in_symplectic_borel(ctx, res, n2)
    if name == "Iwahori":
        # 4x4 symplectic Iwahori: integral, unit det, residue in I(4, F_p)
        if similitude(g, "symplectic") is None:
            return False
        if not (mat_integral(g, p) and det_is_unit(g, p)):
            return False
        masked = [(0, 1), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]
        return all(entry_val(g[i][j], p) >= 1 for (i, j) in masked)
    if name == "Gamma0":
        return (mat_integral(g, p) and det_is_unit(g, p)
                and entry_val(g[1][0], p) >= 1)
    if name == "Gamma_upper0":
        return (mat_integral(g, p) and det_is_unit(g, p)
                and entry_val(g[0][1], p) >= 1)
    if name == "Gamma0prime_F":
        # upper triangular mod p with residues in GL_2(F_p)
        if not subgroup_member(g, SubgroupTag("K_F", p)):
            return False
        if entry_val(g[1][0], p) < 1:
            return False
        for x in (g[0][0], g[0][1], g[1][1]):
            b = _imag_coord(x)
            if b is not None and qval(b, p) < 1:
                return False
        return True
    if name == "Borel_I2n":
        if similitude(g, "symplectic") is None:
            return False
        half = n2 // 2
        if not _block_lower_left_zero(g, half):
            return False
        return all(is_zero(g[i][j]) for i in range(half) for j in range(i + 1, half))
    raise RingMismatch("unknown subgroup tag %r" % (name,))


def _imag_coord(x):
    if isinstance(x, InertElem):
        return x.z.b
    if isinstance(x, QuadElem):
        return x.b
    return None


def gamma0_units_member(x, p):
    """Membership of a unit a + b sqrt(-d) in the subgroup with p | b."""
    if x.val() != 0:
        raise RingMismatch("not a unit")
    return qval(x.z.b, p) >= 1
