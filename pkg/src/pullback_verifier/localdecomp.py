"""p-adic Iwasawa factorization for the Siegel parabolic of GU(3,3), section
values, and the double-coset membership decision.

The factorization writes g = n(b) m(A, v) k with k integral of unit
determinant.  It proceeds by saturating the lattice spanned by the bottom
three rows of g (an isotropic rank-3 lattice), completing it to a hyperbolic
basis by exact dual-basis and isotropy corrections, and reading off the Levi
data from g k^-1.  All pivot and subset choices scan in a fixed order, so the
output is deterministic.

Membership in P(Q_p) c U for c in {Q, Omega} and U one of the level
subgroups reduces mod p: U contains the kernel of K -> GU(3,3)(F_p), so the
question becomes whether the flag point of k lies in the U-orbit of the flag
point of c, a finite breadth-first search whose path doubles as a witness.
"""

from fractions import Fraction
from functools import lru_cache

from .exactring import (LocalRing, InertElem, SplitElem, RamElem, QuadElem,
                        qval, INF)
from . import finitegeom
from .groupkit import (mat, mat_map, mat_mul, mat_eq, conj_transpose, eye,
                       jmat, similitude, gu_inverse, j_sandwich_inverse,
                       multiplier_entry, mat_inv_field, mat_det,
                       mat_integral, det_is_unit, mat_residue, conj, is_zero,
                       Qmat, omega_mat, embed_iota, NotInGroup)


def _jmul_left(Y):
    """J . Y for the 6-row block form, by index shuffling."""
    return tuple(Y[i + 3] if i < 3 else tuple(-x for x in Y[i - 3])
                 for i in range(6))


def _jmul_right(X):
    """X . J for 6-column rows, by index shuffling."""
    return tuple(tuple(-row[j + 3] if j < 3 else row[j - 3] for j in range(6))
                 for row in X)


class IwasawaFactorization:
    """g = n(b) m(A, v) k; all blocks exact, k in the maximal compact."""

    def __init__(self, b, A, v, k, ring):
        self.b = b
        self.A = A
        self.v = v
        self.k = k
        self.ring = ring

    def reassemble(self):
        ring = self.ring
        one = ring.one()
        z = ring.zero()
        n6 = [[one if i == j else z for j in range(6)] for i in range(6)]
        for i in range(3):
            for j in range(3):
                n6[i][3 + j] = self.b[i][j]
        m6 = [[z] * 6 for _ in range(6)]
        D = _levi_complement(self.A, self.v)
        for i in range(3):
            for j in range(3):
                m6[i][j] = self.A[i][j]
                m6[3 + i][3 + j] = D[i][j]
        return mat_mul(mat_mul(mat(n6), mat(m6)), self.k)


def _levi_complement(A, v):
    return mat_map(lambda x: v * x, conj_transpose(mat_inv_field(A)))


# ---------------------------------------------------------------------------
# residue arithmetic without tables (works for any odd q)
# ---------------------------------------------------------------------------

def _res_of(x, ring):
    """Residue of an integral local element: (a, b) mod q for inert,
    pair of ints for split, int for ramified."""
    q = ring.q
    if isinstance(x, InertElem):
        a, b = x.z.a, x.z.b
        return (_frac_mod(a, q), _frac_mod(b, q))
    if isinstance(x, RamElem):
        return _frac_mod(x.x, q)
    raise TypeError(x)


def _frac_mod(a, q):
    a = Fraction(a)
    assert a.denominator % q != 0
    return a.numerator * pow(a.denominator, -1, q) % q


class _ResField:
    """Residue field of a non-split local ring, minimal inline arithmetic."""

    def __init__(self, ring):
        self.ring = ring
        self.q = ring.q
        self.quadratic = ring.kind == "inert"
        self.d = ring.d % ring.q

    def res(self, x):
        return _res_of(x, self.ring)

    def zero(self):
        return (0, 0) if self.quadratic else 0

    def is_zero(self, x):
        return x == self.zero()

    def add(self, x, y):
        if self.quadratic:
            return ((x[0] + y[0]) % self.q, (x[1] + y[1]) % self.q)
        return (x + y) % self.q

    def mul(self, x, y):
        if self.quadratic:
            return ((x[0] * y[0] - self.d * x[1] * y[1]) % self.q,
                    (x[0] * y[1] + x[1] * y[0]) % self.q)
        return x * y % self.q

    def neg(self, x):
        if self.quadratic:
            return ((-x[0]) % self.q, (-x[1]) % self.q)
        return (-x) % self.q

    def inv(self, x):
        if self.quadratic:
            n = (x[0] * x[0] + self.d * x[1] * x[1]) % self.q
            ninv = pow(n, -1, self.q)
            return (x[0] * ninv % self.q, (-x[1]) * ninv % self.q)
        return pow(x, -1, self.q)

    def lift(self, x):
        if self.quadratic:
            return self.ring.from_quad(QuadElem(x[0], x[1], self.ring.d))
        return self.ring.from_rational(x)


def _null_combo(rows, F):
    """A left null combination of the residue rows (or None if full rank).

    Returns (coeffs, j) with coeffs[j] invertible, scanning deterministically.
    """
    m = len(rows)
    ncol = len(rows[0])
    a = [[F.res(x) for x in row] for row in rows]
    # track transform T with T . original = current
    T = [[F.zero() for _ in range(m)] for _ in range(m)]
    for i in range(m):
        T[i][i] = _res_one(F)
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, m) if not F.is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        T[r], T[piv] = T[piv], T[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        T[r] = [F.mul(inv, x) for x in T[r]]
        for i in range(m):
            if i != r and not F.is_zero(a[i][c]):
                f = F.neg(a[i][c])
                a[i] = [F.add(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
                T[i] = [F.add(x, F.mul(f, y)) for x, y in zip(T[i], T[r])]
        r += 1
        if r == m:
            return None
    coeffs = T[r]
    j = next(i for i in range(m) if not F.is_zero(coeffs[i]))
    return coeffs, j


def _res_one(F):
    return (1, 0) if F.quadratic else 1


def _scale_row_primitive(row, ring):
    vmin = min(x.val() for x in row)
    if vmin is INF:
        raise NotInGroup("zero row in the bottom block")
    if vmin == 0:
        return row
    if ring.kind == "ramified":
        pi = ring.uniformizer()
        scal = pi.inverse() if vmin > 0 else pi
        k = abs(int(vmin))
    else:
        scal = ring.from_rational(Fraction(1, ring.q) if vmin > 0 else ring.q)
        k = abs(int(vmin))
    out = row
    for _ in range(k):
        out = [scal * x for x in out]
    return out


def _saturate_nonsplit(rows, ring):
    F = _ResField(ring)
    uni = ring.uniformizer()
    uni_inv = uni.inverse()
    rows = [_scale_row_primitive(list(r), ring) for r in rows]
    while True:
        combo = _null_combo(rows, F)
        if combo is None:
            return [list(r) for r in rows]
        coeffs, j = combo
        lifted = [F.lift(c) for c in coeffs]
        new = [sum((lifted[i] * rows[i][t] for i in range(1, len(rows))),
                   lifted[0] * rows[0][t]) for t in range(len(rows[0]))]
        new = [uni_inv * x for x in new]
        assert all(x.val() >= 0 for x in new)
        rows[j] = _scale_row_primitive(new, ring)


def _saturate_split(rows, ring):
    q = ring.q

    def comp_rows(c):
        return [[x.x1 if c == 0 else x.x2 for x in row] for row in rows]

    def set_comp(i, c, vals):
        for t, v in enumerate(vals):
            x = rows[i][t]
            rows[i][t] = SplitElem(v, x.x2, ring) if c == 0 else \
                SplitElem(x.x1, v, ring)

    rows = [list(r) for r in rows]
    for c in (0, 1):
        comp = comp_rows(c)
        comp = _saturate_rational(comp, q)
        for i in range(len(rows)):
            set_comp(i, c, comp[i])
    return rows


def _saturate_rational(rows, q):
    def scale(row):
        vmin = min(qval(x, q) for x in row)
        if vmin is INF:
            raise NotInGroup("zero row component")
        f = Fraction(1, q ** int(vmin)) if vmin > 0 else Fraction(q) ** int(-vmin)
        return [x * f for x in row]

    rows = [scale(r) for r in rows]
    while True:
        a = [[_frac_mod(x, q) for x in row] for row in rows]
        m, ncol = len(rows), len(rows[0])
        T = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        r = 0
        combo = None
        for col in range(ncol):
            piv = next((i for i in range(r, m) if a[i][col]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            T[r], T[piv] = T[piv], T[r]
            inv = pow(a[r][col], -1, q)
            a[r] = [inv * x % q for x in a[r]]
            T[r] = [inv * x % q for x in T[r]]
            for i in range(m):
                if i != r and a[i][col]:
                    f = -a[i][col]
                    a[i] = [(x + f * y) % q for x, y in zip(a[i], a[r])]
                    T[i] = [(x + f * y) % q for x, y in zip(T[i], T[r])]
            r += 1
        if r == m:
            return rows
        coeffs = T[r]
        j = next(i for i in range(m) if coeffs[i] % q)
        new = [sum(coeffs[i] * rows[i][t] for i in range(m)) / q
               for t in range(ncol)]
        assert all(qval(x, q) >= 0 for x in new)
        rows[j] = scale(new)


# ---------------------------------------------------------------------------
# the factorization
# ---------------------------------------------------------------------------

def local_matrix(ring, M):
    """Coerce a rational/quadratic matrix into the local ring."""
    def f(x):
        if isinstance(x, (int, Fraction)):
            return ring.from_rational(x)
        if isinstance(x, QuadElem):
            return ring.from_quad(x)
        return x
    return mat_map(f, M)


def qmat_local(ring):
    return local_matrix(ring, Qmat())


def q_iota(ring, k4, h2):
    """Q . iota(k4, h2) over the local ring."""
    return mat_mul(qmat_local(ring), embed_iota(local_matrix(ring, k4),
                                                local_matrix(ring, h2)))


def base_rational(x):
    """Extract the Q_q-rational value of a base-ring local element."""
    if isinstance(x, InertElem):
        assert x.z.b == 0
        return x.z.a
    if isinstance(x, SplitElem):
        assert x.x1 == x.x2
        return x.x1
    if isinstance(x, RamElem):
        assert x.y == 0
        return x.x
    return Fraction(x)


def iwasawa_siegel(g, ring, check=True):
    """Exact Iwasawa factorization with respect to the Siegel parabolic.

    With ``check`` the result is verified end to end (reassembly, form
    identity, hermitian unipotent part); without it the routine computes the
    same canonical factorization but skips the redundant verification matrix
    products and leaves the unipotent block lazy.  Membership scans use the
    fast path; the property tests always run checked.
    """
    if check:
        mu = similitude(g, "hermitian")
        if mu is None:
            raise NotInGroup("not a unitary similitude")
    else:
        mu = multiplier_entry(g, "hermitian")
    v = base_rational(mu)
    if v == 0:
        raise NotInGroup("zero multiplier")
    bottom = [list(g[i]) for i in range(3, 6)]
    if ring.kind == "split":
        B = _saturate_split(bottom, ring)
    else:
        B = _saturate_nonsplit(bottom, ring)
    B = mat(B)
    one = ring.one()
    # isotropy of the saturated lattice is inherited from g
    M = _jmul_left(conj_transpose(B))                      # 6 x 3
    C = _dual_rows(M, ring)                                # 3 x 6 with C M = I
    H = mat_mul(_jmul_right(C), conj_transpose(C))         # skew-hermitian 3 x 3
    half = ring.from_rational(Fraction(1, 2))
    T = mat_map(lambda x: half * x, H)
    Cc = [[C[i][t] + sum((T[i][j] * B[j][t] for j in range(1, 3)),
                         T[i][0] * B[0][t]) for t in range(6)] for i in range(3)]
    k = mat(list(map(tuple, Cc)) + [tuple(r) for r in B])
    kinv = j_sandwich_inverse(k, one)
    if check:
        J = jmat(3, one)
        if not mat_eq(mat_mul(mat_mul(k, J), conj_transpose(k)), J):
            raise AssertionError("completion lost the form")
        assert mat_integral(k) and det_is_unit(k)
        X = mat_mul(g, kinv)
        for i in range(3, 6):
            for j in range(3):
                assert is_zero(X[i][j])
        A = mat([X[i][:3] for i in range(3)])
        D = mat([X[i][3:] for i in range(3, 6)])
        assert mat_eq(D, _levi_complement(A, mu))
        TR = mat([X[i][3:] for i in range(3)])
        b = mat_mul(TR, mat_inv_field(D))
        assert mat_eq(b, conj_transpose(b)), "unipotent part not hermitian"
        fact = IwasawaFactorization(b, A, mu, k, ring)
        assert mat_eq(fact.reassemble(), g)
        return fact
    A = mat([tuple(sum((g[i][t] * kinv[t][j] for t in range(1, 6)),
                       g[i][0] * kinv[0][j]) for j in range(3))
             for i in range(3)])
    return IwasawaFactorization(None, A, mu, k, ring)


def _dual_rows(M, ring):
    """C (3 x 6) with C M = I_3, integral, via a residue-unit row minor."""
    if ring.kind == "split":
        comp = []
        for c in (0, 1):
            Mc = [[x.x1 if c == 0 else x.x2 for x in row] for row in M]
            comp.append(_dual_rows_rational(Mc, ring.q))
        return mat([[SplitElem(comp[0][i][t], comp[1][i][t], ring)
                     for t in range(6)] for i in range(3)])
    F = _ResField(ring)
    res = [[F.res(x) for x in row] for row in M]
    S = _unit_minor_rows(res, F)
    Ms = mat([M[i] for i in S])
    Cs = mat_inv_field(Ms)
    z = ring.zero()
    C = [[z] * 6 for _ in range(3)]
    for a in range(3):
        for b in range(3):
            C[a][S[b]] = Cs[a][b]
    return mat(C)


def _dual_rows_rational(M, q):
    res = [[_frac_mod(x, q) for x in row] for row in M]
    S = _unit_minor_rows_rational(res, q)
    from .groupkit import _frac_inv
    Cs = _frac_inv([[M[i][j] for j in range(3)] for i in S])
    C = [[Fraction(0)] * 6 for _ in range(3)]
    for a in range(3):
        for b in range(3):
            C[a][S[b]] = Cs[a][b]
    return C


def _unit_minor_rows(res, F):
    from itertools import combinations
    for S in combinations(range(6), 3):
        sub = [res[i] for i in S]
        if not F.is_zero(_res_det3(sub, F)):
            return list(S)
    raise NotInGroup("bottom rows not of full residue rank")


def _res_det3(a, F):
    t1 = F.mul(a[0][0], F.add(F.mul(a[1][1], a[2][2]), F.neg(F.mul(a[1][2], a[2][1]))))
    t2 = F.mul(a[0][1], F.add(F.mul(a[1][0], a[2][2]), F.neg(F.mul(a[1][2], a[2][0]))))
    t3 = F.mul(a[0][2], F.add(F.mul(a[1][0], a[2][1]), F.neg(F.mul(a[1][1], a[2][0]))))
    return F.add(F.add(t1, F.neg(t2)), t3)


def _unit_minor_rows_rational(res, q):
    from itertools import combinations
    for S in combinations(range(6), 3):
        a = [res[i] for i in S]
        det = (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
               - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
               + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
        if det % q:
            return list(S)
    raise NotInGroup("bottom rows not of full residue rank")


# ---------------------------------------------------------------------------
# double-coset membership and section values
# ---------------------------------------------------------------------------

SUPPORTS = {
    "unramified": None,
    "S3": [("Q", "U")],
    "S2": [("Q", "Iprime")],
    "S1": [("Q", "Iprime"), ("Omega", "Iprime")],
}


@lru_cache(maxsize=32)
def _center_residue(p, d, name):
    ctx = finitegeom.fq2(p, d)
    m = Qmat() if name == "Q" else omega_mat(d)
    return mat_residue(m, ctx)


@lru_cache(maxsize=32)
def center_orbit(p, d, center, level):
    """BFS orbit (with witnesses) of the center's flag point under the image
    of the level subgroup in GU(3,3)(F_p)."""
    ctx = finitegeom.fq2(p, d)
    if level == "U":
        gens = finitegeom.parabolic_mask_generators(ctx, 3)
    elif level == "Iprime":
        gens = finitegeom.symplectic_borel_generators(ctx, 3)
    else:
        raise ValueError(level)
    start = finitegeom.flag_of(ctx, _center_residue(p, d, center), 3, 6)
    return finitegeom.Orbit(ctx, start, gens, 3, 6)


class SectionValue:
    """Either Zero (with a witness note) or a value
    chi^char_exp * lam^lam_exp * Y^y_exp."""

    def __init__(self, zero, char_exp=0, y_exp=0, lam_exp=0, witness=""):
        self.zero = zero
        self.char_exp = char_exp
        self.y_exp = y_exp
        self.lam_exp = lam_exp
        self.witness = witness

    @staticmethod
    def Zero(witness):
        return SectionValue(True, witness=witness)

    def __repr__(self):
        if self.zero:
            return "SectionValue(0; %s)" % self.witness
        return "SectionValue(chi^%d lam^%d Y^%d)" % (
            self.char_exp, self.lam_exp, self.y_exp)


def in_double_coset(g, ring, center, u_tag, d=None):
    """Decide g in P(Q_p) . center . U; returns (bool, witness)."""
    if u_tag == "K":
        iwasawa_siegel(g, ring, check=False)
        return True, "iwasawa"
    if ring.kind != "inert":
        raise NotInGroup("level-subgroup membership implemented at inert p")
    p = ring.q
    d = ring.d if d is None else d
    fact = iwasawa_siegel(g, ring, check=False)
    ctx = finitegeom.fq2(p, d)
    kres = mat_residue(fact.k, ctx)
    fl = finitegeom.flag_of(ctx, kres, 3, 6)
    orb = center_orbit(p, d, center, u_tag)
    if fl in orb:
        return True, orb.witness(fl)
    return False, "flag outside the %s-orbit of %s" % (u_tag, center)


def _unit_class_exp(x, ctx):
    """Class-log of the unit part of an inert local element."""
    from .exactring import unit_part_residue
    a, b = unit_part_residue(x)
    return ctx.CLASS[ctx.encode(a, b)]


def evaluate_section(g, ring, place_class, d=None, check=False):
    """Value of the local section at g for the given place class.

    Unramified places always produce a value; at S3/S2/S1 places the value is
    zero outside the double-coset support.  The value is returned as exponent
    data: Y-exponent, lam-exponent (split/ramified), and the exponent of the
    order-(p+1) residue character (inert ramified-level places).
    """
    fact = iwasawa_siegel(g, ring, check=check)
    detA = mat_det(fact.A)
    nrm = detA.norm() if not isinstance(detA, Fraction) else detA * detA
    vq = Fraction(base_rational(fact.v))
    y_exp = 3 * int(qval(nrm, ring.q)) - 9 * int(qval(vq, ring.q))
    if place_class == "unramified":
        if ring.kind == "split":
            v1, v2 = detA.val_pair()
            return SectionValue(False, 0, y_exp, int(v1 - v2))
        if ring.kind == "ramified":
            return SectionValue(False, 0, y_exp, int(detA.val()))
        return SectionValue(False, 0, y_exp, 0)
    if ring.kind != "inert":
        raise NotInGroup("place class %s requires an inert prime" % place_class)
    p = ring.q
    d = ring.d if d is None else d
    ctx = finitegeom.fq2(p, d)
    kres = mat_residue(fact.k, ctx)
    fl = finitegeom.flag_of(ctx, kres, 3, 6)
    notes = []
    for center, level in SUPPORTS[place_class]:
        orb = center_orbit(p, d, center, level)
        if fl not in orb:
            notes.append("not in P.%s.%s" % (center, level))
            continue
        u = orb.witness(fl)
        cres = _center_residue(p, d, center)
        pres = ctx.mat_mul(ctx.mat_mul(kres, u, 6, 6, 6),
                           ctx.mat_inv(cres, 6), 6, 6, 6)
        assert all(pres[i * 6 + j] == 0 for i in range(3, 6) for j in range(3)), \
            "witness did not produce a parabolic residue"
        ablk = tuple(pres[i * 6 + j] for i in range(3) for j in range(3))
        det_res = ctx.mat_det(ablk, 3)
        char_exp = (_unit_class_exp(detA, ctx) + ctx.CLASS[det_res]) % (p + 1)
        return SectionValue(False, char_exp, y_exp, 0,
                            witness="support %s" % center)
    return SectionValue.Zero("; ".join(notes))
