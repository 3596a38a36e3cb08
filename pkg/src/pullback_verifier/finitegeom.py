"""Finite-field side of the verifier: F_{p^2} arithmetic, flag spaces of
isotropic subspaces, subgroup-image generators, orbit machinery and the exact
character sums.

Everything here is residue-level: matrices are flat tuples of ints encoding
elements a + b*omega of F_{p^2} (omega**2 = -d) as ``a + p*b``.  The heavy
consumers are the double-coset membership decision and the coset-representative
counts, so the group action loops are written for speed, not elegance.
"""

from fractions import Fraction
from functools import lru_cache

from .exactring import CycInt, legendre


class BadParams(Exception):
    pass


class Fq2:
    """Context for F_{p^2} = F_p[omega], omega**2 = -d, elements as ints."""

    def __init__(self, p, d):
        if p < 3 or p % 2 == 0:
            raise BadParams("p must be an odd prime")
        if legendre(-d, p) != -1:
            raise BadParams("-%d is a square mod %d; field F_%d^2 needs a non-residue" % (d, p, p))
        self.p = p
        self.d = d % p
        self.n = p * p
        self._build_tables()
        self._build_logs()

    def _build_tables(self):
        p, d, n = self.p, self.d, self.n
        dec = [(x % p, x // p) for x in range(n)]
        self.ADD = [[(a1 + a2) % p + p * ((b1 + b2) % p) for (a2, b2) in dec]
                    for (a1, b1) in dec]
        self.MUL = [[(a1 * a2 - d * b1 * b2) % p + p * ((a1 * b2 + b1 * a2) % p)
                     for (a2, b2) in dec] for (a1, b1) in dec]
        self.NEG = [(-a) % p + p * ((-b) % p) for (a, b) in dec]
        self.CONJ = [a + p * ((-b) % p) for (a, b) in dec]
        inv = [0] * n
        for x in range(1, n):
            if inv[x]:
                continue
            for y in range(1, n):
                if self.MUL[x][y] == 1:
                    inv[x] = y
                    inv[y] = x
                    break
        self.INV = inv

    def _build_logs(self):
        """Generator of F_{p^2}^x and the class map modulo F_p^x."""
        n, p = self.n, self.p
        order = n - 1
        gen = None
        for x in range(2, n):
            y, k = x, 1
            while y != 1:
                y = self.MUL[y][x]
                k += 1
            if k == order:
                gen = x
                break
        assert gen is not None
        self.gen = gen
        # class of x in F_{p^2}^x / F_p^x as a power of the class of gen
        self.CLASS = [None] * n
        cls_of = {}
        for j in range(p + 1):
            g = self.power(gen, j)
            for a in range(1, p):
                cls_of[self.MUL[g][a]] = j
        for x in range(1, n):
            self.CLASS[x] = cls_of[x]

    # scalar helpers ----------------------------------------------------
    def encode(self, a, b=0):
        return a % self.p + self.p * (b % self.p)

    def decode(self, x):
        return (x % self.p, x // self.p)

    def in_fp(self, x):
        return x < self.p

    def power(self, x, k):
        out = 1
        while k:
            if k & 1:
                out = self.MUL[out][x]
            x = self.MUL[x][x]
            k >>= 1
        return out

    # matrix helpers (flat row-major tuples) -----------------------------
    def mat_mul(self, A, B, n, m, k):
        """(n x m) times (m x k)."""
        MUL, ADD = self.MUL, self.ADD
        out = [0] * (n * k)
        for i in range(n):
            io = i * m
            oo = i * k
            for j in range(k):
                acc = 0
                for t in range(m):
                    acc = ADD[acc][MUL[A[io + t]][B[t * k + j]]]
                out[oo + j] = acc
        return tuple(out)

    def mat_add(self, A, B):
        ADD = self.ADD
        return tuple(ADD[a][b] for a, b in zip(A, B))

    def mat_conjt(self, A, n, m):
        CONJ = self.CONJ
        return tuple(CONJ[A[j * m + i]] for i in range(m) for j in range(n))

    def mat_transpose(self, A, n, m):
        return tuple(A[j * m + i] for i in range(m) for j in range(n))

    def eye(self, n):
        return tuple(1 if i == j else 0 for i in range(n) for j in range(n))

    def mat_inv(self, A, n):
        MUL, ADD, NEG, INV = self.MUL, self.ADD, self.NEG, self.INV
        a = [list(A[i * n:(i + 1) * n]) + [1 if j == i else 0 for j in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            inv = INV[a[col][col]]
            a[col] = [MUL[inv][x] for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = NEG[a[r][col]]
                    row, prow = a[r], a[col]
                    for j in range(2 * n):
                        row[j] = ADD[row[j]][MUL[f][prow[j]]]
        return tuple(x for row in a for x in row[n:])

    def mat_det(self, A, n):
        MUL, ADD, NEG, INV = self.MUL, self.ADD, self.NEG, self.INV
        a = [list(A[i * n:(i + 1) * n]) for i in range(n)]
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                return 0
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = NEG[det]
            det = MUL[det][a[col][col]]
            inv = INV[a[col][col]]
            for r in range(col + 1, n):
                if a[r][col]:
                    f = NEG[MUL[inv][a[r][col]]]
                    for j in range(col, n):
                        a[r][j] = ADD[a[r][j]][MUL[f][a[col][j]]]
        return det

    def jmat(self, n):
        """2n x 2n split form [[0, I],[-I, 0]]."""
        J = [0] * (4 * n * n)
        for i in range(n):
            J[i * 2 * n + n + i] = 1
            J[(n + i) * 2 * n + i] = self.encode(-1)
        return tuple(J)

    def similitude(self, g, n2):
        """mu with conj(g)^t J g = mu J (mu in F_p), else None."""
        n = n2 // 2
        J = self.jmat(n)
        T = self.mat_mul(self.mat_mul(self.mat_conjt(g, n2, n2), J, n2, n2, n2),
                         g, n2, n2, n2)
        mu = T[0 * n2 + n]
        if not self.in_fp(mu) or mu == 0:
            return None
        MJ = tuple(self.MUL[mu][x] for x in J)
        return mu if T == MJ else None

    def rref(self, A, rows, cols):
        """Reduced row echelon form; returns (tuple, rank)."""
        MUL, ADD, NEG, INV = self.MUL, self.ADD, self.NEG, self.INV
        a = [list(A[i * cols:(i + 1) * cols]) for i in range(rows)]
        r = 0
        for c in range(cols):
            piv = next((i for i in range(r, rows) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = INV[a[r][c]]
            a[r] = [MUL[inv][x] for x in a[r]]
            for i in range(rows):
                if i != r and a[i][c]:
                    f = NEG[a[i][c]]
                    row, prow = a[i], a[r]
                    for j in range(c, cols):
                        row[j] = ADD[row[j]][MUL[f][prow[j]]]
            r += 1
            if r == rows:
                break
        return tuple(x for row in a for x in row), r


@lru_cache(maxsize=8)
def fq2(p, d):
    return Fq2(p, d)


# ---------------------------------------------------------------------------
# group generators at the residue level
# ---------------------------------------------------------------------------

def _elem_m(ctx, n, A):
    """Block diag(A, (conj(A)^t)^-1) in GU(n,n)."""
    n2 = 2 * n
    D = ctx.mat_inv(ctx.mat_conjt(A, n, n), n)
    g = [0] * (n2 * n2)
    for i in range(n):
        for j in range(n):
            g[i * n2 + j] = A[i * n + j]
            g[(n + i) * n2 + n + j] = D[i * n + j]
    return tuple(g)


def _elem_mu(ctx, n, v):
    """diag(1, v) similitude torus element m(I, v)."""
    n2 = 2 * n
    g = list(ctx.eye(n2))
    for i in range(n):
        g[(n + i) * n2 + n + i] = v % ctx.p
    return tuple(g)


def _elem_n(ctx, n, b):
    """Upper unipotent [[I, b],[0, I]]; b must be conj-symmetric."""
    n2 = 2 * n
    g = list(ctx.eye(n2))
    for i in range(n):
        for j in range(n):
            g[i * n2 + n + j] = b[i * n + j]
    return tuple(g)


def _elem_nbar(ctx, n, b):
    n2 = 2 * n
    g = list(ctx.eye(n2))
    for i in range(n):
        for j in range(n):
            g[(n + i) * n2 + j] = b[i * n + j]
    return tuple(g)


def _hermitian_basis(ctx, n):
    """F_p-basis of n x n matrices with conj(b)^t = b."""
    out = []
    w = ctx.encode(0, 1)
    for i in range(n):
        b = [0] * (n * n)
        b[i * n + i] = 1
        out.append(tuple(b))
    for i in range(n):
        for j in range(i + 1, n):
            b = [0] * (n * n)
            b[i * n + j] = 1
            b[j * n + i] = 1
            out.append(tuple(b))
            b = [0] * (n * n)
            b[i * n + j] = w
            b[j * n + i] = ctx.CONJ[w]
            out.append(tuple(b))
    return out


def gu_generators(ctx, n):
    """Generators of GU(n,n)(F_p) (all root subgroups plus torus)."""
    gens = []
    tau = ctx.gen
    u = next(x for x in range(2, ctx.p) if _fp_order(ctx.p, x) == ctx.p - 1)
    for i in range(n):
        A = list(ctx.eye(n))
        A[i * n + i] = tau
        gens.append(_elem_m(ctx, n, tuple(A)))
    gens.append(_elem_mu(ctx, n, u))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for x in (1, ctx.encode(0, 1)):
                A = list(ctx.eye(n))
                A[i * n + j] = x
                gens.append(_elem_m(ctx, n, tuple(A)))
    for b in _hermitian_basis(ctx, n):
        gens.append(_elem_n(ctx, n, b))
        gens.append(_elem_nbar(ctx, n, b))
    return gens


def _fp_order(p, x):
    k, y = 1, x % p
    while y != 1:
        y = y * x % p
        k += 1
    return k


def klingen_mask(n2):
    """Index pairs that must vanish mod p for the stabilizer-type level subgroup.

    For the 4x4 group this is the pattern with (1,2),(3,2),(4,1),(4,2),(4,3)
    zero; for the 6x6 group rows 5,6 with columns 1..4 zero.
    """
    if n2 == 4:
        return [(0, 1), (2, 1), (3, 0), (3, 1), (3, 2)]
    if n2 == 6:
        return [(i, j) for i in (4, 5) for j in range(4)]
    raise BadParams("no mask for size %d" % n2)


def mask_holds(g, n2, pairs):
    return all(g[i * n2 + j] == 0 for (i, j) in pairs)


def parabolic_mask_generators(ctx, n):
    """Generators of the mask-defined parabolic image inside GU(n,n)(F_p).

    The subgroup contains the diagonal torus, so it is generated by the torus
    together with the root subgroups that satisfy the mask; we filter the full
    root-element list.
    """
    n2 = 2 * n
    pairs = klingen_mask(n2)
    out = []
    for g in gu_generators(ctx, n):
        if mask_holds(g, n2, pairs):
            out.append(g)
    return out


def symplectic_borel_generators(ctx, n):
    """Generators of I(2n, F_p): block [[A, B],[0, v (A^t)^-1]], A lower triangular."""
    gens = []
    u = next(x for x in range(2, ctx.p) if _fp_order(ctx.p, x) == ctx.p - 1)
    for i in range(n):
        A = list(ctx.eye(n))
        A[i * n + i] = u
        gens.append(_elem_m(ctx, n, tuple(A)))
    gens.append(_elem_mu(ctx, n, u))
    for i in range(n):
        for j in range(i):
            A = list(ctx.eye(n))
            A[i * n + j] = 1
            gens.append(_elem_m(ctx, n, tuple(A)))
    for i in range(n):
        b = [0] * (n * n)
        b[i * n + i] = 1
        gens.append(_elem_n(ctx, n, tuple(b)))
    for i in range(n):
        for j in range(i + 1, n):
            b = [0] * (n * n)
            b[i * n + j] = 1
            b[j * n + i] = 1
            gens.append(_elem_n(ctx, n, tuple(b)))
    return gens


def in_symplectic_borel(ctx, g, n2):
    """Structural test for membership in I(2n, F_p)."""
    n = n2 // 2
    if any(not ctx.in_fp(x) for x in g):
        return False
    if ctx.similitude(g, n2) is None:
        return False
    for i in range(n, n2):
        for j in range(n):
            if g[i * n2 + j]:
                return False
    for i in range(n):
        for j in range(i + 1, n):
            if g[i * n2 + j]:
                return False
    return True


# ---------------------------------------------------------------------------
# flag spaces
# ---------------------------------------------------------------------------

class FlagSpace:
    """Duplicate-free list of canonical isotropic subspaces.

    Points are RREF row-matrices (flat tuples) of shape dim x 2n whose row
    space is totally isotropic for the hermitian J-form.
    """

    def __init__(self, ctx, n2, dim, points):
        self.ctx = ctx
        self.n2 = n2
        self.dim = dim
        self.points = points
        self.index = {pt: i for i, pt in enumerate(points)}

    def __len__(self):
        return len(self.points)


def _isotropic(ctx, B, dim, n2):
    J = ctx.jmat(n2 // 2)
    JB = ctx.mat_mul(J, ctx.mat_conjt(B, dim, n2), n2, n2, dim)
    G = ctx.mat_mul(B, JB, dim, n2, dim)
    return all(x == 0 for x in G)


def klingen_line_count(p):
    return (p * p + 1) * (p ** 3 + 1)


def siegel_flag_count(p):
    return (p + 1) * (p ** 3 + 1) * (p ** 5 + 1)


@lru_cache(maxsize=8)
def enumerate_flags(p, d, space):
    """Enumerate a flag space: 'klingen_gu22' lines or 'siegel_gu33' planes."""
    ctx = fq2(p, d)
    if space == "klingen_gu22":
        pts = []
        n2 = 4
        for pivot in range(4):
            tail = 4 - pivot - 1
            for rest in range(ctx.n ** tail):
                v = [0] * pivot + [1]
                r = rest
                for _ in range(tail):
                    v.append(r % ctx.n)
                    r //= ctx.n
                vt = tuple(v)
                if _isotropic(ctx, vt, 1, n2):
                    pts.append(vt)
        if len(pts) != klingen_line_count(p):
            raise BadParams("isotropic line count mismatch")
        return FlagSpace(ctx, 4, 1, pts)
    if space == "siegel_gu33":
        n2 = 6
        start = tuple(ctx.eye(6)[i * 6 + j] for i in range(3) for j in range(6))
        gens = gu_generators(ctx, 3)
        seen = {start}
        frontier = [start]
        gensT = [ctx.mat_transpose(g, 6, 6) for g in gens]
        while frontier:
            nxt = []
            for B in frontier:
                for gT in gensT:
                    C = ctx.mat_mul(B, gT, 3, 6, 6)
                    C, rank = ctx.rref(C, 3, 6)
                    if C not in seen:
                        seen.add(C)
                        nxt.append(C)
            frontier = nxt
        pts = sorted(seen)
        if len(pts) != siegel_flag_count(p):
            raise BadParams("maximal isotropic count mismatch: %d" % len(pts))
        return FlagSpace(ctx, 6, 3, pts)
    raise BadParams("unknown flag space %r" % (space,))


def act_on_flag(ctx, flag, gT, dim, n2):
    C = ctx.mat_mul(flag, gT, dim, n2, n2)
    C, rank = ctx.rref(C, dim, n2)
    assert rank == dim
    return C


def orbit_count(space, subgroup_gens):
    """Partition the flag space into orbits of the generated subgroup.

    Deterministic: breadth-first from the lowest-index unvisited point.
    Returns a list of orbits, each a sorted list of point indices.
    """
    ctx = space.ctx
    gensT = [ctx.mat_transpose(g, space.n2, space.n2) for g in subgroup_gens]
    unseen = [True] * len(space)
    orbits = []
    for start in range(len(space)):
        if not unseen[start]:
            continue
        unseen[start] = False
        orbit = [start]
        frontier = [space.points[start]]
        while frontier:
            nxt = []
            for B in frontier:
                for gT in gensT:
                    C, _ = ctx.rref(ctx.mat_mul(B, gT, space.dim, space.n2, space.n2),
                                    space.dim, space.n2)
                    i = space.index[C]
                    if unseen[i]:
                        unseen[i] = False
                        orbit.append(i)
                        nxt.append(C)
            frontier = nxt
        orbits.append(sorted(orbit))
    return orbits


def flag_of(ctx, g, dim, n2):
    """Canonical flag point of the coset: the span of the first ``dim``
    columns of g^-1, as an RREF row matrix."""
    gi = ctx.mat_inv(g, n2)
    rows = tuple(gi[i * n2 + j] for j in range(dim) for i in range(n2))
    B, rank = ctx.rref(rows, dim, n2)
    assert rank == dim
    return B


class Orbit:
    """Orbit of one flag point with BFS witness data."""

    def __init__(self, ctx, start, gens, dim, n2):
        self.ctx = ctx
        self.dim = dim
        self.n2 = n2
        self.gens = gens
        gensT = [ctx.mat_transpose(g, n2, n2) for g in gens]
        parent = {start: None}
        frontier = [start]
        while frontier:
            nxt = []
            for B in frontier:
                for gi, gT in enumerate(gensT):
                    C, _ = ctx.rref(ctx.mat_mul(B, gT, dim, n2, n2), dim, n2)
                    if C not in parent:
                        parent[C] = (B, gi)
                        nxt.append(C)
            frontier = nxt
        self.parent = parent

    def __contains__(self, flag):
        return flag in self.parent

    def __len__(self):
        return len(self.parent)

    def witness(self, flag):
        """Group element u with flag == u . start (as subspace action)."""
        ctx = self.ctx
        u = ctx.eye(self.n2)
        node = flag
        while self.parent[node] is not None:
            prev, gi = self.parent[node]
            u = ctx.mat_mul(u, self.gens[gi], self.n2, self.n2, self.n2)
            node = prev
        return u


# ---------------------------------------------------------------------------
# character sums
# ---------------------------------------------------------------------------

def default_disc(p):
    for d in (1, 2, 3, 5, 6, 7, 10, 11):
        if legendre(-d, p) == -1:
            return d
    raise BadParams("no small non-residue discriminant for p = %d" % p)


class UnitClassGroup:
    """The cyclic group Z_{L,p}^x / Gamma^0_{L,p} of order p+1 for inert p.

    Classes are represented by their canonical representatives: the class of
    1 (key None) and the classes of b + omega for 0 <= b < p (key b).  Works
    without any F_{p^2} tables, so large p stay cheap.
    """

    def __init__(self, p, d=None):
        if d is None:
            d = default_disc(p)
        if legendre(-d, p) != -1:
            raise BadParams("p = %d is not inert for d = %d" % (p, d))
        self.p = p
        self.d = d % p
        self.keys = [None] + list(range(p))
        gen = next(k for k in self.keys if self.order(k) == p + 1)
        self.gen = gen
        self.log = {}
        k = None
        for j in range(p + 1):
            self.log[k] = j
            k = self.mul(k, gen)

    def classify(self, a, b):
        """Class key of the unit a + b*omega (coordinates mod p)."""
        a %= self.p
        b %= self.p
        if b == 0:
            if a == 0:
                raise BadParams("not a unit")
            return None
        return a * pow(b, -1, self.p) % self.p

    def mul(self, k1, k2):
        if k1 is None:
            return k2
        if k2 is None:
            return k1
        # (b1 + w)(b2 + w) = b1 b2 - d + (b1 + b2) w
        a = (k1 * k2 - self.d) % self.p
        b = (k1 + k2) % self.p
        if b == 0:
            return None
        return self.classify(a, b)

    def order(self, k):
        n, cur = 1, k
        while cur is not None:
            cur = self.mul(cur, k)
            n += 1
            if n > self.p + 2:
                raise AssertionError("class order overflow")
        # cur hit the identity class None
        return n if k is not None else 1

    def char_value(self, a, b, exponent=1):
        """CycInt value zeta_{p+1}^(exponent * log class(a + b omega))."""
        return CycInt.root(self.p + 1, exponent * self.log[self.classify(a, b)])


@lru_cache(maxsize=16)
def unit_class_group(p, d=None):
    return UnitClassGroup(p, d)


def unit_class_representatives(p, d=None):
    """The p+1 classes of Z_{L,p}^x / Gamma^0_{L,p} as residue elements:
    the class of 1 and of b + omega for 0 <= b < p (needs F_{p^2} tables)."""
    if d is None:
        d = default_disc(p)
    ctx = fq2(p, d)
    return ctx, [1] + [ctx.encode(b, 1) for b in range(p)]


def character_value_residue(ctx, x, char_exponent):
    """Lambda_p-value of a residue unit: zeta_{p+1}^(t * classlog x)."""
    if x == 0:
        raise BadParams("not a unit")
    j = ctx.CLASS[x]
    return CycInt.root(ctx.p + 1, char_exponent * j)


def character_sum(p, char_exponent, include_identity, d=None):
    """Exact sum of Lambda_p^(char_exponent) over the p+1 unit classes,
    optionally dropping the class of 1."""
    grp = unit_class_group(p, d)
    total = CycInt.const(p + 1, 0)
    for k in grp.keys:
        if not include_identity and k is None:
            continue
        total = total + CycInt.root(p + 1, char_exponent * grp.log[k])
    return total


# ---------------------------------------------------------------------------
# the section well-definedness condition at the residue level
# ---------------------------------------------------------------------------

def residue_support_check(p, d, center):
    """Exhaustively verify: every block-upper-triangular element of the form
    c u c^-1 with u in I(6, F_p) has Levi determinant in the trivial character
    class.  ``center`` is 'Q' or 'Omega'.  True iff no counterexample."""
    from .groupkit import Qmat, omega_mat, mat_residue

    ctx = fq2(p, d)
    cmat = Qmat() if center == "Q" else omega_mat(d)
    c = mat_residue(cmat, ctx)
    cinv = ctx.mat_inv(c, 6)
    bot = tuple(c[i * 6 + j] for i in range(3, 6) for j in range(6))    # rows 4-6
    top = tuple(c[i * 6 + j] for i in range(0, 3) for j in range(6))    # rows 1-3
    Lleft = tuple(cinv[i * 6 + j] for i in range(6) for j in range(3))  # cols 1-3
    Ltop = tuple(Lleft[i * 3 + j] for i in range(3) for j in range(3))
    Lbot = tuple(Lleft[(3 + i) * 3 + j] for i in range(3) for j in range(3))

    MUL, ADD = ctx.MUL, ctx.ADD
    p_ = ctx.p

    def halves(Z):
        Z1 = tuple(Z[i * 6 + j] for i in range(3) for j in range(3))
        Z2 = tuple(Z[i * 6 + j] for i in range(3) for j in range(3, 6))
        return Z1, Z2

    lowers = []
    for l21 in range(p_):
        for l31 in range(p_):
            for l32 in range(p_):
                lowers.append((l21, l31, l32))
    units = list(range(1, p_))
    sym_idx = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]
    svals = []
    for code in range(p_ ** 6):
        r = code
        vals = []
        for _ in range(6):
            vals.append(r % p_)
            r //= p_
        S = [0] * 9
        for (i, j), v in zip(sym_idx, vals):
            S[i * 3 + j] = v
            S[j * 3 + i] = v
        svals.append(tuple(S))

    zero9 = (0,) * 9
    for t1 in units:
        for t2 in units:
            for t3 in units:
                for (l21, l31, l32) in lowers:
                    for lam in units:
                        A = (t1, 0, 0, l21, t2, 0, l31, l32, t3)
                        m = _elem_m(ctx, 3, A)
                        m = tuple(MUL[lam][x] if i // 6 >= 3 and i % 6 >= 3 else x
                                  for i, x in enumerate(m))
                        Zb = ctx.mat_mul(bot, m, 3, 6, 6)
                        Z1, Z2 = halves(Zb)
                        Cb = ctx.mat_add(ctx.mat_mul(Z1, Ltop, 3, 3, 3),
                                         ctx.mat_mul(Z2, Lbot, 3, 3, 3))
                        Zt = ctx.mat_mul(top, m, 3, 6, 6)
                        W1, W2 = halves(Zt)
                        Ct = ctx.mat_add(ctx.mat_mul(W1, Ltop, 3, 3, 3),
                                         ctx.mat_mul(W2, Lbot, 3, 3, 3))
                        for S in svals:
                            X = ctx.mat_add(
                                ctx.mat_mul(ctx.mat_mul(Z1, S, 3, 3, 3),
                                            Lbot, 3, 3, 3), Cb)
                            if X != zero9:
                                continue
                            Ablk = ctx.mat_add(
                                ctx.mat_mul(ctx.mat_mul(W1, S, 3, 3, 3),
                                            Lbot, 3, 3, 3), Ct)
                            det = ctx.mat_det(Ablk, 3)
                            if det == 0 or ctx.CLASS[det] != 0:
                                return False
    return True
