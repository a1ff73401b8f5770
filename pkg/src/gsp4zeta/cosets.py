"""Coset enumeration by BFS with certified dedup.

Left cosets gL are bucketed through provably L-invariant hash data (local
Hermite forms, flag lines mod l^n, multiplier classes); states that collide
are compared exactly through a member() test, so hashing affects speed only.
A wrong bucket key can only split a coset in two, never merge distinct ones,
and the invariance of every key component is argued in the code; on top of
that, enumerations re-verify disjointness and closure independently.
"""

from fractions import Fraction
import random

from .exactnum import val, unit_part, residue, INF
from .groups import (GroupElement, LevelDescriptor, mat, mat_mul, mat_inv, identity,
                     det2, inv2, unipotent4, lower_unipotent4, diag_elem, embed_h,
                     gelem, IDENTITY, transpose, J4)


# ---------------------------------------------------------------------------
# generator sets


def _unit_gens(ell, m):
    """Topological generators of the units congruent to 1 mod ell^m."""
    if m <= 0:
        if ell == 2:
            return [-1, 3]
        for g in range(2, ell * ell):
            if g % ell == 0:
                continue
            seen, x = set(), 1
            for _ in range(ell * (ell - 1)):
                x = x * g % (ell * ell)
                seen.add(x)
            if len(seen) == ell * (ell - 1):
                return [g]
        raise RuntimeError("no primitive root found")
    if ell == 2 and m == 1:
        return [-1, 3]
    return [1 + ell ** m]


def level_generators(level):
    """Topological generators of a G-level subgroup (full, kmn, bmn)."""
    ell = level.ell
    gens = []
    eye2, eye4 = identity(2), identity(4)
    if level.kind == "full":
        m = n = 0
    elif level.kind in ("kmn", "bmn"):
        m, n = level.params
    else:
        raise ValueError(f"no generator table for {level.kind}")
    low = ell ** n
    # lower-root scaling: kmn constrains column 1 and row 4 only, so the
    # middle (3,2)-root (slot 3) stays unscaled there; bmn scales all four
    for slot in range(4):
        par = [0, 0, 0, 0]
        par[slot] = 1
        gens.append(GroupElement(unipotent4(*par), eye2, check=False))
        par[slot] = 1 if (level.kind == "kmn" and slot == 3) else low
        gens.append(GroupElement(lower_unipotent4(*par), eye2, check=False))
    if level.kind in ("full", "kmn"):
        flip = mat([[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]])
        gens.append(GroupElement(flip, eye2, check=False))
    gens.append(GroupElement(eye4, mat([[1, 1], [0, 1]]), check=False))
    gens.append(GroupElement(eye4, mat([[1, 0], [low if level.kind == "bmn" else 1, 1]]), check=False))
    units = _unit_gens(ell, 0)
    mu_units = _unit_gens(ell, m)
    if level.kind == "bmn":
        for u in units:
            gens.append(diag_elem(1, u, Fraction(1, u), 1, 1, 1))
            gens.append(diag_elem(1, 1, 1, 1, u, Fraction(1, u)))
        for w in mu_units:
            gens.append(diag_elem(w, 1, w, 1, w, 1))
        for u in _unit_gens(ell, n):
            gens.append(diag_elem(u, 1, 1, Fraction(1, u), 1, 1))
    else:
        # the middle-SL2 and GL2-side torus directions are generated by the
        # unscaled root pairs already present, so only the long-root torus
        # and the multiplier direction are listed
        for u in units:
            gens.append(diag_elem(u, 1, 1, Fraction(1, u), 1, 1))
        for w in mu_units:
            gens.append(diag_elem(1, 1, w, w, 1, w))
    for g in gens:
        assert level.member(g), f"generator escaped the level: {g}"
    return gens


def h_generators(ell):
    """Topological generators of H(Z_l), embedded in G."""
    gens = [
        embed_h([[1, 1], [0, 1]], identity(2)),
        embed_h([[1, 0], [1, 1]], identity(2)),
        embed_h(identity(2), [[1, 1], [0, 1]]),
        embed_h(identity(2), [[1, 0], [1, 1]]),
    ]
    for u in _unit_gens(ell, 0):
        gens.append(embed_h([[u, 0], [0, 1]], [[u, 0], [0, 1]]))
        gens.append(embed_h([[u, 0], [0, 1]], [[1, 0], [0, u]]))
    return gens


def gl2_generators(ell):
    gens = [mat([[1, 1], [0, 1]]), mat([[1, 0], [1, 1]])]
    for u in _unit_gens(ell, 0):
        gens.append(mat([[u, 0], [0, 1]]))
    return gens


def random_level_element(level, rng):
    """An element sampled through the Iwahori-style factorization with random
    parameters, used to cross-check BFS orbit closure independently."""
    ell = level.ell
    m, n = (0, 0) if level.kind == "full" else level.params
    span = ell ** 4

    def runit():
        u = rng.randrange(1, span)
        while u % ell == 0:
            u = rng.randrange(1, span)
        return u

    mu = 1 + ell ** m * rng.randrange(span)
    while mu % ell == 0:
        mu += ell ** m
    if level.kind == "bmn":
        t1 = mu * (1 + ell ** n * rng.randrange(span))
    else:
        t1 = runit()
    t2 = runit()
    d = runit()
    torus = diag_elem(t1, t2, Fraction(mu, t2), Fraction(mu, t1), d, Fraction(mu, d))
    upper4 = unipotent4(*[rng.randrange(span) for _ in range(4)])
    lowers = [ell ** n * rng.randrange(span) for _ in range(4)]
    if level.kind == "kmn":
        lowers[3] = rng.randrange(span)
    lower4 = lower_unipotent4(*lowers)
    mid = mat_mul(torus.g4, upper4)
    if level.kind in ("full", "kmn") and rng.random() < 0.5:
        flip = mat([[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]])
        mid = mat_mul(flip, mid)
    if level.kind == "full" and rng.random() < 0.5:
        s1 = mat([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
        mid = mat_mul(s1, mid)
    lowpar = ell ** n if level.kind == "bmn" else 1
    g4 = mat_mul(lower4, mid)
    g2 = mat_mul(mat([[1, 0], [lowpar * rng.randrange(span), 1]]),
                 mat_mul(torus.g2, mat([[1, rng.randrange(span)], [0, 1]])))
    cand = GroupElement(g4, g2, check=False)
    assert level.member(cand), "sampled element escaped the level"
    return cand


# ---------------------------------------------------------------------------
# invariant hash data for left cosets g*L


def _canonical_residue(x, piv_v, ell):
    """Canonical representative of x mod l^piv_v * Z_(l), for any x in Q
    with denominator prime to l away from l."""
    if x == 0:
        return Fraction(0)
    w = val(x, ell) - piv_v
    if w >= 0:
        return Fraction(0)
    k = -w
    scaled = x * Fraction(ell) ** (k - piv_v)   # valuation 0 denominator-free of l
    r0 = residue(scaled, ell, k)
    return Fraction(r0) * Fraction(ell) ** (piv_v - k)


def hnf_local(a, ell):
    """Column Hermite form over Z_(l): the unique basis of the column lattice
    that is lower triangular with pivots l^e and canonically reduced entries
    below the pivots.  Canonical, hence a complete invariant of a*GL_n(Z_l)."""
    n = len(a)
    cols = [list(col) for col in zip(*a)]
    used = []
    for row in range(n):
        best, best_v = None, INF
        for ci, col in enumerate(cols):
            if ci in used:
                continue
            v = val(col[row], ell)
            if v < best_v:
                best, best_v = ci, v
        if best is None or best_v is INF:
            raise ValueError("singular matrix in HNF")
        used.append(best)
        scale = unit_part(cols[best][row], ell)
        cols[best] = [x / scale for x in cols[best]]
        for ci, col in enumerate(cols):
            if ci in used:
                continue
            if col[row] != 0:
                f = col[row] / cols[best][row]
                cols[ci] = [x - f * y for x, y in zip(col, cols[best])]
    ordered = [cols[ci] for ci in used]
    for i in range(n):
        piv_v = val(ordered[i][i], ell)
        for j in range(i):
            x = ordered[j][i]
            if x != 0:
                r = _canonical_residue(x, piv_v, ell)
                q = (x - r) / ordered[i][i]
                ordered[j] = [u - q * w for u, w in zip(ordered[j], ordered[i])]
    return tuple(tuple(col[i] for col in ordered) for i in range(n))


def _vec_invariant(vec, ell, n):
    """Residues mod l^n of an integral vector up to unit scaling."""
    if n <= 0:
        return ()
    vals = [val(x, ell) for x in vec]
    vmin = min(vals)
    if vmin is INF or vmin >= n:
        return ("zero",)
    idx = vals.index(vmin)
    u = unit_part(vec[idx], ell)
    return tuple(residue(x / u, ell, n) for x in vec)


def _wedge2_cols(a, c1, c2):
    out = []
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            out.append(a[i][c1] * a[j][c2] - a[i][c2] * a[j][c1])
    return out


def _wedge3_cols(a):
    """3x3 minors of the first three columns of a 4x4 matrix."""
    out = []
    for drop in range(4):
        keep = [r for r in range(4) if r != drop]
        m = [[a[r][c] for c in range(3)] for r in keep]
        d = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
             - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
             + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        out.append(d)
    return out


def adj_gsp4(g4):
    """-J g^t J = mu(g) * g^{-1}; same valuation profile as g itself."""
    m = mat_mul(J4, mat_mul(transpose(g4), J4))
    return tuple(tuple(-x for x in row) for row in m)


def _min_val(g, ell):
    vs = [val(x, ell) for row in g.g4 for x in row] + [val(x, ell) for row in g.g2 for x in row]
    return min(v for v in vs if v is not INF)


def coset_invariant(g, level):
    """Hashable data invariant under g -> g*k for k in the level subgroup.

    The Hermite pair is a complete invariant of the g*G(Z_l) coset; the finer
    components are invariant because right multiplication by k only rescales
    the first column (resp. the adjugate's last row, the leading minors) by a
    unit modulo l^n, and multiplies mu by a unit that is 1 mod l^m.
    """
    ell = level.ell
    h4 = hnf_local(g.g4, ell)
    h2 = hnf_local(g.g2, ell)
    base = (h4, h2)
    if level.kind == "full":
        return base
    if level.kind not in ("kmn", "bmn"):
        raise ValueError(level.kind)
    m, n = level.params
    M = max(0, -_min_val(g, ell))
    s = Fraction(ell) ** M
    gs4 = tuple(tuple(x * s for x in row) for row in g.g4)
    gs2 = tuple(tuple(x * s for x in row) for row in g.g2)
    col1 = [gs4[i][0] for i in range(4)]
    adj = adj_gsp4(gs4)
    row4 = list(adj[3])
    extra = (M, _vec_invariant(col1, ell, n), _vec_invariant(row4, ell, n),
             residue(unit_part(g.mu, ell), ell, m) if m > 0 else 0)
    if level.kind == "bmn":
        mn = min(m, n)
        if mn > 0 and all(val(x, ell) >= 0 for x in row4):
            row4_exact = tuple(residue(x, ell, mn) for x in row4)
        else:
            row4_exact = ("nonintegral",)
        extra = extra + (_vec_invariant(_wedge2_cols(gs4, 0, 1), ell, n),
                         _vec_invariant(_wedge3_cols(gs4), ell, n),
                         _vec_invariant([gs2[0][0], gs2[1][0]], ell, n),
                         row4_exact)
    return base + extra


# ---------------------------------------------------------------------------
# fixed-modulus integer arithmetic for the BFS hot path
#
# All BFS predicates (membership, coset equality, hash keys) are congruence
# conditions at bounded precision, so they are computed exactly from residues
# mod l^Pbig once Pbig exceeds the stated margins; Fraction arithmetic is only
# used to rebuild the exact representatives afterwards.


def _frac_mod(x, modulus, ell):
    x = Fraction(x)
    num = x.numerator % modulus
    den = x.denominator
    if den % ell == 0:
        raise ValueError("entry not l-integral under chosen scaling")
    return num * pow(den, -1, modulus) % modulus


class ModG:
    """Residue image of a GroupElement: flat int tuples mod l^Pbig."""

    __slots__ = ("a4", "a2")

    def __init__(self, a4, a2):
        self.a4 = a4
        self.a2 = a2


class CosetSpace:
    """Exact coset tests for one level at fixed residue precision.

    mu_val is the (constant) valuation of the multiplier across the orbit;
    scale_val is the fixed power of l used to clear denominators of states.
    """

    def __init__(self, level, mu_val, scale_val=0, extra_margin=6):
        self.level = level
        self.ell = level.ell
        self.mu_val = mu_val          # valuation of mu of the *scaled* states
        self.det_val = 2 * mu_val     # valuation of det of the 4x4 part
        if level.kind == "full":
            self.m, self.n = 0, 0
        elif level.kind in ("kmn", "bmn"):
            self.m, self.n = level.params
        else:
            raise ValueError(level.kind)
        self.P = 2 * self.det_val + self.n + self.m + extra_margin
        self.mod = self.ell ** self.P
        self.scale_val = scale_val

    # -- conversions
    def to_mod(self, g):
        s = Fraction(self.ell) ** self.scale_val
        a4 = tuple(_frac_mod(x * s, self.mod, self.ell) for row in g.g4 for x in row)
        a2 = tuple(_frac_mod(x * s, self.mod, self.ell) for row in g.g2 for x in row)
        return ModG(a4, a2)

    # -- modular matrix helpers
    def mul(self, x, y):
        mod = self.mod
        xa, ya = x.a4, y.a4
        a4 = []
        for i in range(4):
            base = 4 * i
            row = xa[base:base + 4]
            for j in range(4):
                a4.append((row[0] * ya[j] + row[1] * ya[4 + j]
                           + row[2] * ya[8 + j] + row[3] * ya[12 + j]) % mod)
        xb, yb = x.a2, y.a2
        a2 = ((xb[0] * yb[0] + xb[1] * yb[2]) % mod, (xb[0] * yb[1] + xb[1] * yb[3]) % mod,
              (xb[2] * yb[0] + xb[3] * yb[2]) % mod, (xb[2] * yb[1] + xb[3] * yb[3]) % mod)
        return ModG(tuple(a4), a2)

    def _val(self, x):
        if x == 0:
            return self.P
        v = 0
        while x % self.ell == 0:
            x //= self.ell
            v += 1
        return v

    def mu_of(self, s):
        a = s.a4
        return (a[0] * a[15] + a[4] * a[11] - a[8] * a[7] - a[12] * a[3]) % self.mod

    @staticmethod
    def adj4(a):
        # -J g^t J in flat indexing: (adj)[i][j] = sign * g[3-j][3-i]
        out = [0] * 16
        for i in range(4):
            for j in range(4):
                sign = 1 if (i < 2) == (j < 2) else -1
                out[4 * i + j] = sign * a[4 * (3 - j) + (3 - i)]
        return tuple(out)

    @staticmethod
    def adj2(b):
        return (b[3], -b[1], -b[2], b[0])

    def prep(self, x):
        """Precomputed data for fast membership tests against the state x."""
        mux = self.mu_of(x)
        le = self.ell ** self.mu_val
        uinv = pow(mux // le, -1, self.mod)
        return (self.adj4(x.a4), self.adj2(x.a2), uinv)

    def quotient_member(self, x, cand):
        return self.member_prepped(self.prep(x), cand)

    def member_prepped(self, pre, cand):
        """Exact test: x^{-1} * cand in level (states share mu valuation)."""
        mod, ell, e = self.mod, self.ell, self.mu_val
        le = ell ** e
        adj4, adj2, uinv = pre
        ca, cb = cand.a4, cand.a2
        k4 = []
        for i in range(4):
            r0, r1, r2, r3 = adj4[4 * i:4 * i + 4]
            for j in range(4):
                t = (r0 * ca[j] + r1 * ca[4 + j] + r2 * ca[8 + j] + r3 * ca[12 + j]) % mod
                if t % le:
                    return False
                k4.append(t)
        k2 = []
        for i in range(2):
            r0, r1 = adj2[2 * i:2 * i + 2]
            for j in range(2):
                t = (r0 * cb[j] + r1 * cb[2 + j]) % mod
                if t % le:
                    return False
                k2.append(t)
        muc = self.mu_of(cand)
        if self._val(muc) != e:
            return False
        if self.level.kind == "full":
            return True
        m, n = self.m, self.n
        if n > 0:
            ln = ell ** n
            pattern = (4, 8, 12, 13, 14) if self.level.kind == "kmn" else (4, 8, 12, 9, 13, 14)
            for i in pattern:
                if (k4[i] // le) * uinv % ln:
                    return False
            if self.level.kind == "bmn":
                if ((k4[15] // le) * uinv - 1) % ln or (k2[2] // le) * uinv % ln:
                    return False
        if m > 0:
            lm = ell ** m
            if ((muc // le) * uinv - 1) % lm:
                return False
        return True

    # -- canonical hash data
    def hnf_key(self, flat, size):
        """Canonical Hermite data (pivot valuations + reduced residues) of the
        column lattice, computed exactly from residues: every division in the
        elimination strips at most val(det) powers of l in total, and the key
        only needs residues mod the pivots, far below the working precision."""
        ell, P = self.ell, self.P
        mod = self.mod
        cols = [[flat[size * r + c] % mod for r in range(size)] for c in range(size)]
        used = []
        for row in range(size):
            best, best_v = None, P + 1
            for ci in range(size):
                if ci in used:
                    continue
                v = self._val(cols[ci][row])
                if v < best_v:
                    best, best_v = ci, v
            if best is None or best_v > P - 1:
                raise ValueError("singular state in hnf_key")
            used.append(best)
            piv = cols[best]
            u = pow(piv[row] // ell ** best_v, -1, mod)
            cols[best] = [t * u % mod for t in piv]
            lv = ell ** best_v
            for ci in range(size):
                if ci in used:
                    continue
                t = cols[ci][row]
                if t % mod:
                    f = t // lv
                    cols[ci] = [(a - f * b) % mod for a, b in zip(cols[ci], cols[best])]
        ordered = [cols[ci] for ci in used]
        vals = [self._val(ordered[i][i]) for i in range(size)]
        for i in range(size):
            lv = ell ** vals[i]
            for j in range(i):
                x = ordered[j][i]
                r = x % lv
                q = (x - r) // lv
                if q:
                    ordered[j] = [(a - q * b) % mod for a, b in zip(ordered[j], ordered[i])]
        key = []
        for i in range(size):
            lv = ell ** vals[i]
            key.append((vals[i], tuple(ordered[j][i] % lv for j in range(i))))
        return tuple(key)

    def _vec_key(self, vec, n):
        if n <= 0:
            return ()
        ell = self.ell
        ln = ell ** n
        vals = [self._val(x) for x in vec]
        vmin = min(vals)
        if vmin >= n:
            return ("zero",)
        u = pow(vec[vals.index(vmin)] // ell ** vmin, -1, ln)
        return tuple(x * u % ln for x in vec)

    def key(self, s):
        base = (self.hnf_key(s.a4, 4), self.hnf_key(s.a2, 2))
        if self.level.kind == "full":
            return base
        ell, m, n = self.ell, self.m, self.n
        a = s.a4
        col1 = [a[0], a[4], a[8], a[12]]
        adj = self.adj4(a)
        row4 = [x % self.mod for x in adj[12:16]]
        mu = self.mu_of(s)
        muu = (mu // ell ** self.mu_val) % ell ** m if m > 0 else 0
        extra = (self._vec_key(col1, n), self._vec_key(row4, n), muu)
        if self.level.kind == "bmn":
            w2 = []
            for i in range(4):
                for j in range(i + 1, 4):
                    w2.append((a[4 * i] * a[4 * j + 1] - a[4 * i + 1] * a[4 * j]) % self.mod)
            w3 = []
            for drop in range(4):
                keep = [r for r in range(4) if r != drop]
                mrows = [[a[4 * r + c] for c in range(3)] for r in keep]
                d = (mrows[0][0] * (mrows[1][1] * mrows[2][2] - mrows[1][2] * mrows[2][1])
                     - mrows[0][1] * (mrows[1][0] * mrows[2][2] - mrows[1][2] * mrows[2][0])
                     + mrows[0][2] * (mrows[1][0] * mrows[2][1] - mrows[1][1] * mrows[2][0]))
                w3.append(d % self.mod)
            mn = min(m, n)
            scale_back = self.scale_val
            # exact residues of the adjugate's last row at the intersection
            # precision (integral whenever the state is integral)
            row4_exact = tuple(x % ell ** mn for x in row4) if mn > 0 else ()
            extra = extra + (self._vec_key(w2, n), self._vec_key(w3, n),
                             self._vec_key([s.a2[0], s.a2[2]], n), row4_exact)
        return base + extra


# ---------------------------------------------------------------------------
# BFS orbit machinery


class CosetCertificate:
    """gamma = witness_left * target * witness_right with memberships verified."""

    __slots__ = ("witness_left", "target", "witness_right")

    def __init__(self, witness_left, target, witness_right):
        self.witness_left = witness_left
        self.target = target
        self.witness_right = witness_right

    def verify(self, gamma, left_level, right_level):
        if not left_level.member(self.witness_left):
            return False
        if not right_level.member(self.witness_right):
            return False
        return (self.witness_left * self.target * self.witness_right) == gamma


class OrbitOverflow(RuntimeError):
    pass


def left_coset_orbit(gens, start, right_level, bound=200000):
    """BFS of {k * start * right_level : k in <gens>} under left multiplication.

    Exact representatives are carried incrementally; all dedup runs on the
    fixed-modulus images.  Returns (reps, words); words[i] is
    (parent index, generator index)."""
    ell = right_level.ell
    space = CosetSpace(right_level, mu_val=val(start.mu, ell))
    gens_mod = [space.to_mod(k) for k in gens]
    start_mod = space.to_mod(start)
    reps = [start]
    mods = [start_mod]
    preps = [space.prep(start_mod)]
    words = [None]
    buckets = {space.key(start_mod): [0]}
    seen_raw = {(start_mod.a4, start_mod.a2)}
    frontier = [0]
    while frontier:
        new_frontier = []
        for idx in frontier:
            base = mods[idx]
            for gi, km in enumerate(gens_mod):
                cand = space.mul(km, base)
                raw = (cand.a4, cand.a2)
                if raw in seen_raw:
                    continue
                seen_raw.add(raw)
                key = space.key(cand)
                bucket = buckets.setdefault(key, [])
                if any(space.member_prepped(preps[j], cand) for j in bucket):
                    continue
                reps.append(gens[gi] * reps[idx])
                mods.append(cand)
                preps.append(space.prep(cand))
                words.append((idx, gi))
                j = len(reps) - 1
                bucket.append(j)
                new_frontier.append(j)
                if len(reps) > bound:
                    raise OrbitOverflow(f"orbit overflow beyond {bound}")
        frontier = new_frontier
    return reps, words


def enumerate_double_coset(left_level, u, right_level=None, bound=200000,
                           closure_samples=12, seed=7, with_certs=True):
    """Left-coset representatives of (left_level)*u*(right_level) with
    certificates; closure re-verified against sampled subgroup elements."""
    right_level = right_level or left_level
    gens = level_generators(left_level)
    reps, words = left_coset_orbit(gens, u, right_level, bound=bound)

    ell = right_level.ell
    space = CosetSpace(right_level, mu_val=val(u.mu, ell))
    mods = [space.to_mod(r) for r in reps]
    preps = [space.prep(m) for m in mods]
    keymap = {}
    for i, m in enumerate(mods):
        keymap.setdefault(space.key(m), []).append(i)
    rng = random.Random(seed)
    for _ in range(closure_samples):
        k = random_level_element(left_level, rng)
        probe = space.to_mod(k * reps[rng.randrange(len(reps))])
        hits = keymap.get(space.key(probe), [])
        if not any(space.member_prepped(preps[j], probe) for j in hits):
            if not any(space.member_prepped(p, probe) for p in preps):
                raise RuntimeError("BFS orbit not closed under sampled element")

    if not with_certs:
        return reps, None
    certs = []
    for i, r in enumerate(reps):
        w = IDENTITY
        chain = []
        j = i
        while words[j] is not None:
            parent, gi = words[j]
            chain.append(gi)
            j = parent
        for gi in chain:
            w = w * gens[gi]
        cert = CosetCertificate(w, u, (u.inv() * w.inv()) * r)
        assert cert.verify(r, left_level, right_level)
        certs.append(cert)
    return reps, certs


def coset_lists_equal(reps_a, reps_b, level):
    """Whether two rep lists present the same set of left cosets of `level`."""
    if len(reps_a) != len(reps_b):
        return False
    pool = list(reps_b)
    for a in reps_a:
        ai = a.inv()
        hit = next((i for i, b in enumerate(pool) if level.member(ai * b)), None)
        if hit is None:
            return False
        pool.pop(hit)
    return True


def verify_disjoint(reps, level):
    """Pairwise non-equivalence of the listed cosets (exact member tests)."""
    invs = [r.inv() for r in reps]
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if level.member(invs[i] * reps[j]):
                return False
    return True


# ---------------------------------------------------------------------------
# subgroup indices and volumes


def index_k1gl2(s, t, ell, bound=100000):
    """[GL2(Z_l) : K1(l^s, l^t)] by BFS on 2x2 cosets."""
    level = LevelDescriptor.k1gl2(s, t, ell)
    gens = gl2_generators(ell)
    start = identity(2)
    reps = [start]
    invs = [identity(2)]

    def weak(h):
        hi = inv2(h)
        return (_vec_invariant([hi[1][0], hi[1][1]], ell, t),
                _vec_invariant([h[0][0], h[1][0]], ell, min(s, t) if t else s))

    buckets = {weak(start): [0]}
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            for k in gens:
                cand = mat_mul(k, reps[idx])
                key = weak(cand)
                bucket = buckets.setdefault(key, [])
                if any(level.member_gl2(mat_mul(invs[j], cand)) for j in bucket):
                    continue
                reps.append(cand)
                invs.append(inv2(cand))
                j = len(reps) - 1
                bucket.append(j)
                nxt.append(j)
                if len(reps) > bound:
                    raise OrbitOverflow("k1gl2 index overflow")
        frontier = nxt
    return len(reps), reps


def vol_k1gl2(s, t, ell):
    n, _ = index_k1gl2(s, t, ell)
    return Fraction(1, n)


def k1h_coset_reps(s, t, ell):
    """Representatives of H(Z_l)/K1^H(l^s,l^t), lifted from the GL2 quotient:
    the first projection induces a bijection of the two coset spaces because
    (1, k) lies in K1^H for every k in SL2(Z_l)."""
    _, reps2 = index_k1gl2(s, t, ell)
    return [embed_h(h1, [[det2(h1), 0], [0, 1]]) for h1 in reps2]


def vol_k1h(s, t, ell):
    return vol_k1gl2(s, t, ell)


def index_conj_intersection(level, conj, ambient, bound=500000):
    """[ambient(Z_l) : conj * level * conj^{-1} intersect ambient(Z_l)].

    BFS over cosets x*V of the intersection V, identified exactly through
    x*V <-> (conj^{-1} x conj) * level; states are scaled by a fixed power
    of l clearing the conjugator denominators."""
    ell = level.ell
    if ambient == "H":
        gens = h_generators(ell)
    else:
        gens = level_generators(LevelDescriptor.full(ell))
    cinv = conj.inv()
    m1 = max(0, -_min_val(cinv, ell))
    m2 = max(0, -_min_val(conj, ell))
    space = CosetSpace(level, mu_val=2 * (m1 + m2))
    sc1 = Fraction(ell) ** m1
    sc2 = Fraction(ell) ** m2
    cinv_mod = space.to_mod(GroupElement(
        tuple(tuple(x * sc1 for x in row) for row in cinv.g4),
        tuple(tuple(x * sc1 for x in row) for row in cinv.g2), check=False))
    conj_mod = space.to_mod(GroupElement(
        tuple(tuple(x * sc2 for x in row) for row in conj.g4),
        tuple(tuple(x * sc2 for x in row) for row in conj.g2), check=False))
    gens_mod = [space.to_mod(k) for k in gens]

    start_mod = space.mul(space.mul(cinv_mod, space.to_mod(IDENTITY)), conj_mod)
    preps = [space.prep(start_mod)]
    buckets = {space.key(start_mod): [0]}
    frontier = [(0, space.to_mod(IDENTITY))]
    seen_raw = set()
    count = 1
    while frontier:
        nxt = []
        for idx, xmod in frontier:
            for km in gens_mod:
                cand = space.mul(km, xmod)
                raw = (cand.a4, cand.a2)
                if raw in seen_raw:
                    continue
                seen_raw.add(raw)
                pc = space.mul(space.mul(cinv_mod, cand), conj_mod)
                key = space.key(pc)
                bucket = buckets.setdefault(key, [])
                if any(space.member_prepped(preps[j], pc) for j in bucket):
                    continue
                preps.append(space.prep(pc))
                j = len(preps) - 1
                bucket.append(j)
                nxt.append((j, cand))
                count += 1
                if count > bound:
                    raise OrbitOverflow("intersection index overflow")
        frontier = nxt
    return count


def index_in_g(level, bound=500000):
    """[G(Z_l) : level] by BFS with a trivial conjugator."""
    return index_conj_intersection(level, IDENTITY, "G", bound=bound)


def vol_level(level):
    """Volume relative to Vol(G(Z_l)) = 1."""
    return Fraction(1, index_in_g(level))


def g_mod_level_reps(level, bound=100000):
    """Left-coset representatives of G(Z_l)/level."""
    ell = level.ell
    gens = level_generators(LevelDescriptor.full(ell))
    reps, _ = left_coset_orbit(gens, IDENTITY, level, bound=bound)
    return reps
