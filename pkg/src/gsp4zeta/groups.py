"""Exact matrix groups: GSp4, GL2, their fiber product G, and the subgroup H.

Matrices are tuples of tuples of Fraction.  A GroupElement is a pair
(4x4 symplectic-similitude part, 2x2 part) with multiplier(g4) = det(g2).
LevelDescriptor implements the congruence subgroups used throughout, with
exact membership tests; iwasawa() produces certified n*t*k factorizations.
"""

from fractions import Fraction

from .exactnum import val, unit_part, congruent, INF

F0 = Fraction(0)
F1 = Fraction(1)


# ---------------------------------------------------------------------------
# plain matrix helpers

def mat(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n):
    return mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    if all(x.denominator == 1 for row in a for x in row) and \
            all(x.denominator == 1 for row in b for x in row):
        ai = [[x.numerator for x in row] for row in a]
        bi = [[x.numerator for x in row] for row in b]
        return tuple(
            tuple(Fraction(sum(ai[i][k] * bi[k][j] for k in range(m))) for j in range(p))
            for i in range(n)
        )
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p))
        for i in range(n)
    )


def mat_scale(a, c):
    c = Fraction(c)
    return tuple(tuple(x * c for x in row) for row in a)


def transpose(a):
    return tuple(zip(*a))


def det2(a):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def inv2(a):
    d = det2(a)
    if d == 0:
        raise ZeroDivisionError
    return mat([[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]])


def mat_inv(a):
    """Exact inverse by Gauss-Jordan over Q."""
    n = len(a)
    aug = [list(row) + [F1 if i == j else F0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def det4(a):
    from itertools import permutations
    total = F0
    for perm in permutations(range(4)):
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        prod = F1
        for i, j in enumerate(perm):
            prod *= a[i][j]
        total += -prod if inv % 2 else prod
    return total


J4 = mat([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])


def multiplier(g4):
    """The similitude factor mu with g^t J g = mu J, or None if not GSp4."""
    m = mat_mul(transpose(g4), mat_mul(J4, g4))
    mu = m[0][3]
    target = mat_scale(J4, mu)
    return mu if m == target else None


class GroupElement:
    """Element of G = GSp4 x_{GL1} GL2 over Q, held exactly."""

    __slots__ = ("g4", "g2", "mu")

    def __init__(self, g4, g2, check=True):
        self.g4 = mat(g4)
        self.g2 = mat(g2)
        if check:
            mu = multiplier(self.g4)
            if mu is None:
                raise ValueError("4x4 part is not a symplectic similitude")
            if mu != det2(self.g2):
                raise ValueError("multiplier does not match the GL2 determinant")
            if mu == 0:
                raise ValueError("degenerate element")
            self.mu = mu
        else:
            self.mu = multiplier(self.g4)

    def __mul__(self, other):
        out = GroupElement.__new__(GroupElement)
        out.g4 = mat_mul(self.g4, other.g4)
        out.g2 = mat_mul(self.g2, other.g2)
        out.mu = self.mu * other.mu
        return out

    def inv(self):
        out = GroupElement.__new__(GroupElement)
        out.g4 = mat_inv(self.g4)
        out.g2 = inv2(self.g2)
        out.mu = 1 / self.mu
        return out

    def __eq__(self, other):
        return self.g4 == other.g4 and self.g2 == other.g2

    def __hash__(self):
        return hash((self.g4, self.g2))

    def is_integral(self, ell):
        return all(x.denominator % ell for row in self.g4 for x in row) and \
            all(x.denominator % ell for row in self.g2 for x in row)

    def __repr__(self):
        return f"GroupElement({self.g4}, {self.g2})"


def gelem(rows4, rows2):
    return GroupElement(mat(rows4), mat(rows2))


IDENTITY = gelem(identity(4), identity(2))


def diag_elem(t1, t2, t3, t4, d1, d2):
    return gelem([[t1, 0, 0, 0], [0, t2, 0, 0], [0, 0, t3, 0], [0, 0, 0, t4]],
                 [[d1, 0], [0, d2]])


def u_elem(i, ell):
    """The seven diagonal Hecke elements u_0 ... u_6."""
    table = {
        0: ((1, 1, 1, 1), (1, 1)),
        1: ((ell, ell, 1, 1), (ell, 1)),
        2: ((ell ** 2, ell, ell, 1), (ell, ell)),
        3: ((ell ** 2, ell, ell, 1), (ell ** 2, 1)),
        4: ((ell ** 2, ell ** 2, 1, 1), (ell, ell)),
        5: ((ell ** 3, ell ** 2, ell, 1), (ell ** 2, ell)),
        6: ((ell ** 4, ell ** 2, ell ** 2, 1), (ell ** 2, ell ** 2)),
    }
    (a, b, c, d), (e, f) = table[i]
    return diag_elem(a, b, c, d, e, f)


def unipotent4(a, b, c, d):
    """Generic upper unipotent of GSp4: free parameters on the four positive roots."""
    return mat([[1, a, b, c],
                [0, 1, d, b - a * d],
                [0, 0, 1, -a],
                [0, 0, 0, 1]])


def eta_elem(a, b, c, i, j, ell):
    """eta^{a,b,c}_{i,j}: unipotent with a,b scaled by ell^-i and GL2 part [[1, c*ell^-j],[0,1]]."""
    s = Fraction(ell) ** (-i)
    t = Fraction(ell) ** (-j)
    g4 = mat([[1, a * s, b * s, 0],
              [0, 1, 0, b * s],
              [0, 0, 1, -a * s],
              [0, 0, 0, 1]])
    g2 = mat([[1, c * t], [0, 1]])
    return GroupElement(g4, g2)


def theta_elem(a, b, c, i, j, ell):
    s = Fraction(ell) ** (-i)
    g4 = mat([[1, a * s, b * s, 0],
              [0, 1, 0, b * s],
              [0, 0, 1, -a * s],
              [0, 0, 0, 1]])
    g2 = mat([[ell, c * Fraction(ell) ** (1 - j)], [0, Fraction(1, ell)]])
    return GroupElement(g4, g2)


def iota_elem(a, b, c, i, j, ell):
    s = Fraction(ell) ** (-i)
    g4 = mat([[1, a * s, b * s, 0],
              [0, 1, 0, b * s],
              [0, 0, 1, -a * s],
              [0, 0, 0, 1]])
    g2 = mat([[Fraction(1, ell), c * Fraction(ell) ** (-1 - j)], [0, ell]])
    return GroupElement(g4, g2)


def embed_h(h1, h2):
    """The embedding of H = GL2 x_{GL1} GL2 into G."""
    h1, h2 = mat(h1), mat(h2)
    (a, b), (c, d) = h1
    (ap, bp), (cp, dp) = h2
    g4 = mat([[a, 0, 0, b],
              [0, ap, bp, 0],
              [0, cp, dp, 0],
              [c, 0, 0, d]])
    return GroupElement(g4, h2)


def is_h_element(g):
    """If g lies in the embedded H, return the pair (h1, h2); else None."""
    m = g.g4
    for (i, j) in [(0, 1), (0, 2), (1, 0), (2, 0), (3, 1), (3, 2), (1, 3), (2, 3)]:
        if m[i][j] != 0:
            return None
    h1 = mat([[m[0][0], m[0][3]], [m[3][0], m[3][3]]])
    h2 = mat([[m[1][1], m[1][2]], [m[2][1], m[2][2]]])
    if h2 != g.g2:
        return None
    return h1, h2


def s_m_elem(m, ell):
    """The H-element (diag(l^3m, 1), diag(l^2m, l^m)) used for wild levels."""
    return embed_h([[ell ** (3 * m), 0], [0, 1]],
                   [[ell ** (2 * m), 0], [0, ell ** m]])


# ---------------------------------------------------------------------------
# level subgroups

K_PATTERN_ZERO = [(1, 0), (2, 0), (3, 0), (3, 1), (3, 2)]
B_PATTERN_ZERO = [(1, 0), (2, 0), (3, 0), (2, 1), (3, 1), (3, 2)]


class LevelDescriptor:
    """Symbolic congruence level with an exact membership test.

    kinds: full (G(Z_l)), kmn, bmn, k1gl2 (a GL2(Z_l) level), k1h (an H(Z_l)
    level), pcs (principal congruence in G).
    """

    __slots__ = ("kind", "ell", "params")

    def __init__(self, kind, ell, params=()):
        self.kind = kind
        self.ell = ell
        self.params = tuple(params)

    def __repr__(self):
        inside = ",".join(str(p) for p in self.params)
        return f"{self.kind}({inside})@{self.ell}"

    def __eq__(self, other):
        return (self.kind, self.ell, self.params) == (other.kind, other.ell, other.params)

    def __hash__(self):
        return hash((self.kind, self.ell, self.params))

    # -- constructors
    @classmethod
    def full(cls, ell):
        return cls("full", ell)

    @classmethod
    def kmn(cls, m, n, ell):
        return cls("kmn", ell, (m, n))

    @classmethod
    def bmn(cls, m, n, ell):
        return cls("bmn", ell, (m, n))

    @classmethod
    def k1gl2(cls, s, t, ell):
        return cls("k1gl2", ell, (s, t))

    @classmethod
    def k1h(cls, s, t, ell):
        return cls("k1h", ell, (s, t))

    @classmethod
    def pcs(cls, T, ell):
        return cls("pcs", ell, (T,))

    # -- membership
    def member_gl2(self, h):
        """Membership for 2x2 input (k1gl2 only)."""
        ell = self.ell
        assert self.kind == "k1gl2"
        s, t = self.params
        if not all(val(x, ell) >= 0 for row in h for x in row):
            return False
        if val(det2(h), ell) != 0:
            return False
        return congruent(h[1][0], 0, ell, s) and congruent(h[1][1], 1, ell, t)

    def member(self, g):
        ell = self.ell
        if isinstance(g, GroupElement):
            g4, g2, mu = g.g4, g.g2, g.mu
        else:
            raise TypeError("member() expects a GroupElement")
        if self.kind == "k1h":
            pair = is_h_element(g)
            if pair is None:
                return False
            h1, h2 = pair
            s, t = self.params
            gl = LevelDescriptor.k1gl2(s, t, ell)
            if not gl.member_gl2(h1):
                return False
            return all(val(x, ell) >= 0 for row in h2 for x in row) and val(det2(h2), ell) == 0
        # integrality + unit multiplier in all remaining kinds
        if not g.is_integral(ell):
            return False
        if val(mu, ell) != 0:
            return False
        if self.kind == "full":
            return True
        if self.kind == "pcs":
            (T,) = self.params
            eye4, eye2 = identity(4), identity(2)
            return all(congruent(g4[i][j], eye4[i][j], ell, T) for i in range(4) for j in range(4)) \
                and all(congruent(g2[i][j], eye2[i][j], ell, T) for i in range(2) for j in range(2))
        m, n = self.params
        if not congruent(mu, 1, ell, m):
            return False
        if self.kind == "kmn":
            return all(congruent(g4[i][j], 0, ell, n) for i, j in K_PATTERN_ZERO)
        if self.kind == "bmn":
            if not all(congruent(g4[i][j], 0, ell, n) for i, j in B_PATTERN_ZERO):
                return False
            if not congruent(g4[3][3], 1, ell, n):
                return False
            return congruent(g2[1][0], 0, ell, n)
        raise ValueError(self.kind)

    def pcs_level(self):
        """An exponent T with PCS(l^T) contained in this level (G-levels only)."""
        if self.kind == "full":
            return 1
        if self.kind == "pcs":
            return self.params[0]
        m, n = self.params
        return max(m, n, 1)


# ---------------------------------------------------------------------------
# Iwasawa decomposition

def _gl2_triangularize(g, ell):
    """k in GL2(Z_l) with g*k upper triangular; returns k."""
    c, d = g[1][0], g[1][1]
    if c == 0:
        return identity(2)
    if d != 0 and val(c, ell) >= val(d, ell):
        return mat([[1, 0], [-c / d, 1]])
    w = mat([[0, 1], [1, 0]])
    g2 = mat_mul(g, w)
    c2, d2 = g2[1][0], g2[1][1]
    if c2 == 0:
        return w
    return mat_mul(w, mat([[1, 0], [-c2 / d2, 1]]))


def iwasawa_gl2(g, ell):
    """g = n * t * k with n upper unipotent, t = diag(l-powers), k in GL2(Z_l)."""
    k1 = _gl2_triangularize(g, ell)
    r = mat_mul(g, k1)
    d1, d2 = r[0][0], r[1][1]
    t = mat([[Fraction(ell) ** val(d1, ell), 0], [0, Fraction(ell) ** val(d2, ell)]])
    units = mat([[unit_part(d1, ell), 0], [0, unit_part(d2, ell)]])
    n = mat([[1, r[0][1] / d2], [0, 1]])
    k = mat_mul(units, mat_inv(k1))
    assert mat_mul(n, mat_mul(t, k)) == g
    return n, t, k


def lower_unipotent4(a, b, c, d):
    """Mirror image of unipotent4 through the long Weyl element."""
    P = mat([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    return mat_mul(P, mat_mul(unipotent4(a, b, c, d), P))


def _levi_gl2(a2):
    """GL2 block on rows/cols 2,3 inside GSp4 (similitude = det)."""
    (p, q), (r, s) = a2
    d = p * s - q * r
    return mat([[1, 0, 0, 0],
                [0, p, q, 0],
                [0, r, s, 0],
                [0, 0, 0, d]])


def _m2_gl2(a2):
    """GL2 acting on coordinate pairs (1,3) and (2,4) simultaneously."""
    (p, q), (r, s) = a2
    return mat([[p, 0, q, 0],
                [0, p, 0, q],
                [r, 0, s, 0],
                [0, r, 0, s]])


W_SWAP_12_34 = mat([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def iwasawa_gsp4(g, ell):
    """g = n * t * k with n upper unipotent symplectic, t diagonal l-powers,
    k in GSp4(Z_l) (unit multiplier).  Exact; raises on singular input."""
    if multiplier(g) is None or multiplier(g) == 0:
        raise ValueError("not an invertible GSp4 element")
    k_acc = identity(4)

    def apply(k):
        nonlocal r, k_acc
        r = mat_mul(r, k)
        k_acc = mat_mul(k_acc, k)

    r = g
    # clear (4,1) with the GL2 on coordinates (1,3)/(2,4)
    if r[3][0] != 0:
        apply(_m2_gl2(_gl2_triangularize(mat([[1, 0], [r[3][0], r[3][2]]]), ell)))
    # clear (4,2) with the Levi GL2 on coordinates (2,3)
    if r[3][1] != 0:
        apply(_levi_gl2(_gl2_triangularize(mat([[1, 0], [r[3][1], r[3][2]]]), ell)))
    # clear (4,3) against (4,4), swapping via the (12)(34) Weyl element if needed
    if r[3][2] != 0:
        if r[3][3] == 0 or val(r[3][2], ell) < val(r[3][3], ell):
            apply(W_SWAP_12_34)
        apply(lower_unipotent4(-r[3][2] / r[3][3], 0, 0, 0))
    assert r[3][0] == 0 and r[3][1] == 0 and r[3][2] == 0
    # the symplectic relations now force zeros at (2,1) and (3,1)
    assert r[1][0] == 0 and r[2][0] == 0, "symplectic structure violated"
    # clear (3,2) with the Levi GL2
    if r[2][1] != 0:
        apply(_levi_gl2(_gl2_triangularize(mat([[r[1][1], r[1][2]], [r[2][1], r[2][2]]]), ell)))
    assert all(r[i][j] == 0 for i in range(4) for j in range(4) if i > j)
    diag = [r[i][i] for i in range(4)]
    t = mat([[Fraction(ell) ** val(diag[i], ell) if i == j else F0 for j in range(4)] for i in range(4)])
    units = mat([[unit_part(diag[i], ell) if i == j else F0 for j in range(4)] for i in range(4)])
    n = mat_mul(r, mat_inv(mat_mul(t, units)))
    k = mat_mul(units, mat_inv(k_acc))
    # certify
    assert mat_mul(n, mat_mul(t, k)) == g
    assert all(val(x, ell) >= 0 for row in k for x in row)
    return n, t, k


def iwasawa(g, ell):
    """Iwasawa decomposition of a GroupElement, certified componentwise."""
    n4, t4, k4 = iwasawa_gsp4(g.g4, ell)
    n2, t2, k2 = iwasawa_gl2(g.g2, ell)
    n = GroupElement(n4, n2)
    t = GroupElement(t4, t2)
    k = GroupElement(k4, k2)
    assert (n * t * k) == g
    return n, t, k
