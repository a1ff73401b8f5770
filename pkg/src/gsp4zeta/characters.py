"""Weyl characters for GSp4 and GL2, branching laws, and explicit highest
weight vectors in the symmetric tensor model.

Characters are exact Laurent polynomials computed as alternant ratios over
the 8-element Weyl group; [division is checked exact rather than trusted].
"""

from fractions import Fraction
from functools import lru_cache

from .laurent import Poly

# ---------------------------------------------------------------------------
# Weyl group of GSp4 acting on weights x1*chi1 + x2*chi2 + k*mu.
# s1 swaps chi1,chi2; s2 sends chi2 -> mu - chi2.


def _s1(w):
    x1, x2, k = w
    return (x2, x1, k)


def _s2(w):
    x1, x2, k = w
    return (x1, -x2, k + x2)


def weyl_group():
    """All 8 (action, sign) pairs, each action a function on weight triples."""
    seen = {}
    frontier = [((lambda w: w), 1)]
    probe = [(3, 1, 0), (1, 5, 0), (0, 0, 1)]

    def fingerprint(f):
        return tuple(f(p) for p in probe)

    while frontier:
        f, sgn = frontier.pop()
        fp = fingerprint(f)
        if fp in seen:
            continue
        seen[fp] = (f, sgn)
        for gen in (_s1, _s2):
            frontier.append(((lambda w, f=f, gen=gen: gen(f(w))), -sgn))
    assert len(seen) == 8
    return list(seen.values())


WEYL = weyl_group()


def _alternant(weight, point):
    """sum_w sign(w) * point^(w(weight)); point maps (chi1, chi2, mu) exponents
    to a monomial Poly via the three generators in `point`."""
    t1, t2, mu = point
    total = Poly.const(0)
    for f, sgn in WEYL:
        x1, x2, k = f(weight)
        term = t1 ** x1 * t2 ** x2 * mu ** k
        total = total + (term if sgn > 0 else -term)
    return total


_RHO = (2, 1, 0)  # mu-part of rho drops out of the alternant ratio


def dim_gsp4(a, b):
    """Dimension of the representation with highest weight (a+b)chi1 + a*chi2."""
    return Fraction((a + 1) * (b + 1) * (a + b + 2) * (2 * a + b + 3), 6)


@lru_cache(maxsize=None)
def char_gsp4(a, b):
    """Character of V^{a,b} as a Poly in t1, t2, mu."""
    return char_gsp4_at(a, b, (Poly.var("t1"), Poly.var("t2"), Poly.var("mu")))


def char_gsp4_at(a, b, point):
    """Character of V^{a,b} at a torus point given as monomial Polys
    (t1, t2, mu); requires the point generic enough for exact division."""
    if a < 0 or b < 0:
        raise ValueError("dominance violated")
    lam = (a + b, a, 0)
    num = _alternant(tuple(x + r for x, r in zip(lam, _RHO)), point)
    den = _alternant(_RHO, point)
    return num.exact_div(den)


@lru_cache(maxsize=None)
def _char_gsp4_spin(a, b):
    """char_gsp4 evaluated at the spin point diag(r, r*c1, r*c2, r*c1*c2)."""
    point = (Poly.var("r"),
             Poly.var("r") * Poly.var("c1"),
             Poly.var("r", 2) * Poly.var("c1") * Poly.var("c2"))
    return char_gsp4_at(a, b, point)


def char_gl2(k, j, d1=None, d2=None):
    """Character of Sym^k tensor det^j: h_k(d1,d2) * (d1 d2)^j."""
    if k < 0:
        raise ValueError("dominance violated")
    d1 = d1 if d1 is not None else Poly.var("d1")
    d2 = d2 if d2 is not None else Poly.var("d2")
    if not isinstance(d1, Poly):
        d1 = Poly.const(d1)
    if not isinstance(d2, Poly):
        d2 = Poly.const(d2)
    total = Poly.const(0)
    for t in range(k + 1):
        total = total + d1 ** (k - t) * d2 ** t
    return total * (d1 * d2) ** j


def char_gl2_alternant(k, j):
    """Same character via the 2x2 alternant ratio (independent route)."""
    d1, d2 = Poly.var("d1"), Poly.var("d2")
    num = d1 ** (k + 1 + j) * d2 ** j - d1 ** j * d2 ** (k + 1 + j)
    return num.exact_div(d1 - d2)


# ---------------------------------------------------------------------------
# branching laws


def branch_iota2(a, b):
    """Restriction of V^{a,b} along GL2 x_{GL1} GL2 -> GSp4: list of
    (k_outer, k_inner, mu_twist) with multiplicity one each."""
    return [(a + b - q - r, a - q + r, q) for q in range(a + 1) for r in range(b + 1)]


def branch_full(a, b, c):
    """Restriction of V^{a,b} x Sym^c to H: list of (k1, k2, mu_twist)."""
    out = []
    for q in range(a + 1):
        for r in range(b + 1):
            for j in range(min(a - q + r, c) + 1):
                out.append((a + b - q - r, a - q + r + c - 2 * j, q + j))
    return out


def trivial_components(a, b, c):
    """The H-subrepresentations (Sym^{b+c-2r} tensor mu^{a+r}) boxtimes 1:
    list of (b+c-2r, a+r); empty iff c > a+b."""
    if c > a + b:
        return []
    out = []
    for r in range(max(0, c - a), min(b, c) + 1):
        out.append((b + c - 2 * r, a + r))
    return out


def _sym_char(k, x, mu):
    """Character of Sym^k of GL2 at the torus (x, mu/x)."""
    total = Poly.const(0)
    for t in range(k + 1):
        total = total + x ** (k - t) * (mu * x ** -1) ** t
    return total


def verify_branch_iota2(a, b):
    """Character identity for branch_iota2, symbolically in (x1, y1, mu)."""
    x1, y1, mu = Poly.var("x1"), Poly.var("y1"), Poly.var("mu")
    lhs = char_gsp4_at(a, b, (x1, y1, mu))
    rhs = Poly.const(0)
    for k_out, k_in, q in branch_iota2(a, b):
        rhs = rhs + _sym_char(k_out, x1, mu) * _sym_char(k_in, y1, mu) * mu ** q
    return lhs == rhs


def verify_branch_full(a, b, c):
    """Character identity for branch_full, symbolically in (x1, y1, mu)."""
    x1, y1, mu = Poly.var("x1"), Poly.var("y1"), Poly.var("mu")
    lhs = char_gsp4_at(a, b, (x1, y1, mu)) * _sym_char(c, y1, mu)
    rhs = Poly.const(0)
    for k1, k2, e in branch_full(a, b, c):
        rhs = rhs + _sym_char(k1, x1, mu) * _sym_char(k2, y1, mu) * mu ** e
    return lhs == rhs


# ---------------------------------------------------------------------------
# explicit tensor model for the vectors v^{a,b,c,r}
#
# Ambient space: Sym^a(wedge^2 Q^4) (x) Sym^b(Q^4) (x) Sym^c(span(e2,e3)).
# Basis keys: (tuple of sorted wedge pairs, tuple of e-indices, tuple of w-indices).


def _pair_sign(i, j):
    if i == j:
        return None, 0
    return ((i, j), 1) if i < j else ((j, i), -1)


class TensorVector:
    """Vector in the symmetric tensor model, held as {basis key: Fraction}."""

    __slots__ = ("a", "b", "c", "coords")

    def __init__(self, a, b, c, coords=None):
        self.a, self.b, self.c = a, b, c
        self.coords = {}
        if coords:
            for k, v in coords.items():
                v = Fraction(v)
                if v:
                    self.coords[k] = v

    def __add__(self, other):
        out = dict(self.coords)
        for k, v in other.coords.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                del out[k]
        return TensorVector(self.a, self.b, self.c, out)

    def scale(self, c):
        return TensorVector(self.a, self.b, self.c,
                            {k: v * c for k, v in self.coords.items()})

    def is_zero(self):
        return not self.coords

    def apply_gl4(self, X):
        """Derivation action of a 4x4 Lie algebra element on all three factors
        (the GL2 factor is the subspace spanned by e2, e3)."""
        out = TensorVector(self.a, self.b, self.c)
        for key, coeff in self.coords.items():
            wedges, evec, wvec = key
            # wedge factor
            for pos, (i, j) in enumerate(wedges):
                for target in range(4):
                    for src, other, sign0 in ((i, j, 1), (j, i, -1)):
                        cij = X[target][src]
                        if not cij:
                            continue
                        pair, sgn = _pair_sign(target, other)
                        if pair is None:
                            continue
                        new_wedges = tuple(sorted(wedges[:pos] + (pair,) + wedges[pos + 1:]))
                        k2 = (new_wedges, evec, wvec)
                        out = out + TensorVector(self.a, self.b, self.c,
                                                 {k2: coeff * cij * sign0 * sgn})
            # standard factor
            for pos, idx in enumerate(evec):
                for target in range(4):
                    cij = X[target][idx]
                    if not cij:
                        continue
                    new_e = tuple(sorted(evec[:pos] + (target,) + evec[pos + 1:]))
                    out = out + TensorVector(self.a, self.b, self.c,
                                             {(wedges, new_e, wvec): coeff * cij})
            # GL2 factor, indices restricted to {1, 2} (coordinates e2, e3)
            for pos, idx in enumerate(wvec):
                for target in (1, 2):
                    cij = X[target][idx]
                    if not cij:
                        continue
                    new_w = tuple(sorted(wvec[:pos] + (target,) + wvec[pos + 1:]))
                    out = out + TensorVector(self.a, self.b, self.c,
                                             {(wedges, evec, new_w): coeff * cij})
        return out

    def weight(self):
        """Joint torus weight as (chi1-coeff, chi2-coeff, t1-coeff, mu-coeff);
        None if not homogeneous.  Basis weights: e1:chi1, e2:chi2, e3:mu-chi2,
        e4:mu-chi1 on 4-space factors; w-slots e2:t1, e3:mu-t1."""
        table4 = {0: (1, 0, 0, 0), 1: (0, 1, 0, 0), 2: (0, -1, 0, 1), 3: (-1, 0, 0, 1)}
        tablew = {1: (0, 0, 1, 0), 2: (0, 0, -1, 1)}
        wt = None
        for (wedges, evec, wvec) in self.coords:
            cur = [0, 0, 0, 0]
            for (i, j) in wedges:
                for idx in (i, j):
                    cur = [x + y for x, y in zip(cur, table4[idx])]
            for idx in evec:
                cur = [x + y for x, y in zip(cur, table4[idx])]
            for idx in wvec:
                cur = [x + y for x, y in zip(cur, tablew[idx])]
            cur = tuple(cur)
            if wt is None:
                wt = cur
            elif wt != cur:
                return None
        return wt


def _basis_product(a, b, c, wedge_list, e_list, w_list):
    wedges = []
    sign = 1
    for (i, j) in wedge_list:
        pair, s = _pair_sign(i, j)
        if pair is None:
            return TensorVector(a, b, c)
        wedges.append(pair)
        sign *= s
    key = (tuple(sorted(wedges)), tuple(sorted(e_list)), tuple(sorted(w_list)))
    return TensorVector(a, b, c, {key: sign})


def _multiply_out(factors, a, b, c):
    """Expand a product of (wedge-combination, e-vector, w-vector) linear factors."""
    from itertools import product
    wedge_factors, e_factors, w_factors = factors
    total = TensorVector(a, b, c)
    for wedge_choice in product(*[f.items() for f in wedge_factors]):
        coeff = Fraction(1)
        wlist = []
        for (pair, cf) in wedge_choice:
            coeff *= cf
            wlist.append(pair)
        base = _basis_product(a, b, c, wlist, e_factors, w_factors)
        total = total + base.scale(coeff)
    return total


def highest_weight_vector(a, b, c, r):
    """The vector u^(c-r) v^(b-r) u'^(a-c+r) v'^r w'^c in the tensor model,
    together with its weight; raises when the (a,b,c,r) slot is empty."""
    if c > a + b or not (max(0, c - a) <= r <= min(b, c)):
        raise ValueError("empty branching slot")
    # u = e1^e2, u' = e1^e4 - e2^e3, v = e1, v' = e2, w' = e3
    u = {(0, 1): Fraction(1)}
    up = {(0, 3): Fraction(1), (1, 2): Fraction(-1)}
    wedge_factors = [u] * (c - r) + [up] * (a - c + r)
    e_factors = [0] * (b - r) + [1] * r
    w_factors = [2] * c
    vec = _multiply_out((wedge_factors, e_factors, w_factors), a, b, c)
    return vec


def h_raising_operators():
    """Lie algebra raising operators of H inside gl4: E_{14} and E_{23}."""
    X1 = [[Fraction(0)] * 4 for _ in range(4)]
    X1[0][3] = Fraction(1)
    X2 = [[Fraction(0)] * 4 for _ in range(4)]
    X2[1][2] = Fraction(1)
    return tuple(tuple(row) for row in X1), tuple(tuple(row) for row in X2)


def h_lowering_operators():
    """Lowering operators of H inside gl4: E_{41} and E_{32}."""
    Y1 = [[Fraction(0)] * 4 for _ in range(4)]
    Y1[3][0] = Fraction(1)
    Y2 = [[Fraction(0)] * 4 for _ in range(4)]
    Y2[2][1] = Fraction(1)
    return tuple(tuple(row) for row in Y1), tuple(tuple(row) for row in Y2)


_H_WT4 = {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, -1, 1), 3: (-1, 0, 1)}
_H_ROOTS = ((2, 0, -1), (0, 2, -1))  # first / second factor positive roots


def _h_weight_of_key(key):
    wedges, evec, wvec = key
    wt = [0, 0, 0]
    for (i, j) in wedges:
        for idx in (i, j):
            wt = [x + y for x, y in zip(wt, _H_WT4[idx])]
    for idx in evec:
        wt = [x + y for x, y in zip(wt, _H_WT4[idx])]
    for idx in wvec:
        wt = [x + y for x, y in zip(wt, _H_WT4[idx])]
    return tuple(wt)


def _model_basis(a, b, c, h_weight=None):
    """All basis keys of the ambient model, optionally filtered by H-weight."""
    from itertools import combinations_with_replacement as cwr
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    out = []
    for wedges in cwr(pairs, a):
        for evec in cwr(range(4), b):
            for wvec in cwr((1, 2), c):
                key = (tuple(wedges), tuple(evec), tuple(wvec))
                if h_weight is None or _h_weight_of_key(key) == h_weight:
                    out.append(key)
    return out


def _in_span(vec, vectors):
    """Exact membership of a TensorVector in the span of others."""
    keys = sorted(set().union(*[set(v.coords) for v in vectors + [vec]])) if vectors or vec.coords else []
    rows = [[v.coords.get(k, Fraction(0)) for k in keys] for v in vectors]
    target = [vec.coords.get(k, Fraction(0)) for k in keys]
    # Gaussian elimination: reduce target against the row space
    pivots = []
    for row in rows:
        row = list(row)
        for (c_idx, p_row) in pivots:
            if row[c_idx]:
                f = row[c_idx]
                row = [x - f * y for x, y in zip(row, p_row)]
        lead = next((i for i, x in enumerate(row) if x), None)
        if lead is not None:
            row = [x / row[lead] for x in row]
            pivots.append((lead, row))
    for (c_idx, p_row) in pivots:
        if target[c_idx]:
            f = target[c_idx]
            target = [x - f * y for x, y in zip(target, p_row)]
    return not any(target)


def primitive_part_nonzero(vec):
    """Whether vec has a nonzero component outside the span of lowered vectors,
    i.e. whether its isotypic projection is a genuine H-highest weight vector."""
    wt_keys = {_h_weight_of_key(k) for k in vec.coords}
    assert len(wt_keys) == 1, "not H-homogeneous"
    wt = wt_keys.pop()
    Y1, Y2 = h_lowering_operators()
    lowered = []
    for alpha, Y in zip(_H_ROOTS, (Y1, Y2)):
        above = tuple(x + y for x, y in zip(wt, alpha))
        for key in _model_basis(vec.a, vec.b, vec.c, h_weight=above):
            w = TensorVector(vec.a, vec.b, vec.c, {key: 1}).apply_gl4(Y)
            if not w.is_zero():
                lowered.append(w)
    return not _in_span(vec, lowered)


def hwv_report(a, b, c, r):
    """Construct v^{a,b,c,r} and check the branching-map claims.

    Returns a dict: the computed weight, the expected closed form, whether the
    two raising operators literally annihilate, and whether the vector has a
    nonzero primitive part (its isotypic projection is a highest weight
    vector).  The second raising operator moves a w'-slot whenever c >= 1, so
    literal annihilation holds iff c = 0; the primitive-part check is the
    statement that survives.
    """
    vec = highest_weight_vector(a, b, c, r)
    assert not vec.is_zero()
    X1, X2 = h_raising_operators()
    return {
        "weight": vec.weight(),
        "expected_weight": (b + c - 2 * r, c, -c, a + r),
        "x1_annihilates": vec.apply_gl4(X1).is_zero(),
        "x2_annihilates": vec.apply_gl4(X2).is_zero(),
        "primitive": primitive_part_nonzero(vec),
    }
