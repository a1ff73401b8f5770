"""Multivariate Laurent polynomials over Q and truncated Laurent series in X.

A Poly stores {exponent-key: Fraction} where the key is a sorted tuple of
(variable, exponent) pairs with zero exponents dropped, so polynomials in
different variable sets combine freely.  An XSeries stores Poly coefficients
per X-degree up to a truncation bound.
"""

from fractions import Fraction


def _key(d):
    return tuple(sorted((v, e) for v, e in d if e))


class Poly:
    """Laurent polynomial: finite sum of Fraction * monomial."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, name, exp=1):
        if exp == 0:
            return cls.const(1)
        return cls({((name, exp),): Fraction(1)})

    @classmethod
    def monomial(cls, coeff, **exps):
        return cls({_key(exps.items()): Fraction(coeff)})

    def _coerced(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other):
        other = self._coerced(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        p = Poly()
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Poly()
        p.terms = {k: -c for k, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-self._coerced(other))

    def __rsub__(self, other):
        return self._coerced(other) + (-self)

    def __mul__(self, other):
        other = self._coerced(other)
        out = {}
        for k1, c1 in self.terms.items():
            d1 = dict(k1)
            for k2, c2 in other.terms.items():
                d = dict(d1)
                for v, e in k2:
                    e2 = d.get(v, 0) + e
                    if e2:
                        d[v] = e2
                    else:
                        del d[v]
                k = tuple(sorted(d.items()))
                s = out.get(k, Fraction(0)) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        p = Poly()
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            mono = self.as_monomial()
            if mono is None:
                raise ValueError("negative power of a non-monomial")
            k, c = mono
            return Poly({_key([(v, e * n) for v, e in k]): Fraction(c) ** n})
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def as_monomial(self):
        """(key, coeff) if this is a single term, else None."""
        if len(self.terms) != 1:
            return None
        return next(iter(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {()}

    def const_value(self):
        return self.terms.get((), Fraction(0))

    def variables(self):
        out = set()
        for k in self.terms:
            out.update(v for v, _ in k)
        return out

    def subs(self, assignment):
        """Substitute Poly/rational values for variables (others kept)."""
        out = Poly.const(0)
        for k, c in self.terms.items():
            term = Poly.const(c)
            for v, e in k:
                if v in assignment:
                    base = assignment[v]
                    if not isinstance(base, Poly):
                        base = Poly.const(base)
                    if e < 0:
                        mono = base.as_monomial()
                        if mono is None:
                            raise ValueError(f"negative power of non-monomial under {v}")
                        term = term * base ** e
                    else:
                        term = term * base ** e
                else:
                    term = term * Poly.var(v, e)
            out = out + term
        return out

    def eval_rational(self, assignment):
        """Evaluate at rational points for all variables; returns Fraction."""
        total = Fraction(0)
        for k, c in self.terms.items():
            t = c
            for v, e in k:
                t *= Fraction(assignment[v]) ** e
            total += t
        return total

    def reduce_sqrt(self, name, value):
        """Replace name^(2m+r) by value^m * name^r (r in {0,1}); used for q^2 = l."""
        out = Poly.const(0)
        for k, c in self.terms.items():
            d = dict(k)
            e = d.pop(name, 0)
            r = e % 2
            m = (e - r) // 2
            coeff = c * Fraction(value) ** m
            if r:
                d[name] = 1
            out = out + Poly({tuple(sorted(d.items())): coeff})
        return out

    def has_var(self, name):
        return any(v == name for k in self.terms for v, _ in k)

    def _lead(self, order):
        k = max(self.terms, key=order)
        return k, self.terms[k]

    def exact_div(self, other):
        """Exact division; raises ValueError when the remainder is nonzero."""
        other = self._coerced(other)
        if other.is_zero():
            raise ZeroDivisionError
        if self.is_zero():
            return Poly.const(0)
        variables = tuple(sorted(self.variables() | other.variables()))

        def order(k):
            d = dict(k)
            return tuple(d.get(v, 0) for v in variables)

        rem = self
        quot = Poly.const(0)
        dk, dc = other._lead(order)
        dd = dict(dk)
        while not rem.is_zero():
            rk, rc = rem._lead(order)
            rd = dict(rk)
            mono = {v: rd.get(v, 0) - dd.get(v, 0) for v in set(rd) | set(dd)}
            mk = tuple(sorted((v, e) for v, e in mono.items() if e))
            t = Poly({mk: rc / dc})
            quot = quot + t
            rem = rem - t * other
            if not rem.is_zero():
                nk, _ = rem._lead(order)
                if order(nk) >= order(rk):
                    raise ValueError("division not exact")
        return quot

    def __eq__(self, other):
        return self.terms == self._coerced(other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            c = self.terms[k]
            mono = "*".join(f"{v}^{e}" if e != 1 else v for v, e in k)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


ZERO = Poly.const(0)
ONE = Poly.const(1)


class XSeries:
    """Laurent series in X truncated above degree `cut`: sum c_d X^d, d <= cut.

    Coefficients are Poly.  Degrees above `cut` are silently discarded;
    combining two series keeps the smaller truncation bound.
    """

    __slots__ = ("cut", "coeffs")

    def __init__(self, cut, coeffs=None):
        self.cut = cut
        self.coeffs = {}
        if coeffs:
            for d, c in coeffs.items():
                if d > cut:
                    continue
                c = c if isinstance(c, Poly) else Poly.const(c)
                if not c.is_zero():
                    self.coeffs[d] = c

    @classmethod
    def const(cls, c, cut):
        return cls(cut, {0: Poly.const(c) if not isinstance(c, Poly) else c})

    @classmethod
    def x_power(cls, d, cut, coeff=1):
        return cls(cut, {d: Poly.const(coeff) if not isinstance(coeff, Poly) else coeff})

    def coeff(self, d):
        if d > self.cut:
            raise ValueError(f"degree {d} above truncation {self.cut}")
        return self.coeffs.get(d, ZERO)

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def __add__(self, other):
        if not isinstance(other, XSeries):
            other = XSeries.const(other, self.cut)
        cut = min(self.cut, other.cut)
        out = {}
        for d in set(self.coeffs) | set(other.coeffs):
            if d > cut:
                continue
            c = self.coeffs.get(d, ZERO) + other.coeffs.get(d, ZERO)
            if not c.is_zero():
                out[d] = c
        return XSeries(cut, out)

    __radd__ = __add__

    def __neg__(self):
        return XSeries(self.cut, {d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, XSeries):
            other = XSeries.const(other, self.cut)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, XSeries):
            # scalar or Poly
            c = other if isinstance(other, Poly) else Poly.const(other)
            return XSeries(self.cut, {d: v * c for d, v in self.coeffs.items()})
        cut = min(self.cut, other.cut)
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                if d > cut:
                    continue
                prev = out.get(d)
                out[d] = c1 * c2 if prev is None else prev + c1 * c2
        return XSeries(cut, out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by X^k."""
        return XSeries(self.cut, {d + k: c for d, c in self.coeffs.items() if d + k <= self.cut})

    def inverse(self):
        """Series inverse; requires the lowest coefficient to be a nonzero constant."""
        d0 = self.min_degree()
        if d0 is None:
            raise ZeroDivisionError("inverting the zero series")
        lead = self.coeffs[d0]
        if not lead.is_constant() or lead.const_value() == 0:
            raise ValueError("not a series unit")
        c0 = lead.const_value()
        # write self = c0 X^d0 (1 + T), invert the unit part by geometric series
        n_terms = self.cut - d0
        t = {}
        for d, c in self.coeffs.items():
            if d != d0:
                t[d - d0] = c * Fraction(1, c0)
        tail = XSeries(n_terms if n_terms >= 0 else 0, t)
        inv_unit = XSeries.const(1, tail.cut)
        power = XSeries.const(1, tail.cut)
        for _ in range(tail.cut):
            power = power * (-tail)
            if not power.coeffs:
                break
            inv_unit = inv_unit + power
        out = inv_unit * Fraction(1, c0)
        return XSeries(out.cut - d0, {d - d0: c for d, c in out.coeffs.items()})

    def reduce_sqrt(self, name, value):
        return XSeries(self.cut, {d: c.reduce_sqrt(name, value) for d, c in self.coeffs.items()})

    def subs(self, assignment):
        return XSeries(self.cut, {d: c.subs(assignment) for d, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, XSeries):
            other = XSeries.const(other, self.cut)
        cut = min(self.cut, other.cut)
        for d in set(self.coeffs) | set(other.coeffs):
            if d > cut:
                continue
            if self.coeffs.get(d, ZERO) != other.coeffs.get(d, ZERO):
                return False
        return True

    def first_difference(self, other):
        """Smallest degree where the two series differ, with the difference."""
        cut = min(self.cut, other.cut)
        for d in sorted(set(self.coeffs) | set(other.coeffs)):
            if d > cut:
                continue
            delta = self.coeffs.get(d, ZERO) - other.coeffs.get(d, ZERO)
            if not delta.is_zero():
                return d, delta
        return None

    def __repr__(self):
        bits = [f"({c})X^{d}" for d, c in sorted(self.coeffs.items())]
        return " + ".join(bits) if bits else "0"


def geometric_inverse(c, cut):
    """The series (1 - c X)^(-1) = sum c^n X^n, c a Poly or rational."""
    c = c if isinstance(c, Poly) else Poly.const(c)
    coeffs = {}
    power = ONE
    for d in range(cut + 1):
        coeffs[d] = power
        power = power * c
    return XSeries(cut, coeffs)
