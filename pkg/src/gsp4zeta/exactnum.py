"""Exact scalar arithmetic: l-adic valuations, additive character values,
and cyclotomic numbers in the power basis mod the l^k-th cyclotomic polynomial.

Everything is built on Fraction; there is no floating point in this package.
"""

from fractions import Fraction

INF = float("inf")  # valuation of 0


def val(q, ell):
    """l-adic valuation of a rational; val(0) = +inf."""
    q = Fraction(q)
    if q == 0:
        return INF
    v = 0
    n = q.numerator
    while n % ell == 0:
        n //= ell
        v += 1
    d = q.denominator
    while d % ell == 0:
        d //= ell
        v -= 1
    return v


def unit_part(q, ell):
    """q / ell^val(q), an l-adic unit (as an exact rational)."""
    q = Fraction(q)
    if q == 0:
        raise ZeroDivisionError("zero has no unit part")
    return q / Fraction(ell) ** val(q, ell)


def is_integral(q, ell):
    return Fraction(q).denominator % ell != 0 if Fraction(q) != 0 else True


def congruent(a, b, ell, n):
    """a = b mod ell^n for l-integral rationals (n <= 0 is vacuous)."""
    if n <= 0:
        return True
    return val(Fraction(a) - Fraction(b), ell) >= n


def residue(q, ell, n):
    """The integer in [0, ell^n) congruent to the l-integral rational q."""
    q = Fraction(q)
    m = ell ** n
    if q.denominator % ell == 0:
        raise ValueError("not l-integral")
    return q.numerator * pow(q.denominator, -1, m) % m


def inverse_mod(a, ell, n):
    """Inverse of the l-unit rational a modulo ell^n, as an integer."""
    m = ell ** n
    a = Fraction(a)
    return pow(a.numerator * pow(a.denominator, -1, m) % m, -1, m)


class Cyclotomic:
    """Element of Q(zeta_{ell^k}) in the power basis 1, z, ..., z^(phi-1)
    modulo the cyclotomic polynomial sum_t x^(t*ell^(k-1)).

    Instances are immutable; conductor ell^0 means a plain rational.
    """

    __slots__ = ("ell", "k", "coeffs")

    def __init__(self, ell, k, coeffs):
        self.ell = ell
        self.k = k
        phi = self._phi(ell, k)
        c = [Fraction(x) for x in coeffs]
        if len(c) < phi:
            c += [Fraction(0)] * (phi - len(c))
        assert len(c) == phi
        self.coeffs = tuple(c)

    @staticmethod
    def _phi(ell, k):
        return 1 if k == 0 else ell ** (k - 1) * (ell - 1)

    @classmethod
    def from_rational(cls, q, ell):
        return cls(ell, 0, [Fraction(q)])

    @classmethod
    def zeta_power(cls, ell, k, a):
        """zeta_{ell^k}^a reduced to the power basis."""
        n = ell ** k
        a %= n
        phi = cls._phi(ell, k)
        coeffs = [Fraction(0)] * phi
        if a < phi:
            coeffs[a] = Fraction(1)
        else:
            # z^a = -sum_{t<ell-1} z^(t*ell^(k-1) + r),  a = (ell-1)*ell^(k-1) + r
            r = a - (ell - 1) * ell ** (k - 1)
            for t in range(ell - 1):
                coeffs[t * ell ** (k - 1) + r] -= 1
        return cls(ell, k, coeffs)

    def lift(self, k_new):
        """Reinterpret at a larger conductor: zeta_{l^k} = zeta_{l^k_new}^(l^(k_new-k))."""
        if k_new == self.k:
            return self
        assert k_new > self.k
        out = Cyclotomic(self.ell, k_new, [0])
        step = self.ell ** (k_new - self.k)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + Cyclotomic.zeta_power(self.ell, k_new, i * step) * c
        return out

    def _pair(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.from_rational(other, self.ell)
        k = max(self.k, other.k)
        return self.lift(k), other.lift(k)

    def __add__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(a.ell, a.k, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.ell, self.k, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._pair(other)
        return a + (-b)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.ell, self.k, [c * other for c in self.coeffs])
        a, b = self._pair(other)
        n = a.ell ** a.k
        raw = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if not y:
                    continue
                raw[(i + j) % n] = raw.get((i + j) % n, Fraction(0)) + x * y
        out = Cyclotomic(a.ell, a.k, [0])
        for e, c in raw.items():
            if c:
                out = out + Cyclotomic.zeta_power(a.ell, a.k, e) * c
        return out

    __rmul__ = __mul__

    def conjugate_sum(self):
        """Sum of all Galois conjugates (the trace to Q), as a rational."""
        # trace(z^a) over Gal: for a=0 it is phi; handled via explicit formula
        ell, k = self.ell, self.k
        if k == 0:
            return self.coeffs[0]
        total = Fraction(0)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            total += c * _zeta_trace(ell, k, i)
        return total

    def as_rational(self):
        """Exact rational value, or None when not rational."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_zero(self):
        return not any(self.coeffs)

    def abs_bound(self):
        """Rational upper bound for the complex absolute value (any embedding)."""
        # |sum a_i z^i| <= sum |a_i| after re-expanding basis powers as roots of unity
        return sum(abs(c) for c in self.coeffs)

    def __eq__(self, other):
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.ell, self.k, self.coeffs))

    def __repr__(self):
        if self.k == 0:
            return f"Cyclo({self.coeffs[0]})"
        return f"Cyclo(l={self.ell}^{self.k}, {list(self.coeffs)})"


def _zeta_trace(ell, k, a):
    """Trace of zeta_{ell^k}^a from Q(zeta_{ell^k}) to Q, a in [0, phi)."""
    n = ell ** k
    a %= n
    phi = Cyclotomic._phi(ell, k)
    if a == 0:
        return Fraction(phi)
    # order of the root zeta^a is ell^j for minimal j with a*ell^j = 0 mod n
    g = 1
    aa = a
    while aa % ell == 0:
        aa //= ell
        g *= ell
    order = n // g
    if order == ell:
        return Fraction(-phi // (ell - 1))
    return Fraction(0)


def psi_eval(q, ell):
    """Value of the unramified additive character at the rational q.

    Psi(a / ell^k) = zeta_{ell^k}^a; integral arguments map to 1.
    Raises if the denominator has a prime other than ell.
    """
    q = Fraction(q)
    d = q.denominator
    k = 0
    while d % ell == 0:
        d //= ell
        k += 1
    if d != 1:
        raise ValueError("not l-adically principal")
    if k == 0:
        return Cyclotomic.from_rational(1, ell)
    a = q.numerator % ell ** k  # q = a/ell^k mod Z since denominator is exactly ell^k
    return Cyclotomic.zeta_power(ell, k, a)


def psi_sum(k, r, ell):
    """sum_{z mod ell^r} Psi(ell^k z): ell^r if k >= 0, 0 if -r <= k <= -1."""
    if r < 0:
        raise ValueError("modulus exponent must be >= 0")
    if k >= 0:
        return Fraction(ell) ** r
    if k >= -r:
        return Fraction(0)
    raise ValueError("character sum not covered by closed form")


def psi_sum_brute(k, r, ell):
    """The same sum evaluated term by term through psi_eval (oracle path)."""
    total = Cyclotomic.from_rational(0, ell)
    q = Fraction(ell) ** k
    for z in range(ell ** r):
        total = total + psi_eval(q * z, ell)
    return total
