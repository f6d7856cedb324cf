"""Exact real numbers beyond the rationals.

Two representations are used by the closed-form solution machinery:

* ``QuadraticSurd`` -- an element a + b*sqrt(d) of a real quadratic field,
  with exact rational a, b and squarefree d > 1.  All arithmetic and sign
  queries are exact, so Sturm sequences and series recursions can run in
  the field without any rounding.
* ``IsolatedRoot`` -- a real algebraic number given by an exact rational
  polynomial together with an isolating interval; evaluated on demand to
  any requested binary precision.
"""

from fractions import Fraction
import math

import mpmath


def _sqrt_squarefree_split(n):
    """Write n = d * k^2 with d squarefree; return (d, k).

    Trial division only, adequate for the small radicands produced by
    quadratic factors of low-degree resultants.  Returns None when n is
    too large to factor cheaply.
    """
    if n <= 0:
        raise ValueError("need a positive radicand")
    if n > 10**18:
        return None
    d, k = 1, 1
    p = 2
    m = n
    while p * p <= m:
        if p > 10**6:
            return None
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            k *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= m
    return d, k


def fraction_sqrt(q):
    """Exact square root of a nonnegative Fraction, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0)
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class QuadraticSurd:
    """Exact element a + b*sqrt(d) of the real quadratic field Q(sqrt(d))."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        if d <= 1:
            raise ValueError("d must exceed 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    # -- helpers -------------------------------------------------------

    @staticmethod
    def _coerce(x, d):
        if isinstance(x, QuadraticSurd):
            if x.d != d and x.b != 0:
                raise ValueError("mixed quadratic fields")
            return x.a, x.b
        if isinstance(x, (int, Fraction)):
            return Fraction(x), Fraction(0)
        return NotImplemented, None

    def conjugate(self):
        return QuadraticSurd(self.a, -self.b, self.d)

    @property
    def is_rational(self):
        return self.b == 0

    def as_fraction(self):
        if self.b != 0:
            raise ValueError("not rational")
        return self.a

    def norm(self):
        """Field norm a^2 - d*b^2 (a rational number)."""
        return self.a * self.a - self.d * self.b * self.b

    def sign(self):
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        n = a * a - d * b * b
        if a > 0:  # b < 0: positive iff a^2 > d b^2
            return (n > 0) - (n < 0)
        return (n < 0) - (n > 0)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other, self.d)
        if a is NotImplemented:
            return NotImplemented
        return QuadraticSurd(self.a + a, self.b + b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadraticSurd) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other, self.d)
        if a is NotImplemented:
            return NotImplemented
        return QuadraticSurd(self.a * a + self.d * self.b * b,
                             self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._coerce(other, self.d)
        if a is NotImplemented:
            return NotImplemented
        n = a * a - self.d * b * b
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        # multiply by the conjugate of the divisor
        na = (self.a * a - self.d * self.b * b) / n
        nb = (self.b * a - self.a * b) / n
        return QuadraticSurd(na, nb, self.d)

    def __rtruediv__(self, other):
        return QuadraticSurd(other, 0, self.d) / self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QuadraticSurd(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other):
        a, b = self._coerce(other, self.d)
        if a is NotImplemented:
            return NotImplemented
        return self.a == a and self.b == b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other):
        a, b = self._coerce(other, self.d)
        if a is NotImplemented:
            return NotImplemented
        return QuadraticSurd(self.a - a, self.b - b, self.d).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- conversion ----------------------------------------------------

    def to_mpf(self, prec=None):
        with mpmath.mp.workprec(prec or mpmath.mp.prec):
            return to_mpf(self.a) + to_mpf(self.b) * mpmath.sqrt(self.d)

    def __float__(self):
        return float(self.to_mpf(80))

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        # common-denominator form (p + q*sqrt(d))/r
        r = math.lcm(self.a.denominator, self.b.denominator)
        p = self.a.numerator * (r // self.a.denominator)
        q = self.b.numerator * (r // self.b.denominator)
        g = math.gcd(math.gcd(abs(p), abs(q)), r)
        p, q, r = p // g, q // g, r // g
        qs = "sqrt(%d)" % self.d if abs(q) == 1 else "%d*sqrt(%d)" % (abs(q), self.d)
        core = ("%d + %s" % (p, qs)) if q > 0 else ("%d - %s" % (p, qs))
        if p == 0:
            core = qs if q > 0 else "-" + qs
        return core if r == 1 else "(%s)/%d" % (core, r)

    def __repr__(self):
        return "QuadraticSurd(%r, %r, %d)" % (self.a, self.b, self.d)


def sqrt_in_field(s, d):
    """Exact square root of s inside Q(sqrt(d)), or None if there is none.

    s may be a Fraction or a QuadraticSurd over the same d.
    """
    if isinstance(s, QuadraticSurd) and s.b != 0:
        if s.d != d:
            raise ValueError("mixed quadratic fields")
        if s.sign() < 0:
            return None
        sa, sb = s.a, s.b
        # (x + y*sqrt(d))^2 = s  =>  x^2 + d y^2 = sa, 2xy = sb.
        # x^2 and d*y^2 are the roots of z^2 - sa z + d sb^2/4.
        disc = sa * sa - d * sb * sb
        g = fraction_sqrt(disc) if disc >= 0 else None
        if g is None:
            return None
        for z in ((sa + g) / 2, (sa - g) / 2):
            if z < 0:
                continue
            x = fraction_sqrt(z)
            if x is None or x == 0:
                continue
            y = sb / (2 * x)
            if x * x + d * y * y == sa and 2 * x * y == sb:
                root = QuadraticSurd(x, y, d)
                if root.sign() < 0:
                    root = -root
                return root
        return None
    q = s.as_fraction() if isinstance(s, QuadraticSurd) else Fraction(s)
    if q < 0:
        return None
    r = fraction_sqrt(q)
    if r is not None:
        return r
    rd = fraction_sqrt(q / d)
    if rd is not None:
        return QuadraticSurd(0, rd, d)
    return None


def exact_sign(x):
    """Sign of an exact number (Fraction, int, or QuadraticSurd)."""
    if isinstance(x, QuadraticSurd):
        return x.sign()
    return (x > 0) - (x < 0)


def to_mpf(x, prec=None):
    """Convert an exact number (or float/mpf) to mpf at the working precision."""
    ctx = mpmath.mp
    if prec is not None:
        with ctx.workprec(prec):
            return to_mpf(x)
    if isinstance(x, QuadraticSurd):
        return x.to_mpf()
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)
    return ctx.mpf(x)


def mpf_to_fraction(x):
    """Exact Fraction equal to a finite mpf (mantissa * 2^exponent)."""
    x = mpmath.mpf(x)
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise ValueError("not a finite number")
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def exact_str(x):
    """Canonical display string: 'p/q' for rationals, surd form otherwise."""
    if isinstance(x, QuadraticSurd):
        return str(x.as_fraction()) if x.is_rational else str(x)
    if isinstance(x, Fraction):
        return str(x)
    return repr(x)
