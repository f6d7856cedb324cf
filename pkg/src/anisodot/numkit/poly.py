"""Dense polynomials with exact coefficients, and real-root machinery.

``UniPoly`` holds ascending coefficient lists whose entries may be
``Fraction`` or ``QuadraticSurd`` (any exact field type with +,-,*,/ and
exact comparisons).  ``BiPoly`` is a polynomial in beta whose coefficients
are ``UniPoly`` in eps.  Root isolation uses Sturm sequences, so counts
and intervals are certificates, not heuristics.
"""

from fractions import Fraction
import itertools
import math

import mpmath

from ..errors import BracketError, DegenerateInputError
from .exactnum import (QuadraticSurd, exact_sign, to_mpf, mpf_to_fraction,
                       fraction_sqrt, _sqrt_squarefree_split)


class UniPoly:
    """Dense univariate polynomial over an exact field, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and exact_sign(cs[-1]) == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def x(cls):
        return cls([Fraction(0), Fraction(1)])

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return UniPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def shift_mul_x(self, k):
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return UniPoly([Fraction(0)] * k + list(self.coeffs))

    def divmod(self, other):
        """Exact-field polynomial division with remainder."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        r = list(self.coeffs)
        dlead = other.coeffs[-1]
        dn = other.degree
        while len(r) - 1 >= dn and r:
            while r and exact_sign(r[-1]) == 0:
                r.pop()
            if len(r) - 1 < dn or not r:
                break
            f = r[-1] / dlead
            k = len(r) - 1 - dn
            q[k] = f
            for i, c in enumerate(other.coeffs):
                r[k + i] = r[k + i] - f * c
            r.pop()
        return UniPoly(q), UniPoly(r)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; x may be exact, float, or mpf."""
        acc = None
        for c in reversed(self.coeffs):
            if acc is None:
                acc = c
            else:
                acc = acc * x + c
        if acc is None:
            return Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        return acc

    def eval_mpf(self, x, prec=None):
        ctx = mpmath.mp
        with ctx.workprec(prec or ctx.prec):
            xm = to_mpf(x)
            acc = ctx.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * xm + to_mpf(c)
            return acc

    def monic(self):
        if self.is_zero:
            return self
        lc = self.coeffs[-1]
        return UniPoly([c / lc for c in self.coeffs])

    def compose_linear(self, a, b):
        """Return p(a + b*x)."""
        out = UniPoly([])
        lin = UniPoly([a, b])
        pw = UniPoly.constant(Fraction(1))
        for c in self.coeffs:
            out = out + pw * c
            pw = pw * lin
        return out

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self):
        if self.degree <= 1:
            return self.monic() if not self.is_zero else self
        g = self.gcd(self.derivative())
        return (self // g).monic()

    # ----- Sturm machinery ---------------------------------------------

    def sturm_sequence(self):
        seq = [self, self.derivative()]
        while seq[-1].degree > 0:
            rem = seq[-2] % seq[-1]
            if rem.is_zero:
                break
            seq.append(-rem)
        return seq

    @staticmethod
    def _variations(values):
        signs = [s for s in (exact_sign(v) for v in values) if s != 0]
        return sum(1 for a, b in itertools.pairwise(signs) if a != b)

    def count_roots(self, lo, hi, seq=None):
        """Number of distinct real roots in (lo, hi]; poly must be squarefree."""
        seq = seq or self.sturm_sequence()
        va = self._variations([p(lo) for p in seq])
        vb = self._variations([p(hi) for p in seq])
        return va - vb

    def root_bound(self):
        """Rational B with all real roots in (-B, B), verified by Sturm count."""
        if self.is_zero:
            raise DegenerateInputError("zero polynomial")
        seq = self.sturm_sequence()
        # sign variations at -inf / +inf from leading coefficients
        lead = [p.coeffs[-1] for p in seq]
        vminf = self._variations([c * (-1) ** p.degree for c, p in zip(lead, seq)])
        vpinf = self._variations(lead)
        total = vminf - vpinf
        B = Fraction(2)
        while self.count_roots(-B, B, seq) < total:
            B *= 2
        return B

    def isolate_real_roots(self):
        """Disjoint rational intervals (lo, hi], one simple root in each.

        The squarefree part is taken internally, so multiple roots appear
        once.  Returned in ascending order.
        """
        if self.is_zero:
            raise DegenerateInputError("zero polynomial")
        p = self.squarefree_part()
        if p.degree < 1:
            return []
        seq = p.sturm_sequence()
        B = p.root_bound()
        out = []

        def recurse(lo, hi, n):
            if n == 0:
                return
            if n == 1:
                out.append((lo, hi))
                return
            mid = (lo + hi) / 2
            while exact_sign(p(mid)) == 0:
                mid = (mid + hi) / 2  # nudge off an exact root hit
            nl = p.count_roots(lo, mid, seq)
            recurse(lo, mid, nl)
            recurse(mid, hi, n - nl)

        recurse(-B, B, p.count_roots(-B, B, seq))
        return out

    def refine_interval(self, lo, hi, width):
        """Bisect an isolating interval down to the requested rational width."""
        flo = exact_sign(self(lo))
        fhi = exact_sign(self(hi))
        if fhi == 0:
            return hi, hi
        if flo == 0:
            return lo, lo
        if flo == fhi:
            raise BracketError("interval endpoints do not bracket a sign change")
        while hi - lo > width:
            mid = (lo + hi) / 2
            fm = exact_sign(self(mid))
            if fm == 0:
                return mid, mid
            if fm == flo:
                lo = mid
            else:
                hi = mid
        return lo, hi

    def __repr__(self):
        return "UniPoly(%r)" % (list(self.coeffs),)


def refine_root(p, interval, prec=128, tol=None):
    """Refine an isolated simple root to an mpf at the given precision.

    Bisection secures the bracket, then Newton polishes inside it.  ``tol``
    (an mpf/float) optionally relaxes the stopping width; by default the
    root is polished to the full working precision.
    """
    lo, hi = interval
    lo, hi = p.refine_interval(Fraction(lo), Fraction(hi), Fraction(1, 2**40))
    ctx = mpmath.mp
    with ctx.workprec(prec):
        if lo == hi:
            return to_mpf(lo)
        x = (to_mpf(lo) + to_mpf(hi)) / 2
        lom, him = to_mpf(lo), to_mpf(hi)
        cs = [to_mpf(c) for c in p.coeffs]
        dcs = [i * c for i, c in enumerate(cs)][1:]

        def ev(cl, t):
            acc = ctx.mpf(0)
            for c in reversed(cl):
                acc = acc * t + c
            return acc

        target = to_mpf(tol) if tol is not None else ctx.mpf(2) ** (8 - prec) * max(1, abs(x))
        for _ in range(prec):
            f = ev(cs, x)
            df = ev(dcs, x)
            if df == 0:
                x = (lom + him) / 2
                continue
            step = f / df
            xn = x - step
            if not (lom <= xn <= him):
                xn = (lom + him) / 2
            fn = ev(cs, xn)
            # keep the bracket sign-consistent
            if exact_sign(p(Fraction(lo))) * mpmath.sign(fn) <= 0:
                him = xn
            else:
                lom = xn
            if abs(xn - x) <= target:
                return xn
            x = xn
        return x


class IsolatedRoot:
    """A real algebraic number: exact polynomial plus isolating interval."""

    __slots__ = ("poly", "lo", "hi")

    def __init__(self, poly, lo, hi):
        self.poly = poly
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)

    def to_mpf(self, prec=128):
        return refine_root(self.poly, (self.lo, self.hi), prec=prec)

    def __float__(self):
        return float(self.to_mpf(80))

    def __repr__(self):
        return "IsolatedRoot(deg=%d, (%s, %s))" % (self.poly.degree, self.lo, self.hi)


def identify_roots(p):
    """Real roots of an exact rational polynomial, identified where cheap.

    Returns a list of values in ascending order; each is a ``Fraction``
    (exactly verified), a ``QuadraticSurd`` (verified by exact division of
    a quadratic factor), or an ``IsolatedRoot`` fallback.
    """
    sf = p.squarefree_part()
    intervals = sf.isolate_real_roots()
    if not intervals:
        return []
    # integer-primitive form fixes the possible denominators of rational roots
    den = 1
    for c in sf.coeffs:
        den = math.lcm(den, c.denominator)
    ip = [c * den for c in sf.coeffs]
    lead = int(ip[-1])

    values = [None] * len(intervals)
    with mpmath.mp.workprec(240):
        approx = []
        for k, iv in enumerate(intervals):
            x = refine_root(sf, iv, prec=220)
            approx.append(x)
            cand = Fraction(int(mpmath.nint(x * lead)), lead)
            if iv[0] < cand <= iv[1] and exact_sign(sf(cand)) == 0:
                values[k] = cand
        # pair remaining roots into conjugate quadratic factors
        rem = [k for k in range(len(intervals)) if values[k] is None]
        for i, j in itertools.combinations(rem, 2):
            if values[i] is not None or values[j] is not None:
                continue
            s = _rationalize(approx[i] + approx[j])
            pr = _rationalize(approx[i] * approx[j])
            if s is None or pr is None:
                continue
            quad = UniPoly([pr, -s, Fraction(1)])
            if not (sf % quad).is_zero:
                continue
            disc = s * s - 4 * pr
            root = _surd_from_disc(s, disc)
            if root is None:
                continue
            plus, minus = root
            values[i], values[j] = (minus, plus) if approx[i] < approx[j] else (plus, minus)
    for k in rem:
        if values[k] is None:
            values[k] = IsolatedRoot(sf, *intervals[k])
    return values


def _rationalize(x, max_den=10**12):
    """Nearest small-denominator Fraction to an mpf, or None."""
    xf = mpf_to_fraction(x)
    fr = xf.limit_denominator(max_den)
    return fr if abs(fr - xf) < Fraction(1, 10**40) else None


def _surd_from_disc(s, disc):
    """Roots (s +- sqrt(disc))/2 as exact surds, or None if unidentifiable."""
    if disc <= 0:
        return None
    r = fraction_sqrt(disc)
    if r is not None:
        return (s + r) / 2, (s - r) / 2
    # disc = (m/n): sqrt = sqrt(m*n)/n
    mn = disc.numerator * disc.denominator
    split = _sqrt_squarefree_split(mn)
    if split is None:
        return None
    d, k = split
    if d == 1:
        return None
    coef = Fraction(k, disc.denominator)
    plus = QuadraticSurd(s / 2, coef / 2, d)
    minus = QuadraticSurd(s / 2, -coef / 2, d)
    return plus, minus


class BiPoly:
    """Polynomial in beta whose coefficients are UniPoly in eps."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree_beta(self):
        return len(self.coeffs) - 1

    @property
    def degree_eps(self):
        return max((c.degree for c in self.coeffs), default=-1)

    @property
    def is_zero(self):
        return not self.coeffs

    def coeff(self, j):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else UniPoly([])

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return BiPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return BiPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return BiPoly([c * k for c in self.coeffs])

    def mul_beta(self, other):
        if self.is_zero or other.is_zero:
            return BiPoly([])
        out = [UniPoly([]) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BiPoly(out)

    def subst_beta_linear(self, a, b):
        """Return P(eps, a + b*beta) with rational a, b."""
        out = BiPoly([])
        pw = BiPoly([UniPoly.constant(Fraction(1))])
        lin = BiPoly([UniPoly.constant(Fraction(a)), UniPoly.constant(Fraction(b))])
        for c in self.coeffs:
            out = out + pw.scale(c)
            pw = pw.mul_beta(lin)
        return out

    def eval_eps(self, eps):
        """Substitute an exact eps; returns a UniPoly in beta over that field."""
        return UniPoly([c(eps) for c in self.coeffs])

    def eval_beta_poly(self, beta_val):
        """Substitute an exact beta; returns a UniPoly in eps."""
        out = UniPoly([])
        pw = Fraction(1)
        for c in self.coeffs:
            out = out + c * pw
            pw = pw * beta_val
        return out

    def __call__(self, eps, beta):
        acc = None
        for c in reversed(self.coeffs):
            v = c(eps)
            acc = v if acc is None else acc * beta + v
        return acc if acc is not None else Fraction(0)

    def transpose(self):
        """View the same polynomial with eps as the outer variable."""
        de = self.degree_eps
        rows = []
        for i in range(de + 1):
            rows.append(UniPoly([c[i] for c in self.coeffs]))
        return BiPoly(rows)

    def __repr__(self):
        return "BiPoly(deg_beta=%d, deg_eps=%d)" % (self.degree_beta, self.degree_eps)


def _det_fraction(m):
    """Exact determinant of a square matrix of Fractions (Gaussian elimination)."""
    n = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            f = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return det


def sylvester_det(pc, qc):
    """Resultant of two scalar polynomials given by ascending Fraction coeffs."""
    m = len(pc) - 1
    n = len(qc) - 1
    if m < 0 or n < 0:
        raise DegenerateInputError("zero polynomial in resultant")
    if m == 0:
        return pc[0] ** n
    if n == 0:
        return qc[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(pc)):
            row[i + j] = Fraction(c)
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(qc)):
            row[i + j] = Fraction(c)
        rows.append(row)
    return _det_fraction(rows)


def resultant(p, q, eliminate="beta"):
    """Resultant of two BiPolys, eliminating one variable.

    Computed by evaluation and exact Lagrange interpolation of the Sylvester
    determinant, so the output polynomial is exact.  Eliminating ``beta``
    yields a UniPoly in eps; eliminating ``eps`` yields a UniPoly in beta
    (via the transposed representation).
    """
    if eliminate == "eps":
        return resultant(p.transpose(), q.transpose(), "beta")
    if p.is_zero or q.is_zero:
        raise DegenerateInputError("zero polynomial in resultant")
    m, n = p.degree_beta, q.degree_beta
    if m < 0 or n < 0:
        raise DegenerateInputError("input has no beta dependence")
    bound = n * max(c.degree for c in p.coeffs) + m * max(c.degree for c in q.coeffs)
    bound = max(bound, 0)
    xs, ys = [], []
    for t in range(bound + 1):
        e = Fraction(t)
        pc = [c(e) for c in p.coeffs]
        qc = [c(e) for c in q.coeffs]
        xs.append(e)
        ys.append(sylvester_det(pc, qc))
    return _newton_interpolate(xs, ys)


def _newton_interpolate(xs, ys):
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly([])
    for j in range(n - 1, -1, -1):
        poly = poly * UniPoly([-xs[j], Fraction(1)]) + UniPoly.constant(coef[j])
    return poly
