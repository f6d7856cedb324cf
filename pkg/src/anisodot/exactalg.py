"""Closed-form (quasi-exact) levels of the omega_y = 2*omega_x dot.

Each separated factor g(eta) = exp(-omega_x eta^4/4) * sum a_i eta^(2i+nu)
obeys the three-term recursion

    A_i a_{i+1} + B_i a_i + C_i a_{i-1} = 0,
    A_i = (2i+nu+1)(2i+nu+2),  B_i = -beta,  C_i = eps + (1-4i-2nu) omega_x.

The series terminates at order n exactly when eps = omega_x (3+4n+2nu) and
a_{n+1} = 0 for both factors, with the separation constants coupled by
beta1 + beta2 = 2.  a_{n+1} is proportional to the determinant polynomial
P_n(eps, beta), so closed-form levels are common solutions of
P_n(eps, beta) = 0 and P_n(eps, 2-beta) = 0.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DegenerateInputError
from .model import Level, classify_sector, pair_sectors
from .numkit import (BiPoly, IsolatedRoot, QuadraticSurd, UniPoly, exact_sign,
                     exact_str, fraction_sqrt, identify_roots, resultant,
                     sqrt_in_field, to_mpf)
from .numkit.exactnum import _sqrt_squarefree_split

_EXACT_TYPES = (int, Fraction, QuadraticSurd)


def term_count(n, nu):
    """Denominator 3 + 4n + 2*nu of the termination condition."""
    return 3 + 4 * n + 2 * nu


def termination_energy(n, nu, omega_x):
    """Energy forced by series termination at order n: omega_x*(3+4n+2nu)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return omega_x * term_count(n, nu)


def recursion_A(i, nu):
    return (2 * i + nu + 1) * (2 * i + nu + 2)


def recursion_C(i, nu, eps, omega_x):
    return eps + (1 - 4 * i - 2 * nu) * omega_x


def build_polynomial(n, nu):
    """Determinant polynomial P_n(eps, beta) with omega_x eliminated.

    Tridiagonal determinant recurrence D_k = B_k D_{k-1} - A_{k-1} C_k D_{k-2}
    with B_k = -beta and C_k = 4 eps (n+1-k) / (3+4n+2nu); the leading beta
    coefficient is (-1)^(n+1).  n = 0 degenerates to the single condition
    D_0 = -beta.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if nu not in (0, 1):
        raise ValueError("nu must be 0 or 1")
    denom = term_count(n, nu)
    neg_beta = BiPoly([UniPoly([]), UniPoly.constant(Fraction(-1))])
    d_prev2 = BiPoly([UniPoly.constant(Fraction(1))])   # D_{-1}
    d_prev = neg_beta                                    # D_0
    if n == 0:
        return d_prev
    for k in range(1, n + 1):
        a = Fraction(recursion_A(k - 1, nu))
        c_k = Fraction(4 * (n + 1 - k), denom)           # times eps
        c_poly = UniPoly([Fraction(0), c_k])
        term = d_prev2.scale(c_poly * a)
        d_k = neg_beta.mul_beta(d_prev) - term
        d_prev2, d_prev = d_prev, d_k
    return d_prev


def series_coefficients_from(eps, beta, omega_x, nu, n):
    """Forward recursion a_0..a_{n+1} from a_0 = 1, in the coefficient field."""
    one = eps * 0 + 1  # unit of whatever field eps lives in
    a = [one]
    prev = eps * 0
    for i in range(0, n + 1):
        nxt = (beta * a[i] - recursion_C(i, nu, eps, omega_x) * prev) \
            / recursion_A(i, nu)
        prev = a[i]
        a.append(nxt)
    return a


def count_nodes(a_coeffs, nu):
    """Full-line node count of a terminating factor.

    Twice the number of positive real roots of sum a_i s^i (s = eta^2),
    plus nu for the origin node of odd factors.  Exact when the
    coefficients are exact; otherwise counted from arbitrary-precision
    polynomial roots.
    """
    coeffs = list(a_coeffs)
    while coeffs and _is_zero(coeffs[-1]):
        coeffs.pop()
    if all(isinstance(c, _EXACT_TYPES) for c in coeffs):
        p = UniPoly(coeffs)
        if p.degree < 1:
            return nu
        sf = p.squarefree_part()
        return 2 * sf.count_roots(Fraction(0), sf.root_bound()) + nu
    roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(coeffs)],
                             maxsteps=200, extraprec=120)
    pos = sum(1 for r in roots
              if abs(mpmath.im(r)) < mpmath.mpf(2) ** -80 and mpmath.re(r) > 0)
    return 2 * pos + nu


def _is_zero(c):
    if isinstance(c, _EXACT_TYPES):
        return exact_sign(c) == 0
    return c == 0


@dataclass(frozen=True)
class QuasiExactSolution:
    """One closed-form level: exact parameters plus both factor series."""

    n: int
    nu: int
    energy: object          # Fraction | QuadraticSurd | IsolatedRoot
    beta1: object
    beta2: object
    delta: object
    omega_x: object
    a_coeffs_1: tuple
    a_coeffs_2: tuple
    node_counts: tuple
    sectors: tuple

    @property
    def is_exact(self):
        return isinstance(self.energy, _EXACT_TYPES) and \
            isinstance(self.beta1, _EXACT_TYPES)

    def energy_mpf(self, prec=128):
        return _value_mpf(self.energy, prec)

    def omega_mpf(self, prec=128):
        return _value_mpf(self.omega_x, prec)

    def delta_mpf(self, prec=128):
        return _value_mpf(self.delta, prec)

    def energy_str(self):
        return _value_str(self.energy)

    def omega_str(self):
        return _value_str(self.omega_x)

    def delta_str(self):
        return _value_str(self.delta)


def _value_mpf(v, prec):
    if isinstance(v, IsolatedRoot):
        return v.to_mpf(prec)
    if isinstance(v, QuadraticSurd):
        return v.to_mpf(prec)
    if isinstance(v, (int, Fraction)):
        return to_mpf(v, prec)
    return mpmath.mpf(v)


def _value_str(v):
    if isinstance(v, _EXACT_TYPES):
        return exact_str(Fraction(v) if isinstance(v, int) else v)
    if isinstance(v, IsolatedRoot):
        return mpmath.nstr(v.to_mpf(160), 20)
    return mpmath.nstr(mpmath.mpf(v), 20)


def _sqrt_in_context(disc, d_hint):
    """Exact square root of a field element, extending Q by one surd if needed."""
    if isinstance(disc, QuadraticSurd) and not disc.is_rational:
        return sqrt_in_field(disc, disc.d)
    q = disc.as_fraction() if isinstance(disc, QuadraticSurd) else Fraction(disc)
    if q < 0:
        return None
    root = fraction_sqrt(q)
    if root is not None:
        return root
    if d_hint:
        root = sqrt_in_field(q, d_hint)
        if root is not None:
            return root
    split = _sqrt_squarefree_split(q.numerator * q.denominator)
    if split is None or split[0] == 1:
        return None
    d, k = split
    return QuadraticSurd(0, Fraction(k, q.denominator), d)


def _field_roots(w, d_hint):
    """Roots of a low-degree UniPoly over Q or Q(sqrt(d)); None if stuck."""
    if w.degree == 1:
        return [-w.coeffs[0] / w.coeffs[1]]
    if w.degree == 2:
        c0, c1, c2 = w.coeffs
        half_s = -c1 / (2 * c2)
        disc = half_s * half_s - c0 / c2
        root = _sqrt_in_context(disc, d_hint)
        if root is None:
            return None
        return [half_s - root, half_s + root]
    return None


def solve_system(n, nu):
    """All closed-form solutions at truncation order n and parity nu.

    Eliminates beta via the resultant of P_n(eps, beta) and P_n(eps, 2-beta),
    identifies the positive eps roots exactly where possible, and recovers
    the beta pair for each energy from the gcd of the two constraint
    polynomials over the energy's field.  Solutions are deduplicated under
    delta -> -delta (the kept representative has delta >= 0).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return []  # beta1 = beta2 = 0 contradicts beta1 + beta2 = 2
    p = build_polynomial(n, nu)
    p_mirror = p.subst_beta_linear(Fraction(2), Fraction(-1))
    res = resultant(p, p_mirror, eliminate="beta")
    if res.is_zero:
        raise DegenerateInputError("resultant vanished identically")
    sols = []
    for eps in identify_roots(res):
        positive = (exact_sign(eps) > 0) if isinstance(eps, _EXACT_TYPES) \
            else eps.to_mpf(120) > 0
        if not positive:
            continue
        if isinstance(eps, _EXACT_TYPES):
            found = _solve_betas_exact(p, n, nu, eps)
        else:
            found = None
        if found is None:
            found = _solve_betas_numeric(p, n, nu, eps)
        sols.extend(found)
    sols.sort(key=lambda s: float(s.energy_mpf(80)))
    return sols


def _solve_betas_exact(p, n, nu, eps):
    u = p.eval_eps(eps)
    u_mirror = u.compose_linear(Fraction(2), Fraction(-1))
    w = u.gcd(u_mirror)
    if w.degree < 1:
        return []
    d_hint = eps.d if isinstance(eps, QuadraticSurd) else None
    roots = _field_roots(w, d_hint)
    if roots is None:
        return None  # let the numeric path handle exotic factors
    out = []
    for beta in roots:
        delta = beta - 1
        if exact_sign(delta) < 0:
            continue  # keep the delta >= 0 representative of each pair
        beta2 = 2 - beta
        if exact_sign(u(beta)) != 0 or exact_sign(u(beta2)) != 0:
            continue  # reject extraneous resultant roots
        out.append(_finish_solution(n, nu, eps, beta, beta2))
    return out


def _solve_betas_numeric(p, n, nu, eps, prec=320):
    with mpmath.mp.workprec(prec):
        eps_m = _value_mpf(eps, prec)
        coeffs = [c.eval_mpf(eps_m) for c in reversed(p.coeffs)]
        roots = mpmath.polyroots(coeffs, maxsteps=300, extraprec=200)
        tol = mpmath.mpf(2) ** (-prec // 2)
        reals = sorted(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < tol)
        out = []
        for b in reals:
            if b < 1 - tol:
                continue
            # valid only if 2-b is also a root
            if not any(abs(2 - b - b2) < tol * 100 for b2 in reals):
                continue
            if b - 1 < tol:  # delta = 0
                b = mpmath.mpf(1)
            out.append(_finish_solution(n, nu, eps, b, 2 - b))
        return out


def _finish_solution(n, nu, eps, beta1, beta2):
    denom = term_count(n, nu)
    eps_exact = isinstance(eps, _EXACT_TYPES)
    omega = (Fraction(eps, denom) if isinstance(eps, int) else eps / denom) \
        if eps_exact else None
    if eps_exact and isinstance(beta1, _EXACT_TYPES):
        a1 = series_coefficients_from(eps, beta1, omega, nu, n)
        a2 = series_coefficients_from(eps, beta2, omega, nu, n)
        assert _is_zero(a1[-1]) and _is_zero(a2[-1]), "termination violated"
        delta = beta1 - 1
    else:
        prec = 320
        with mpmath.mp.workprec(prec):
            eps_m = _value_mpf(eps, prec)
            omega_m = eps_m / denom
            if omega is None:
                omega = omega_m
            b1 = _value_mpf(beta1, prec)
            b2 = _value_mpf(beta2, prec)
            a1 = series_coefficients_from(eps_m, b1, omega_m, nu, n)
            a2 = series_coefficients_from(eps_m, b2, omega_m, nu, n)
            scale = max(abs(c) for c in a1[:-1])
            assert abs(a1[-1]) < scale * mpmath.mpf(10) ** -40
            assert abs(a2[-1]) < scale * mpmath.mpf(10) ** -40
            delta = b1 - 1
    n1 = count_nodes(a1[:-1], nu)
    n2 = count_nodes(a2[:-1], nu)
    if _is_zero(delta):
        sectors = (classify_sector(n1, n2, 0),)
    else:
        sectors = pair_sectors(n1, n2)
    return QuasiExactSolution(
        n=n, nu=nu, energy=eps, beta1=beta1, beta2=beta2, delta=delta,
        omega_x=omega, a_coeffs_1=tuple(a1[:-1]), a_coeffs_2=tuple(a2[:-1]),
        node_counts=(n1, n2), sectors=sectors)


def series_coefficients(sol):
    """Recompute both factors' coefficient lists (a_0..a_n) for a solution."""
    a1 = series_coefficients_from(sol.energy if sol.is_exact else sol.energy_mpf(320),
                                  sol.beta1, sol.omega_x, sol.nu, sol.n)
    a2 = series_coefficients_from(sol.energy if sol.is_exact else sol.energy_mpf(320),
                                  sol.beta2, sol.omega_x, sol.nu, sol.n)
    return tuple(a1[:-1]), tuple(a2[:-1])


def ode_residual(sol, which, eta, prec=256):
    """Residual of -g'' - eps eta^2 g + omega^2 eta^6 g + beta g at one point.

    g is rebuilt from the stored series with its exponential prefactor and
    differentiated analytically, so the residual of a true solution is zero
    to working precision.
    """
    with mpmath.mp.workprec(prec):
        eps = sol.energy_mpf(prec)
        omega = sol.omega_mpf(prec)
        beta = _value_mpf(sol.beta1 if which == 1 else sol.beta2, prec)
        coeffs = sol.a_coeffs_1 if which == 1 else sol.a_coeffs_2
        a = [_value_mpf(c, prec) for c in coeffs]
        e = mpmath.mpf(eta)
        nu = sol.nu
        f = fp = fpp = mpmath.mpf(0)
        for i, c in enumerate(a):
            k = 2 * i + nu
            f += c * e ** k
            if k >= 1:
                fp += c * k * e ** (k - 1)
            if k >= 2:
                fpp += c * k * (k - 1) * e ** (k - 2)
        u_p = omega * e ** 3            # derivative of omega eta^4 / 4
        u_pp = 3 * omega * e ** 2
        pref = mpmath.exp(-omega * e ** 4 / 4)
        g = pref * f
        gpp = pref * (fpp - 2 * u_p * fp + (u_p ** 2 - u_pp) * f)
        return -gpp - eps * e ** 2 * g + omega ** 2 * e ** 6 * g + beta * g


def catalog(n_max, nu1_n_max=2):
    """Ordered closed-form solutions (the reference-table layout).

    nu = 0 rows run n = 1..n_max; nu = 1 rows are capped at ``nu1_n_max``
    (the catalog's canonical depth) unless overridden.  Within each n the
    nondegenerate (delta = 0) rows come first, then the degenerate pairs,
    each group in descending energy.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    rows = []
    for nu in (0, 1):
        top = n_max if nu == 0 else min(n_max, nu1_n_max)
        for n in range(1, top + 1):
            sols = solve_system(n, nu)
            zero = [s for s in sols if _is_zero(s.delta)]
            pairs = [s for s in sols if not _is_zero(s.delta)]
            key = lambda s: -s.energy_mpf(80)
            rows.extend(sorted(zero, key=key))
            rows.extend(sorted(pairs, key=key))
    return rows


def table1(n_max, nu1_n_max=2):
    """Catalog rows packaged as Level records."""
    return [solution_level(s) for s in catalog(n_max, nu1_n_max)]


def solution_level(sol):
    """Package a QuasiExactSolution as a Level record."""
    n1, n2 = sol.node_counts
    show = (n1, n2) if n1 >= n2 else (n2, n1)
    return Level(
        energy=float(sol.energy_mpf(120)),
        delta=float(sol.delta_mpf(120)),
        sectors=sol.sectors,
        method="exact",
        method_params={"n": sol.n, "nu": sol.nu},
        node_counts=show,
        accuracy_digits=None if not sol.is_exact else 50,
        exact_energy=sol.energy if sol.is_exact else None,
    )
