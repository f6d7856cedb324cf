"""Truncated-power-series (Fröbenius) solver for arbitrary frequencies.

The raw series g(eta) = sum_{i<=K} b_i eta^(2i+nu) obeys

    b_i = [beta b_{i-1} - eps b_{i-2} + omega_x^2 b_{i-4}] / [(2i+nu)(2i+nu-1)]

with b_0 = 1.  Imposing a hard wall g(R, beta_j) = 0 on both factors turns
the bound-state problem into finding common zeros (eps, delta) of
F1 = g(R, 1+delta) and F2 = g(R, 1-delta); walls far enough out reproduce
the unconfined levels, so the solver ladders (K, R) upward until the
reported digits freeze.

All arithmetic runs in mpmath at an explicit precision sized to the dynamic
range of the partial sums; results are re-verified at doubled precision.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from .errors import (BracketError, InsufficientPrecisionError,
                     RootNotFoundError, SeedFailureError)
from .model import Level, classify_sector, pair_sectors
from .numkit import digits_agree, precision_for, to_mpf, working_precision

LADDER_START = (60, Fraction(5))
LADDER_K_STEP = 20
LADDER_R_STEP = Fraction(1, 2)


@dataclass
class SeriesState:
    """Raw series coefficients with their parameter derivatives."""

    b: tuple
    d_eps: tuple
    d_beta: tuple
    eps: object
    beta: object
    omega_x: object
    nu: int
    K: int
    precision: int


def raw_series(eps, beta, omega_x, nu, K):
    """Series coefficients b_0..b_K and companion derivative series.

    Evaluated at the ambient mpmath precision; wrap calls in
    ``working_precision``.
    """
    if K < 4:
        raise ValueError("K must be at least 4")
    ctx = mpmath.mp
    eps = to_mpf(eps)
    beta = to_mpf(beta)
    w2 = to_mpf(omega_x) ** 2
    b = [ctx.mpf(0)] * (K + 1)
    de = [ctx.mpf(0)] * (K + 1)
    db = [ctx.mpf(0)] * (K + 1)
    b[0] = ctx.mpf(1)
    for i in range(1, K + 1):
        den = (2 * i + nu) * (2 * i + nu - 1)
        t = beta * b[i - 1]
        te = beta * de[i - 1]
        tb = b[i - 1] + beta * db[i - 1]
        if i >= 2:
            t -= eps * b[i - 2]
            te -= b[i - 2] + eps * de[i - 2]
            tb -= eps * db[i - 2]
        if i >= 4:
            t += w2 * b[i - 4]
            te += w2 * de[i - 4]
            tb += w2 * db[i - 4]
        b[i] = t / den
        de[i] = te / den
        db[i] = tb / den
    return SeriesState(tuple(b), tuple(de), tuple(db), eps, beta,
                       to_mpf(omega_x), nu, K, ctx.prec)


def series_boundary(state, R):
    """(F, dF/deps, dF/dbeta, max_term) of the series at eta = R.

    Terms are accumulated with Neumaier compensation and the largest
    partial term is tracked: values smaller than max_term * 2^(-prec/2)
    have cancelled past the point of carrying meaning.
    """
    ctx = mpmath.mp
    R = to_mpf(R)
    z = R * R
    s = ctx.mpf(0)
    comp = ctx.mpf(0)
    se = ctx.mpf(0)
    sb = ctx.mpf(0)
    zp = ctx.mpf(1)
    max_term = ctx.mpf(0)
    for i in range(state.K + 1):
        term = state.b[i] * zp
        a = abs(term)
        if a > max_term:
            max_term = a
        t = s + term
        if abs(s) >= a:
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        se += state.d_eps[i] * zp
        sb += state.d_beta[i] * zp
        zp *= z
    rnu = R ** state.nu
    return (s + comp) * rnu, se * rnu, sb * rnu, max_term * rnu


def boundary_values(eps, delta, omega_x, nu, R, K, min_meaningful=None):
    """Boundary functions F1, F2, their Jacobian, and the zero threshold.

    Returns (F1, F2, ((dF1/de, dF1/dd), (dF2/de, dF2/dd)), zero_threshold)
    where zero_threshold = max_partial_term * 2^(-prec/2); values below it
    are converged zeros of the truncated problem.  If ``min_meaningful`` is
    given and the summation noise floor exceeds it, the precision cannot
    support the requested resolution and InsufficientPrecisionError is
    raised.
    """
    ctx = mpmath.mp
    s1 = raw_series(eps, to_mpf(1) + to_mpf(delta), omega_x, nu, K)
    s2 = raw_series(eps, to_mpf(1) - to_mpf(delta), omega_x, nu, K)
    f1, f1e, f1b, m1 = series_boundary(s1, R)
    f2, f2e, f2b, m2 = series_boundary(s2, R)
    mx = max(m1, m2)
    noise = mx * ctx.mpf(2) ** (2 - ctx.prec)
    if min_meaningful is not None and noise > min_meaningful:
        raise InsufficientPrecisionError(
            "noise floor %s exceeds requested scale %s at %d bits"
            % (mpmath.nstr(noise, 3), mpmath.nstr(to_mpf(min_meaningful), 3), ctx.prec))
    jac = ((f1e, f1b), (f2e, -f2b))
    zero_threshold = mx * ctx.mpf(2) ** (-ctx.prec // 2)
    return f1, f2, jac, zero_threshold


@dataclass
class FmResult:
    """A converged level with its solve parameters and ladder trace."""

    eps: object
    delta: object
    nu: int
    omega_x: object
    K: int
    R: object
    precision: int
    converged_digits: int
    node_counts: tuple = None
    trace: tuple = ()

    def as_level(self, accuracy_digits=None):
        n1, n2 = self.node_counts if self.node_counts else (self.nu, self.nu)
        if self.delta == 0:
            sectors = (classify_sector(n1, n2, 0),)
        else:
            sectors = pair_sectors(n1, n2)
        return Level(energy=float(self.eps), delta=float(self.delta),
                     sectors=sectors, method="FM",
                     method_params={"K": self.K, "R": float(self.R),
                                    "precision_bits": self.precision},
                     node_counts=(max(n1, n2), min(n1, n2)),
                     accuracy_digits=accuracy_digits or self.converged_digits)


def _series_g(state, R):
    f, _, _, _ = series_boundary(state, R)
    return f


def count_series_nodes(eps, beta, omega_x, nu, R, K, samples=240):
    """Full-line node count of the truncated factor, sampled on (0, 0.98 R).

    The wall zero at eta = R is excluded; interior sign changes are doubled
    and the origin node added for odd parity.
    """
    ctx = mpmath.mp
    state = raw_series(eps, beta, omega_x, nu, K)
    z_prev = None
    changes = 0
    top = to_mpf(R) * ctx.mpf("0.98")
    for k in range(1, samples + 1):
        eta = top * k / samples
        val = _polyval_z(state.b, eta * eta)
        s = 1 if val > 0 else (-1 if val < 0 else 0)
        if s and z_prev and s != z_prev:
            changes += 1
        if s:
            z_prev = s
    return 2 * changes + nu


def _polyval_z(coeffs, z):
    acc = mpmath.mp.mpf(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def solve_delta0(omega_x, nu, R, K, bracket=None, root_index=1,
                 precision_bits=None, target_digits=12, with_nodes=True):
    """The root_index-th zero in eps of g(R, 1), nondegenerate sector.

    Scans the bracket for sign changes of the boundary function, then
    polishes the selected one by safeguarded Newton.
    """
    w = float(omega_x)
    if bracket is None:
        bracket = (0.2 * w, 26.0 * w)
    prec = precision_bits or precision_for(K, R, target_digits)
    scan_prec = min(prec, 320)
    npts = 32 if (bracket[1] - bracket[0]) < 0.12 * bracket[1] else 320
    with working_precision(scan_prec):
        lo, hi = to_mpf(bracket[0]), to_mpf(bracket[1])
        grid = [lo + (hi - lo) * k / npts for k in range(npts + 1)]
        vals = []
        scan_trace = []
        for e in grid:
            f, _, _, _ = series_boundary(raw_series(e, 1, omega_x, nu, K), R)
            vals.append(f)
            scan_trace.append((float(e), mpmath.sign(f)))
        crossings = [k for k in range(npts)
                     if mpmath.sign(vals[k]) * mpmath.sign(vals[k + 1]) < 0]
        if len(crossings) < root_index:
            raise RootNotFoundError(
                "bracket holds %d sign changes, needed %d"
                % (len(crossings), root_index), trace=scan_trace)
        k = crossings[root_index - 1]
        sign_lo = mpmath.sign(vals[k])
    with working_precision(prec):
        e_lo, e_hi = to_mpf(grid[k]), to_mpf(grid[k + 1])
        eps = (e_lo + e_hi) / 2
        tol = mpmath.mpf(10) ** (-(target_digits + 4)) * max(1, abs(e_hi))
        for _ in range(prec):
            f, fe, _, mx = series_boundary(raw_series(eps, 1, omega_x, nu, K), R)
            if mpmath.sign(f) * sign_lo <= 0:
                e_hi = eps
            else:
                e_lo = eps
            step = f / fe if fe != 0 else (e_hi - e_lo) / 2
            nxt = eps - step
            if not (e_lo < nxt < e_hi):
                nxt = (e_lo + e_hi) / 2
            if abs(nxt - eps) < tol:
                eps = nxt
                break
            eps = nxt
        nodes = count_series_nodes(eps, 1, omega_x, nu, R, K) if with_nodes else nu
        return FmResult(eps=eps, delta=mpmath.mpf(0), nu=nu, omega_x=omega_x,
                        K=K, R=R, precision=prec,
                        converged_digits=target_digits,
                        node_counts=(nodes, nodes))


def solve_pair(omega_x, nu, R, K, seed, precision_bits=None, target_digits=12,
               max_iter=100, with_nodes=True):
    """Common zero (eps, |delta|) of F1 and F2 near the seed.

    Damped Newton with the analytic Jacobian; the step is halved while the
    residual norm fails to decrease.  A solution collapsing onto delta = 0
    is reported as SeedFailureError suggesting solve_delta0.
    """
    prec = precision_bits or precision_for(K, R, target_digits)
    with working_precision(prec):
        eps, delta = to_mpf(seed[0]), abs(to_mpf(seed[1]))
        tol = mpmath.mpf(10) ** (-(target_digits + 2))
        f1, f2, jac, thr = boundary_values(eps, delta, omega_x, nu, R, K)
        rnorm = abs(f1) + abs(f2)
        for it in range(max_iter):
            (a, b), (c, d) = jac
            det = a * d - b * c
            if det == 0:
                raise SeedFailureError("singular Jacobian during Newton")
            s_e = (-d * f1 + b * f2) / det
            s_d = (c * f1 - a * f2) / det
            lam = mpmath.mpf(1)
            for _ in range(25):
                e_n, d_n = eps + lam * s_e, delta + lam * s_d
                f1n, f2n, jac_n, thr = boundary_values(e_n, d_n, omega_x, nu, R, K)
                rn = abs(f1n) + abs(f2n)
                if rn < rnorm or rnorm <= thr:
                    break
                lam /= 2
            eps, delta, f1, f2, jac, rnorm = e_n, d_n, f1n, f2n, jac_n, rn
            step = max(abs(lam * s_e), abs(lam * s_d))
            if step < tol * max(1, abs(eps)) and rnorm <= thr * 2 ** 12:
                break
        else:
            raise SeedFailureError(
                "no convergence from seed (%s, %s) after %d iterations"
                % (seed[0], seed[1], max_iter))
        if abs(delta) < mpmath.mpf(10) ** (-target_digits) / 10:
            raise SeedFailureError(
                "delta collapsed to 0; this is a nondegenerate state, "
                "use solve_delta0")
        delta = abs(delta)  # F-swap symmetry folds the sign
        if with_nodes:
            n1 = count_series_nodes(eps, 1 + delta, omega_x, nu, R, K)
            n2 = count_series_nodes(eps, 1 - delta, omega_x, nu, R, K)
        else:
            n1 = n2 = nu
        return FmResult(eps=eps, delta=delta, nu=nu, omega_x=omega_x,
                        K=K, R=R, precision=prec,
                        converged_digits=target_digits,
                        node_counts=(n1, n2))


def scan_seeds(omega_x, nu, R, K, eps_range, delta_range, grid=(40, 40),
               precision_bits=192):
    """Coarse common-zero candidates on an (eps, delta >= 0) grid.

    Emits the centers of grid cells across whose corners both boundary
    functions change sign.  delta is restricted to nonnegative values; the
    delta < 0 seeds are mirrors by the F-swap symmetry.
    """
    ne, nd = grid
    with working_precision(precision_bits):
        e_lo, e_hi = to_mpf(eps_range[0]), to_mpf(eps_range[1])
        d_lo, d_hi = to_mpf(delta_range[0]), to_mpf(delta_range[1])
        if d_lo < 0:
            d_lo = mpmath.mpf(0)
        es = [e_lo + (e_hi - e_lo) * i / ne for i in range(ne + 1)]
        ds = [d_lo + (d_hi - d_lo) * j / nd for j in range(nd + 1)]
        sign1 = {}
        sign2 = {}
        for i, e in enumerate(es):
            for j, d in enumerate(ds):
                f1, f2, _, _ = boundary_values(e, d, omega_x, nu, R, K)
                sign1[i, j] = mpmath.sign(f1)
                sign2[i, j] = mpmath.sign(f2)
        seeds = []
        for i in range(ne):
            for j in range(nd):
                c1 = {sign1[i, j], sign1[i + 1, j], sign1[i, j + 1], sign1[i + 1, j + 1]}
                c2 = {sign2[i, j], sign2[i + 1, j], sign2[i, j + 1], sign2[i + 1, j + 1]}
                if len(c1 - {0}) > 1 and len(c2 - {0}) > 1:
                    seeds.append((float((es[i] + es[i + 1]) / 2),
                                  float((ds[j] + ds[j + 1]) / 2)))
        return seeds


def _ladder(omega_x, max_rungs=40):
    """(K, R) rungs: K += 20 every rung, R += 0.5 every other rung.

    The base rungs (60, 5.0), (80, 5.0), (100, 5.5), ... are tuned for
    omega_x = 1/16; R carries the natural quartic length omega_x^(-1/4),
    so the wall sits at the same dimensionless distance at any frequency
    (scale factor 1 at omega_x = 1/16, where the reference trace lives).
    """
    K0, R0 = LADDER_START
    scale = (16.0 * float(omega_x)) ** -0.25
    for r in range(max_rungs):
        yield K0 + LADDER_K_STEP * r, float(R0 + LADDER_R_STEP * (r // 2)) * scale


def converge(omega_x, nu, selector, target_digits=8, precision_bits=None,
             max_rungs=40, pair_delta_range=(0.05, 3.0)):
    """Ladder (K, R) upward until the level's digits freeze.

    ``selector`` is ``("delta0", k)`` for the k-th nondegenerate level or
    ``("pair", k)`` for the k-th degenerate pair (both 1-based, ordered by
    energy).  Consecutive rungs must agree to ``target_digits`` significant
    digits in the energy (and in delta for pairs); the accepted rung is
    re-verified at doubled precision.
    """
    kind, index = selector
    w = float(omega_x)
    trace = []
    prev = None
    seed = None
    bracket = None
    for K, R in _ladder(omega_x, max_rungs):
        prec = precision_bits or precision_for(K, R, target_digits)
        if kind == "delta0":
            res = solve_delta0(omega_x, nu, R, K, bracket=bracket,
                               root_index=index if bracket is None else 1,
                               precision_bits=prec,
                               target_digits=target_digits + 4, with_nodes=False)
            bracket = (float(res.eps) * 0.97, float(res.eps) * 1.03)
        else:
            if seed is None:
                seed = _locate_pair(omega_x, nu, R, K, index, prec,
                                    pair_delta_range)
            res = solve_pair(omega_x, nu, R, K, seed, precision_bits=prec,
                             target_digits=target_digits + 4, with_nodes=False)
            seed = (res.eps, res.delta)
        trace.append({"K": K, "R": R, "eps": res.eps, "delta": res.delta})
        if prev is not None:
            ok = digits_agree(res.eps, prev.eps) >= target_digits
            if kind == "pair":
                ok = ok and digits_agree(res.delta, prev.delta) >= target_digits
            if ok:
                verified = _verify_double_precision(res, omega_x, nu, kind,
                                                    target_digits)
                verified.trace = tuple(trace)
                return verified
        prev = res
    raise InsufficientPrecisionError(
        "ladder exhausted before %d-digit agreement" % target_digits)


def _cluster_seeds(seeds):
    """Group scan cells belonging to one level (within 2 percent in energy)."""
    groups = []
    for s in sorted(seeds):
        if groups and abs(s[0] - groups[-1][-1][0]) < 0.02 * abs(s[0]):
            groups[-1].append(s)
        else:
            groups.append([s])
    return [g[len(g) // 2] for g in groups]


def _locate_pair(omega_x, nu, R, K, index, prec, delta_range):
    """Find the index-th genuine degenerate pair, lowest energy first.

    Scan cells hugging the delta = 0 axis are artifacts of the
    nondegenerate roots (both boundary functions cross zero there); each
    candidate is therefore validated by a full Newton solve and collapsed
    or duplicate candidates are dropped.  The delta window widens if too
    few pairs show up.
    """
    w = float(omega_x)
    drange = delta_range
    valid = []
    for attempt in range(4):
        candidates = _cluster_seeds(
            scan_seeds(omega_x, nu, R, K, (0.2 * w, 26.0 * w), drange))
        valid = []
        for cand in candidates:
            try:
                res = solve_pair(omega_x, nu, R, K, cand, precision_bits=prec,
                                 target_digits=8, with_nodes=False)
            except SeedFailureError:
                continue
            if any(abs(res.eps - v[0]) < 1e-6 * abs(res.eps) for v in valid):
                continue
            valid.append((res.eps, res.delta))
        valid.sort(key=lambda v: v[0])
        if len(valid) >= index:
            return valid[index - 1]
        drange = (drange[0], drange[1] * 1.8)
    raise RootNotFoundError(
        "scan found %d pair levels, needed %d (delta window up to %.1f)"
        % (len(valid), index, drange[1]))


def _verify_double_precision(res, omega_x, nu, kind, target_digits):
    """Re-solve at 2x precision; converged digits must survive."""
    prec2 = res.precision * 2
    if kind == "delta0":
        lo = float(res.eps) * 0.98
        hi = float(res.eps) * 1.02 + 1e-12
        check = solve_delta0(omega_x, nu, res.R, res.K, bracket=(lo, hi),
                             root_index=1, precision_bits=prec2,
                             target_digits=target_digits + 6, with_nodes=False)
    else:
        check = solve_pair(omega_x, nu, res.R, res.K, (res.eps, res.delta),
                           precision_bits=prec2, target_digits=target_digits + 6,
                           with_nodes=False)
    if digits_agree(check.eps, res.eps) < target_digits:
        raise InsufficientPrecisionError(
            "digits changed under doubled precision; result not trustworthy")
    res.converged_digits = target_digits
    res.eps = check.eps
    res.delta = check.delta
    with working_precision(res.precision):
        if kind == "delta0":
            n1 = n2 = count_series_nodes(res.eps, 1, omega_x, nu, res.R, res.K)
        else:
            n1 = count_series_nodes(res.eps, 1 + res.delta, omega_x, nu, res.R, res.K)
            n2 = count_series_nodes(res.eps, 1 - res.delta, omega_x, nu, res.R, res.K)
    res.node_counts = (n1, n2)
    return res


TABLE2_RUNGS = ((60, Fraction(5)), (70, Fraction(5)), (90, Fraction(11, 2)),
                (100, Fraction(11, 2)), (120, Fraction(11, 2)), (140, Fraction(6)))


def table2(omega_x=Fraction(1, 16), nu=0, rungs=TABLE2_RUNGS,
           seed=(0.7, 0.9), precision_bits=None, target_digits=12):
    """Convergence trace of the known degenerate pair, rung by rung."""
    rows = []
    seed_now = seed
    for K, R in rungs:
        res = solve_pair(omega_x, nu, R, K, seed_now,
                         precision_bits=precision_bits or precision_for(K, R, target_digits),
                         target_digits=target_digits)
        rows.append({"K": K, "R": R, "eps": res.eps, "delta": res.delta})
        seed_now = (res.eps, res.delta)
    return rows


# omega values of the reference spectra table, as printed
TABLE3_OMEGAS = (Fraction(1, 64), Fraction(1, 32), Fraction(1, 24),
                 Fraction(1, 16), Fraction(1, 8), Fraction(1, 6),
                 Fraction(1, 2), Fraction(1), Fraction(2))


def _exact_catalog():
    from . import exactalg
    cat = []
    for n in (1, 2, 3):
        for nu in (0, 1):
            cat.extend(exactalg.solve_system(n, nu))
    return cat


def table3(omegas=TABLE3_OMEGAS, digits=8, exact_digits=12, precision_bits=None):
    """Four low-lying levels per frequency: the spectra reference table.

    Columns: lowest nondegenerate nu=0 and nu=1 levels, then the lowest
    degenerate pair for nu=0 and nu=1.  Cells whose frequency admits a
    closed-form solution are converged to ``exact_digits`` and carry the
    exact energy on the Level record.
    """
    catalog = _exact_catalog()
    rows = []
    for w in omegas:
        row = []
        for kind, nu in (("delta0", 0), ("delta0", 1), ("pair", 0), ("pair", 1)):
            match = _catalog_match(catalog, w, kind, nu)
            want = exact_digits if match is not None else digits
            res = converge(w, nu, (kind, 1), target_digits=want,
                           precision_bits=precision_bits)
            level = res.as_level()
            if match is not None:
                level = Level(energy=level.energy, delta=level.delta,
                              sectors=level.sectors, method="FM",
                              method_params=level.method_params,
                              node_counts=level.node_counts,
                              accuracy_digits=level.accuracy_digits,
                              exact_energy=match.energy)
            row.append(level)
        rows.append((w, tuple(row)))
    return rows


def _catalog_match(catalog, omega_x, kind, nu):
    from .numkit.exactnum import QuadraticSurd

    w = Fraction(omega_x)
    for sol in catalog:
        if sol.nu != nu:
            continue
        if isinstance(sol.omega_x, QuadraticSurd) or sol.omega_x != w:
            continue
        is_pair = sol.delta != 0
        if (kind == "pair") != is_pair:
            continue
        # only the lowest state of its class is a table cell
        lowest = {(0, (0, 0)), (1, (1, 1))} if kind == "delta0" else \
            {(0, (0, 2)), (0, (2, 0)), (1, (1, 3)), (1, (3, 1))}
        if (nu, sol.node_counts) in lowest:
            return sol
    return None
