"""Wavefunction geometry, assembly, normalization, and grid export.

Parabolic coordinates x = eta1*eta2, y = (eta1^2 - eta2^2)/2 separate the
omega_y = 2*omega_x problem; this module rebuilds full 2D eigenfunctions
from the separated factors, normalizes them by tensor Gauss-Legendre
quadrature (the area element is (eta1^2 + eta2^2) d(eta1) d(eta2)), and
samples them on cartesian grids for plotting.
"""

import math

import numpy as np

from .errors import AccuracyError, InvalidPairingError
from .numkit.quadrature import gl_grid

PRODUCT, PLUS, MINUS = "product", "plus", "minus"


def to_parabolic(x, y):
    """Map cartesian (x, y) to parabolic (eta1, eta2), eta2 >= 0.

    eta1 carries the sign of x; on the positive y-axis (x = 0) the limit
    from x > 0 is used.  Accepts scalars or numpy arrays.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rho = np.hypot(x, y)
    s = np.where(x >= 0, 1.0, -1.0)
    eta1 = s * np.sqrt(np.maximum(rho + y, 0.0))
    eta2 = np.sqrt(np.maximum(rho - y, 0.0))
    if eta1.ndim == 0:
        return float(eta1), float(eta2)
    return eta1, eta2


def from_parabolic(eta1, eta2):
    """Inverse map: (eta1, eta2) -> (x, y)."""
    eta1 = np.asarray(eta1, dtype=float)
    eta2 = np.asarray(eta2, dtype=float)
    x = eta1 * eta2
    y = 0.5 * (eta1 * eta1 - eta2 * eta2)
    if x.ndim == 0:
        return float(x), float(y)
    return x, y


def eval_factor(coeffs, omega_x, nu, eta):
    """Terminating factor g(eta) = exp(-omega_x eta^4/4) sum a_i eta^(2i+nu)."""
    eta = np.asarray(eta, dtype=float)
    z = eta * eta
    acc = np.zeros_like(z)
    for c in reversed([float(c) for c in coeffs]):
        acc = acc * z + c
    if nu:
        acc = acc * eta
    out = np.exp(-float(omega_x) * z * z / 4.0) * acc
    return float(out) if out.ndim == 0 else out


class WaveFunction:
    """A full 2D eigenfunction assembled from two separated factors."""

    def __init__(self, coeffs1, coeffs2, omega_x, nu, beta1, beta2,
                 mode=PRODUCT, norm=1.0):
        if mode not in (PRODUCT, PLUS, MINUS):
            raise ValueError("unknown combination mode %r" % mode)
        delta_zero = beta1 == beta2
        if mode == PRODUCT and not delta_zero:
            raise InvalidPairingError(
                "plain products are only continuous for the nondegenerate "
                "(beta1 = beta2) states; use the plus/minus combinations")
        if mode != PRODUCT and delta_zero:
            raise InvalidPairingError(
                "plus/minus combinations need a degenerate pair (delta != 0)")
        self.coeffs1 = tuple(float(c) for c in coeffs1)
        self.coeffs2 = tuple(float(c) for c in coeffs2)
        self.omega_x = float(omega_x)
        self.nu = int(nu)
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.mode = mode
        self.norm = float(norm)

    @classmethod
    def from_solution(cls, sol, mode=None):
        """Build from a closed-form solution record (exactalg)."""
        delta_zero = sol.delta == 0
        if mode is None:
            mode = PRODUCT if delta_zero else PLUS
        return cls(sol.a_coeffs_1, sol.a_coeffs_2, float(sol.omega_mpf(80)),
                   sol.nu, float(sol.beta1 if not hasattr(sol.beta1, "to_mpf")
                                 else sol.beta1.to_mpf(80)),
                   float(sol.beta2 if not hasattr(sol.beta2, "to_mpf")
                         else sol.beta2.to_mpf(80)),
                   mode=mode)

    # -- evaluation ------------------------------------------------------

    def value_parabolic(self, eta1, eta2):
        g1 = lambda e: eval_factor(self.coeffs1, self.omega_x, self.nu, e)
        g2 = lambda e: eval_factor(self.coeffs2, self.omega_x, self.nu, e)
        if self.mode == PRODUCT:
            val = g1(eta1) * g2(eta2)
        elif self.mode == PLUS:
            val = g1(eta1) * g2(eta2) + g1(eta2) * g2(eta1)
        else:
            val = g1(eta1) * g2(eta2) - g1(eta2) * g2(eta1)
        return self.norm * val

    def __call__(self, x, y):
        eta1, eta2 = to_parabolic(x, y)
        return self.value_parabolic(eta1, eta2)

    # -- normalization ---------------------------------------------------

    def quad_cutoff(self, tail_log=50.0):
        """Box half-width L with quadrature tail below exp(-tail_log)."""
        return (2.0 * tail_log / self.omega_x) ** 0.25

    def norm_integral(self, n_nodes=200):
        """Integral of |psi|^2 over the plane at the current normalization.

        Tensor Gauss-Legendre in (eta1, eta2) over [-L, L] x [0, L] with the
        parabolic area element; node doubling must confirm 1e-11 relative
        accuracy, else AccuracyError.
        """
        vals = []
        for n in (n_nodes, 2 * n_nodes):
            L = self.quad_cutoff()
            x1, w1 = gl_grid(-L, L, n)
            x2, w2 = gl_grid(0.0, L, n)
            E1, E2 = np.meshgrid(x1, x2, indexing="ij")
            W = np.outer(w1, w2)
            psi = self.value_parabolic(E1, E2)
            vals.append(float(np.sum(W * psi * psi * (E1 * E1 + E2 * E2))))
        if abs(vals[1] - vals[0]) > 1e-11 * abs(vals[1]):
            raise AccuracyError("norm quadrature did not converge", best=vals[1])
        return vals[1]

    def normalized(self):
        """Return a copy scaled so that the plane integral of |psi|^2 is 1."""
        integral = self.norm_integral()
        return WaveFunction(self.coeffs1, self.coeffs2, self.omega_x, self.nu,
                            self.beta1, self.beta2, self.mode,
                            norm=self.norm / math.sqrt(integral))


def normalize(wf):
    """Normalization constant N with integral |N psi|^2 = 1 (wf unscaled)."""
    return wf.norm / math.sqrt(wf.norm_integral()) if wf.norm != 1.0 \
        else 1.0 / math.sqrt(wf.norm_integral())


def overlap(wf_a, wf_b, n_nodes=200):
    """Plane inner product of two wavefunctions sharing omega_x."""
    if abs(wf_a.omega_x - wf_b.omega_x) > 1e-15:
        raise ValueError("overlap needs a common trap frequency")
    L = max(wf_a.quad_cutoff(), wf_b.quad_cutoff())
    x1, w1 = gl_grid(-L, L, n_nodes)
    x2, w2 = gl_grid(0.0, L, n_nodes)
    E1, E2 = np.meshgrid(x1, x2, indexing="ij")
    W = np.outer(w1, w2)
    return float(np.sum(W * wf_a.value_parabolic(E1, E2)
                        * wf_b.value_parabolic(E1, E2) * (E1 * E1 + E2 * E2)))


_FD8 = (-1.0 / 560, 8.0 / 315, -0.2, 1.6, -205.0 / 72, 1.6, -0.2, 8.0 / 315,
        -1.0 / 560)


def hamiltonian_residual(wf, energy, x, y, h=2e-3):
    """Relative residual of (H - energy) psi at one off-axis point.

    H = -d2/dx2 - d2/dy2 + omega_x^2 x^2 + 4 omega_x^2 y^2 + 1/rho, with the
    Laplacian from 8th-order central differences.
    """
    rho = math.hypot(x, y)
    if rho < 10 * h:
        raise ValueError("point too close to the Coulomb singularity")
    xs = np.array([x + k * h for k in range(-4, 5)])
    ys = np.array([y + k * h for k in range(-4, 5)])
    row = wf(xs, np.full(9, y))
    col = wf(np.full(9, x), ys)
    lap = (np.dot(_FD8, row) + np.dot(_FD8, col)) / (h * h)
    w2 = wf.omega_x ** 2
    val = wf(x, y)
    resid = -lap + (w2 * x * x + 4 * w2 * y * y + 1.0 / rho) * val - energy * val
    scale = abs(energy) * max(abs(val), 1e-30)
    return abs(resid) / scale


def sample_grid(wf, box, n):
    """n x n row-major samples of psi on a uniform cartesian grid.

    Returns (xs, ys, values) with values[i, j] = psi(xs[i], ys[j]).
    """
    if n < 2:
        raise ValueError("need at least a 2 x 2 grid")
    x_min, x_max, y_min, y_max = box
    xs = np.linspace(x_min, x_max, n)
    ys = np.linspace(y_min, y_max, n)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    return xs, ys, wf(X, Y)


def degenerate_pair_wavefunctions(omega_x_label):
    """Normalized (psi_plus, psi_minus, solution) for a catalog pair level.

    omega_x_label is the exact trap frequency (Fraction) of a degenerate
    pair in the closed-form catalog, e.g. 1/32 or 1/16.
    """
    from fractions import Fraction

    from . import exactalg

    w = Fraction(omega_x_label)
    for n in (1, 2, 3, 4):
        for nu in (0, 1):
            for sol in exactalg.solve_system(n, nu):
                if sol.delta != 0 and sol.is_exact and sol.omega_x == w:
                    plus = WaveFunction.from_solution(sol, PLUS).normalized()
                    minus = WaveFunction.from_solution(sol, MINUS).normalized()
                    return plus, minus, sol
    raise LookupError("no degenerate closed-form level at omega_x = %s" % w)
