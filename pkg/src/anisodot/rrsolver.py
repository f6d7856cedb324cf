"""Rayleigh-Ritz diagonalization in the 2D oscillator product basis.

The Coulomb term is reduced to 1D closed forms through the Gaussian
transform 1/rho = (2/sqrt(pi)) * int_0^inf exp(-t^2 rho^2) dt, so matrix
elements never touch the singularity.  Bases are square cuts per parity
sector: the k lowest quantum numbers of the right parity on each axis,
dimension D = k^2.
"""

from dataclasses import dataclass
import math

import numpy as np

from .model import Level, SectorLabel
from .numkit.eigen import sym_eigen
from .numkit.quadrature import quad_semiinf, semiinf_rule

SECTORS = (("+", "+"), ("-", "+"), ("+", "-"), ("-", "-"))


def gaussian_table(maxq, omega, t):
    """G[j, k] = <phi_j | exp(-t^2 x^2) | phi_k> for the 1D omega oscillator.

    phi_m are eigenfunctions of -d2/dx2 + omega^2 x^2 (energy (2m+1) omega).
    Vectorized over t; built by a two-index recurrence that stays O(1) in
    magnitude, then symmetrized.  G[0, 0] = sqrt(omega/(omega+t^2)).
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    c = 1.0 + t * t / omega
    alpha = (1.0 - c) / c
    G = np.zeros((maxq + 1, maxq + 1, t.size))
    G[0, 0] = 1.0 / np.sqrt(c)
    for j in range(maxq):          # column 0, then row 0 by symmetry
        if j >= 1:
            G[j + 1, 0] = alpha * math.sqrt(j / (j + 1.0)) * G[j - 1, 0]
        G[0, j + 1] = G[j + 1, 0]
    for j in range(maxq):
        for k in range(1, maxq + 1):
            acc = (1.0 / c) * math.sqrt(k / (j + 1.0)) * G[j, k - 1]
            if j >= 1:
                acc = acc + alpha * math.sqrt(j / (j + 1.0)) * G[j - 1, k]
            G[j + 1, k] = acc
    return 0.5 * (G + G.transpose(1, 0, 2))


def gaussian_me(m, m2, omega, t):
    """Single Gaussian-overlap element; zero by parity when m != m2 mod 2."""
    if (m - m2) % 2:
        return 0.0
    val = gaussian_table(max(m, m2), omega, t)[m, m2]
    return float(val[0]) if np.size(val) == 1 else val


def coulomb_me(m, n, m2, n2, omega_x, omega_y, tol=1e-12):
    """<m n| 1/rho |m2 n2> in the product-oscillator basis.

    Gaussian-transform reduction to a semi-infinite integral of two 1D
    closed forms; exactly zero between different parities.
    """
    if (m - m2) % 2 or (n - n2) % 2:
        return 0.0

    def f(t):
        return gaussian_me(m, m2, omega_x, t) * gaussian_me(n, n2, omega_y, t)

    return 2.0 / math.sqrt(math.pi) * quad_semiinf(f, tol=tol)


@dataclass(frozen=True)
class RrBasis:
    """Square-cut product basis of one parity sector."""

    omega_x: float
    omega_y: float
    sector: tuple     # ("+"|"-", "+"|"-")
    k: int

    @property
    def ms(self):
        off = 0 if self.sector[0] == "+" else 1
        return [2 * i + off for i in range(self.k)]

    @property
    def ns(self):
        off = 0 if self.sector[1] == "+" else 1
        return [2 * i + off for i in range(self.k)]

    @property
    def dimension(self):
        return self.k * self.k


def _coulomb_block(basis, tol=1e-13):
    """All Coulomb elements of the sector at once, on a shared rule."""
    ms, ns = basis.ms, basis.ns
    wx, wy = basis.omega_x, basis.omega_y
    mq, nq = max(ms), max(ns)

    def probe(mm, nn):
        def f(t):
            gx = gaussian_table(mq, wx, t)
            gy = gaussian_table(nq, wy, t)
            return np.squeeze(gx[mm[0], mm[1]] * gy[nn[0], nn[1]])
        return f

    probes = [probe((0, 0), (0, 0)), probe((mq, mq), (nq, nq)),
              probe((ms[0], mq), (ns[0], nq))]
    ts, ws = semiinf_rule(probes, tol=tol)
    gx = gaussian_table(mq, wx, ts)[np.ix_(ms, ms)]
    gy = gaussian_table(nq, wy, ts)[np.ix_(ns, ns)]
    block = np.einsum("t,mpt,nqt->mnpq", ws, gx, gy, optimize=True)
    k = basis.k
    return 2.0 / math.sqrt(math.pi) * block.reshape(k * k, k * k)


def assemble(D, omega_x, omega_y, sector):
    """Sector Hamiltonian matrix of dimension D (a perfect square).

    Diagonal holds the oscillator energies (2m+1) omega_x + (2n+1) omega_y;
    the Coulomb block is added on top and the result symmetrized exactly.
    """
    k = math.isqrt(D)
    if k * k != D:
        raise ValueError("basis dimension must be a perfect square")
    basis = RrBasis(float(omega_x), float(omega_y), tuple(sector), k)
    H = _coulomb_block(basis)
    H = 0.5 * (H + H.T)
    for a, (m, n) in enumerate((m, n) for m in basis.ms for n in basis.ns):
        H[a, a] += (2 * m + 1) * basis.omega_x + (2 * n + 1) * basis.omega_y
    return H, basis


def spectrum(D, omega_x, omega_y, sector, count):
    """Lowest eigenvalues of the sector Hamiltonian, as Level records."""
    H, basis = assemble(D, omega_x, omega_y, sector)
    vals = sym_eigen(H, count)
    label = SectorLabel(*basis.sector)
    return [Level(energy=float(v), delta=0.0, sectors=(label,), method="RR",
                  method_params={"D": D, "sector": "".join(basis.sector)})
            for v in vals]


TABLE4_DIMS = (25, 64, 144, 256)
# column layout of the reference table: (sector, level index within sector)
TABLE4_COLUMNS = ((("+", "+"), 0), (("-", "+"), 0), (("+", "+"), 1),
                  (("+", "-"), 0), (("-", "-"), 0), (("-", "+"), 1))


def table4(dims=TABLE4_DIMS, omega_x=1.0 / 64):
    """Low-lying RR energies against basis size (the convergence table)."""
    omega_y = 2.0 * omega_x
    rows = []
    for D in dims:
        per_sector = {}
        for sector in SECTORS:
            H, _ = assemble(D, omega_x, omega_y, sector)
            per_sector[sector] = sym_eigen(H, 2)
        rows.append((D, tuple(float(per_sector[sec][idx])
                              for sec, idx in TABLE4_COLUMNS)))
    return rows


def scan_omega_y(omega_x, omega_ys, levels_per_sector=4, D=144):
    """Energy levels against omega_y at fixed omega_x (level-crossing scan).

    Returns records (omega_y, sector_string, level_index, energy) for each
    grid frequency and parity sector.
    """
    out = []
    for wy in omega_ys:
        for sector in SECTORS:
            H, _ = assemble(D, float(omega_x), float(wy), sector)
            vals = sym_eigen(H, levels_per_sector)
            out.extend((float(wy), "".join(sector), i, float(v))
                       for i, v in enumerate(vals))
    return out
