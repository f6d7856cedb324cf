"""Sine (particle-in-box) DVR reference spectra on a square grid.

The box [-R, R]^2 is discretized at x_i = y_i = -R + 2Ri/N, i = 1..N-1,
with N odd so no point touches the Coulomb singularity at the origin.
The kinetic matrix is the unitary DVR image of the truncated sine basis,
so its eigenvalues are exactly (k pi / 2R)^2.
"""

import math

import numpy as np

from .model import Level
from .numkit.eigen import sym_eigen


def grid_points(R, N):
    """Interior grid points, built antisymmetrically: x[N-i] = -x[i] bitwise."""
    _check_n(N)
    xs = np.empty(N - 1)
    for i in range(1, N):
        if 2 * i < N:
            xs[i - 1] = -R + 2.0 * R * i / N
        else:
            xs[i - 1] = -(-R + 2.0 * R * (N - i) / N)
    return xs


def _check_n(N):
    if N < 3 or N % 2 == 0:
        raise ValueError("N must be odd and >= 3 (even N puts a grid point "
                         "on the Coulomb singularity)")


def kinetic_1d(R, N):
    """Sine-DVR matrix of -d2/du2 on [-R, R] with Dirichlet walls.

    Entries use canonicalized index arguments so that the matrix commutes
    exactly (bitwise) with the grid reflection i -> N-i.
    """
    _check_n(N)
    L = 2.0 * R
    pref = math.pi ** 2 / (2.0 * L * L)
    # inverse sine squares on canonical arguments k and min(u, 2N-u)
    inv_s2 = {}

    def s2(k):
        if k not in inv_s2:
            inv_s2[k] = 1.0 / math.sin(math.pi * k / (2.0 * N)) ** 2
        return inv_s2[k]

    T = np.empty((N - 1, N - 1))
    for i in range(1, N):
        for j in range(1, N):
            if i == j:
                T[i - 1, j - 1] = pref * ((2.0 * N * N + 1.0) / 3.0
                                          - s2(min(2 * i, 2 * N - 2 * i)))
            else:
                T[i - 1, j - 1] = pref * (-1.0) ** (i - j) * (
                    s2(min(abs(i - j), 2 * N - abs(i - j)))
                    - s2(min(i + j, 2 * N - (i + j))))
    return T


def kinetic_1d_from_basis(R, N):
    """Oracle construction: U^T diag((k pi/2R)^2) U with U the sine DVR map."""
    _check_n(N)
    k = np.arange(1, N)
    i = np.arange(1, N)
    U = np.sqrt(2.0 / N) * np.sin(np.pi * np.outer(k, i) / N)
    lam = (k * np.pi / (2.0 * R)) ** 2
    return U.T @ (lam[:, None] * U)


def assemble(R, N, omega_x):
    """Full 2D Hamiltonian on the grid: T (x) I + I (x) T + diag(V).

    V = omega_x^2 x^2 + 4 omega_x^2 y^2 + 1/sqrt(x^2+y^2); finite everywhere
    because odd N keeps the origin off the grid.
    """
    _check_n(N)
    T = kinetic_1d(R, N)
    xs = grid_points(R, N)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    w2 = float(omega_x) ** 2
    V = w2 * X * X + 4.0 * w2 * Y * Y + 1.0 / np.sqrt(X * X + Y * Y)
    eye = np.eye(N - 1)
    return np.kron(T, eye) + np.kron(eye, T) + np.diag(V.ravel())


def spectrum(R, N, omega_x, count=6):
    """Lowest eigenvalues as Level records (sectors mixed by the grid)."""
    H = assemble(R, N, omega_x)
    vals = sym_eigen(H, count)
    return [Level(energy=float(v), delta=0.0, sectors=(),
                  method="DVR", method_params={"R": float(R), "N": N,
                                               "d": (N - 1) ** 2})
            for v in vals]


# (d, R) pairs of the reference table, as printed
TABLE5_CASES = ((256, 30.0), (400, 30.0), (400, 35.0),
                (576, 35.0), (900, 35.0), (900, 40.0))


def table5(cases=TABLE5_CASES, omega_x=1.0 / 64, count=6):
    """Six lowest DVR energies for each printed (d, R) pair."""
    rows = []
    for d, R in cases:
        N = math.isqrt(d) + 1
        if (N - 1) ** 2 != d:
            raise ValueError("d must be a perfect square")
        levels = spectrum(R, N, omega_x, count)
        rows.append((d, R, tuple(lv.energy for lv in levels)))
    return rows


def reflection_permutation(N, axis):
    """Grid reflection as a permutation matrix on the 2D product grid."""
    n = N - 1
    P = np.eye(n)[::-1]
    eye = np.eye(n)
    return np.kron(P, eye) if axis == 0 else np.kron(eye, P)
