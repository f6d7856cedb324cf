"""anisodot: spectra and exact wavefunctions for two Coulomb-interacting
electrons in a 2D anisotropic harmonic trap with omega_y = 2*omega_x.

Subpackages and modules
-----------------------
model      problem instances, symmetry sectors, level records
numkit     exact polynomial algebra, arbitrary precision, eigensolves
exactalg   closed-form (quasi-exact) levels at special frequencies
frobenius  truncated-power-series solver for arbitrary frequencies
wavefield  parabolic coordinates, wavefunction assembly and export
rrsolver   Rayleigh-Ritz diagonalization in the oscillator basis
dvrsolver  sine discrete-variable-representation reference spectra
cli        command-line entry points for every table and figure dataset
"""

__version__ = "0.1.0"

from .model import DotSpec, SectorLabel, Level, classify_sector  # noqa: F401
