"""Domain vocabulary for the omega_y = 2*omega_x two-electron dot.

Energies throughout are relative-motion eigenvalues in scaled units
(effective Rydbergs; lengths in effective Bohr radii).  The trap always
has omega_y = 2*omega_x, the separable anisotropy this suite targets.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidPairingError

SINGLET = "singlet"
TRIPLET = "triplet"


@dataclass(frozen=True)
class DotSpec:
    """One problem instance: trap frequency and factor parity index."""

    omega_x: object  # positive real; Fraction preferred for exact work
    nu: int = 0      # 0 even, 1 odd parity of the separated factors

    def __post_init__(self):
        if not self.omega_x > 0:
            raise ValueError("omega_x must be positive")
        if self.nu not in (0, 1):
            raise ValueError("nu must be 0 or 1")

    @property
    def omega_y(self):
        return 2 * self.omega_x


@dataclass(frozen=True)
class SectorLabel:
    """(x, y) reflection parities plus the spin class they imply."""

    x_parity: str  # "+" or "-"
    y_parity: str
    spin: str = field(init=False)

    def __post_init__(self):
        if self.x_parity not in "+-" or self.y_parity not in "+-":
            raise ValueError("parities must be '+' or '-'")
        # inversion parity is the product of the two reflection parities
        spin = SINGLET if self.x_parity == self.y_parity else TRIPLET
        object.__setattr__(self, "spin", spin)

    def __str__(self):
        return "(%s,%s) %s" % (self.x_parity, self.y_parity,
                               "s" if self.spin == SINGLET else "t")


@dataclass(frozen=True)
class Level:
    """One bound state with provenance.

    ``delta`` is the eigenvalue of the symmetry operator coupling the two
    parabolic factors, delta = (beta1 - beta2)/2; levels with delta != 0
    stand for a degenerate pair (both sign choices), so ``sectors`` then
    holds the two members' labels.
    """

    energy: float
    delta: float
    sectors: tuple
    method: str                      # "exact" | "FM" | "RR" | "DVR"
    method_params: dict = field(default_factory=dict)
    node_counts: tuple = None
    accuracy_digits: int = None
    exact_energy: object = None      # Fraction/QuadraticSurd when closed-form

    def __post_init__(self):
        if not self.energy > 0:
            raise ValueError("bound-state energy must be positive")
        if self.method not in ("exact", "FM", "RR", "DVR"):
            raise ValueError("unknown method tag")

    @property
    def degenerate(self):
        return self.delta != 0


def classify_sector(n1, n2, delta, sign="+"):
    """Sector label of a product (or +/- combination) of two factors.

    ``n1``/``n2`` count factor nodes on the full line; they must share
    parity, otherwise the product is discontinuous across the positive
    y-axis and no valid state exists.  For ``delta`` = 0 the state is the
    plain product; otherwise ``sign`` picks the symmetric (+) or
    antisymmetric (-) combination of the two factor orderings.
    """
    if n1 < 0 or n2 < 0:
        raise ValueError("node counts must be nonnegative")
    if (n1 - n2) % 2:
        raise InvalidPairingError(
            "factors must share parity: got node counts (%d, %d)" % (n1, n2))
    if sign not in "+-":
        raise ValueError("sign must be '+' or '-'")
    even = n1 % 2 == 0
    if delta == 0:
        return SectorLabel("+", "+") if even else SectorLabel("-", "+")
    if even:
        return SectorLabel("+", "+") if sign == "+" else SectorLabel("+", "-")
    return SectorLabel("-", "+") if sign == "+" else SectorLabel("-", "-")


def pair_sectors(n1, n2):
    """Both members' labels for a degenerate pair: (plus-sign, minus-sign)."""
    return (classify_sector(n1, n2, 1, "+"), classify_sector(n1, n2, 1, "-"))


def parse_omega(text):
    """Parse an 'p/q' or decimal command-line frequency exactly."""
    s = str(text).strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(s)
