"""Arbitrary-precision arithmetic conventions.

All high-precision work goes through mpmath with an explicit binary precision,
set per call via ``mpmath.mp.workprec``.  Nothing in the package touches the
global precision outside a ``with`` block, so pipelines are reentrant.
"""

from contextlib import contextmanager

import mpmath

from .exactnum import to_mpf, mpf_to_fraction  # re-exported for convenience

__all__ = ["precision_for", "working_precision", "to_mpf", "mpf_to_fraction",
           "digits_agree", "nstr"]

DEFAULT_PREC = 512


def precision_for(K, R, target_digits):
    """Default working precision (bits) for a truncated-series evaluation.

    Sized to cover the full dynamic range of the partial sums, R^(2K), plus
    the requested digits and a fixed safety margin; never below 512 bits.
    """
    import math

    span = K * math.log10(float(R) * float(R)) + target_digits + 30
    return max(DEFAULT_PREC, math.ceil(6.64 * span))


@contextmanager
def working_precision(bits):
    with mpmath.mp.workprec(int(bits)):
        yield mpmath.mp


def digits_agree(a, b, scale=None):
    """Number of significant decimal digits to which a and b agree."""
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    ref = abs(scale) if scale is not None else max(abs(a), abs(b))
    if ref == 0:
        return 50
    diff = abs(a - b)
    if diff == 0:
        return 50
    return max(0, int(mpmath.floor(-mpmath.log10(diff / ref))))


def nstr(x, digits):
    """Fixed significant-digit string for mpf values (test/report helper)."""
    return mpmath.nstr(mpmath.mpf(x), digits, strip_zeros=False)
