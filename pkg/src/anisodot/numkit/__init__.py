"""Numerical substrate: exact polynomial algebra, arbitrary precision,
dense symmetric eigensolves, and quadrature."""

from .exactnum import (QuadraticSurd, sqrt_in_field, fraction_sqrt, exact_sign,
                       exact_str, to_mpf, mpf_to_fraction)
from .poly import (UniPoly, BiPoly, IsolatedRoot, resultant, sylvester_det,
                   refine_root, identify_roots)
from .bigreal import precision_for, working_precision, digits_agree, DEFAULT_PREC
from .eigen import sym_eigen
from .quadrature import quad_semiinf, semiinf_rule, gl_grid, gl_nodes

__all__ = [
    "QuadraticSurd", "sqrt_in_field", "fraction_sqrt", "exact_sign",
    "exact_str", "to_mpf", "mpf_to_fraction",
    "UniPoly", "BiPoly", "IsolatedRoot", "resultant", "sylvester_det",
    "refine_root", "identify_roots",
    "precision_for", "working_precision", "digits_agree", "DEFAULT_PREC",
    "sym_eigen",
    "quad_semiinf", "semiinf_rule", "gl_grid", "gl_nodes",
]
