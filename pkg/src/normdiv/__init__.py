"""Exact laboratory for divisor sums over incomplete norm forms.

The package computes the finite objects attached to an incomplete norm form
``f`` of a Galois field: local densities, ideal inclusion-exclusion weights,
lattice point counts, the Euler-product constant and the divisor sum
``M(R_X) = sum tau_k(f(x))`` over a dilated region.
"""

from normdiv.field import FieldSpec, builtin, load_field
from normdiv.ideals import Ideal, IdealArithmetic, arithmetic

__all__ = ["FieldSpec", "Ideal", "IdealArithmetic", "arithmetic", "builtin", "load_field"]
__version__ = "0.1.0"
