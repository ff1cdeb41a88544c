"""Splitting tau_k(n) by the sizes of the factors.

Each ordered factorisation n = n_1 ... n_k either has every factor at most y,
or has a set of factors above y.  Inclusion-exclusion over that set rebuilds
tau_k(n) exactly.  The sharp-cutoff version does the same over the values of
the norm form on R_X, with one extra term for the factorisations it cannot
classify.

Run with ``python demos/03_hyperbola_and_cutoffs.py``.
"""

from normdiv import divisor
from normdiv.field import builtin
from normdiv.region import default_region

for n, y in ((720, 5), (2**10, 4), (9699690, 20)):
    d = divisor.hyperbola_decompose(n, y, 3)
    print(f"n = {n}, y = {y}: all-small {d.all_small}, signed terms {d.terms}, "
          f"assembled {d.assembled} vs tau_3 {d.tau}")

region = default_region(builtin("cubic"))
for delta in (2, 4, 8):
    sd = divisor.sharp_decomposition(region, 20, delta)
    print(f"X = 20, Delta = {delta}: M_j = {sd.M}, correction {sd.correction}, total {sd.total}, "
          f"E = {sd.E}, exact: {sd.holds}")
