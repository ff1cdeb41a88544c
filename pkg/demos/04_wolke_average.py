"""Averages of a multiplicative function of norms over a growing box.

F puts weight k on degree-one primes and none on the other primes.  Summed
over the integer vectors of [-V, V]^2, the total should grow like
V^2 (log V)^2, so the printed ratio should settle rather than drift.

Run with ``python demos/04_wolke_average.py`` (about half a minute).
"""

from normdiv import divisor
from normdiv.field import builtin

field = builtin("cubic")
for e in range(5, 11):
    res = divisor.wolke_average(field, 2**e, "corollary")
    print(f"V = 2^{e:<2d} points {res.points:8d}  total {res.total:12d}  ratio {res.ratio:.3f}")
