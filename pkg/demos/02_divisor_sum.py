"""The divisor sum over a dilated region against its predicted size.

M(R_X) adds tau_3(f(x)) over the integer points of the built-in region, where
f is the incomplete norm form.  The prediction is
C vol(R) / 2 * X^2 (3 log X)^2.  At these sizes the ratio drops below one and
keeps drifting slowly, because the lower powers of log X that the leading
term leaves out are only a few times smaller.

Run with ``python demos/02_divisor_sum.py`` (under a minute).
"""

import time

from normdiv import asymptotic, divisor
from normdiv.field import builtin
from normdiv.region import default_region, region_volume

field = builtin("cubic")
region = default_region(field)
vol = region_volume(region)
print(f"vol(R) = {vol.value:.8f} +- {vol.error:.1e}")

est = asymptotic.constant_C(field, 1000)
print(f"C = {float(est.value):.10f} (tail bound {est.tail_bound:.3f}, naive product {float(est.naive_value):.6f})")

for X in (25, 50, 100, 200):
    t0 = time.perf_counter()
    M = divisor.M_exact(region, X)
    main = asymptotic.main_term(vol.value, X, est.value, field.k)
    print(f"X = {X:4d}  M = {M:9d}  main = {main:12.1f}  ratio = {M / main:.4f}  ({time.perf_counter() - t0:.1f}s)")
