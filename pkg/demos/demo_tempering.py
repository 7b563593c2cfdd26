"""
What tempering does to a fractional integral
============================================

The Riemann-Liouville integral of a constant grows like ``t^alpha``.  An
exponential factor ``e^{-beta (t-u)}`` in the kernel caps that growth at
``beta^-alpha``.  Here both are computed by quadrature and compared with
the closed form ``t^alpha gamma*(alpha, beta t)``.
"""

import numpy as np

from tempfrac import FracParams, constant
from tempfrac.operators import tempered_integral_batch
from tempfrac.theorems import unit_integral_closed

ts = np.array([0.25, 0.5, 1.0, 2.0, 4.0, 8.0])
one = constant(1.0)
alpha = 0.6

print(f"{'t':>6} {'beta=0':>12} {'beta=1':>12} {'closed':>12}")
rl = tempered_integral_batch(one, FracParams(alpha, 0.0), 0.0, ts).values
tp = tempered_integral_batch(one, FracParams(alpha, 1.0), 0.0, ts).values
for t, a, b in zip(ts, rl, tp):
    c = unit_integral_closed(FracParams(alpha, 1.0), t)
    print(f"{t:6.2f} {a.real:12.8f} {b.real:12.8f} {c.real:12.8f}")

# %%
# The tempered column levels off at beta^-alpha = 1.
print("limit", 1.0 ** -alpha)
