"""
Three roads to a Mellin transform
=================================

The Mellin transform of ``I^(alpha, beta) f`` can be taken directly, or
rewritten so that ``f`` is integrated once against a special-function
kernel.  The Kobayashi kernel needs an inner quadrature; the incomplete
gamma kernel is an infinite sum whose slowly decaying tail is closed by
Euler-Maclaurin.  All three should agree.
"""

import time

import numpy as np

from tempfrac import FracParams
from tempfrac.functions import FunctionHandle, Interval, Regularity
from tempfrac.mellin import mellin_tempered_incgamma, mellin_tempered_kobayashi, mellin_tempered_numeric

f = FunctionHandle(lambda u: u * np.exp(-u), Interval(0.0, np.inf), Regularity.smooth(), label="u e^-u")
p = FracParams(0.5, 1.0)

for s in [1.0, 1.5, 2.0, 3.0]:
    row = []
    for route in (mellin_tempered_numeric, mellin_tempered_kobayashi, mellin_tempered_incgamma):
        t0 = time.perf_counter()
        v = route(f, p, s, 1.0).value
        row.append((v.real, time.perf_counter() - t0))
    vals = ", ".join(f"{v:.10f} ({dt * 1e3:5.0f} ms)" for v, dt in row)
    print(f"s = {s}: {vals}")
