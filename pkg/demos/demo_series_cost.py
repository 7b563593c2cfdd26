"""
How many Riemann-Liouville terms does the series need?
======================================================

Expanding the exponential turns a tempered integral into a sum of
ordinary fractional integrals of increasing order.  Each term is about
``beta (t-a) / m`` times the previous one, so the count grows with the
product ``beta (t - a)``.  This walks that product upward and records
the terms used and the agreement with direct quadrature.
"""

import numpy as np

from tempfrac import FracParams, as_handle, tempered_integral
from tempfrac.errors import NonConvergent
from tempfrac.series import series_integral
from tempfrac.specfun import SeriesSpec

f = as_handle(np.cos)
sspec = SeriesSpec(max_terms=200)

for bt in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0]:
    p = FracParams(0.7, bt)
    try:
        s = series_integral(f, p, 0.0, 1.0, sspec)
    except NonConvergent:
        print(f"beta t = {bt:5.1f}: not converged in {sspec.max_terms} terms")
        continue
    q = tempered_integral(f, p, 0.0, 1.0).value
    gap = abs(s.value - q) / abs(q)
    flag = "" if s.converged else "  (flagged)"
    print(f"beta t = {bt:5.1f}: {s.effort:3d} terms, rel gap {gap:.1e}, "
          f"estimate {s.err_estimate / abs(s.value):.1e}{flag}")

# %%
# The terms alternate in sign and peak near m = beta t, so rounding grows
# like e^(beta t) long before the term budget runs out.  The error
# estimate includes that rounding and the result is flagged once it
# exceeds the quadrature tolerance.
