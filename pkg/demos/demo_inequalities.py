"""
Chebyshev-type inequalities under a tempered kernel
===================================================

For functions that rise and fall together the tempered average of a
product dominates the product of averages.  The slack is printed for a
few pairs, then for a product of three increasing functions, and the
constant-function case shows the bound is sharp.
"""

import numpy as np

from tempfrac import FracParams
from tempfrac import theorems as th

p = FracParams(0.8, 1.0)
pairs = {
    "t, t": (lambda u: u, lambda u: u),
    "t^2, e^t": (lambda u: u**2, np.exp),
    "2, e^t": (lambda u: np.full_like(u, 2.0), np.exp),
}
for name, (f, g) in pairs.items():
    rec = th.chebyshev_slack1(f, g, p, 1.5)
    print(f"{name:10s} slack {rec.residual_or_slack: .3e}")

rec = th.product_slack_n([lambda u: u, lambda u: u**2, np.exp], p, 1.0)
print(f"three-way  slack {rec.residual_or_slack: .3e}")

# %%
# Swap one function for a decreasing one and the check refuses to run.
try:
    th.chebyshev_slack1(lambda u: u, lambda u: -u, p, 1.0)
except th.SynchronyError as exc:
    print("refused:", exc)
