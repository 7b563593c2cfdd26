"""
Which sign does the boundary term carry?
========================================

Undoing a tempered derivative with a tempered integral leaves a boundary
term proportional to ``(t - a)^(alpha-1)``.  Two conventions for its sign
are in circulation.  The theorem checker evaluates the identity both
ways and reports whichever one balances; an instance where the boundary
term vanishes decides nothing.
"""

import numpy as np

from tempfrac import FracParams
from tempfrac import theorems as th

p = FracParams(0.5, 0.5)
for m in range(3):
    rec = th.taylor_telescope_check(np.exp, p, m, 0.0, 0.4)
    d = rec.details
    print(f"m = {m}: residual {rec.residual_or_slack:.1e}  sign {rec.sign_convention.value:12s}"
          f" (+ gives {d['residual_prop']:.1e}, - gives {d['residual_lemma']:.1e})")

# %%
# Across the randomized suites every decided instance agrees.
records = th.run_suite("lemma", seed=1) + th.run_suite("taylor", seed=1)
conv, ok = th.sign_consistency(records)
print(f"{len(records)} records, consistent: {ok}, convention: {conv.value}")
