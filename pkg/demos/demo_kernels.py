"""
Closed forms for hypergeometric-type kernels
============================================

A few kernels have tempered integrals that collapse to hypergeometric
series: a power, a power times ``(1 - t)^-lam``, the two-factor Appell
kernel and a three-parameter Mittag-Leffler kernel.  Each closed form is
checked against graded quadrature of the kernel itself.
"""

from tempfrac import FracParams, tempered_integral
from tempfrac import closed_forms as cf
from tempfrac.closed_forms import AppellKernelParams, MlKernelParams
from tempfrac.functions import power

p = FracParams(0.6, 0.7)
t = 0.7

cases = [
    ("t^1.4", cf.power_integral_closed(1.4, p, 0, t), power(1.4)),
    ("t^0.2 (1-t)^-0.4", cf.beta_kernel_closed(1.2, 0.4, p, t), cf.beta_kernel_handle(1.2, 0.4)),
]
k3 = AppellKernelParams(1.2, 0.4, 0.3, 0.5, 0.25)
cases.append(("Appell", cf.appell_kernel_closed(k3, p, t), cf.appell_kernel_handle(k3)))
k4 = MlKernelParams(0.8, 1.1, 1.3, 0.5)
cases.append(("Mittag-Leffler", cf.ml_kernel_closed_kform(k4, p, 0, t), cf.ml_kernel_handle(k4)))

for name, closed, f in cases:
    num = tempered_integral(f, p, 0.0, t).value
    print(f"{name:18s} closed {closed.real:.12f}  quadrature {num.real:.12f}  "
          f"gap {abs(closed - num):.1e}")

# %%
# The Mittag-Leffler kernel admits two arrangements of the double sum.
print("arrangement gap", cf.ml_identity_residual(k4, p, 0, 1.0))
