"""Regenerate tests/data/oracles.json with mpmath at 30 digits.

The library never imports mpmath; these frozen values are the independent
reference for the tests.  Run ``python3 tests/make_oracles.py`` after
changing a case list.
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 30
OUT = Path(__file__).parent / "data" / "oracles.json"


def c(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def tint(f, alpha, beta, a, t):
    """Tempered integral by mpmath quadrature (s = t - u substitution)."""
    alpha, beta = mp.mpc(alpha), mp.mpc(beta)
    g = lambda s: s ** (alpha - 1) * mp.exp(-beta * s) * f(t - s)  # noqa: E731
    return mp.quad(g, [0, (t - a) / 2, t - a]) / mp.gamma(alpha)


def tder(f, alpha, beta, a, t):
    """Order in (0, 1): (d/dt + beta) of the order 1 - alpha integral."""
    F = lambda x: tint(f, 1 - alpha, beta, a, x)  # noqa: E731
    return mp.diff(F, t) + beta * F(t)


def ml3(mu, nu, g, z):
    return mp.nsum(lambda k: mp.rf(g, k) / (mp.factorial(k) * mp.gamma(mu * k + nu)) * z**k, [0, mp.inf])


def kobayashi(m, u, v):
    return mp.quad(lambda x: x ** (u - 1) * mp.exp(-x) / (x + v) ** m, [0, 1, mp.inf])


cases = {}

cases["gamma"] = [[c(z), c(mp.gamma(z))] for z in
                  [0.5, 5, 3.7, -2.3, 1 + 2j, -0.5 + 0.3j, 20.5, 45 + 10j, 0.001, -7.5]]
cases["lower_gamma"] = [[c(a), c(x), c(mp.gammainc(a, 0, x))] for a, x in
                        [(0.5, 1), (1, 1), (2.3, 4.5), (0.7 + 0.2j, 1.5), (3, 0.1), (1.5, 12), (4.2, 3.9)]]
cases["upper_gamma"] = [[c(a), c(x), c(mp.gammainc(a, x))] for a, x in
                        [(0.5, 1), (1.3, 0.7), (-1.5, 2.0), (0, 1.5), (-2, 0.5), (2.5, 30), (0.5 + 1j, 2 + 1j),
                         (-3, 4.0), (0.2, 0.05)]]
cases["hyp1f1"] = [[c(a), c(b), c(z), c(mp.hyp1f1(a, b, z))] for a, b, z in
                   [(0.5, 1.5, -2), (0.3 + 0.2j, 2.1, 1.7), (-0.6, 1.8, -0.56), (1.2, 3.4, -5), (2, 0.5, 3)]]
cases["hyp2f1"] = [[c(a), c(b), c(cc), c(z), c(mp.hyp2f1(a, b, cc, z))] for a, b, cc, z in
                   [(0.5, 0.3, 1.7, 0.4), (1.2, -0.4, 2.5, -0.6), (1 + 0.5j, 0.7, 2.2, 0.3 + 0.2j),
                    (2.5, 1.5, 3.1, 0.8)]]
cases["appell_f1"] = [[c(a), c(b1), c(b2), c(cc), c(x), c(y), c(mp.appellf1(a, b1, b2, cc, x, y))]
                      for a, b1, b2, cc, x, y in
                      [(0.7, 0.4, 0.3, 1.9, 0.3, 0.2), (1.2, 0.4, 0.3, 2.4, 0.4, 0.2),
                       (1.5, -0.5, 0.8, 2.6, -0.5, 0.45)]]
cases["ml3"] = [[c(mu), c(nu), c(g), c(z), c(ml3(mu, nu, g, z))] for mu, nu, g, z in
                [(0.8, 1.1, 1.3, 0.5), (1.5, 0.9, 2.0, -0.4), (0.5, 1, 1, -1.0), (2, 1, 1, 1),
                 (1.2, 1.6, 0.7, 1.5 + 0.5j)]]
cases["kobayashi"] = [[c(m), c(u), c(v), c(kobayashi(m, u, v))] for m, u, v in
                      [(1, 2, 1), (0.5, 1.5, 2), (-0.5, 0.7, 0.3), (1.3, 2.2 + 0.5j, 0.8), (2, 1.5, 0.01),
                       (1, 2.5, 0)]]

fs = {
    "1": lambda u: mp.mpf(1),
    "t": lambda u: u,
    "t^2": lambda u: u**2,
    "exp(-t)": lambda u: mp.exp(-u),
    "t^1.4": lambda u: u ** mp.mpf(1.4),
}
tcases = [("1", 0.5, 1, 0, 1), ("1", 1, 1, 0, 1), ("t", 0.5, 0.5, 0, 1), ("t^2", 1.7, 0.3, 0, 1.5),
          ("exp(-t)", 0.7 + 0.3j, 1.2, 0, 0.9), ("t^1.4", 0.6, 0.8, 0, 0.7), ("t^2", 0.35, 2.0, 0, 2.0),
          ("exp(-t)", 2.3, 0.5 + 0.5j, 0, 1.3)]
cases["tempered_integral"] = [[f, c(al), c(be), a, t, c(tint(fs[f], al, be, a, t))] for f, al, be, a, t in tcases]
dcases = [("exp(-t)", 0.5, 1, 0, 1), ("t", 0.5, 0.5, 0, 1), ("t^1.4", 0.6, 0.8, 0, 0.7), ("t^2", 0.3, 1.5, 0, 1.2)]
cases["tempered_derivative"] = [[f, c(al), c(be), a, t, c(tder(fs[f], al, be, a, t))] for f, al, be, a, t in dcases]

# right GPF integral of 1 with alpha = 0.5, rho = 0.5 over [0, 1]: rho^-alpha * gamma*(...)
cases["gpf_right_unit"] = c(mp.mpf(0.5) ** -0.5 * mp.gammainc(0.5, 0, 1) / mp.gamma(0.5))

cases["beta_kernel"] = [[c(mu), c(lam), c(al), c(be), t,
                         c(tint(lambda u: u ** (mu - 1) * (1 - u) ** (-lam), al, be, 0, t))]
                        for mu, lam, al, be, t in [(1, 0.3, 0.7, 0.5, 0.4), (1.6, -0.7, 0.4, 1.1, 0.75)]]
cases["appell_kernel"] = [[c(mu), c(lam), c(e2), c(A), c(B), c(al), c(be), t,
                           c(tint(lambda u: u ** (mu - 1) * (1 - A * u) ** (-lam) * (1 - B * u) ** (-e2),
                                  al, be, 0, t))]
                          for mu, lam, e2, A, B, al, be, t in [(1.2, 0.4, 0.3, 0.5, 0.25, 0.6, 0.7, 0.8)]]
cases["ml_kernel"] = [[c(mu), c(nu), c(g), c(w), c(al), c(be), t,
                       c(tint(lambda u: u ** (nu - 1) * ml3(mu, nu, g, w * u**mu), al, be, 0, t))]
                      for mu, nu, g, w, al, be, t in [(0.8, 1.1, 1.3, 0.5, 0.6, 0.7, 1.0)]]


def mellin_oracle(f, alpha, beta, s):
    # M[I f](s) = int_0^inf f(u) u^(alpha+s-1) U(alpha, alpha+s, beta u) du
    g = lambda u: f(u) * u ** (alpha + s - 1) * mp.hyperu(alpha, alpha + s, beta * u)  # noqa: E731
    return mp.quad(g, [0, 1, 5, mp.inf])


mf = {"exp(-u)": lambda u: mp.exp(-u), "u*exp(-u)": lambda u: u * mp.exp(-u), "exp(-2u)": lambda u: mp.exp(-2 * u)}
mp.mp.dps = 20
cases["mellin"] = [[f, al, be, s, c(mellin_oracle(mf[f], al, be, s))]
                   for f in mf for al in (0.5, 1.5) for be in (0.5, 1) for s in (1, 2)]
mp.mp.dps = 30
cases["mellin_direct"] = [["t*exp(-2t)", 1.5, c(mp.gamma(2.5) / mp.mpf(2) ** 2.5)]]
cases["pow_1p3"] = c(mp.mpf(1.3) ** -0.7)
cases["pow_0p7_1p4"] = c(mp.mpf(0.7) ** 1.4)
cases["kobayashi_e1"] = c(1 - mp.e * mp.e1(1))

OUT.write_text(json.dumps(cases, indent=1) + "\n")
print(f"wrote {OUT}")
