import math

import numpy as np
import pytest
from conftest import ORACLES, cz, rel
from hypothesis import given, settings
from hypothesis import strategies as st

from tempfrac import mellin as ml
from tempfrac.errors import DomainError
from tempfrac.functions import FunctionHandle, Interval, Regularity
from tempfrac.operators import FracParams

FS = {
    "exp(-u)": (lambda u: np.exp(-u), 1.0),
    "u*exp(-u)": (lambda u: u * np.exp(-u), 1.0),
    "exp(-2u)": (lambda u: np.exp(-2 * u), 2.0),
}


def handle(name):
    fn, _ = FS[name]
    return FunctionHandle(fn, Interval(0.0, np.inf), Regularity.smooth(), label=name)


@pytest.mark.parametrize("g, s, want", [
    (lambda t: np.exp(-t), 2.0, 1.0),
    (lambda t: np.exp(-t), 0.5, math.sqrt(math.pi)),
    (lambda t: t * np.exp(-2 * t), 1.5, cz(ORACLES["mellin_direct"][0][2])),
])
def test_numeric_examples(g, s, want):
    decay = 2.0 if s == 1.5 else 1.0
    assert rel(ml.mellin_numeric(g, s, decay).value, want) < 1e-10


def test_kobayashi_at_s_one():
    got = ml.mellin_tempered_kobayashi(handle("exp(-u)"), FracParams(0.7, 1.3), 1.0, 1.0).value
    assert rel(got, cz(ORACLES["pow_1p3"])) < 1e-9


def test_incgamma_integer_alpha():
    got = ml.mellin_tempered_incgamma(handle("exp(-2u)"), FracParams(1.0, 1.0), 1.0, 2.0).value
    assert abs(got - 0.5) < 1e-9


@pytest.mark.parametrize("name, alpha, beta, s", [("exp(-u)", 0.5, 1.0, 1.5), ("u*exp(-u)", 1.0, 1.0, 2.0)])
def test_route_examples(name, alpha, beta, s):
    f, d, p = handle(name), FS[name][1], FracParams(alpha, beta)
    k = ml.mellin_tempered_kobayashi(f, p, s, d).value
    i = ml.mellin_tempered_incgamma(f, p, s, d).value
    n = ml.mellin_tempered_numeric(f, p, s, d).value
    assert max(rel(k, n), rel(i, n), rel(k, i)) < 1e-5


@pytest.mark.parametrize("case", ORACLES["mellin"])
def test_oracle(case):
    name, alpha, beta, s, want = case
    p = FracParams(alpha, beta)
    assert rel(ml.mellin_tempered_kobayashi(handle(name), p, s, FS[name][1]).value, cz(want)) < 1e-8
    assert rel(ml.mellin_tempered_incgamma(handle(name), p, s, FS[name][1]).value, cz(want)) < 1e-8


def test_strip_enforced():
    f, p = handle("exp(-u)"), FracParams(0.5, 1.0)
    with pytest.raises(DomainError):
        ml.mellin_tempered_kobayashi(f, p, 0.5, 1.0)
    with pytest.raises(DomainError):
        ml.mellin_tempered_incgamma(f, FracParams(0.5, 0.0), 1.5, 1.0)
    with pytest.raises(DomainError):
        ml.mellin_numeric(lambda t: np.exp(-t), -0.5, 1.0)


def test_corpus_shape():
    pts = ml.corpus()
    assert len(pts) == 54
    assert len({(c.label, c.params, c.s) for c in pts}) == 54


@settings(max_examples=20)
@given(st.sampled_from([0.5, 2.0]), st.floats(0.5, 3.0), st.floats(0.5, 3.0))
def test_scaling_law(c, s, rate):
    g = lambda t: np.exp(-rate * t) * (1 + t)  # noqa: E731
    lhs = ml.mellin_numeric(lambda t: g(c * t), s, rate * c).value
    rhs = c ** (-s) * ml.mellin_numeric(g, s, rate).value
    assert rel(lhs, rhs) < 1e-8
