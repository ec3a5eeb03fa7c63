import cmath
import math

import numpy as np
import pytest
from scipy.special import loggamma

from ellhyp.contour import ContourSpec, Evaluation, bilateral_sum, integrate_contour, set_budget
from ellhyp.errors import DomainError, NonConvergence, PolePinch


def barnes_first_lemma(a, b, c, d):
    """(1/2 pi i) int Gamma(a+s) Gamma(b+s) Gamma(c-s) Gamma(d-s) ds and its closed form."""
    f = lambda s: np.exp(loggamma(a + s) + loggamma(b + s) + loggamma(c - s) + loggamma(d - s))  # noqa: E731
    lo, hi = max(-a.real, -b.real), min(c.real, d.real)
    ev = integrate_contour(f, ContourSpec.imaginary_axis(re=(lo + hi) / 2), tol=1e-12)
    exact = cmath.exp(loggamma(a + c) + loggamma(a + d) + loggamma(b + c) + loggamma(b + d) - loggamma(a + b + c + d))
    return ev.scaled(1 / (2j * math.pi)), exact


def test_barnes_lemma_and_error_estimates():
    rng = np.random.default_rng(5)
    honest = 0
    for _ in range(100):
        a, b, c, d = (complex(rng.uniform(0.2, 1.5), rng.uniform(-1, 1)) for _ in range(4))
        ev, exact = barnes_first_lemma(a, b, c, d)
        assert abs(ev.value - exact) < 1e-10 * abs(exact)
        honest += abs(ev.value - exact) <= 3 * ev.abs_err
    assert honest >= 95


def test_gaussian_on_shifted_line():
    # int exp(-z^2) dz along Im z = 0.7 equals sqrt(pi)
    ev = integrate_contour(lambda z: np.exp(-z * z), ContourSpec.horizontal(im=0.7))
    assert abs(ev.value - math.sqrt(math.pi)) < 1e-13


def test_circle_residue():
    ev = integrate_contour(lambda z: np.exp(z) / z, ContourSpec.circle(0.5))
    assert abs(ev.value - 2j * math.pi) < 1e-13
    assert ev.abs_err < 1e-12


def test_pole_on_contour_is_a_pinch():
    with pytest.raises(PolePinch):
        integrate_contour(lambda z: 1 / (z - 1), ContourSpec.circle(1.0))


def test_deterministic():
    f = lambda s: np.exp(loggamma(0.3 + s) + loggamma(0.6 - s))  # noqa: E731
    a = integrate_contour(f, ContourSpec.imaginary_axis(re=0.1))
    b = integrate_contour(f, ContourSpec.imaginary_axis(re=0.1))
    assert a == b


def test_budget_override():
    f = lambda s: np.exp(loggamma(0.3 + s) + loggamma(0.6 - s))  # noqa: E731
    set_budget(64)
    try:
        assert ContourSpec().budget == 64
        with pytest.raises(NonConvergence):
            integrate_contour(f, ContourSpec.imaginary_axis(re=0.1), tol=1e-14)
    finally:
        set_budget(None)
    assert ContourSpec().budget == 200_000


def test_spec_validation():
    with pytest.raises(DomainError):
        ContourSpec(kind="spiral")
    with pytest.raises(DomainError):
        ContourSpec(direction=2)
    with pytest.raises(DomainError):
        set_budget(10)


@pytest.mark.parametrize("a", [0.5, 1.3, 2.0])
def test_bilateral_sum_integers(a):
    ev = bilateral_sum(lambda N: 1 / (N * N + a * a), decay=2)
    assert abs(ev.value - math.pi / math.tanh(math.pi * a) / a) < 1e-10


@pytest.mark.parametrize("a", [0.5, 1.3])
def test_bilateral_sum_half_integers(a):
    ev = bilateral_sum(lambda N: 1 / (N * N + a * a), eps=0.5, decay=2)
    assert abs(ev.value - math.pi * math.tanh(math.pi * a) / a) < 1e-10


def test_bilateral_sum_fitted_exponent():
    # decay not supplied: the exponent is estimated from the terms
    ev = bilateral_sum(lambda N: 1 / (N * N + 1) ** 1.5)
    # reference: two million terms per side, tail below 1e-12
    N = np.arange(1, 2_000_001, dtype=float)
    direct = 1 + 2 * math.fsum(1 / (N * N + 1) ** 1.5)
    assert abs(ev.value - direct) < 1e-9
    assert abs(ev.value - direct) <= ev.abs_err + 1e-12


def test_bilateral_sum_accepts_evaluations():
    ev = bilateral_sum(lambda N: Evaluation(1 / (N * N + 1), 1e-16), decay=2)
    assert abs(ev.value - math.pi / math.tanh(math.pi)) < 1e-10
    assert ev.abs_err > 0


def test_bilateral_sum_rejects_bad_shift():
    with pytest.raises(DomainError):
        bilateral_sum(lambda N: 1.0, eps=0.25)
