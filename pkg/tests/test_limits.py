import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellhyp import limits
from ellhyp.complex_rational import random_sixj
from ellhyp.errors import DomainError


def test_fitted_order_of_exact_powers():
    d = (0.1, 0.01, 0.001)
    assert abs(limits.fitted_order(d, [3 * x ** 2 for x in d]) - 2) < 1e-12
    assert math.isnan(limits.fitted_order((0.1,), (0.5,)))


@pytest.mark.parametrize("bad", [(), (0.1, -0.01), (0.1, 0.1), (0.01, 0.1)])
def test_small_parameters_validated(bad):
    with pytest.raises(DomainError):
        limits.limit_scan("gamma_b_to_i", bad)


def test_unknown_limit():
    with pytest.raises(DomainError):
        limits.limit_scan("b_to_minus_i", (0.1, 0.01))


def test_elliptic_to_hyperbolic_is_first_order():
    s = limits.limit_scan("elliptic_to_hyperbolic", (0.2, 0.1, 0.05))
    assert s.monotone
    assert abs(s.order - 1) < 0.1


def test_gamma_b_to_i():
    s = limits.limit_scan("gamma_b_to_i", (1e-1, 1e-2, 1e-3))
    assert s.monotone
    assert abs(s.order - 1) <= 0.3
    assert s.deviations[-1] < 0.01


def test_jh_to_jr_decay_is_quadratic():
    s = limits.limit_scan("jh_b_to_0", (0.2, 0.1))
    assert s.monotone
    assert 1.5 < s.order < 2.5


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 100_000))
def test_prefactor_exponent_is_even(seed):
    par = random_sixj(np.random.default_rng(seed))
    assert limits.prefactor_F(par) % 2 == 0


def test_single_factor_asymptotes_shrink():
    par = random_sixj(np.random.default_rng(0))
    coarse = limits.appendix_a_checks(par, 1e-2)
    fine = limits.appendix_a_checks(par, 1e-3)
    assert coarse.keys() == fine.keys()
    for k in coarse:
        assert fine[k] < coarse[k] / 4, k
        assert fine[k] < 0.01, k


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_literal_factor_differs_by_a_sign(seed):
    par = random_sixj(np.random.default_rng(seed))
    ratio = limits.pt_limit_factor(par, 0.01, literal=True) / limits.pt_limit_factor(par, 0.01)
    sign = -1 if (par.M[1] - par.N[1] + par.N[3]) % 2 else 1
    assert abs(ratio + sign) < 1e-14


@pytest.mark.slow
def test_modular_double_to_complex_6j():
    s = limits.limit_scan("pt_to_complex6j", (0.02, 0.01), {"seed": 0})
    assert s.monotone
    assert s.deviations[-1] < 0.05
