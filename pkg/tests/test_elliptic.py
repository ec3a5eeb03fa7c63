import cmath
import itertools
import math

import numpy as np
import pytest

from ellhyp.elliptic import EllipticParams, ehe_residual, random_params, u_function, v_function
from ellhyp.errors import DomainError, PolePinch
from ellhyp.gamma_core import EllipticBases, egamma


def polar(r, turns):
    return r * cmath.exp(2j * math.pi * turns)


BASES = EllipticBases(polar(0.2, 0.1), polar(0.25, 0.7))


def beta_case(seed):
    """Six parameters with product pq, and t7 t8 = pq so that the last pair drops out."""
    rng = np.random.default_rng(seed)
    pq = BASES.p * BASES.q
    while True:
        t = [polar(rng.uniform(0.5, 0.8), rng.uniform()) for _ in range(5)]
        t.append(pq / np.prod(t))
        if abs(t[5]) < 0.8:
            break
    t7 = polar(0.6, rng.uniform())
    return EllipticParams(tuple(t) + (t7, pq / t7), BASES), t


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_elliptic_beta_integral(seed):
    par, t = beta_case(seed)
    exact = np.prod([egamma(a * b, BASES) for a, b in itertools.combinations(t, 2)])
    ev = v_function(par)
    assert abs(ev.value - exact) < 1e-11 * abs(exact)
    assert abs(ev.value - exact) <= 10 * ev.abs_err + 1e-14 * abs(exact)


def test_v_symmetric_in_bases():
    par = random_params(np.random.default_rng(3), shiftable=False)
    a = v_function(par).value
    b = v_function(par.swapped_bases()).value
    assert abs(a - b) < 1e-12 * abs(a)


def test_v_radius_independent():
    par, _ = beta_case(4)
    a = v_function(par, radius=0.95).value
    b = v_function(par, radius=1.05).value
    assert abs(a - b) < 1e-11 * abs(a)


@pytest.mark.parametrize("seed", [10, 11, 12])
def test_difference_equation_residual(seed):
    par = random_params(np.random.default_rng(seed))
    assert abs(ehe_residual(par)) < 1e-9


def test_reflected_form_agrees():
    par = random_params(np.random.default_rng(20))
    assert abs(ehe_residual(par) - ehe_residual(par, form="reflected")) < 1e-12
    a = u_function(par).value
    assert abs(u_function(par, form="reflected").value - a) < 1e-10 * abs(a)


def test_unknown_form():
    par = random_params(np.random.default_rng(21))
    with pytest.raises(DomainError):
        u_function(par, form="sideways")


def test_balancing_enforced():
    with pytest.raises(DomainError):
        EllipticParams((0.5,) * 8, BASES)
    with pytest.raises(DomainError):
        EllipticParams.balanced((0.5,) * 6, BASES)


def test_bad_radius_is_a_pinch():
    par, _ = beta_case(5)
    with pytest.raises(PolePinch):
        v_function(par, radius=1.5)
