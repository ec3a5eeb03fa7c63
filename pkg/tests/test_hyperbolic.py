import cmath
import math

import numpy as np
import pytest

from ellhyp import hyperbolic as hyp
from ellhyp.errors import DomainError, PolePinch
from ellhyp.gamma_core import QuasiPeriods
from ellhyp.selftest import random_jh_locus

W_REAL = QuasiPeriods(1, 1.3)
W_CPLX = QuasiPeriods(1, cmath.exp(1j * math.pi / 7))

MAKERS = {
    "br": lambda rng, w: hyp.random_hyp8(rng, w),
    "difeh": lambda rng, w: hyp.random_hyp6(rng, w),
    "secdif": lambda rng, w: hyp.random_munu(rng, w, shift_room=True),
}


@pytest.mark.parametrize("w", [W_REAL, W_CPLX], ids=["real", "complex"])
@pytest.mark.parametrize("eq", hyp.EQUATIONS)
def test_difference_equations(eq, w):
    par = MAKERS[eq.rstrip("2")](np.random.default_rng(7), w)
    assert abs(hyp.hyp_residual(eq, par)) < 1e-8


def test_unknown_equation():
    par = hyp.random_hyp8(np.random.default_rng(0), W_REAL)
    with pytest.raises(DomainError):
        hyp.hyp_residual("difeq", par)
    with pytest.raises(DomainError):
        hyp.hyp_residual("difeh", par)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_jh_closed_form_on_its_locus(seed):
    par = random_jh_locus(np.random.default_rng(seed), W_CPLX)
    ev = hyp.jh(par)
    exact = hyp.jh_closed_form(par)
    assert abs(ev.value - exact) < 1e-9 * abs(exact)


def test_closed_form_off_locus_refused():
    par = hyp.random_munu(np.random.default_rng(4), W_REAL)
    with pytest.raises(DomainError):
        hyp.jh_closed_form(par)


def test_jheh_transformation():
    par = hyp.random_munu_jheh(np.random.default_rng(5), W_CPLX)
    assert hyp.check_identity("jheh", par) < 1e-9


def test_ide1b_transformation():
    par = hyp.random_munu_ide1b(np.random.default_rng(6), W_REAL)
    assert hyp.check_identity("ide1b", par) < 1e-9


def test_ide1b_at_zero_eta_is_the_gamma_product_identity():
    # with eta = 0 the identity says the four-by-four product of gammas equals 1
    w = W_REAL
    mu = (0.3 + 0.1j, 0.4, 0.35 - 0.2j, 0.3)
    nu12 = (0.25 + 0.1j, w.Q - mu[0] - mu[1] - 0.25 - 0.1j)
    nu3 = 0.3 + 0.05j
    nu = nu12 + (nu3, 2 * w.Q - sum(mu) - sum(nu12) - nu3)
    par = hyp.MuNuParams(mu, nu, w)
    assert abs(par.eta_ide1b) < 1e-15
    lhs, rhs = hyp.ide1b_sides(par)
    assert abs(lhs - rhs) < 1e-9 * abs(lhs)


def test_jh_offset_independent():
    par = hyp.random_munu(np.random.default_rng(8), W_CPLX)
    lo, hi = hyp.jh_strip(par)
    a = hyp.jh(par, offset=lo + 0.3 * (hi - lo)).value
    b = hyp.jh(par, offset=lo + 0.7 * (hi - lo)).value
    assert abs(a - b) < 1e-9 * abs(a)


def test_even_integral_offset_independent():
    par = hyp.random_hyp8(np.random.default_rng(9), W_REAL, shift_room=False)
    lo = min(x.real for x in par.u)
    a = hyp.ih(par).value
    b = hyp.ih(par, offset=lo / 2).value
    assert abs(a - b) < 1e-9 * abs(a)


def test_balancing_enforced():
    with pytest.raises(DomainError):
        hyp.HypParams8((0.3,) * 8, W_REAL)
    with pytest.raises(DomainError):
        hyp.MuNuParams((0.3,) * 4, (0.3,) * 4, W_REAL)
    with pytest.raises(DomainError):
        hyp.HypParams6((0.3,) * 5, W_REAL)


def test_eh_divergence_refused():
    u = (0.5,) * 5 + (2 * W_REAL.Q.real,)
    with pytest.raises(DomainError):
        hyp.eh(hyp.HypParams6(u, W_REAL))


def test_offsets_outside_the_strip():
    par = hyp.random_munu(np.random.default_rng(10), W_REAL)
    lo, hi = hyp.jh_strip(par)
    with pytest.raises(PolePinch):
        hyp.jh(par, offset=hi + 0.1)
    p8 = hyp.random_hyp8(np.random.default_rng(11), W_REAL, shift_room=False)
    with pytest.raises(PolePinch):
        hyp.ih(p8, offset=1.0)


def test_pt_params_validated():
    with pytest.raises(DomainError):
        hyp.PTParams((0.5,) * 4, 0.5, 0.5, -1.0)
    with pytest.raises(DomainError):
        hyp.PTParams((0.5,) * 3, 0.5, 0.5, 0.8)
