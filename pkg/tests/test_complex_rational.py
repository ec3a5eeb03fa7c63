from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellhyp import complex_rational as cr
from ellhyp.errors import DomainError, PolePinch
from ellhyp.gamma_core import cgamma

HALF = Fraction(1, 2)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_jcr_closed_form_on_locus():
    par = cr.random_locus(np.random.default_rng(0))
    ev = cr.jcr(par)
    assert rel(ev.value, cr.f_locus_sign(par) * cr.f_product(par)) < 1e-9


def test_f_product_refuses_off_locus():
    par = cr.random_cr(np.random.default_rng(1))
    with pytest.raises(DomainError):
        cr.f_product(par)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_f_shift_ratio(seed):
    # F(s2 - i, n2 - 1, s3 + i, n3 + 1) / F = prod_a (beta2 + gamma_a) / (beta3 + gamma_a - 1)
    p = cr.random_locus(np.random.default_rng(seed))
    q = p.with_(s2=p.s[1] - 1j, n2=p.n[1] - 1, s3=p.s[2] + 1j, n3=p.n[2] + 1)
    b, g = p.beta_gamma(1)
    expected = np.prod([(b[1] + g[a]) / (b[2] + g[a] - 1) for a in range(3)])
    assert rel(cr.f_product(q) / cr.f_product(p), expected) < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_normalization_shift_ratio(seed):
    p = cr.random_cr(np.random.default_rng(seed))
    s, n = p.s, [int(x) for x in p.n]
    b, _ = p.beta_gamma(1)
    lhs = (cgamma(s[1] - s[3], n[1] - n[3]) * cgamma(s[2] - s[3], n[2] - n[3])
           / (cgamma(s[1] - 1j - s[3], n[1] - 1 - n[3]) * cgamma(s[2] + 1j - s[3], n[2] + 1 - n[3])))
    assert rel(lhs, (b[2] - b[3] - 1) / (b[1] - b[3])) < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_f_equation(seed):
    par = cr.random_locus(np.random.default_rng(seed))
    assert abs(cr.cr_residual("f_eq", par)) < 1e-11


@settings(max_examples=200, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
                min_size=6, max_size=6))
def test_polynomial_identity(z):
    v, scale = cr.eqdif_lhs(*z)
    assert abs(v) <= 1e-11 * max(scale, 1)
    v, scale = cr.eqdif_lhs(*z, limit=True)
    assert abs(v) <= 1e-11 * max(scale, 1)


def test_half_integer_labels_reduce():
    par = cr.random_cr(np.random.default_rng(2), eps=HALF)
    red = par.reduced()
    assert red.eps == 0
    assert all(x.denominator == 1 for x in red.n + red.m)
    assert red.reduced() is red


def test_ecr_contour_height_independent():
    par = cr.random_ecr(np.random.default_rng(3), eps=HALF)
    lo, hi = cr.ecr_strip(par)
    a = cr.ecr(par).value
    b = cr.ecr(par, offset=0.5 * hi).value
    assert rel(b, a) < 1e-8


@pytest.mark.slow
@pytest.mark.parametrize("eq,eps", [("difjmn", 0), ("difjmn2", HALF)])
def test_jcr_equations(eq, eps):
    par = cr.random_cr(np.random.default_rng(4), eps=eps, shift_room=True)
    assert abs(cr.cr_residual(eq, par)) < 1e-7


@pytest.mark.slow
@pytest.mark.parametrize("eq,eps", [("ecr_eq1", HALF), ("ecr_eq2", 0)])
def test_ecr_equations(eq, eps):
    par = cr.random_ecr(np.random.default_rng(5), eps=eps, shift_room=True)
    assert abs(cr.cr_residual(eq, par)) < 1e-7


@pytest.mark.slow
@pytest.mark.parametrize("ident", cr.CR_IDENTITIES)
def test_transformations(ident):
    par = cr.random_cr(np.random.default_rng(6))
    assert cr.check_cr_identity(ident, par) < 1e-7


def test_sixj_parity():
    with pytest.raises(DomainError, match="parity"):
        cr.SixJComplexParams((0.1, 0.2, 0.3, 0.4), (1, 0, 0, 0), (0.1, 0.2), (0, 0))


def test_parameter_constraints():
    s, t = (0.1 - 0.5j,) * 4, (-0.1 - 0.5j,) * 4
    cr.CRParamSet(s, (0,) * 4, t, (0,) * 4)
    with pytest.raises(DomainError):
        cr.CRParamSet(s, (1, 0, 0, 0), t, (0,) * 4)
    with pytest.raises(DomainError):
        cr.CRParamSet(s, (0,) * 4, (0j,) * 4, (0,) * 4)
    with pytest.raises(DomainError):
        cr.CRParamSet(s, (0,) * 4, t, (0,) * 4, eps=HALF)
    with pytest.raises(DomainError):
        cr.CRParamSet(s, (0.25, 0, 0, -0.25), t, (0,) * 4)
    with pytest.raises(DomainError):
        cr.ECRParamSet((0j,) * 6, (0,) * 6, eps=Fraction(1, 3))


def test_pinched_contour():
    # the pole row above s1 sits higher than the one below -t_a
    s, t = (0.1 + 1.2j, -0.4j, -0.4j, -0.1 - 0.4j), (-1j,) * 4
    with pytest.raises(PolePinch):
        cr.jcr(cr.CRParamSet(s, (0,) * 4, t, (0,) * 4))


def test_unknown_names():
    par = cr.random_cr(np.random.default_rng(7))
    with pytest.raises(DomainError):
        cr.cr_residual("difjnm", par)
    with pytest.raises(DomainError):
        cr.check_cr_identity("ide2", par)
    with pytest.raises(DomainError):
        cr.cr_residual("ecr_eq1", par)
