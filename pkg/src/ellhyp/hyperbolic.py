"""Hyperbolic hypergeometric integrals and their difference equations.

All three integrals run along a vertical line ``Re z = c``.  For ``I_h`` and
``E_h`` the integrand is even in ``z``, so only ``|c| < min Re u_a`` separates
the pole sequences; for ``J_h`` any ``c`` strictly between ``max(-Re nu_a)``
and ``min(Re mu_a)`` works, and the midpoint is the default.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .contour import ContourSpec, Evaluation, bilateral_sum, integrate_contour
from .errors import DomainError, PolePinch, ZeroError
from .gamma_core import EPS, QuasiPeriods, hgamma, log2sin, log_hgamma

_BAL_TOL = 1e-12


def _tuple(vals, n, name):
    vals = tuple(complex(v) for v in vals)
    if len(vals) != n:
        raise DomainError(f"{name} needs {n} entries, got {len(vals)}")
    return vals


def _check_balance(total: complex, w: QuasiPeriods, what: str):
    target = 2 * w.Q
    if abs(total - target) > _BAL_TOL * max(1.0, abs(target)):
        raise DomainError(f"{what}: sum is {total}, expected 2Q = {target}")


@dataclass(frozen=True)
class HypParams8:
    u: tuple
    w: QuasiPeriods

    def __post_init__(self):
        object.__setattr__(self, "u", _tuple(self.u, 8, "HypParams8"))
        _check_balance(sum(self.u), self.w, "HypParams8 balancing")

    def shifted(self, i: int, j: int, step: complex) -> "HypParams8":
        """u_i + step, u_j - step (0-based indices)."""
        u = list(self.u)
        u[i] += step
        u[j] -= step
        return HypParams8(tuple(u), self.w)


@dataclass(frozen=True)
class HypParams6:
    u: tuple
    w: QuasiPeriods

    def __post_init__(self):
        object.__setattr__(self, "u", _tuple(self.u, 6, "HypParams6"))

    def shifted(self, i: int, j: int, step: complex) -> "HypParams6":
        u = list(self.u)
        u[i] += step
        u[j] -= step
        return HypParams6(tuple(u), self.w)


@dataclass(frozen=True)
class MuNuParams:
    mu: tuple
    nu: tuple
    w: QuasiPeriods

    def __post_init__(self):
        object.__setattr__(self, "mu", _tuple(self.mu, 4, "mu"))
        object.__setattr__(self, "nu", _tuple(self.nu, 4, "nu"))
        _check_balance(sum(self.mu) + sum(self.nu), self.w, "MuNuParams balancing")

    @property
    def eta_jheh(self) -> complex:
        return (self.w.Q - self.nu[3] - sum(self.mu[:3])) / 2

    @property
    def eta_ide1b(self) -> complex:
        return (self.w.Q - self.mu[0] - self.mu[1] - self.nu[0] - self.nu[1]) / 2

    def swapped(self) -> "MuNuParams":
        return MuNuParams(self.nu, self.mu, self.w)

    def shifted_mu(self, i: int, j: int, step: complex) -> "MuNuParams":
        mu = list(self.mu)
        mu[i] += step
        mu[j] -= step
        return MuNuParams(tuple(mu), self.nu, self.w)


def pt_mu_nu(a1, a2, a3, a4, a_s, a_t, Q):
    """mu, nu of the 6j integral in the primed variables (shifted form)."""
    p1, p2, p3, p4 = -a1 + Q / 2, -a2 + Q / 2, -a3 + Q / 2, a4 - Q / 2
    ps, pt = a_s - Q / 2, -a_t + Q / 2
    nu = (Q / 2 - ps - p1 + p2, Q / 2 - ps + p1 + p2, Q / 2 - ps - p3 - p4, Q / 2 - ps + p3 - p4)
    mu = (ps - pt + p4 - p2, ps + pt + p4 - p2, 0j, 2 * ps)
    return mu, nu


@dataclass(frozen=True)
class PTParams:
    """alpha_1..alpha_4, alpha_s, alpha_t of the modular-double 6j symbol at ``b``."""

    alpha: tuple
    alpha_s: complex
    alpha_t: complex
    b: complex
    w: QuasiPeriods = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _tuple(self.alpha, 4, "alpha"))
        b = complex(self.b)
        if b.imag == 0 and b.real <= 0:
            raise DomainError("b on the non-positive real axis")
        if b.real <= 0:
            raise DomainError("b needs a positive real part")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "alpha_s", complex(self.alpha_s))
        object.__setattr__(self, "alpha_t", complex(self.alpha_t))
        object.__setattr__(self, "w", QuasiPeriods.from_b(b))

    @classmethod
    def from_primed(cls, primed: tuple, ps: complex, pt: complex, b: complex) -> "PTParams":
        Q = b + 1 / b
        p1, p2, p3, p4 = primed
        alpha = (-p1 + Q / 2, -p2 + Q / 2, -p3 + Q / 2, p4 + Q / 2)
        return cls(alpha, ps + Q / 2, -pt + Q / 2, b)

    @property
    def Q(self) -> complex:
        return self.w.Q

    def mu_nu(self) -> MuNuParams:
        mu, nu = pt_mu_nu(*self.alpha, self.alpha_s, self.alpha_t, self.Q)
        return MuNuParams(mu, nu, self.w)


# --------------------------------------------------------------------------
# integrands
# --------------------------------------------------------------------------

def _log_m4sin(z, w: QuasiPeriods):
    """log(-4 sin(2 pi z / w1) sin(2 pi z / w2)) = -log gamma(+-2z); -inf at zeros."""
    out = np.zeros(z.shape, dtype=complex) + 1j * np.pi
    for om in (w.omega1, w.omega2):
        x = 2 * np.pi * z / om
        small = np.abs(x.imag) < 20
        with np.errstate(divide="ignore"):
            part = np.empty(z.shape, dtype=complex)
            part[small] = np.log(2 * np.sin(x[small]))
            if (~small).any():
                part[~small] = log2sin(x[~small])
        out += part
    return out


def _scale(w: QuasiPeriods) -> float:
    return 0.5 * min(abs(w.omega1), abs(w.omega2))


def _vertical(logf, c: float, w: QuasiPeriods, tol: float, budget: int) -> Evaluation:
    spec = ContourSpec.imaginary_axis(re=c, scale=_scale(w), budget=budget)

    def f(z):
        return np.exp(logf(z))

    return integrate_contour(f, spec, tol=tol)


def _even_offset(u, offset):
    lo = min(x.real for x in u)
    if lo <= EPS:
        raise PolePinch(f"min Re u_a = {lo:.3g}: no vertical line separates the pole sequences")
    c = 0.0 if offset is None else float(offset)
    if abs(c) >= lo - EPS:
        raise PolePinch(f"offset {c} not inside (-{lo:.3g}, {lo:.3g})")
    return c


def _even_integral(u, w, tol, offset, budget):
    c = _even_offset(u, offset)
    ua = np.array(u)[:, None]

    def logf(z):
        zz = z[None, :]
        lg = log_hgamma((ua + zz).ravel(), w).reshape(ua.shape[0], -1).sum(axis=0)
        lg += log_hgamma((ua - zz).ravel(), w).reshape(ua.shape[0], -1).sum(axis=0)
        return lg + _log_m4sin(z, w)

    ev = _vertical(logf, c, w, tol, budget)
    return ev.scaled(1 / (2j * w.sqrt_prod))


def ih(par: HypParams8, tol: float = 1e-11, offset: float | None = None, budget: int = 200_000) -> Evaluation:
    """I_h(u) over the line Re z = offset (default the imaginary axis)."""
    return _even_integral(par.u, par.w, tol, offset, budget)


def eh(par: HypParams6, tol: float = 1e-11, offset: float | None = None, budget: int = 200_000) -> Evaluation:
    """E_h(u); the integral converges for Re(sum u) < 2 Re Q."""
    if sum(par.u).real >= 2 * par.w.Q.real:
        raise DomainError("E_h diverges: Re(sum u) >= 2 Re Q")
    return _even_integral(par.u, par.w, tol, offset, budget)


def jh_strip(par: MuNuParams) -> tuple[float, float]:
    lo = max(-x.real for x in par.nu)
    hi = min(x.real for x in par.mu)
    return lo, hi


def jh_integrand(par: MuNuParams):
    mu = np.array(par.mu)[:, None]
    nu = np.array(par.nu)[:, None]
    w = par.w

    def logf(z):
        zz = z[None, :]
        lg = log_hgamma((mu - zz).ravel(), w).reshape(4, -1).sum(axis=0)
        lg += log_hgamma((nu + zz).ravel(), w).reshape(4, -1).sum(axis=0)
        return lg

    return logf


def jh(par: MuNuParams, tol: float = 1e-11, offset: float | None = None, budget: int = 200_000) -> Evaluation:
    """J_h(mu, nu) with measure dz / (i sqrt(w1 w2))."""
    lo, hi = jh_strip(par)
    if hi - lo <= 2 * EPS:
        raise PolePinch(f"empty strip for J_h: need max(-Re nu) = {lo:.4g} < min(Re mu) = {hi:.4g}")
    c = 0.5 * (lo + hi) if offset is None else float(offset)
    if not lo + EPS < c < hi - EPS:
        raise PolePinch(f"offset {c} outside the admissible strip ({lo:.4g}, {hi:.4g})")
    ev = _vertical(jh_integrand(par), c, par.w, tol, budget)
    return ev.scaled(1 / (1j * par.w.sqrt_prod))


def jh_closed_form(par: MuNuParams, tol: float = 1e-10) -> complex:
    """Nine-gamma product valid when mu4 + nu4 = Q and sum_{a<=3}(mu_a + nu_a) = Q."""
    Q = par.w.Q
    if abs(par.mu[3] + par.nu[3] - Q) > tol * max(1, abs(Q)):
        raise DomainError("closed form needs mu4 + nu4 = Q")
    if abs(sum(par.mu[:3]) + sum(par.nu[:3]) - Q) > tol * max(1, abs(Q)):
        raise DomainError("closed form needs sum_{a<=3}(mu_a + nu_a) = Q")
    args = np.array([m + n for m in par.mu[:3] for n in par.nu[:3]])
    return complex(np.exp(np.sum(log_hgamma(args, par.w))))


# --------------------------------------------------------------------------
# difference equations
# --------------------------------------------------------------------------

def _sin(x: complex, denom: bool = False) -> complex:
    v = cmath.sin(x)
    if denom and abs(v) < EPS:
        raise ZeroError(f"vanishing sine in a denominator (argument {x:.6g})")
    return v


def coef_A(u, w1: complex, w2: complex) -> complex:
    """Potential of the I_h equation, shift by w2 in (u6, u7)."""
    s = lambda x, d=False: _sin(math.pi * x / w1, d)  # noqa: E731
    u6, u7, u8 = u[5], u[6], u[7]
    num = s(u6 - u8 - w2) * s(u6 + u8) * s(u8 - u6)
    den = s(u6 - u7, True) * s(u7 - u6 - w2, True) * s(u7 + u6 - w2, True)
    prod = 1.0 + 0j
    for k in range(5):
        prod *= s(u7 + u[k] - w2) / s(u8 + u[k], True)
    return num / den * prod


def coef_B(u, w1: complex, w2: complex) -> complex:
    """Potential of the E_h equation, shift by w2 in (u5, u6)."""
    s = lambda x, d=False: _sin(math.pi * x / w1, d)  # noqa: E731
    u5, u6 = u[4], u[5]
    num = 1.0 + 0j
    for k in range(4):
        num *= s(u6 + u[k] - w2)
    den = s(u5 - u6, True) * s(u6 - u5 - w2, True) * s(u6 + u5 - w2, True) * s(2 * (w1 + w2) - sum(u), True)
    return num / den


def coef_D(mu, nu, w1: complex, w2: complex) -> complex:
    """Potential of the J_h equation, shift by w2 in (mu2, mu3)."""
    s = lambda x, d=False: _sin(math.pi * x / w1, d)  # noqa: E731
    m2, m3, m4 = mu[1], mu[2], mu[3]
    val = s(m2 - m4 - w2) * s(m4 - m2) / (s(m2 - m3, True) * s(m3 - m2 - w2, True))
    for k in range(4):
        val *= s(m3 + nu[k] - w2) / s(m4 + nu[k], True)
    return val


def _swap(seq, i, j):
    s = list(seq)
    s[i], s[j] = s[j], s[i]
    return tuple(s)


def y_function(par: HypParams8, tol: float) -> Evaluation:
    u = par.u
    args = np.array([u[5] + u[7], u[5] - u[7], u[6] + u[7], u[6] - u[7]])
    return ih(par, tol).scaled(np.exp(-np.sum(log_hgamma(args, par.w))))


def u_munu(par: MuNuParams, tol: float) -> Evaluation:
    args = np.array([par.mu[1] - par.mu[3], par.mu[2] - par.mu[3]])
    return jh(par, tol).scaled(np.exp(-np.sum(log_hgamma(args, par.w))))


EQUATIONS = ("br", "br2", "difeh", "difeh2", "secdif", "secdif2")


def hyp_terms(eq: str, par, tol: float = 1e-11):
    """Three terms (L1 (F+ - F), L2 (F- - F), F) of the named equation."""
    if eq not in EQUATIONS:
        raise DomainError(f"unknown equation {eq!r}; expected one of {EQUATIONS}")
    w = par.w
    second = eq.endswith("2")
    w1, w2 = (w.omega2, w.omega1) if second else (w.omega1, w.omega2)
    if eq.startswith("br"):
        if not isinstance(par, HypParams8):
            raise DomainError(f"{eq} needs HypParams8")
        L1 = coef_A(par.u, w1, w2)
        L2 = coef_A(_swap(par.u, 5, 6), w1, w2)
        F = lambda p: y_function(p, tol)  # noqa: E731
        plus, minus = par.shifted(5, 6, w2), par.shifted(6, 5, w2)
    elif eq.startswith("difeh"):
        if not isinstance(par, HypParams6):
            raise DomainError(f"{eq} needs HypParams6")
        L1 = coef_B(par.u, w1, w2)
        L2 = coef_B(_swap(par.u, 4, 5), w1, w2)
        F = lambda p: eh(p, tol)  # noqa: E731
        plus, minus = par.shifted(4, 5, w2), par.shifted(5, 4, w2)
    else:
        if not isinstance(par, MuNuParams):
            raise DomainError(f"{eq} needs MuNuParams")
        L1 = coef_D(par.mu, par.nu, w1, w2)
        L2 = coef_D(_swap(par.mu, 1, 2), par.nu, w1, w2)
        F = lambda p: u_munu(p, tol)  # noqa: E731
        plus, minus = par.shifted_mu(1, 2, w2), par.shifted_mu(2, 1, w2)
    F0, Fp, Fm = F(par), F(plus), F(minus)
    return (
        Evaluation(L1 * (Fp.value - F0.value), abs(L1) * (Fp.abs_err + F0.abs_err)),
        Evaluation(L2 * (Fm.value - F0.value), abs(L2) * (Fm.abs_err + F0.abs_err)),
        F0,
    )


def hyp_residual(eq: str, par, tol: float = 1e-11) -> complex:
    """Left side of the named difference equation divided by its largest term."""
    terms = hyp_terms(eq, par, tol)
    scale = max(abs(t.value) for t in terms)
    if scale == 0:
        raise ZeroError("all terms vanish")
    return sum(t.value for t in terms) / scale


# --------------------------------------------------------------------------
# symmetry transformations
# --------------------------------------------------------------------------

def jheh_sides(par: MuNuParams, tol: float = 1e-11):
    mu, nu, w = par.mu, par.nu, par.w
    eta = par.eta_jheh
    lhs = jh(par, tol).value
    args = np.array([mu[a] + nu[3] for a in range(3)] + [nu[a] + mu[3] for a in range(3)])
    e6 = HypParams6((mu[0] + eta, mu[1] + eta, mu[2] + eta, nu[0] - eta, nu[1] - eta, nu[2] - eta), w)
    rhs = np.exp(np.sum(log_hgamma(args, w))) * eh(e6, tol).value
    return lhs, complex(rhs)


def ide1b_sides(par: MuNuParams, tol: float = 1e-11):
    mu, nu, w = par.mu, par.nu, par.w
    eta = par.eta_ide1b
    lhs = jh(par, tol).value
    args = np.array([mu[j] + nu[k] for j in (0, 1) for k in (0, 1)] + [mu[j] + nu[k] for j in (2, 3) for k in (2, 3)])
    if eta == 0:
        return lhs, complex(np.exp(np.sum(log_hgamma(args, w)))) * lhs
    rhs_par = MuNuParams((mu[0] + eta, mu[1] + eta, mu[2] - eta, mu[3] - eta),
                         (nu[0] + eta, nu[1] + eta, nu[2] - eta, nu[3] - eta), w)
    rhs = np.exp(np.sum(log_hgamma(args, w))) * jh(rhs_par, tol).value
    return lhs, complex(rhs)


def check_identity(name: str, par: MuNuParams, tol: float = 1e-11) -> float:
    """Relative deviation |LHS - RHS| / max(|LHS|, |RHS|) of jheh or ide1b."""
    if name == "jheh":
        lhs, rhs = jheh_sides(par, tol)
    elif name == "ide1b":
        lhs, rhs = ide1b_sides(par, tol)
    else:
        raise DomainError(f"unknown identity {name!r}")
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


# --------------------------------------------------------------------------
# modular-double 6j symbol
# --------------------------------------------------------------------------

def sb_measure(alpha_t: complex, b: complex) -> complex:
    """S_b(2 alpha_t) S_b(2Q - 2 alpha_t) = -4 sin(pi y / b) sin(pi y b), y = 2 alpha_t - Q.

    On the unitary line alpha_t in Q/2 + iR (real b) this is |S_b(2 alpha_t)|^2;
    elsewhere it is the analytic continuation.
    """
    Q = b + 1 / b
    y = 2 * alpha_t - Q
    return -4 * cmath.sin(math.pi * y / b) * cmath.sin(math.pi * y * b)


def pt_prefactor(par: PTParams) -> complex:
    a1, a2, a3, a4 = par.alpha
    s, t = par.alpha_s, par.alpha_t
    num = np.array([s + a2 - a1, a1 + t - a4])
    den = np.array([t + a2 - a3, a3 + s - a4])
    lg = np.sum(log_hgamma(num, par.w)) - np.sum(log_hgamma(den, par.w))
    return complex(np.exp(lg)) * sb_measure(t, par.b)


def jb(par: PTParams, tol: float = 1e-10, windows: bool | None = None) -> Evaluation:
    """J_b = i J_h (the bare dz measure, with sqrt(b / b) = 1).

    Near b = i the integrand lives on a comb of narrow peaks at z = -iN; the
    line Re z = c is then cut into unit windows centred on them and summed
    with :func:`bilateral_sum`.
    """
    mn = par.mu_nu()
    b = par.b
    if windows is None:
        windows = abs(b - 1j) < 0.2
    if not windows:
        return jh(mn, tol).scaled(1j)
    lo, hi = jh_strip(mn)
    if hi - lo <= 2 * EPS:
        raise PolePinch(f"empty strip for J_b ({lo:.4g}, {hi:.4g})")
    c = 0.5 * (lo + hi)
    delta = abs(b.real)
    logf = jh_integrand(mn)
    half = 0.5 / delta
    spec = ContourSpec(kind="line", base=0j, direction=1, R=half, tails=False, budget=100_000)

    def window(N):
        # z = c - i N - i delta x covers Im z in [-N - 1/2, -N + 1/2]
        def f(x):
            return np.exp(logf(c - 1j * N - 1j * delta * x))

        return integrate_contour(f, spec, tol=0.1 * tol).scaled(delta)

    # going up the line means x decreasing: dz = -i delta dx reverses to +i delta dx
    return bilateral_sum(window, eps=0, tol=tol, decay=3.0).scaled(1j)


def pt_6j(par: PTParams, tol: float = 1e-10) -> Evaluation:
    """Modular-double 6j symbol: four S_b prefactor, measure factor and J_b."""
    return jb(par, tol).scaled(pt_prefactor(par))


# --------------------------------------------------------------------------
# random admissible parameter sets
# --------------------------------------------------------------------------

def _c(rng, re_lo, re_hi, im=0.3):
    return complex(rng.uniform(re_lo, re_hi), rng.uniform(-im, im))


def random_hyp8(rng: np.random.Generator, w: QuasiPeriods, shift_room: bool = True) -> HypParams8:
    """Balanced u with Re u6, Re u7 above both Re w_j so the shifted points stay admissible."""
    W = max(w.omega1.real, w.omega2.real)
    while True:
        u = [_c(rng, 0.15, 0.35) for _ in range(5)]
        if shift_room:
            u += [_c(rng, W + 0.15, W + 0.35), _c(rng, W + 0.15, W + 0.35)]
        else:
            u += [_c(rng, 0.15, 0.5), _c(rng, 0.15, 0.5)]
        u8 = 2 * w.Q - sum(u)
        if u8.real > 0.1:
            return HypParams8(tuple(u) + (u8,), w)


def random_hyp6(rng: np.random.Generator, w: QuasiPeriods, shift_room: bool = True) -> HypParams6:
    W = max(w.omega1.real, w.omega2.real)
    while True:
        u = [_c(rng, 0.1, 0.3) for _ in range(4)]
        if shift_room:
            u += [_c(rng, W + 0.1, W + 0.3), _c(rng, W + 0.1, W + 0.3)]
        else:
            u += [_c(rng, 0.1, 0.6), _c(rng, 0.1, 0.6)]
        if sum(u).real < 2 * w.Q.real - 0.3:
            return HypParams6(tuple(u), w)


def random_munu(rng: np.random.Generator, w: QuasiPeriods, shift_room: bool = False) -> MuNuParams:
    """Balanced (mu, nu) with every Re part positive (the imaginary axis is admissible).

    With ``shift_room`` mu2 and mu3 get real parts above both Re w_j; a
    negative-real-part nu then keeps the strip nonempty after the shifts.
    """
    W = max(w.omega1.real, w.omega2.real)
    Q = w.Q
    while True:
        if shift_room:
            mu = [_c(rng, 0.3, 0.5), _c(rng, W + 0.1, W + 0.3), _c(rng, W + 0.1, W + 0.3), _c(rng, 0.3, 0.5)]
            nu = [_c(rng, 0.1, 0.3) for _ in range(3)]
        else:
            mu = [_c(rng, 0.15, 0.45) for _ in range(4)]
            nu = [_c(rng, 0.15, 0.45) for _ in range(3)]
        nu4 = 2 * Q - sum(mu) - sum(nu)
        par = MuNuParams(tuple(mu), tuple(nu) + (nu4,), w)
        lo, hi = jh_strip(par)
        if hi - lo > 0.2:
            return par


def random_munu_jheh(rng: np.random.Generator, w: QuasiPeriods) -> MuNuParams:
    """Balanced (mu, nu) whose jheh partner E_h(mu + eta, nu - eta) has Re parts > 0."""
    Q = w.Q
    while True:
        eta = complex(rng.uniform(-0.08, 0.08), rng.uniform(-0.1, 0.1))
        e = [_c(rng, 0.15, 0.4) for _ in range(6)]
        mu3 = [x - eta for x in e[:3]]
        nu3 = [x + eta for x in e[3:]]
        nu4 = Q - 2 * eta - sum(mu3)
        mu4 = 2 * Q - sum(mu3) - sum(nu3) - nu4
        par = MuNuParams(tuple(mu3) + (mu4,), tuple(nu3) + (nu4,), w)
        lo, hi = jh_strip(par)
        if hi - lo > 0.2 and min(x.real for x in e) > 0.1:
            return par


def random_munu_ide1b(rng: np.random.Generator, w: QuasiPeriods) -> MuNuParams:
    """Balanced (mu, nu) with small eta so both sides of ide1b have a nonempty strip."""
    Q = w.Q
    while True:
        eta = complex(rng.uniform(-0.08, 0.08), rng.uniform(-0.1, 0.1))
        head = [_c(rng, 0.15, 0.6) for _ in range(3)]
        last = Q - 2 * eta - sum(head)  # mu1 + mu2 + nu1 + nu2 = Q - 2 eta
        tail = [_c(rng, 0.15, 0.6) for _ in range(3)]
        rest = 2 * Q - (Q - 2 * eta) - sum(tail)
        mu = (head[0], head[1], tail[0], tail[1])
        nu = (head[2], last, tail[2], rest)
        par = MuNuParams(mu, nu, w)
        rhs = MuNuParams(tuple(m + s * eta for m, s in zip(mu, (1, 1, -1, -1))),
                         tuple(n + s * eta for n, s in zip(nu, (1, 1, -1, -1))), w)
        ok = all(hi - lo > 0.15 for lo, hi in (jh_strip(par), jh_strip(rhs)))
        if ok:
            return par
