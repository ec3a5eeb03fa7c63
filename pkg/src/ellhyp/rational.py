"""Rational (b -> 0) degenerations: J_r, its companion J~_r, and E_r."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .contour import ContourSpec, Evaluation, integrate_contour
from .errors import DomainError, NonConvergence, PolePinch, ZeroError
from .gamma_core import EPS, lngamma_complex, log2sin


@dataclass(frozen=True)
class RationalParams:
    """Either ``beta``/``gamma`` (four each, summing to 2) or six ``alpha``."""

    beta: tuple | None = None
    gamma: tuple | None = None
    alpha: tuple | None = None

    def __post_init__(self):
        if self.alpha is not None:
            if self.beta is not None or self.gamma is not None:
                raise DomainError("give either alpha or beta/gamma, not both")
            a = tuple(complex(x) for x in self.alpha)
            if len(a) != 6:
                raise DomainError("E_r takes six parameters")
            object.__setattr__(self, "alpha", a)
            return
        if self.beta is None or self.gamma is None:
            raise DomainError("J_r needs both beta and gamma")
        b = tuple(complex(x) for x in self.beta)
        g = tuple(complex(x) for x in self.gamma)
        if len(b) != 4 or len(g) != 4:
            raise DomainError("J_r takes four beta and four gamma")
        total = sum(b) + sum(g)
        if abs(total - 2) > 1e-12:
            raise DomainError(f"balancing violated: sum(beta + gamma) = {total}, expected 2")
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "gamma", g)

    @property
    def kind(self) -> str:
        return "E" if self.alpha is not None else "J"

    def with_beta(self, **kw) -> "RationalParams":
        b = list(self.beta)
        for key, val in kw.items():
            b[int(key[-1]) - 1] = complex(val)
        return RationalParams(beta=tuple(b), gamma=self.gamma)

    def with_alpha(self, **kw) -> "RationalParams":
        a = list(self.alpha)
        for key, val in kw.items():
            a[int(key[-1]) - 1] = complex(val)
        return RationalParams(alpha=tuple(a))


def _lg(z):
    return lngamma_complex(np.asarray(z, dtype=complex))


def _rlg(z):
    """log(1/Gamma(z)), -inf at the poles of Gamma (where 1/Gamma vanishes)."""
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, -np.inf + 0j)
    pole = (np.abs(z.imag) < 1e-14) & (z.real <= 0.5) & (np.abs(z.real - np.round(z.real)) < 1e-14)
    if (~pole).any():
        out[~pole] = -_lg(z[~pole])
    return out


def _line(logf, c: float, tol: float, budget: int = 200_000) -> Evaluation:
    spec = ContourSpec.imaginary_axis(re=c, scale=1.0, budget=budget)
    return integrate_contour(lambda z: np.exp(logf(z)), spec, tol=tol)


def jr_strip(par: RationalParams) -> tuple[float, float]:
    lo = max(-par.gamma[2].real, -par.gamma[3].real)
    hi = min(x.real for x in par.beta)
    return lo, hi


def _pick(lo, hi, offset, what):
    if hi - lo <= 2 * EPS:
        raise PolePinch(f"{what}: no vertical line separates the poles (strip ({lo:.4g}, {hi:.4g}))")
    c = 0.5 * (lo + hi) if offset is None else float(offset)
    if not lo + EPS < c < hi - EPS:
        raise PolePinch(f"{what}: offset {c} outside ({lo:.4g}, {hi:.4g})")
    return c


def jr_integrand(par: RationalParams):
    b = np.array(par.beta)[:, None]
    g = np.array(par.gamma)[:, None]

    def logf(u):
        uu = u[None, :]
        out = _lg(b - uu).sum(axis=0) + _lg(g[2:] + uu).sum(axis=0)
        return out + _rlg(1 - g[:2] - uu).sum(axis=0)

    return logf


def jr(par: RationalParams, tol: float = 1e-11, offset: float | None = None) -> Evaluation:
    """J_r: four-over-two gamma ratio integrated over a vertical line (measure du)."""
    c = _pick(*jr_strip(par), offset, "J_r")
    return _line(jr_integrand(par), c, tol)


def jr_normalized(par: RationalParams, tol: float = 1e-11) -> Evaluation:
    """J_r / (Gamma(beta2 - beta4) Gamma(beta3 - beta4))."""
    b = par.beta
    lg = _lg(np.array([b[1] - b[3], b[2] - b[3]])).sum()
    return jr(par, tol).scaled(cmath.exp(-complex(lg)))


def jr_tilde_strip(par: RationalParams) -> tuple[float, float]:
    lo = max(-par.gamma[2].real, -par.gamma[3].real)
    hi = min(par.beta[k].real for k in (0, 2, 3))
    return lo, hi


def jr_tilde_integrand(par: RationalParams):
    b = par.beta
    g = par.gamma
    bb = np.array([b[0], b[2], b[3]])[:, None]
    g34 = np.array(g[2:])[:, None]
    g12 = np.array(g[:2])[:, None]

    def logf(u):
        uu = u[None, :]
        out = 1j * np.pi * (b[3] - u)
        out = out + _lg(bb - uu).sum(axis=0) + _lg(g34 + uu).sum(axis=0)
        return out + _rlg(1 - b[1] + u) + _rlg(1 - g12 - uu).sum(axis=0)

    return logf


@dataclass(frozen=True)
class TailFit:
    exponent: float
    value: complex
    uncertainty: float


def _power_tail(logf, c: float, T: float) -> TailFit:
    """Fit f(c + iy) ~ sum_k a_k y^-(p+k) on [T, 8T] and integrate it over [T, inf)."""
    y = T * np.geomspace(1, 8, 24)
    fv = np.exp(logf(c + 1j * y))
    slope = np.polyfit(np.log(y), np.log(np.abs(fv)), 1)[0]
    p = -slope
    if not p > 1.2:
        raise NonConvergence(f"J~_r tail decays too slowly (fitted exponent {p:.3g})")
    pr = round(p)
    if abs(p - pr) < 0.05:
        p = float(pr)

    def fit(nk):
        A = np.stack([y ** -(p + k) for k in range(nk)], axis=1)
        sc = np.abs(A).max(axis=0)
        coef, *_ = np.linalg.lstsq(A / sc, fv, rcond=None)
        coef = coef / sc
        return sum(coef[k] * T ** (1 - p - k) / (p + k - 1) for k in range(nk))

    t4, t3 = fit(4), fit(3)
    # dz = i dy on the vertical line
    return TailFit(p, 1j * complex(t4), abs(t4 - t3))


def jr_tilde_raw(par: RationalParams, tol: float = 1e-10, T: float = 400.0,
                 offset: float | None = None) -> tuple[Evaluation, TailFit]:
    """Bare integral of J~_r: adaptive quadrature on Im u <= T plus a fitted power tail."""
    c = _pick(*jr_tilde_strip(par), offset, "J~_r")
    logf = jr_tilde_integrand(par)
    f = lambda z: np.exp(logf(z))  # noqa: E731
    # (-i inf, 0] decays exponentially; [0, iT] is a finite segment; beyond iT a fitted power tail
    lower = _half_line(f, c, -1, tol)
    upper = integrate_contour(f, ContourSpec(kind="line", base=complex(c, T / 2), direction=1j,
                                             R=T / 2, tails=False, scale=T / 8), tol=tol)
    tail = _power_tail(logf, c, T)
    val = lower.value + upper.value + tail.value
    err = lower.abs_err + upper.abs_err + tail.uncertainty
    return Evaluation(val, err, lower.nodes_used + upper.nodes_used, 0), tail


def _half_line(f, c: float, sign: int, tol: float) -> Evaluation:
    """Integral of f(z) dz over z = c + i sign y, y in [0, inf), oriented upward."""
    # y = t^2 over t in R doubles the half line; dz = i sign 2|t| dt, halved for the two copies
    def g(t):
        return f(c + 1j * sign * t * t) * np.abs(t)

    ev = integrate_contour(g, ContourSpec(kind="line", base=0j, direction=1, R=1e4, tails=True), tol=tol)
    # orientation: upward means from c - i inf to c (sign = -1) or c to c + i inf (sign = +1)
    return ev.scaled(1j)


def pinch_strip(par: RationalParams) -> tuple[float, float]:
    lo = max(-x.real for x in par.gamma)
    return lo, par.beta[2].real


def pinch_integrand(par: RationalParams):
    """exp(i pi v) Gamma(beta3 - v) prod_k Gamma(gamma_k + v) / prod_{i != 3} Gamma(1 - beta_i + v)."""
    b = par.beta
    g = np.array(par.gamma)[:, None]
    b124 = np.array([b[0], b[1], b[3]])[:, None]

    def logf(v):
        vv = v[None, :]
        out = 1j * np.pi * v + _lg(b[2] - v) + _lg(g + vv).sum(axis=0)
        return out + _rlg(1 - b124 + vv).sum(axis=0)

    return logf


def pinch_term(par: RationalParams, tol: float = 1e-10, T: float = 400.0,
               offset: float | None = None) -> Evaluation:
    """Contribution of the pinch between the two colliding pole rows.

    The vertical-line integral alone is not the limit of the shifted hyperbolic
    integral; the contour also threads a gap near ``z = -omega2`` where the
    integrand tends to a second Barnes-type integral. This returns that piece,
    already carrying the external factor of J~_r. The integrand decays
    exponentially upward and like ``|v|^-2`` downward.
    """
    b, g = par.beta, par.gamma
    c = _pick(*pinch_strip(par), offset, "pinch term")
    logf = pinch_integrand(par)
    f = lambda z: np.exp(logf(z))  # noqa: E731
    upper = _half_line(f, c, +1, tol)
    lower = integrate_contour(f, ContourSpec(kind="line", base=complex(c, -T / 2), direction=1j,
                                             R=T / 2, tails=False, scale=T / 8), tol=tol)
    # mirror v -> 2c - v turns the lower tail into an upward one with the same orientation sign
    tail = _power_tail(lambda z: logf(2 * c - z), c, T)
    val = upper.value + lower.value + tail.value
    err = upper.abs_err + lower.abs_err + tail.uncertainty
    lg = 1j * np.pi * (b[1] + b[3] - b[2] + g[2] + g[3]) + _lg(1 - b[1] + b[3]) - _lg(b[2] - b[3])
    return Evaluation(val, err, upper.nodes_used + lower.nodes_used, 0).scaled(-cmath.exp(complex(lg)))


def jr_tilde(par: RationalParams, tol: float = 1e-10, T: float = 400.0, pinch: bool = True,
             offset: float | None = None, pinch_offset: float | None = None) -> Evaluation:
    """J~_r including the external ratio Gamma(1 - beta2 + beta4) / Gamma(beta3 - beta4).

    With ``pinch=False`` only the vertical-line integral is returned; the
    difference equation then fails at O(1). The default adds :func:`pinch_term`.
    The two offsets place the vertical lines of the main and the pinch integral.
    """
    b = par.beta
    ev, _ = jr_tilde_raw(par, tol, T, offset)
    lg = _lg(1 - b[1] + b[3]) - _lg(b[2] - b[3])
    ev = ev.scaled(cmath.exp(complex(lg)))
    if not pinch:
        return ev
    pt = pinch_term(par, tol, T, pinch_offset)
    return Evaluation(ev.value + pt.value, ev.abs_err + pt.abs_err, ev.nodes_used + pt.nodes_used, 0)


def _log_sin_factor(u):
    """log(-2u sin(2 pi u) / pi) = -log Gamma(+-2u); -inf at u = 0."""
    x = 2 * np.pi * u
    small = np.abs(x.imag) < 20
    ls = np.empty(u.shape, dtype=complex)
    with np.errstate(divide="ignore"):
        ls[small] = np.log(2 * np.sin(x[small]))
        if (~small).any():
            ls[~small] = log2sin(x[~small])
        return ls + np.log(-u / np.pi + 0j)


def er_integrand(par: RationalParams):
    a = np.array(par.alpha)[:, None]

    def logf(u):
        uu = u[None, :]
        out = _lg(a + uu).sum(axis=0) + _lg(a - uu).sum(axis=0)
        # 1 / Gamma(+-2u) = -2u sin(2 pi u) / pi
        return out + _log_sin_factor(u)

    return logf


def er(par: RationalParams, tol: float = 1e-11, offset: float | None = None, fold: bool = False) -> Evaluation:
    """E_r with measure du / (4 pi i); ``fold`` integrates the upper half line only and doubles."""
    lo = min(x.real for x in par.alpha)
    if lo <= EPS:
        raise PolePinch(f"E_r: min Re alpha = {lo:.3g}, the imaginary axis does not separate the poles")
    logf = er_integrand(par)
    if fold:
        if offset not in (None, 0, 0.0):
            raise DomainError("fold needs the symmetric contour")
        f = lambda z: np.exp(logf(z))  # noqa: E731
        ev = _half_line(f, 0.0, 1, tol).scaled(2)
    else:
        c = 0.0 if offset is None else float(offset)
        if abs(c) >= lo - EPS:
            raise PolePinch(f"E_r: offset {c} outside (-{lo:.3g}, {lo:.3g})")
        ev = _line(logf, c, tol)
    return ev.scaled(1 / (4j * math.pi))


# --------------------------------------------------------------------------
# difference equations
# --------------------------------------------------------------------------

def _nz(x: complex, what: str) -> complex:
    if abs(x) < EPS:
        raise ZeroError(f"vanishing denominator {what}")
    return x


def coef_D(beta, gamma) -> complex:
    b1, b2, b3, b4 = beta
    val = (b2 - b4 - 1) * (b4 - b2) / (_nz(b2 - b3, "beta2 - beta3") * _nz(b3 - b2 - 1, "beta3 - beta2 - 1"))
    for g in gamma:
        val *= (b3 + g - 1) / _nz(b4 + g, "beta4 + gamma_k")
    return val


def coef_tilde(beta, gamma) -> complex:
    b1, b2, b3, b4 = beta
    s = lambda x: cmath.sin(math.pi * x)  # noqa: E731
    val = cmath.exp(1j * math.pi * (b1 - b2)) * s(b4 - b2) / _nz(s(b2 - b3), "sin(pi(beta2 - beta3))")
    val *= s(b3 + gamma[0]) * s(b3 + gamma[1])
    val /= _nz(s(b4 + gamma[2]) * s(b4 + gamma[3]), "sin(pi(beta4 + gamma_k))")
    return val


def coef_C(alpha) -> complex:
    a5, a6 = alpha[4], alpha[5]
    num = 1.0 + 0j
    for k in range(4):
        num *= a6 + alpha[k] - 1
    den = (_nz(a5 - a6, "alpha5 - alpha6") * _nz(a6 - a5 - 1, "alpha6 - alpha5 - 1")
           * _nz(a6 + a5 - 1, "alpha5 + alpha6 - 1") * _nz(2 - sum(alpha), "2 - sum alpha"))
    return num / den


RATIONAL_EQUATIONS = ("jr_eq", "jr_tilde_eq", "er_eq")


def _swap_beta(par, i=1, j=2):
    b = list(par.beta)
    b[i], b[j] = b[j], b[i]
    return RationalParams(beta=tuple(b), gamma=par.gamma)


def rational_terms(eq: str, par: RationalParams, tol: float = 1e-11):
    if eq == "jr_eq":
        if par.kind != "J":
            raise DomainError("jr_eq needs beta/gamma parameters")
        b = par.beta
        L1 = coef_D(b, par.gamma)
        L2 = coef_D(_swap_beta(par).beta, par.gamma)
        F0 = jr_normalized(par, tol)
        Fp = jr_normalized(par.with_beta(b2=b[1] + 1, b3=b[2] - 1), tol)
        Fm = jr_normalized(par.with_beta(b2=b[1] - 1, b3=b[2] + 1), tol)
    elif eq == "jr_tilde_eq":
        if par.kind != "J":
            raise DomainError("jr_tilde_eq needs beta/gamma parameters")
        L1 = coef_tilde(par.beta, par.gamma)
        sw = _swap_beta(par)
        L2 = coef_tilde(sw.beta, sw.gamma)
        F0 = jr_normalized(par, tol)
        Fp = jr_tilde(par, tol)
        Fm = jr_tilde(sw, tol)
    elif eq == "er_eq":
        if par.kind != "E":
            raise DomainError("er_eq needs alpha parameters")
        a = par.alpha
        L1 = coef_C(a)
        sw = list(a)
        sw[4], sw[5] = sw[5], sw[4]
        L2 = coef_C(sw)
        F0 = er(par, tol)
        Fp = er(par.with_alpha(a5=a[4] + 1, a6=a[5] - 1), tol)
        Fm = er(par.with_alpha(a5=a[4] - 1, a6=a[5] + 1), tol)
    else:
        raise DomainError(f"unknown equation {eq!r}; expected one of {RATIONAL_EQUATIONS}")
    return (
        Evaluation(L1 * (Fp.value - F0.value), abs(L1) * (Fp.abs_err + F0.abs_err)),
        Evaluation(L2 * (Fm.value - F0.value), abs(L2) * (Fm.abs_err + F0.abs_err)),
        F0,
    )


def rational_residual(eq: str, par: RationalParams, tol: float = 1e-11) -> complex:
    terms = rational_terms(eq, par, tol)
    scale = max(abs(t.value) for t in terms)
    if scale == 0:
        raise ZeroError("all terms vanish")
    return sum(t.value for t in terms) / scale


# --------------------------------------------------------------------------
# random admissible parameters
# --------------------------------------------------------------------------

def _c(rng, lo, hi, im=0.3):
    return complex(rng.uniform(lo, hi), rng.uniform(-im, im))


def random_jr(rng: np.random.Generator, shift_room: bool = True) -> RationalParams:
    """Balanced beta/gamma; with ``shift_room`` Re beta2, beta3 > 1 so the unit shifts stay admissible."""
    while True:
        if shift_room:
            beta = (_c(rng, 0.2, 0.45), _c(rng, 1.15, 1.4), _c(rng, 1.15, 1.4), _c(rng, 0.2, 0.45))
        else:
            beta = tuple(_c(rng, 0.2, 0.6) for _ in range(4))
        g1 = _c(rng, -0.8, 0.4)
        g34 = (_c(rng, 0.15, 0.45), _c(rng, 0.15, 0.45))
        g2 = 2 - sum(beta) - g1 - sum(g34)
        par = RationalParams(beta=beta, gamma=(g1, g2) + g34)
        lo, hi = jr_strip(par)
        if hi - lo > 0.3:
            return par


def random_jr_tilde(rng: np.random.Generator) -> RationalParams:
    """Balanced beta/gamma for the J~_r identity (beta2 enters only the denominator there)."""
    while True:
        beta = tuple(_c(rng, 0.2, 0.6) for _ in range(4))
        g1 = _c(rng, -0.6, 0.4)
        g34 = (_c(rng, 0.15, 0.45), _c(rng, 0.15, 0.45))
        g2 = 2 - sum(beta) - g1 - sum(g34)
        par = RationalParams(beta=beta, gamma=(g1, g2) + g34)
        lo, hi = jr_tilde_strip(par)
        lo2, hi2 = jr_tilde_strip(_swap_beta(par))
        widths = [hi - lo, hi2 - lo2, jr_strip(par)[1] - jr_strip(par)[0]]
        widths += [h - l for l, h in (pinch_strip(par), pinch_strip(_swap_beta(par)))]
        if min(widths) > 0.3:
            return par


def random_er(rng: np.random.Generator, shift_room: bool = True) -> RationalParams:
    if shift_room:
        a = tuple(_c(rng, 0.15, 0.5) for _ in range(4)) + (_c(rng, 1.1, 1.4), _c(rng, 1.1, 1.4))
    else:
        a = tuple(_c(rng, 0.15, 0.6) for _ in range(6))
    return RationalParams(alpha=a)
