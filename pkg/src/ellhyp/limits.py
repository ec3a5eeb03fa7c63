"""Numerical checks of the degeneration limits.

Each scan evaluates both sides of a limit relation for a decreasing sequence
of small parameters and fits the slope of ``log(deviation)`` against
``log(small parameter)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .complex_rational import SixJComplexParams, complex_6j, random_sixj
from .errors import DomainError
from .gamma_core import EllipticBases, QuasiPeriods, cgamma, hgamma, log_egamma, sb
from .hyperbolic import MuNuParams, PTParams, jh, pt_6j
from .rational import RationalParams, jr, random_jr

LIMITS = ("elliptic_to_hyperbolic", "gamma_b_to_i", "jh_b_to_0", "pt_to_complex6j")


@dataclass(frozen=True)
class LimitScan:
    limit: str
    params: dict
    deltas: tuple
    lhs: tuple
    rhs: tuple
    deviations: tuple
    order: float

    def rows(self):
        for d, a, b, e in zip(self.deltas, self.lhs, self.rhs, self.deviations):
            yield {"delta": d, "lhs": a, "rhs": b, "deviation": e}

    @property
    def monotone(self) -> bool:
        return all(b < a for a, b in zip(self.deviations, self.deviations[1:]))


def fitted_order(deltas, deviations) -> float:
    """Least-squares slope of log(deviation) against log(delta)."""
    x = np.log(np.asarray(deltas, dtype=float))
    y = np.log(np.asarray(deviations, dtype=float))
    if len(x) < 2:
        return math.nan
    return float(np.polyfit(x, y, 1)[0])


def _deltas(deltas) -> tuple:
    d = tuple(float(x) for x in deltas)
    if not d:
        raise DomainError("need at least one small parameter")
    if any(x <= 0 for x in d):
        raise DomainError("small parameters must be positive")
    if any(b >= a for a, b in zip(d, d[1:])):
        raise DomainError("small parameters must decrease strictly")
    return d


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)


# --------------------------------------------------------------------------
# individual limit relations
# --------------------------------------------------------------------------

def elliptic_to_hyperbolic_point(y: complex, w: QuasiPeriods, v: float) -> tuple[complex, complex]:
    """Scaled elliptic gamma at ``v`` and the hyperbolic gamma it tends to."""
    w1, w2 = w.omega1, w.omega2
    bases = EllipticBases(cmath.exp(-2 * math.pi * v * w1), cmath.exp(-2 * math.pi * v * w2))
    lg = log_egamma(np.array([cmath.exp(-2 * math.pi * v * y)]), bases)[0]
    lg += math.pi * (2 * y - w1 - w2) / (12 * v * w1 * w2)
    return complex(np.exp(lg)), complex(hgamma(y, w))


def gamma_b_to_i_point(x: complex, n: int, delta: float) -> tuple[complex, complex]:
    """``S_b(i (n + x delta))`` at ``b = i + delta`` and its complex-gamma asymptote."""
    lhs = complex(sb(1j * (n + x * delta), 1j + delta))
    rhs = cmath.exp(0.5j * math.pi * n * n + (1j * x - 1) * math.log(4 * math.pi * delta)) * complex(cgamma(x, n))
    return lhs, rhs


def jh_to_jr_params(par: RationalParams, w1: float, w2: complex = 1.0) -> MuNuParams:
    """``mu = w1 beta``, ``nu = w1 gamma`` with ``nu1, nu2`` shifted by ``w2`` (balancing becomes sum = 2)."""
    mu = tuple(w1 * b for b in par.beta)
    g = par.gamma
    nu = (w1 * g[0] + w2, w1 * g[1] + w2, w1 * g[2], w1 * g[3])
    return MuNuParams(mu, nu, QuasiPeriods(w1, w2))


def jh_b_to_0_point(par: RationalParams, w1: float, jr_value: complex | None = None, w2: complex = 1.0,
                    tol: float = 1e-10) -> tuple[complex, complex]:
    """Scaled J_h at ``omega1 = w1`` and J_r.

    J_h carries the measure ``dz / (i sqrt(w1 w2))`` while J_r is integrated
    against ``du = dz / w1``; the scaling therefore includes ``i sqrt(w1 w2)``
    besides ``(2 pi)^4 w1 / w2^2``.
    """
    mn = jh_to_jr_params(par, w1, w2)
    lhs = jh(mn, tol).value * (2 * math.pi) ** 4 * w1 / w2 ** 2 * 1j * mn.w.sqrt_prod
    rhs = jr(par, tol).value if jr_value is None else jr_value
    return complex(lhs), complex(rhs)


# --------------------------------------------------------------------------
# modular double -> SL(2,C)
# --------------------------------------------------------------------------

def prefactor_F(par: SixJComplexParams) -> int:
    """Exact sign exponent ``F``; it must be an even integer."""
    A1, A2, A3, A4 = (Fraction(a) for a in par.A)
    F = A1 ** 2 - A2 ** 2 - A3 ** 2 + A4 ** 2 + sum(Fraction(s) ** 2 + Fraction(t) ** 2 for s, t in zip(par.S, par.T))
    F += 2 * (A4 - A2)
    if F.denominator != 1 or F.numerator % 2:
        raise DomainError(f"F = {F} is not an even integer: inconsistent labels")
    return int(F)


def pt_params_at(par: SixJComplexParams, delta: float) -> PTParams:
    """Modular-double labels ``alpha' = i(N/2 + sigma delta)`` at ``b = i + delta``."""
    primed = tuple(1j * (n / 2 + s * delta) for n, s in zip(par.N, par.sigma))
    pt = 1j * (par.M[0] / 2 + par.rho[0] * delta)
    ps = 1j * (par.M[1] / 2 + par.rho[1] * delta)
    return PTParams.from_primed(primed, ps, pt, 1j + delta)


def pt_limit_factor(par: SixJComplexParams, delta: float, literal: bool = False) -> complex:
    """Factor relating the modular-double symbol at ``b = i + delta`` to the SL(2,C) one.

    Multiplying the single-factor asymptotes together gives
    ``exp(i pi F/2) (-1)^(M2-N2+N4) i (M1^2 + 4 rho1^2) / (16 pi^4 delta)``:
    the sign ``(-1)^(M2-N2+N4)`` built into the SL(2,C) symbol is not produced by
    the limit, and the orientation of ``z = -i(N + u delta)`` gives ``+i delta du``.
    ``literal=True`` returns ``exp(i pi F/2) (M1^2 + 4 rho1^2) / (16 pi^4 i delta)``
    instead, which differs by the sign ``-(-1)^(M2-N2+N4)``.
    """
    F = prefactor_F(par)
    sign = -1 if (F // 2) % 2 else 1
    mag = (par.M[0] ** 2 + 4 * par.rho[0] ** 2) / (16 * math.pi ** 4 * delta)
    if literal:
        return sign * mag / 1j
    if (par.M[1] - par.N[1] + par.N[3]) % 2:
        sign = -sign
    return sign * 1j * mag


def pt_to_complex6j_point(par: SixJComplexParams, delta: float, sixj_value: complex | None = None,
                          tol: float = 1e-9) -> tuple[complex, complex]:
    lhs = pt_6j(pt_params_at(par, delta), tol).value
    c6j = complex_6j(par, tol).value if sixj_value is None else sixj_value
    return complex(lhs), complex(pt_limit_factor(par, delta) * c6j)


def appendix_a_checks(par: SixJComplexParams, delta: float, N: int = 0, u: complex = 0.3) -> dict:
    """Relative deviation of each single-factor asymptote at ``b = i + delta``.

    The integrand factors are checked at the sample point ``z = i(-N - u delta)``.
    """
    b = 1j + delta
    pt = pt_params_at(par, delta)
    a1, a2, a3, a4 = pt.alpha
    s, t = pt.alpha_s, pt.alpha_t
    mu, nu = pt.mu_nu().mu, pt.mu_nu().nu
    z = 1j * (-N - u * delta)
    L = math.log(4 * math.pi * delta)
    sg1, sg2, sg3, sg4 = par.sigma
    r1, r2 = par.rho
    A1, A2, A3, A4 = (int(x) for x in par.A)

    def S(x):
        return complex(sb(x, b))

    def ph(k):
        return cmath.exp(0.5j * math.pi * k * k)

    out = {}
    for a in range(4):
        T, U = int(par.T[a]), par.U[a]
        out[f"S(mu{a + 1}-z)"] = (S(mu[a] - z), ph(T + N) * cmath.exp((1j * (U + u) - 1) * L) * complex(cgamma(U + u, T + N)))
        Sa, R = int(par.S[a]), par.R[a]
        out[f"S(nu{a + 1}+z)"] = (S(nu[a] + z), ph(Sa - N) * cmath.exp((1j * (R - u) - 1) * L) * complex(cgamma(R - u, Sa - N)))
    out["S(as+a2-a1)"] = (S(s + a2 - a1), ph(A1) * cmath.exp(1j * (sg1 - sg2 + r2) * L) * complex(cgamma(sg1 - sg2 + r2 - 1j, A1)))
    out["S(a1+at-a4)"] = (S(a1 + t - a4), ph(A4) * cmath.exp(1j * (-sg1 - sg4 - r1) * L) * (-1) ** A4
                          / complex(cgamma(sg1 + sg4 + r1 - 1j, A4)))
    out["S(a2+at-a3)"] = (S(a2 + t - a3), ph(A2) * cmath.exp(1j * (-sg2 + sg3 - r1) * L) * (-1) ** A2
                          / complex(cgamma(sg2 - sg3 + r1 - 1j, A2)))
    out["S(a3+as-a4)"] = (S(a3 + s - a4), ph(A3) * cmath.exp(1j * (-sg3 - sg4 + r2) * L) * complex(cgamma(-sg3 - sg4 + r2 - 1j, A3)))
    from .hyperbolic import sb_measure
    out["|S(2at)|^2"] = (sb_measure(t, b), (4 * math.pi * delta) ** 2 * (par.M[0] ** 2 + 4 * r1 ** 2) / 4)
    return {k: _rel(a, c) for k, (a, c) in out.items()}


# --------------------------------------------------------------------------
# scans
# --------------------------------------------------------------------------

def limit_scan(limit: str, deltas, params: dict | None = None, tol: float = 1e-10) -> LimitScan:
    """Evaluate both sides of a limit relation for each small parameter.

    ``params`` holds the target-side parameters; missing entries take the
    documented defaults (``y=0.6, omega=(1,1)``; ``x=0.7, n=1``; random
    rational or 6j labels from ``seed``).
    """
    d = _deltas(deltas)
    params = dict(params or {})
    lhs, rhs = [], []
    if limit == "elliptic_to_hyperbolic":
        y = complex(params.setdefault("y", 0.6))
        w = QuasiPeriods(*params.setdefault("omega", (1.0, 1.0)))
        for v in d:
            a, b = elliptic_to_hyperbolic_point(y, w, v)
            lhs.append(a), rhs.append(b)
    elif limit == "gamma_b_to_i":
        x = complex(params.setdefault("x", 0.7))
        n = int(params.setdefault("n", 1))
        for delta in d:
            a, b = gamma_b_to_i_point(x, n, delta)
            lhs.append(a), rhs.append(b)
    elif limit == "jh_b_to_0":
        par = params.get("par")
        if par is None:
            par = random_jr(np.random.default_rng(params.setdefault("seed", 0)), shift_room=False)
            params["par"] = par
        w2 = complex(params.setdefault("omega2", 1.0))
        target = jr(par, tol).value
        for w1 in d:
            a, b = jh_b_to_0_point(par, w1, target, w2, tol)
            lhs.append(a), rhs.append(b)
    elif limit == "pt_to_complex6j":
        par = params.get("par")
        if par is None:
            par = random_sixj(np.random.default_rng(params.setdefault("seed", 0)))
            params["par"] = par
        params["F"] = prefactor_F(par)
        target = complex_6j(par, tol).value
        for delta in d:
            a, b = pt_to_complex6j_point(par, delta, target, tol)
            lhs.append(a), rhs.append(b)
    else:
        raise DomainError(f"unknown limit {limit!r}; expected one of {LIMITS}")
    dev = tuple(_rel(a, b) for a, b in zip(lhs, rhs))
    return LimitScan(limit, params, d, tuple(lhs), tuple(rhs), dev, fitted_order(d, dev))
