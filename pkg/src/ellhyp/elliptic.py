"""The elliptic V-function and its difference equation in t6, t7."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .contour import ContourSpec, Evaluation, integrate_contour
from .errors import DomainError, PolePinch, ZeroError
from .gamma_core import EPS, EllipticBases, log_egamma, log_qpoch, qpoch, theta_q


@dataclass(frozen=True)
class EllipticParams:
    """Eight parameters ``t`` with ``prod t = p^2 q^2``, plus the bases."""

    t: tuple
    bases: EllipticBases

    def __post_init__(self):
        t = tuple(complex(x) for x in self.t)
        if len(t) != 8:
            raise DomainError("the V-function takes exactly eight parameters")
        if any(x == 0 for x in t):
            raise DomainError("parameters must be nonzero")
        object.__setattr__(self, "t", t)
        p, q = self.bases.p, self.bases.q
        target = (p * q) ** 2
        prod = complex(np.prod(t))
        if abs(prod - target) > 1e-12 * abs(target):
            raise DomainError(f"balancing condition violated: prod t = {prod}, p^2 q^2 = {target}")

    @classmethod
    def balanced(cls, t7: tuple, bases: EllipticBases) -> "EllipticParams":
        """Fix ``t8`` from the first seven parameters."""
        t7 = tuple(complex(x) for x in t7)
        if len(t7) != 7:
            raise DomainError("need seven free parameters")
        t8 = (bases.p * bases.q) ** 2 / complex(np.prod(t7))
        return cls(t7 + (t8,), bases)

    def replace(self, **changes) -> "EllipticParams":
        """Copy with some ``t_k`` replaced (keys ``t1``..``t8``), skipping the balancing check's renormalization."""
        t = list(self.t)
        for key, val in changes.items():
            t[int(key[1:]) - 1] = complex(val)
        return EllipticParams(tuple(t), self.bases)

    def swapped_bases(self) -> "EllipticParams":
        return EllipticParams(self.t, EllipticBases(self.bases.q, self.bases.p))


def _pick_radius(t) -> float:
    """Circle radius in [0.8, 1.2] that best separates the two pole sequences."""
    big = max(abs(x) for x in t)
    if big < 0.9:
        return 1.0
    # poles of the t z factors sit inside |z| <= |t|, those of t/z outside 1/|t|
    for r in np.linspace(0.8, 1.2, 41):
        if all(abs(x) * max(r, 1 / r) < 1 for x in t):
            return float(r)
    return 1.0


def v_function(par: EllipticParams, tol: float = 1e-12, radius: float | None = None) -> Evaluation:
    """V(t1..t8; p, q) by the periodic trapezoid rule on a circle ``|z| = r``.

    The denominator ``1/(Gamma(z^2) Gamma(z^-2))`` is replaced by the equivalent
    entire expression ``theta(z^2; p) theta(z^-2; q)``.
    """
    t = np.array(par.t)
    p, q = par.bases.canonical()
    r = _pick_radius(par.t) if radius is None else float(radius)
    if np.any(np.abs(t) * max(r, 1 / r) >= 1):
        raise PolePinch(f"circle |z| = {r} does not separate the pole sequences (max |t| = {np.abs(t).max():.3g})")
    pref = qpoch(p, p) * qpoch(q, q) / (4j * math.pi)

    def f(z):
        z = np.asarray(z)
        tz = np.multiply.outer(t, z)
        tzi = np.multiply.outer(t, 1 / z)
        lg = log_egamma(tz, par.bases, check=False).sum(axis=0)
        lg += log_egamma(tzi, par.bases, check=False).sum(axis=0)
        z2 = z * z
        # theta(z^2; p) theta(z^-2; q) vanishes at z = +-1: log1p(-1) = -inf is intended
        with np.errstate(divide="ignore"):
            lg += log_qpoch(z2, p) + log_qpoch(p / z2, p) + log_qpoch(1 / z2, q) + log_qpoch(q * z2, q)
        return np.exp(lg) / z

    ev = integrate_contour(f, ContourSpec.circle(r), tol=tol)
    return ev.scaled(pref)


def _theta_checked(x: complex, p: complex) -> complex:
    val = theta_q(x, p)
    if abs(val) < EPS:
        raise ZeroError(f"theta({x:.6g}; p) vanishes in a denominator")
    return val


def ba_coefficient(t, p: complex, q: complex) -> complex:
    """Coefficient L(t) of the elliptic hypergeometric equation."""
    t1, t2, t3, t4, t5, t6, t7, t8 = t
    num = theta_q(t6 / (q * t8), p) * theta_q(t6 * t8, p) * theta_q(t8 / t6, p)
    den = _theta_checked(t6 / t7, p) * _theta_checked(t7 / (q * t6), p) * _theta_checked(t7 * t6 / q, p)
    prod = 1.0 + 0j
    for tk in (t1, t2, t3, t4, t5):
        prod *= theta_q(t7 * tk / q, p) / _theta_checked(t8 * tk, p)
    return num / den * prod


def u_function(par: EllipticParams, tol: float = 1e-12, form: str = "direct") -> Evaluation:
    """``V / [Gamma(t6 t8^+-) Gamma(t7 t8^+-)]``.

    ``form="reflected"`` uses ``1/Gamma(x) = Gamma(pq/x)`` for the four divisors.
    """
    t6, t7, t8 = par.t[5], par.t[6], par.t[7]
    args = np.array([t6 * t8, t6 / t8, t7 * t8, t7 / t8])
    p, q = par.bases.p, par.bases.q
    if form == "direct":
        lg = -np.sum(log_egamma(args, par.bases))
    elif form == "reflected":
        lg = np.sum(log_egamma(p * q / args, par.bases))
    else:
        raise DomainError(f"unknown form {form!r}")
    return v_function(par, tol=tol).scaled(cmath.exp(complex(lg)))


def ehe_terms(par: EllipticParams, tol: float = 1e-12, form: str = "direct"):
    """The three terms of the difference equation, as Evaluations."""
    p, q = par.bases.p, par.bases.q
    t = par.t
    L1 = ba_coefficient(t, p, q)
    ts = list(t)
    ts[5], ts[6] = t[6], t[5]
    L2 = ba_coefficient(ts, p, q)
    U0 = u_function(par, tol, form)
    Up = u_function(par.replace(t6=q * t[5], t7=t[6] / q), tol, form)
    Um = u_function(par.replace(t6=t[5] / q, t7=q * t[6]), tol, form)
    terms = (
        Evaluation(L1 * (Up.value - U0.value), abs(L1) * (Up.abs_err + U0.abs_err)),
        Evaluation(L2 * (Um.value - U0.value), abs(L2) * (Um.abs_err + U0.abs_err)),
        U0,
    )
    return terms


def ehe_residual(par: EllipticParams, tol: float = 1e-12, form: str = "direct") -> complex:
    """Left side of the elliptic hypergeometric equation over its largest term."""
    terms = ehe_terms(par, tol, form)
    scale = max(abs(e.value) for e in terms)
    if scale == 0:
        raise ZeroError("all terms of the equation vanish")
    return sum(e.value for e in terms) / scale


def random_params(rng: np.random.Generator, pq_max: float = 0.3, t_max: float = 0.8,
                  shiftable: bool = True) -> EllipticParams:
    """Random admissible parameters; with ``shiftable`` t6, t7 stay inside ``|q| |z| < 1`` after shifts."""
    def c(lo, hi):
        return rng.uniform(lo, hi) * cmath.exp(2j * math.pi * rng.uniform())

    while True:
        bases = EllipticBases(c(0.1, pq_max), c(0.1, pq_max))
        p, q = bases.p, bases.q
        t = [c(0.3, t_max) for _ in range(5)]
        if shiftable:
            t += [c(0.3, 0.7) * abs(q), c(0.3, 0.7) * abs(q)]
        else:
            t += [c(0.3, t_max), c(0.3, t_max)]
        par = EllipticParams.balanced(tuple(t), bases)
        t8 = par.t[7]
        if not 1e-3 < abs(t8) < t_max:
            continue
        try:
            ba_coefficient(par.t, p, q)
            ts = list(par.t)
            ts[5], ts[6] = ts[6], ts[5]
            ba_coefficient(ts, p, q)
        except ZeroError:
            continue
        return par
