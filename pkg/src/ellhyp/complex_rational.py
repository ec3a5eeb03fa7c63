"""Complex rational integrals at b = i: J_cr, E_cr and the SL(2,C) 6j-symbol.

Every integral here is a bilateral sum over a discrete label ``N`` of a line
integral over a continuous variable ``y``.  The summand is a product of
complex gamma functions ``Gamma(x, n)``.  Discrete labels are kept as exact
:class:`fractions.Fraction` values so that sign factors never pass through
floating point.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .contour import ContourSpec, Evaluation, bilateral_sum, integrate_contour
from .errors import DomainError, NonConvergence, PolePinch, ZeroError
from .gamma_core import EPS, cgamma, log_cgamma
from .rational import coef_D

HALF = Fraction(1, 2)


def _frac(x) -> Fraction:
    f = Fraction(x).limit_denominator(4)
    if f.denominator not in (1, 2) or abs(float(f) - float(x)) > 1e-12:
        raise DomainError(f"discrete label must be an integer or half-integer, got {x!r}")
    return f


def _eps(e) -> Fraction:
    e = _frac(e)
    if e not in (0, HALF):
        raise DomainError("eps must be 0 or 1/2")
    return e


def _labels(vals, eps: Fraction, count: int, what: str) -> tuple:
    vals = tuple(_frac(v) for v in vals)
    if len(vals) != count:
        raise DomainError(f"{what} needs {count} entries")
    if any((v - eps).denominator != 1 for v in vals):
        raise DomainError(f"{what} must lie in Z + {eps}")
    return vals


def _sign(A: Fraction) -> int:
    """``exp(i pi A)`` for integer ``A``; anything else is an inconsistent input."""
    if A.denominator != 1:
        raise DomainError(f"phase exponent A = {A} is not an integer")
    return -1 if A.numerator % 2 else 1


# --------------------------------------------------------------------------
# parameter sets
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CRParamSet:
    """Arguments ``(s_a, n_a; t_a, m_a)`` of J_cr, with ``n_a, m_a`` in ``Z + eps``."""

    s: tuple
    n: tuple
    t: tuple
    m: tuple
    eps: Fraction = Fraction(0)

    def __post_init__(self):
        eps = _eps(self.eps)
        object.__setattr__(self, "eps", eps)
        for name in ("s", "t"):
            v = tuple(complex(x) for x in getattr(self, name))
            if len(v) != 4:
                raise DomainError(f"{name} needs four entries")
            object.__setattr__(self, name, v)
        object.__setattr__(self, "n", _labels(self.n, eps, 4, "n"))
        object.__setattr__(self, "m", _labels(self.m, eps, 4, "m"))
        if sum(self.n) + sum(self.m) != 0:
            raise DomainError(f"sum of n and m must vanish, got {sum(self.n) + sum(self.m)}")
        tot = sum(self.s) + sum(self.t)
        if abs(tot + 4j) > 1e-12 * max(1.0, max(abs(x) for x in self.s + self.t)):
            raise DomainError(f"sum of s and t must be -4i, got {tot}")

    def reduced(self) -> "CRParamSet":
        """The same J_cr written with integer labels (summation over Z)."""
        if self.eps == 0:
            return self
        return CRParamSet(self.s, tuple(x - self.eps for x in self.n), self.t,
                          tuple(x + self.eps for x in self.m), 0)

    def beta_gamma(self, variant: int = 1) -> tuple[tuple, tuple]:
        """``beta_k = (i s_k -+ n_k)/2``; ``variant=2`` takes the plus sign."""
        sg = -1 if variant == 1 else 1
        beta = tuple((1j * s + sg * float(n)) / 2 for s, n in zip(self.s, self.n))
        gamma = tuple((1j * t + sg * float(m)) / 2 for t, m in zip(self.t, self.m))
        return beta, gamma

    def with_(self, **kw) -> "CRParamSet":
        """Copy with entries such as ``s2=..., n3=...`` replaced."""
        d = {k: list(getattr(self, k)) for k in "sntm"}
        for key, val in kw.items():
            d[key[0]][int(key[1:]) - 1] = val
        return CRParamSet(tuple(d["s"]), tuple(d["n"]), tuple(d["t"]), tuple(d["m"]), self.eps)

    def on_locus(self) -> bool:
        """The closed-form case: ``n4+m4 = 0``, ``s4+t4 = -2i`` (the rest follows by balancing)."""
        return self.n[3] + self.m[3] == 0 and abs(self.s[3] + self.t[3] + 2j) < 1e-12


@dataclass(frozen=True)
class ECRParamSet:
    """Arguments ``(p_k, l_k)`` of E_cr with ``l_k`` in ``Z + eps``; no balancing."""

    p: tuple
    l: tuple  # noqa: E741
    eps: Fraction = Fraction(0)

    def __post_init__(self):
        eps = _eps(self.eps)
        object.__setattr__(self, "eps", eps)
        p = tuple(complex(x) for x in self.p)
        if len(p) != 6:
            raise DomainError("p needs six entries")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "l", _labels(self.l, eps, 6, "l"))

    def alpha(self, variant: int = 1) -> tuple:
        """``alpha_k = (-+ l_k + i p_k)/2``; ``variant=2`` takes the plus sign."""
        sg = -1 if variant == 1 else 1
        return tuple((sg * float(l) + 1j * p) / 2 for p, l in zip(self.p, self.l))

    def with_(self, **kw) -> "ECRParamSet":
        d = {"p": list(self.p), "l": list(self.l)}
        for key, val in kw.items():
            d[key[0]][int(key[1:]) - 1] = val
        return ECRParamSet(tuple(d["p"]), tuple(d["l"]), self.eps)


@dataclass(frozen=True)
class SixJComplexParams:
    """Representation labels of the SL(2,C) 6j-symbol.

    ``sigma``, ``N`` describe a1, a2, a3, l and ``rho``, ``M`` describe c and
    c~.  The derived tables R, S, U, T and A are computed at construction.
    """

    sigma: tuple
    N: tuple
    rho: tuple
    M: tuple
    R: tuple = field(init=False)
    S: tuple = field(init=False)
    U: tuple = field(init=False)
    T: tuple = field(init=False)
    A: tuple = field(init=False)

    def __post_init__(self):
        sg = tuple(complex(x) for x in self.sigma)
        rh = tuple(complex(x) for x in self.rho)
        N = tuple(int(x) for x in self.N)
        M = tuple(int(x) for x in self.M)
        if len(sg) != 4 or len(N) != 4 or len(rh) != 2 or len(M) != 2:
            raise DomainError("need four (sigma, N) and two (rho, M)")
        if any(int(x) != x for x in tuple(self.N) + tuple(self.M)):
            raise DomainError("N and M must be integers")
        s1, s2, s3, s4 = sg
        r1, r2 = rh
        N1, N2, N3, N4 = N
        M1, M2 = M
        h = HALF
        R = (-s1 + s2 - r2 - 1j, s1 + s2 - r2 - 1j, -s3 - s4 - r2 - 1j, s3 - s4 - r2 - 1j)
        U = (-r1 - s2 + s4 + r2, r1 - s2 + s4 + r2, 0j, 2 * r2)
        S = ((-N1 + N2 - M2) * h, (N1 + N2 - M2) * h, -(N3 + N4 + M2) * h, (N3 - N4 - M2) * h)
        T = ((-M1 - N2 + N4 + M2) * h, (M1 - N2 + N4 + M2) * h, Fraction(0), Fraction(M2))
        A = ((N1 - N2 + M2) * h, (N2 - N3 + M1) * h, (-N3 - N4 + M2) * h, (N1 + N4 + M1) * h)
        bad = [name for name, vals in (("S", S), ("T", T), ("A", A)) if any(v.denominator != 1 for v in vals)]
        if bad:
            raise DomainError(f"parity violation: {', '.join(bad)} not integer for N={N}, M={M}")
        for name, val in (("sigma", sg), ("rho", rh), ("N", N), ("M", M),
                          ("R", R), ("S", S), ("U", U), ("T", T), ("A", A)):
            object.__setattr__(self, name, val)

    def cr_params(self) -> CRParamSet:
        """The J_cr arguments of the bilateral sum (s = R, n = S, t = U, m = T)."""
        return CRParamSet(self.R, self.S, self.U, self.T, 0)


# --------------------------------------------------------------------------
# J_cr
# --------------------------------------------------------------------------

def jcr_strip(par: CRParamSet) -> tuple[float, float]:
    """Admissible heights of the horizontal contour: above every ``s_a - i j`` pole row, below every ``-t_a + i j``."""
    return max(x.imag for x in par.s), min(-x.imag for x in par.t)


def _height(lo, hi, offset, what):
    if hi - lo <= 2 * EPS:
        raise PolePinch(f"{what}: pole rows pinch the contour (strip ({lo:.4g}, {hi:.4g}))")
    c = 0.5 * (lo + hi) if offset is None else float(offset)
    if not lo + EPS < c < hi - EPS:
        raise PolePinch(f"{what}: contour height {c} outside ({lo:.4g}, {hi:.4g})")
    return c


def _int_label(x) -> int:
    r = round(x)
    if abs(x - r) > 1e-9:
        raise DomainError(f"non-integer label {x}")
    return int(r)


def jcr_term(par: CRParamSet, N: int, c: float, tol: float) -> Evaluation:
    """Line integral at fixed integer ``N`` for integer-labelled parameters (no 1/(4 pi))."""
    s = np.array(par.s)[:, None]
    t = np.array(par.t)[:, None]
    n = np.array([int(x) - N for x in par.n])[:, None]
    m = np.array([int(x) + N for x in par.m])[:, None]

    def f(y):
        yy = np.asarray(y)[None, :]
        lg = log_cgamma(s - yy, n).sum(axis=0) + log_cgamma(t + yy, m).sum(axis=0)
        return np.exp(lg)

    return integrate_contour(f, ContourSpec.horizontal(c), tol=tol)


def jcr(par: CRParamSet, tol: float = 1e-10, offset: float | None = None) -> Evaluation:
    """J_cr: (1/4 pi) sum over N of the integral over y of the eight complex gammas.

    A half-integer ``eps`` is first absorbed into the labels, so the sum always
    runs over the integers.  The contour is the horizontal line at the middle
    of the admissible strip unless ``offset`` fixes its height.
    """
    red = par.reduced()
    c = _height(*jcr_strip(red), offset, "J_cr")
    # each N-term falls off like |N|^(Re(i sum(s+t)) - 7) = |N|^-3
    ev = bilateral_sum(lambda N: jcr_term(red, _int_label(N), c, tol * 0.1), 0.0, tol, decay=3.0)
    return ev.scaled(1 / (4 * math.pi))


def u_cr(par: CRParamSet, tol: float = 1e-10) -> Evaluation:
    """J_cr normalized by ``Gamma(s2-s4, n2-n4) Gamma(s3-s4, n3-n4)``."""
    s, n = par.s, par.n
    norm = cgamma(s[1] - s[3], int(n[1] - n[3])) * cgamma(s[2] - s[3], int(n[2] - n[3]))
    if abs(norm) < EPS:
        raise ZeroError("normalizing complex gamma vanishes")
    return jcr(par, tol).scaled(1 / complex(norm))


def f_product(par: CRParamSet) -> complex:
    """Closed form ``prod_{a,b<=3} Gamma(s_a + t_b, n_a + m_b)`` on the locus where J_cr is computable."""
    if not par.on_locus():
        raise DomainError("F is defined on the locus n4+m4 = 0, s4+t4 = -2i")
    red = par.reduced()
    out = 1.0 + 0j
    for a in range(3):
        for b in range(3):
            out *= complex(cgamma(red.s[a] + red.t[b], int(red.n[a] + red.m[b])))
    return out


def f_locus_sign(par: CRParamSet) -> int:
    """``(-1)^(sum n_a)`` relating J_cr to F on the locus (integer labels)."""
    return _sign(Fraction(sum(par.reduced().n)))


# --------------------------------------------------------------------------
# E_cr
# --------------------------------------------------------------------------

def ecr_strip(par: ECRParamSet) -> tuple[float, float]:
    return max(x.imag for x in par.p), min(-x.imag for x in par.p)


def ecr_term(par: ECRParamSet, N: Fraction, c: float, tol: float) -> Evaluation:
    p = np.array(par.p)[:, None]
    lp = np.array([_int_label(x + N) for x in par.l])[:, None]
    lm = np.array([_int_label(x - N) for x in par.l])[:, None]
    n2 = float(N) ** 2

    def f(y):
        yy = np.asarray(y)[None, :]
        lg = log_cgamma(p + yy, lp).sum(axis=0) + log_cgamma(p - yy, lm).sum(axis=0)
        return (yy[0] ** 2 + n2) * np.exp(lg)

    return integrate_contour(f, ContourSpec.horizontal(c), tol=tol)


def ecr(par: ECRParamSet, tol: float = 1e-10, offset: float | None = None,
        fold: bool | None = None) -> Evaluation:
    """E_cr: (1/8 pi) sum over N in Z+eps of the integral of (y^2+N^2) prod Gamma(p_k +- y, l_k +- N).

    On the real line the summand is invariant under ``(y, N) -> (-y, -N)``;
    ``fold`` (default when the contour is the real axis) evaluates only ``N >= 0``.
    """
    lo, hi = ecr_strip(par)
    c = _height(lo, hi, 0.0 if offset is None and lo < 0 < hi else offset, "E_cr")
    if fold is None:
        fold = c == 0.0
    elif fold and c != 0.0:
        raise DomainError("the (y, N) -> (-y, -N) fold needs the real-axis contour")
    cache = {}

    def term(N):
        key = Fraction(N).limit_denominator(2)
        if fold:
            key = abs(key)
        if key not in cache:
            cache[key] = ecr_term(par, key, c, tol * 0.1)
        return cache[key]

    # N-terms behave like |N|^(2i sum p - 9): a power law with an oscillating phase
    decay = 9 - 2j * sum(par.p)
    if decay.real <= 1.2:
        raise NonConvergence(f"E_cr diverges: the N-sum decays like |N|^-{decay.real:.3g}")
    ev = bilateral_sum(term, float(par.eps), tol, decay=complex(decay))
    return ev.scaled(1 / (8 * math.pi))


# --------------------------------------------------------------------------
# SL(2,C) 6j-symbol
# --------------------------------------------------------------------------

def sixj_prefactor(par: SixJComplexParams) -> complex:
    """``pi^2/4`` times the four-gamma ratio and the sign ``(-1)^(M2-N2+N4)``."""
    s1, s2, s3, s4 = par.sigma
    r1, r2 = par.rho
    A = [int(a) for a in par.A]
    num = cgamma(s1 - s2 + r2 - 1j, A[0]) * cgamma(s2 - s3 + r1 - 1j, A[1])
    den = cgamma(-s3 - s4 + r2 - 1j, A[2]) * cgamma(s1 + s4 + r1 - 1j, A[3])
    if abs(den) < EPS:
        raise ZeroError("6j prefactor: denominator vanishes")
    sign = _sign(Fraction(par.M[1] - par.N[1] + par.N[3]))
    return complex(math.pi ** 2 / 4 * sign * num / den)


def complex_6j(par: SixJComplexParams, tol: float = 1e-10) -> Evaluation:
    """The 6j-symbol as prefactor times ``4 pi J_cr(R, S; U, T)``."""
    return jcr(par.cr_params(), tol).scaled(4 * math.pi * sixj_prefactor(par))


# --------------------------------------------------------------------------
# difference equations
# --------------------------------------------------------------------------

CR_EQUATIONS = ("difjmn", "difjmn2", "ecr_eq1", "ecr_eq2", "f_eq")


def coef_C_cr(alpha) -> complex:
    from .rational import coef_C
    return coef_C(alpha)


def coef_V(beta, gamma) -> complex:
    """Potential of the closed-form equation: ``prod (beta3+gamma_k-1) / ((beta3-beta2-1)(beta2-beta3))``."""
    b2, b3 = beta[1], beta[2]
    den = (b3 - b2 - 1) * (b2 - b3)
    if abs(den) < EPS:
        raise ZeroError("V potential: denominator vanishes")
    return complex(np.prod([b3 + g - 1 for g in gamma[:3]]) / den)


def _swap23(par: CRParamSet) -> CRParamSet:
    s, n, t, m = list(par.s), list(par.n), par.t, par.m
    s[1], s[2] = s[2], s[1]
    n[1], n[2] = n[2], n[1]
    return CRParamSet(tuple(s), tuple(n), t, m, par.eps)


def _swap56(par: ECRParamSet) -> ECRParamSet:
    p, l = list(par.p), list(par.l)  # noqa: E741
    p[4], p[5] = p[5], p[4]
    l[4], l[5] = l[5], l[4]
    return ECRParamSet(tuple(p), tuple(l), par.eps)


def cr_terms(eq: str, par, tol: float = 1e-10):
    """The three terms ``L1 (F+ - F0)``, ``L2 (F- - F0)``, ``F0`` of the named equation."""
    if eq in ("difjmn", "difjmn2", "f_eq"):
        if not isinstance(par, CRParamSet):
            raise DomainError(f"{eq} takes a CRParamSet")
        variant = 2 if eq == "difjmn2" else 1
        dn = 1 if variant == 2 else -1

        def shifted(q):
            return q.with_(s2=q.s[1] - 1j, n2=q.n[1] + dn, s3=q.s[2] + 1j, n3=q.n[2] - dn)

        if eq == "f_eq":
            fn = lambda q: Evaluation(f_product(q), 0.0)  # noqa: E731
            coef = coef_V
        else:
            fn = lambda q: u_cr(q, tol)  # noqa: E731
            coef = coef_D
        sw = _swap23(par)
        L1 = coef(*par.beta_gamma(variant))
        L2 = coef(*sw.beta_gamma(variant))
        F0, Fp, Fm = fn(par), fn(shifted(par)), fn(shifted(sw))
    elif eq in ("ecr_eq1", "ecr_eq2"):
        if not isinstance(par, ECRParamSet):
            raise DomainError(f"{eq} takes an ECRParamSet")
        variant = 2 if eq == "ecr_eq2" else 1
        dl = 1 if variant == 2 else -1

        def shifted(q):
            return q.with_(p5=q.p[4] - 1j, l5=q.l[4] + dl, p6=q.p[5] + 1j, l6=q.l[5] - dl)

        sw = _swap56(par)
        L1 = coef_C_cr(par.alpha(variant))
        L2 = coef_C_cr(sw.alpha(variant))
        F0, Fp, Fm = ecr(par, tol), ecr(shifted(par), tol), ecr(shifted(sw), tol)
    else:
        raise DomainError(f"unknown equation {eq!r}; expected one of {CR_EQUATIONS}")
    return (
        Evaluation(L1 * (Fp.value - F0.value), abs(L1) * (Fp.abs_err + F0.abs_err)),
        Evaluation(L2 * (Fm.value - F0.value), abs(L2) * (Fm.abs_err + F0.abs_err)),
        F0,
    )


def cr_residual(eq: str, par, tol: float = 1e-10) -> complex:
    terms = cr_terms(eq, par, tol)
    scale = max(abs(t.value) for t in terms)
    if scale == 0:
        raise ZeroError("all terms vanish")
    return sum(t.value for t in terms) / scale


# --------------------------------------------------------------------------
# symmetry transformations
# --------------------------------------------------------------------------

CR_IDENTITIES = ("ide1i", "JE")


@dataclass(frozen=True)
class IdentitySides:
    lhs: Evaluation
    rhs: Evaluation
    phase: int
    lam: Fraction

    @property
    def deviation(self) -> float:
        return abs(self.lhs.value - self.rhs.value) / max(abs(self.lhs.value), abs(self.rhs.value))


def _g(x, n) -> complex:
    return complex(cgamma(x, _int_label(n)))


def ide1i_sides(par: CRParamSet, tol: float = 1e-10) -> IdentitySides:
    red = par.reduced()
    s, n, t, m = red.s, red.n, red.t, red.m
    K = -(n[0] + n[1] + m[0] + m[1]) / 2
    Y = -(s[0] + s[1] + t[0] + t[1] + 2j) / 2
    lam = K - math.floor(K)
    A = (n[0] + n[1]) * (m[0] + m[1]) + (n[2] + n[3]) * (m[2] + m[3]) + 2 * lam * (1 + sum(m))
    phase = _sign(A)
    pref = 1.0 + 0j
    for pair in ((0, 1), (2, 3)):
        for j in pair:
            for k in pair:
                pref *= _g(s[j] + t[k], n[j] + m[k])
    sg = (1, 1, -1, -1)
    rhs_par = CRParamSet(tuple(x + e * Y for x, e in zip(s, sg)), tuple(x + e * K for x, e in zip(n, sg)),
                         tuple(x + e * Y for x, e in zip(t, sg)), tuple(x + e * K for x, e in zip(m, sg)), lam)
    return IdentitySides(jcr(red, tol), jcr(rhs_par, tol).scaled(phase * pref), phase, lam)


def je_sides(par: CRParamSet, tol: float = 1e-10) -> IdentitySides:
    red = par.reduced()
    s, n, t, m = red.s, red.n, red.t, red.m
    L = -(m[3] + n[0] + n[1] + n[2]) / 2
    Z = -(t[3] + 2j + s[0] + s[1] + s[2]) / 2
    lam = L - math.floor(L)
    A = 2 * L * L - sum(n) - 2 * n[3] * m[3] - lam
    phase = _sign(A)
    pref = 1.0 + 0j
    for a in range(3):
        pref *= _g(s[a] + t[3], n[a] + m[3]) * _g(t[a] + s[3], m[a] + n[3])
    e_par = ECRParamSet(tuple(x + Z for x in s[:3]) + tuple(x - Z for x in t[:3]),
                        tuple(x + L for x in n[:3]) + tuple(x - L for x in m[:3]), lam)
    return IdentitySides(jcr(red, tol), ecr(e_par, tol).scaled(phase * pref), phase, lam)


def check_cr_identity(ident: str, par: CRParamSet, tol: float = 1e-10) -> float:
    if ident == "ide1i":
        return ide1i_sides(par, tol).deviation
    if ident == "JE":
        return je_sides(par, tol).deviation
    raise DomainError(f"unknown identity {ident!r}; expected one of {CR_IDENTITIES}")


# --------------------------------------------------------------------------
# the algebraic identity behind the closed-form check
# --------------------------------------------------------------------------

def eqdif_lhs(b2, b3, b4, g1, g2, g3, limit: bool = False) -> tuple[complex, float]:
    """Left side of the polynomial identity and the largest monomial group magnitude.

    ``limit=True`` evaluates the leading coefficient as ``beta4 -> infinity``
    (``b4`` is then ignored).
    """
    g = (g1, g2, g3)

    def P(x):
        return complex(np.prod([x + gk for gk in g]))

    if limit:
        parts = [
            (b3 - b2 + 1) * (P(b2) - P(b3 - 1)),
            (b3 - b2 - 1) * (P(b3) - P(b2 - 1)),
            (b3 - b2 + 1) * (b3 - b2 - 1) * (b2 - b3),
        ]
    else:
        parts = [
            (b2 - b4 - 1) * (b3 - b4) * (b3 - b2 + 1) * P(b2) * (b3 - b4 - 1),
            (b2 - b4 - 1) * (b3 - b4) * (b3 - b2 + 1) * P(b3 - 1) * (b4 - b2),
            (b3 - b4 - 1) * (b2 - b4) * (b3 - b2 - 1) * P(b3) * (b2 - b4 - 1),
            (b3 - b4 - 1) * (b2 - b4) * (b3 - b2 - 1) * P(b2 - 1) * (b4 - b3),
            -(b2 - b3) * (b3 - b2 + 1) * (b3 - b2 - 1) * P(b4),
        ]
    return complex(sum(parts)), max(abs(x) for x in parts)


# --------------------------------------------------------------------------
# random admissible parameters
# --------------------------------------------------------------------------

def _cplx(rng, re, im_lo, im_hi):
    return complex(rng.uniform(-re, re), rng.uniform(im_lo, im_hi))


def random_cr(rng: np.random.Generator, label_max: int = 2, eps=0, shift_room: bool = False) -> CRParamSet:
    """Random balanced parameters whose contour strip contains a line near the real axis.

    ``shift_room`` lowers ``Im s2``, ``Im s3`` by about one so that the shifts
    ``s2 -+ i``, ``s3 +- i`` of the difference equations keep the contour admissible.
    """
    eps = _eps(eps)
    while True:
        par = _random_cr_once(rng, label_max, eps, shift_room)
        pars = [par]
        if shift_room:
            pars += [par.with_(s2=par.s[1] - 1j, s3=par.s[2] + 1j), par.with_(s2=par.s[1] + 1j, s3=par.s[2] - 1j)]
        # the balancing entries t4, m4 absorb the others; keep them moderate
        if abs(par.t[3].real) > 2 or abs(par.m[3]) > 3:
            continue
        if all(np.subtract(*jcr_strip(q)[::-1]) > 0.2 for q in pars):
            return par


def _random_cr_once(rng, label_max, eps, shift_room):
    n = [Fraction(int(rng.integers(-label_max, label_max + 1))) + eps for _ in range(4)]
    m = [Fraction(int(rng.integers(-label_max, label_max + 1))) + eps for _ in range(3)]
    m.append(-sum(n) - sum(m))
    if shift_room:
        s = [_cplx(rng, 1.0, -0.4, -0.2), _cplx(rng, 1.0, -1.6, -1.4), _cplx(rng, 1.0, -1.6, -1.4),
             _cplx(rng, 1.0, -0.4, -0.2)]
        t = [_cplx(rng, 1.0, -0.2, 0.0) for _ in range(3)]
    else:
        s = [_cplx(rng, 1.0, -0.7, -0.3) for _ in range(4)]
        t = [_cplx(rng, 1.0, -0.7, -0.3) for _ in range(3)]
    t.append(-4j - sum(s) - sum(t))
    return CRParamSet(tuple(s), tuple(n), tuple(t), tuple(m), eps)


def random_locus(rng: np.random.Generator, label_max: int = 2) -> CRParamSet:
    """Random point of the closed-form locus."""
    while True:
        par = _random_locus_once(rng, label_max)
        lo, hi = jcr_strip(par)
        if hi - lo > 0.3:
            return par


def _random_locus_once(rng, label_max):
    n = [int(rng.integers(-label_max, label_max + 1)) for _ in range(4)]
    m = [int(rng.integers(-label_max, label_max + 1)) for _ in range(2)]
    m += [-sum(n[:3]) - sum(m), -n[3]]
    s = [_cplx(rng, 1.0, -0.45, -0.25) for _ in range(4)]
    t = [_cplx(rng, 1.0, -0.45, -0.25) for _ in range(2)]
    t += [-2j - sum(s[:3]) - sum(t), -2j - s[3]]
    return CRParamSet(tuple(s), tuple(n), tuple(t), tuple(m), 0)


def random_ecr(rng: np.random.Generator, label_max: int = 2, eps=0, shift_room: bool = False) -> ECRParamSet:
    """Random E_cr parameters on a real-axis contour.

    ``shift_room`` puts ``Im p5``, ``Im p6`` near ``-1.2`` so that ``p5 -+ i``,
    ``p6 +- i`` stay admissible; the other imaginary parts are then kept small
    for the N-sum to converge.
    """
    eps = _eps(eps)
    if shift_room:
        p = tuple(_cplx(rng, 1.0, -0.25, -0.15) for _ in range(4)) + tuple(
            _cplx(rng, 1.0, -1.25, -1.15) for _ in range(2))
    else:
        p = tuple(_cplx(rng, 1.0, -0.45, -0.25) for _ in range(6))
    l = tuple(Fraction(int(rng.integers(-label_max, label_max + 1))) + eps for _ in range(6))  # noqa: E741
    return ECRParamSet(p, l, eps)


def random_sixj(rng: np.random.Generator, label_max: int = 2) -> SixJComplexParams:
    """Random unitary labels (real sigma, rho) satisfying the parity rules."""
    while True:
        N = [int(rng.integers(-label_max, label_max + 1)) for _ in range(4)]
        M = [int(rng.integers(-label_max, label_max + 1)) for _ in range(2)]
        try:
            return SixJComplexParams(tuple(rng.uniform(-1, 1, 4)), tuple(N), tuple(rng.uniform(-1, 1, 2)), tuple(M))
        except DomainError:
            continue
