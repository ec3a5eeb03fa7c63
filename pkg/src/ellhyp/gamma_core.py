"""Gamma-type building blocks.

Everything here works on numpy arrays and, where products of many factors are
involved, in log space: callers add logarithms and exponentiate once.

Branch conventions: ``log_*`` functions return *a* logarithm, not necessarily
the principal one.  Only ``exp`` of the result is meaningful.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import loggamma

from .errors import DomainError, OverflowGuard, PoleError, ZeroError

#: proximity threshold for poles and zeros (natural units)
EPS = 1e-8

_LOG_TINY = math.log(1e-19)
_MAX_EXP = 700.0


# --------------------------------------------------------------------------
# parameter containers
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscretePair:
    """Argument ``(x, n)`` of the complex gamma function."""

    x: complex
    n: int

    def __post_init__(self):
        if int(self.n) != self.n:
            raise DomainError(f"discrete label must be an integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "x", complex(self.x))

    @property
    def alpha(self) -> complex:
        return (self.n + 1j * self.x) / 2

    @property
    def alpha_prime(self) -> complex:
        return (-self.n + 1j * self.x) / 2


@dataclass(frozen=True)
class QuasiPeriods:
    """Quasi-periods of the hyperbolic gamma function."""

    omega1: complex
    omega2: complex
    Q: complex = field(init=False)

    def __post_init__(self):
        w1, w2 = complex(self.omega1), complex(self.omega2)
        if w1 == 0 or w2 == 0:
            raise DomainError("quasi-periods must be nonzero")
        if w1.real <= 0 or w2.real <= 0:
            raise DomainError("quasi-periods need positive real parts")
        object.__setattr__(self, "omega1", w1)
        object.__setattr__(self, "omega2", w2)
        object.__setattr__(self, "Q", w1 + w2)

    @classmethod
    def from_b(cls, b: complex) -> "QuasiPeriods":
        """``(b, 1/b)``; for ``b = i + delta`` this is the b -> i regime."""
        b = complex(b)
        if b.imag == 0 and b.real <= 0:
            raise DomainError("b on the negative real axis")
        return cls(b, 1 / b)

    def swapped(self) -> "QuasiPeriods":
        return QuasiPeriods(self.omega2, self.omega1)

    @property
    def sqrt_prod(self) -> complex:
        """``sqrt(omega1 * omega2)`` taken as ``sqrt(omega1) sqrt(omega2)``."""
        return cmath.sqrt(self.omega1) * cmath.sqrt(self.omega2)

    @property
    def ratio_is_real(self) -> bool:
        return abs((self.omega1 / self.omega2).imag) < 1e-14


@dataclass(frozen=True)
class EllipticBases:
    p: complex
    q: complex

    def __post_init__(self):
        p, q = complex(self.p), complex(self.q)
        if not (abs(p) < 1 and abs(q) < 1):
            raise DomainError(f"elliptic bases need |p|,|q| < 1, got {p}, {q}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def canonical(self) -> tuple[complex, complex]:
        """Bases ordered by (modulus, real, imag): makes p <-> q symmetry exact."""
        return tuple(sorted((self.p, self.q), key=lambda c: (abs(c), c.real, c.imag)))


# --------------------------------------------------------------------------
# Euler gamma and complex gamma
# --------------------------------------------------------------------------

def _near_nonpositive_int(z):
    z = np.asarray(z, dtype=complex)
    r = np.round(z.real)
    return (r <= 0) & (np.abs(z - r) < EPS)


def lngamma_complex(z):
    """Principal-branch ``log Gamma(z)`` for complex ``z`` (scalar or array)."""
    arr = np.asarray(z, dtype=complex)
    if np.any(_near_nonpositive_int(arr)):
        raise PoleError(f"Gamma has a pole at {z}")
    out = loggamma(arr)
    return out[()] if out.ndim == 0 else out


def log_cgamma(x, n):
    """Log of the complex gamma function ``Gamma((n+ix)/2) / Gamma(1+(n-ix)/2)``.

    Vectorized over broadcastable ``x`` (complex) and ``n`` (integer).  Zeros of
    the function come back as ``-inf`` real part; poles raise ``PoleError``.
    Where numerator and denominator are both at poles the finite limit is used.
    """
    x = np.asarray(x, dtype=complex)
    n = np.asarray(n)
    if n.dtype.kind not in "iu":
        rn = np.round(n.astype(float))
        if np.any(np.abs(n - rn) > 0):
            raise DomainError("complex gamma needs integer discrete labels")
        n = rn.astype(np.int64)
    x, n = np.broadcast_arrays(x, n)
    a = (n + 1j * x) / 2
    b = 1 + (n - 1j * x) / 2
    pa = _near_nonpositive_int(a)
    pb = _near_nonpositive_int(b)
    if np.any(pa & ~pb):
        raise PoleError("complex gamma evaluated at a pole")
    out = np.empty(a.shape, dtype=complex)
    ok = ~(pa | pb)
    out[ok] = loggamma(a[ok]) - loggamma(b[ok])
    zero = pb & ~pa
    out[zero] = -np.inf
    both = pa & pb
    if np.any(both):
        # Gamma(-k+e)/Gamma(-j+e) -> (-1)^(k-j) j!/k!
        k = -np.round(a[both].real)
        j = -np.round(b[both].real)
        sign = np.where((k - j) % 2 == 0, 0.0, np.pi)
        out[both] = loggamma(j + 1) - loggamma(k + 1) + 1j * sign
    return out[()] if out.ndim == 0 else out


def cgamma(x, n=None):
    """Complex gamma function ``Gamma(x, n)``.

    Accepts either a :class:`DiscretePair` or ``(x, n)``.  Exact zero where
    ``1+(n-ix)/2`` is a nonpositive integer.
    """
    if n is None:
        if not isinstance(x, DiscretePair):
            raise TypeError("cgamma needs a DiscretePair or (x, n)")
        x, n = x.x, x.n
    lg = log_cgamma(x, n)
    if np.any(np.real(lg) > _MAX_EXP):
        raise OverflowGuard("complex gamma overflows double precision")
    out = np.exp(lg)
    return complex(out) if np.ndim(out) == 0 else out


def a_function(alpha: complex, alpha_prime: complex) -> complex:
    """``a(alpha) = Gamma(1-alpha') / Gamma(alpha)`` with ``alpha - alpha'`` integer."""
    n = alpha - alpha_prime
    if abs(n - round(n.real)) > 1e-12:
        raise DomainError("alpha - alpha' must be an integer")
    lg = lngamma_complex(1 - alpha_prime) - lngamma_complex(alpha)
    return complex(np.exp(lg))


# --------------------------------------------------------------------------
# q-Pochhammer symbols, theta functions, elliptic gamma
# --------------------------------------------------------------------------

def log_qpoch(x, q):
    """``log (x; q)_inf = sum_k log(1 - x q^k)`` for ``|q| < 1``.

    Factors with ``|x q^k| > 1/2`` are summed directly; the remainder uses
    ``-sum_m y^m / (m (1 - q^m))`` with ``y = x q^k0``, which needs only a few
    dozen terms even when ``|q|`` is close to one.
    """
    x = np.asarray(x, dtype=complex)
    q = complex(q)
    aq = abs(q)
    if aq >= 1:
        raise DomainError("q-Pochhammer symbol needs |q| < 1")
    if aq == 0:
        return np.log1p(-x)
    lq = math.log(aq)
    ax = np.abs(x)
    with np.errstate(divide="ignore"):
        k0 = np.ceil(np.maximum(0.0, np.log(np.maximum(ax, 1e-300) / 0.5) / -lq)).astype(np.int64)
    out = np.zeros(x.shape, dtype=complex)
    kmax = int(k0.max()) if k0.size else 0
    if kmax:
        if kmax > 2_000_000:
            raise OverflowGuard("q-Pochhammer argument too large")
        qk = 1.0 + 0j
        for k in range(kmax):
            m = k < k0
            if m.all():
                out += np.log1p(-x * qk)
            else:
                out[m] += np.log1p(-x[m] * qk)
            qk *= q
    y = x * q ** k0
    # number of series terms: 0.5^M / (1 - |q|) below 1e-19
    M = int(math.ceil((-_LOG_TINY + max(0.0, -math.log(1 - aq))) / math.log(2))) + 1
    logq = cmath.log(q)
    ym = np.ones_like(y)
    tail = np.zeros_like(y)
    for m in range(1, M + 1):
        ym = ym * y
        tail += ym / (m * -np.expm1(m * logq))
    return out - tail


def qpoch(x, q):
    out = np.exp(log_qpoch(x, q))
    return complex(out) if np.ndim(out) == 0 else out


def truncation_index(q: complex, tol: float = 1e-17) -> int:
    """Smallest K with |q|^K below ``tol``."""
    aq = abs(q)
    if aq == 0:
        return 1
    return max(1, int(math.ceil(math.log(tol) / math.log(aq))))


def theta_q(z, q):
    """Short theta function ``theta(z; q) = (z; q)_inf (q/z; q)_inf``."""
    q = complex(q)
    if abs(q) >= 1:
        raise DomainError("theta needs |q| < 1")
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("theta undefined at z = 0")
    out = np.exp(log_qpoch(z, q) + log_qpoch(q / z, q))
    return complex(out) if out.ndim == 0 else out


def theta_q_eval(z: complex, q: complex):
    """``theta_q`` with a truncation error estimate (an :class:`Evaluation`)."""
    from .contour import Evaluation

    val = theta_q(z, q)
    K = truncation_index(q, 1e-17)
    z = complex(z)
    bound = abs(q) ** K / (1 - abs(q)) * (abs(z) + abs(q / z)) * max(abs(val), 1e-300)
    return Evaluation(val, bound + 4e-16 * abs(val), 0, 2 * K)


def theta1(u, tau):
    """Jacobi ``theta_1(u | tau)`` from its half-integer-index series."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("theta_1 needs Im(tau) > 0")
    u = np.asarray(u, dtype=complex)
    # |term| ~ exp(-pi Im(tau) l^2 + 2 pi |Im u| |l|)
    b = 2 * math.pi * float(np.max(np.abs(u.imag))) if u.size else 0.0
    a = math.pi * tau.imag
    L = int(math.ceil((b + math.sqrt(b * b + 4 * a * 46)) / (2 * a))) + 2
    ell = np.arange(-L, L) + 0.5
    ex = 1j * math.pi * tau * ell**2 + 2j * math.pi * np.multiply.outer(u + 0.5, ell)
    out = -np.exp(ex).sum(axis=-1)
    return complex(out) if out.ndim == 0 else out


def theta1_product(u, tau):
    """Product form ``i q^(1/8) e^(-pi i u) (q;q)_inf theta(e^(2 pi i u); q)``."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("theta_1 needs Im(tau) > 0")
    q = cmath.exp(2j * math.pi * tau)
    u = np.asarray(u, dtype=complex)
    out = (1j * cmath.exp(1j * math.pi * tau / 4) * np.exp(-1j * math.pi * u)
           * qpoch(q, q) * theta_q(np.exp(2j * math.pi * u), q))
    return complex(out) if np.ndim(out) == 0 else out


def _check_elliptic_poles(z, p, q):
    """PoleError if z is within EPS of p^-j q^-k (j, k >= 0)."""
    az = np.abs(z)
    if not np.any(az > 1 - 1e-6):
        return
    ap, aq = abs(p), abs(q)
    zmax = float(az.max())
    J = 0 if ap == 0 else int(math.log(zmax * 2) / -math.log(ap)) + 1
    K = 0 if aq == 0 else int(math.log(zmax * 2) / -math.log(aq)) + 1
    for j in range(J + 1):
        for k in range(K + 1):
            if np.any(np.abs(1 - z * p**j * q**k) < EPS):
                raise PoleError("elliptic gamma evaluated at a pole")


def log_egamma(z, bases: EllipticBases, check: bool = True):
    """Log of the elliptic gamma function ``Gamma(z; p, q)``."""
    p, q = bases.canonical()
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("elliptic gamma undefined at z = 0")
    if check:
        _check_elliptic_poles(z, p, q)
    J = truncation_index(p, 1e-19)
    out = np.zeros(z.shape, dtype=complex)
    pj = 1.0 + 0j
    for _ in range(J):
        out += log_qpoch(pj * p * q / z, q) - log_qpoch(z * pj, q)
        pj *= p
        if pj == 0:
            break
    return out


def egamma(z, bases: EllipticBases):
    """Elliptic gamma function as a truncated double product."""
    out = np.exp(log_egamma(z, bases))
    return complex(out) if np.ndim(out) == 0 else out


# --------------------------------------------------------------------------
# hyperbolic gamma function
# --------------------------------------------------------------------------

def b22(u, w: QuasiPeriods):
    """Second order multiple Bernoulli polynomial B_{2,2}(u; omega)."""
    w1, w2 = w.omega1, w.omega2
    u = np.asarray(u, dtype=complex) if not np.isscalar(u) else complex(u)
    return ((u - (w1 + w2) / 2) ** 2 - (w1 * w1 + w2 * w2) / 12) / (w1 * w2)


def log2sin(w, error=ZeroError):
    """``log(2 sin w)`` without overflow for large ``|Im w|``."""
    w = np.asarray(w, dtype=complex)
    up = w.imag >= 0
    e = np.where(up, np.exp(2j * np.where(up, w, 0)), np.exp(-2j * np.where(up, 0, w)))
    small = np.abs(1 - e) < EPS
    if np.any(small):
        raise error("sine factor vanishes")
    out = np.where(up, 0.5j * np.pi - 1j * w, -0.5j * np.pi + 1j * w) + np.log1p(-e)
    return out


def _lattice_check(u, w: QuasiPeriods):
    """Raise on u near -j w1 - k w2 (pole) or Q + j w1 + k w2 (zero)."""
    w1, w2 = w.omega1, w.omega2
    for base, sign, err in ((0, -1, PoleError), (w.Q, 1, ZeroError)):
        v = sign * (u - base)  # want v = j w1 + k w2, j, k >= 0
        if not w.ratio_is_real:
            M = np.array([[w1.real, w2.real], [w1.imag, w2.imag]])
            coef = np.linalg.solve(M, np.stack([v.real.ravel(), v.imag.ravel()]))
            r = np.round(coef)
            ok = (r >= 0).all(axis=0)
            near = np.abs(v.ravel() - (r[0] * w1 + r[1] * w2)) < EPS
            if np.any(ok & near):
                raise err("hyperbolic gamma evaluated at a " + ("pole" if err is PoleError else "zero"))
        else:
            # collinear lattice: rotate onto the real line
            rot = abs(w1) / w1
            vr = v * rot
            cand = (np.abs(vr.imag) < EPS) & (vr.real > -EPS)
            if not np.any(cand):
                continue
            a1, a2 = abs(w1), abs(w2)
            for val in vr[cand].real.ravel():
                jmax = int(val / a1) + 1
                j = np.arange(jmax + 1)
                rest = val - j * a1
                k = np.round(rest / a2)
                if np.any((k >= 0) & (np.abs(rest - k * a2) < EPS)):
                    raise err("hyperbolic gamma evaluated at a " + ("pole" if err is PoleError else "zero"))


def _use_product(w: QuasiPeriods) -> bool:
    """Product formula when the quasi-period ratio is far from real.

    The integral representation converges only inside the strip
    0 < Re u < Re Q, which collapses when the quasi-periods approach the
    imaginary axis (the b -> i regime).
    """
    if w.ratio_is_real:
        return False
    tau = w.omega1 / w.omega2
    nearly_imag = min(w.omega1.real / abs(w.omega1), w.omega2.real / abs(w.omega2)) < 0.3
    return nearly_imag or abs(tau.imag) > 0.35


def _log_hgamma_product(u, w: QuasiPeriods):
    w1, w2 = w.omega1, w.omega2
    tau = w1 / w2
    if tau.imag < 0:
        w1, w2 = w2, w1
        tau = w1 / w2
    q = cmath.exp(2j * math.pi * tau)
    qt = cmath.exp(-2j * math.pi / tau)
    lg = log_qpoch(qt * np.exp(2j * np.pi * u / w1), qt) - log_qpoch(np.exp(2j * np.pi * u / w2), q)
    return -0.5j * np.pi * b22(u, w) + lg


def _de_nodes(level: int, S: float, h0: float):
    h = h0 / 2**level
    n = int(math.ceil(S / h))
    s = np.arange(-n, n + 1) * h
    return s, h


def _log_hgamma_strip(u, w: QuasiPeriods):
    """Integral representation for u inside the strip 0 < Re u < Re Q.

    The triple pole of the kernel at the origin is subtracted with a
    Gaussian-damped Laurent part whose integrals are elementary; what remains
    is regular at 0, so the line can sit at Im x = +-d/2 on the side that keeps
    exp(u x) bounded.
    """
    w1, w2 = w.omega1, w.omega2
    Q = w.Q
    d = min(2 * math.pi * w1.real / abs(w1) ** 2, 2 * math.pi * w2.real / abs(w2) ** 2)
    sc = d
    c3 = 1 / (w1 * w2)
    c2 = (u - Q / 2) * c3
    c1 = 0.5 * b22(u, w)
    out = np.empty(u.shape, dtype=complex)
    for upper in (True, False):
        sel = (u.imag >= 0) if upper else (u.imag < 0)
        if not np.any(sel):
            continue
        us = u[sel][:, None]
        c = d / 2 if upper else -d / 2
        margin = float(min(us.real.min(), (Q.real - us.real).min()))
        if margin <= 0:
            raise DomainError("integral representation used outside its strip")
        tmax = 46.0 / margin + 5.0
        S = math.asinh(tmax)
        fr = float(np.abs(us.imag).max())
        h0 = min(0.25, 1.0 / (1.0 + fr))
        prev = None
        for level in range(7):
            s, h = _de_nodes(level, S, h0)
            t = np.sinh(s)
            x = t + 1j * c
            jac = np.cosh(s)
            pos = t > 0
            g = np.empty((us.shape[0], x.size), dtype=complex)
            xp, xn = x[pos], x[~pos]
            g[:, pos] = np.exp((us - Q) * xp) / (xp * np.expm1(-w1 * xp) * np.expm1(-w2 * xp))
            g[:, ~pos] = np.exp(us * xn) / (xn * np.expm1(w1 * xn) * np.expm1(w2 * xn))
            damp = np.exp(-(x / sc) ** 2)
            c3s, c2s, c1s = c3, c2[sel][:, None], c1[sel][:, None]
            gs = (c3s / x**3 + c2s / x**2 + (c1s + c3s / sc**2) / x) * damp
            val = ((g - gs) * jac).sum(axis=1) * h
            if prev is not None and np.all(np.abs(val - prev) < 1e-13 * (1 + np.abs(val))):
                prev = val
                break
            prev = val
        else:
            raise OverflowGuard("hyperbolic gamma quadrature did not settle")
        out[sel] = 2 * math.sqrt(math.pi) * c2[sel] / sc - prev
    return out


def log_hgamma(u, w: QuasiPeriods, method: str = "auto", check: bool = True):
    """Log of the hyperbolic gamma function gamma^(2)(u; omega1, omega2).

    ``method`` is ``"integral"`` (strip integral plus shift reduction),
    ``"product"`` (q-product formula, needs a non-real quasi-period ratio) or
    ``"auto"``.
    """
    scalar = np.ndim(u) == 0
    u = np.atleast_1d(np.asarray(u, dtype=complex)).ravel()
    if check:
        _lattice_check(u, w)
    if method == "auto":
        far = _asymptotic_mask(u, w)
        if far.any():
            out = np.empty(u.shape, dtype=complex)
            up = far > 0
            out[up] = -0.5j * np.pi * b22(u[up], w)
            out[far < 0] = 0.5j * np.pi * b22(u[far < 0], w)
            rest = far == 0
            if rest.any():
                out[rest] = log_hgamma(u[rest], w, method="auto", check=False)
            return out[0] if scalar else out
        method = "product" if _use_product(w) else "integral"
    if method == "product":
        if w.ratio_is_real:
            raise DomainError("product formula needs a non-real quasi-period ratio")
        out = _log_hgamma_product(u, w)
    elif method in ("integral", "integral2"):
        out = _log_hgamma_reduced(u, w, second=(method == "integral2"))
    else:
        raise ValueError(f"unknown method {method!r}")
    return out[0] if scalar else out


def _asymptotic_mask(u, w: QuasiPeriods):
    """+1 / -1 where u lies so deep in cone I / II that the phase formula is exact.

    The corrections are of order |u| exp(-2 pi |Im(u / omega_j)|); past
    exponent 70 they are far below double precision.
    """
    a = np.minimum((u / w.omega1).imag, (u / w.omega2).imag) * 2 * np.pi
    b = np.maximum((u / w.omega1).imag, (u / w.omega2).imag) * 2 * np.pi
    lim = 70.0 + np.log1p(np.abs(u))
    return np.where(a > lim, 1, np.where(b < -lim, -1, 0))


def _log_hgamma_reduced(u, w: QuasiPeriods, second: bool = False):
    """Shift u into the central band by multiples of one quasi-period.

    By default the quasi-period with the smaller real part is used;
    ``second=True`` selects the other one (an independent route).
    """
    w1, w2 = w.omega1, w.omega2
    k_small = 0 if w1.real <= w2.real else 1
    k = 1 - k_small if second else k_small
    step = (w1, w2)[k]
    other = (w1, w2)[1 - k]
    Q = w.Q
    m = np.round((Q.real / 2 - u.real) / step.real).astype(np.int64)
    u0 = u + m * step
    lg = _log_hgamma_strip(u0, w)
    mmax = int(np.abs(m).max()) if m.size else 0
    for j in range(mmax):
        up = m > j
        if np.any(up):
            # gamma(y) = gamma(y + step) / (2 sin(pi y / other))
            y = u[up] + j * step
            lg[up] -= log2sin(np.pi * y / other, error=PoleError)
        dn = -m > j
        if np.any(dn):
            # gamma(y) = gamma(y - step) 2 sin(pi (y - step) / other)
            y = u[dn] - (j + 1) * step
            lg[dn] += log2sin(np.pi * y / other, error=ZeroError)
    return lg


def hgamma(u, w: QuasiPeriods, method: str = "auto"):
    """Hyperbolic gamma function gamma^(2)(u; omega)."""
    lg = log_hgamma(u, w, method=method)
    if np.any(np.real(lg) > _MAX_EXP):
        raise OverflowGuard("hyperbolic gamma overflows double precision")
    out = np.exp(lg)
    return complex(out) if np.ndim(out) == 0 else out


def sb(z, b: complex, method: str = "auto"):
    """Faddeev's ``S_b(z) = gamma^(2)(z; b, 1/b)``."""
    return hgamma(z, QuasiPeriods.from_b(b), method=method)


def _arg(z: complex) -> float:
    return math.atan2(z.imag, z.real)


def hgamma_phase(u: complex, w: QuasiPeriods, cone: str):
    """Asymptotic phase making ``hgamma(u) * phase -> 1`` as ``u -> inf``.

    Cone ``"I"``: arg omega < arg u < arg omega + pi, phase ``exp(+pi i B22 / 2)``.
    Cone ``"II"``: arg omega - pi < arg u < arg omega, phase ``exp(-pi i B22 / 2)``.
    """
    u = complex(u)
    a1, a2 = _arg(w.omega1), _arg(w.omega2)
    lo, hi = max(a1, a2), min(a1, a2)
    au = _arg(u)
    in_I = lo < au < hi + math.pi
    in_II = lo - math.pi < au < hi
    cone = str(cone).upper()
    if cone not in ("I", "II"):
        raise DomainError(f"unknown cone {cone!r}")
    if (cone == "I" and not in_I) or (cone == "II" and not in_II):
        raise DomainError(f"arg(u) = {au:.4f} outside cone {cone}")
    sign = 1 if cone == "I" else -1
    return cmath.exp(sign * 0.5j * math.pi * complex(b22(u, w)))
