"""Quadrature along straight lines and circles, and bilateral summation.

Lines are parameterized as ``z(t) = base + offset * normal + t * direction``
with ``normal = -1j * direction``: for the imaginary axis (direction ``1j``)
the offset moves the line to ``Re z = offset``; for the real axis it moves it
to ``Im z = -offset``.

The line variable is mapped by ``t = scale * sinh(s)``.  Exponentially and
algebraically decaying integrands both become rapidly decaying in ``s``, which
is then integrated by adaptive 7/15-point Gauss-Kronrod panels.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np
import mpmath
from scipy.special import zeta

from .errors import DomainError, NonConvergence, PoleError, PolePinch, ZeroError

BUDGET_ENV = "ELLHYP_BUDGET"
_budget_override: int | None = None
_EPS = float(np.finfo(float).eps)


def set_budget(nodes: int | None) -> None:
    """Force every contour to use ``nodes`` as its node budget (``None`` restores defaults)."""
    global _budget_override
    if nodes is not None and int(nodes) < 64:
        raise DomainError("node budget must be at least 64")
    _budget_override = None if nodes is None else int(nodes)


def _budget_from_env() -> None:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            set_budget(int(raw))
        except ValueError as exc:
            raise DomainError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc


_budget_from_env()

_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327])

# 15 nodes on [-1, 1] and the matching weights
_X15 = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_W15 = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W7 = np.zeros(15)
_W7[[1, 3, 5]] = _WG[:3]
_W7[[13, 11, 9]] = _WG[:3]
_W7[7] = _WG[3]


@dataclass(frozen=True)
class Evaluation:
    """A computed value with an absolute error estimate and cost diagnostics."""

    value: complex
    abs_err: float
    nodes_used: int = 0
    terms_used: int = 0

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if not (math.isfinite(self.abs_err) and self.abs_err >= 0):
            raise NonConvergence(f"invalid error estimate {self.abs_err}")

    @property
    def rel_err(self) -> float:
        return self.abs_err / abs(self.value) if self.value != 0 else math.inf

    def scaled(self, factor: complex) -> "Evaluation":
        f = complex(factor)
        return Evaluation(self.value * f, self.abs_err * abs(f), self.nodes_used, self.terms_used)


@dataclass(frozen=True)
class ContourSpec:
    """Geometry and budget for :func:`integrate_contour`.

    ``R`` truncates the line parameter to ``|t| <= R`` (an upper limit for
    infinite lines; the exact window when ``tails`` is False).  For circles
    ``R`` is the radius.
    """

    kind: str = "line"
    base: complex = 0j
    direction: complex = 1j
    R: float = 1e12
    offset: float = 0.0
    budget: int = 200_000
    scale: float = 1.0
    tails: bool = True

    def __post_init__(self):
        if self.kind not in ("line", "circle"):
            raise DomainError(f"unknown contour kind {self.kind!r}")
        if not self.R > 0:
            raise DomainError("truncation radius must be positive")
        if _budget_override is not None:
            object.__setattr__(self, "budget", _budget_override)
        if self.budget < 64:
            raise DomainError("node budget must be at least 64")
        if self.kind == "line":
            d = complex(self.direction)
            if abs(abs(d) - 1) > 1e-12:
                raise DomainError("direction must be a unit complex number")

    @classmethod
    def imaginary_axis(cls, re: float = 0.0, **kw) -> "ContourSpec":
        return cls(kind="line", base=0j, direction=1j, offset=re, **kw)

    @classmethod
    def horizontal(cls, im: float = 0.0, **kw) -> "ContourSpec":
        """Line ``Im z = im`` traversed left to right."""
        return cls(kind="line", base=0j, direction=1, offset=-im, **kw)

    @classmethod
    def circle(cls, radius: float = 1.0, center: complex = 0j, **kw) -> "ContourSpec":
        return cls(kind="circle", base=center, R=radius, **kw)

    def point(self, t):
        d = complex(self.direction)
        return self.base + self.offset * (-1j * d) + d * t


def _call(f, z):
    try:
        with np.errstate(over="ignore", invalid="ignore"):
            v = np.asarray(f(z), dtype=complex)
    except (PoleError, ZeroError) as exc:
        raise PolePinch(f"integrand singular on the contour: {exc}") from exc
    if v.shape != z.shape:
        v = np.broadcast_to(v, z.shape).astype(complex)
    return v


def _fsum(a) -> complex:
    a = np.asarray(a, dtype=complex).ravel()
    return complex(math.fsum(a.real), math.fsum(a.imag))


def integrate_contour(f: Callable, c: ContourSpec, tol: float = 1e-10,
                      pinch: float | None = None) -> Evaluation:
    """Integrate the vectorized callback ``f(z)`` along ``c`` (``dz`` measure).

    ``tol`` is relative to the larger of ``|I|`` and ``1e-6 * int |f||dz|``.
    ``pinch``, if given, is a magnitude bound: any node value above it
    signals a pole too close to the contour.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    if c.kind == "circle":
        return _integrate_circle(f, c, tol, pinch)
    return _integrate_line(f, c, tol, pinch)


def _integrate_circle(f, c, tol, pinch):
    r = c.R
    n = 32
    prev = None
    used = 0
    while n <= c.budget:
        phi = 2 * np.pi * np.arange(n) / n
        e = np.exp(1j * phi)
        z = c.base + r * e
        v = _call(f, z)
        if not np.all(np.isfinite(v)):
            raise PolePinch("non-finite integrand on the circle")
        if pinch is not None and np.max(np.abs(v)) > pinch:
            raise PolePinch("integrand exceeds pinch bound on the circle")
        used += n
        val = _fsum(v * 1j * r * e) * (2 * np.pi / n)
        l1 = float(np.sum(np.abs(v))) * r * 2 * np.pi / n
        if prev is not None:
            err = abs(val - prev)
            if err <= tol * max(abs(val), 1e-6 * l1):
                # trapezoid on a periodic analytic integrand: doubling squares the error,
                # so what remains is the rounding of the integrand values themselves
                return Evaluation(val, max(err**2 / max(l1, 1e-300), 10 * _EPS * l1), used, 0)
        prev = val
        n *= 2
    raise NonConvergence(f"circle quadrature did not reach tol={tol} within budget")


def _panel_eval(f, c, a, b):
    """Kronrod and Gauss estimates on panels [a, b] of the s-variable."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    s = mid[:, None] + half[:, None] * _X15[None, :]
    t = c.scale * np.sinh(s)
    jac = c.scale * np.cosh(s) * complex(c.direction)
    z = c.point(t)
    v = _call(f, z.ravel()).reshape(s.shape)
    fin = np.isfinite(v)
    if not fin.all():
        # underflowed logs give nan/inf only through 0 * inf; treat tiny-magnitude nodes as 0
        raise PolePinch("non-finite integrand value on the contour")
    F = v * jac
    K = (F * _W15).sum(axis=1) * half
    G = (F * _W7).sum(axis=1) * half
    mean = K / (2 * half)
    resasc = (np.abs(F - mean[:, None]) * _W15).sum(axis=1) * half
    resabs = (np.abs(F) * _W15).sum(axis=1) * half
    raw = np.abs(K - G)
    err = np.where(resasc > 0, resasc * np.minimum(1.0, (200 * raw / np.where(resasc > 0, resasc, 1)) ** 1.5), raw)
    err = np.maximum(err, 50 * _EPS * resabs)
    return K, err, resabs, np.abs(v).max() if v.size else 0.0, np.abs(F[:, [0, -1]])


def _integrate_line(f, c, tol, pinch):
    smax = math.asinh(c.R / c.scale)
    S = min(smax, 6.0) if c.tails else smax
    used = 0
    while True:
        npan = max(8, int(math.ceil(2 * S / 0.5)))
        edges = np.linspace(-S, S, npan + 1)
        a, b = edges[:-1], edges[1:]
        K, err, res, vmax, ends = _panel_eval(f, c, a, b)
        used += 15 * a.size
        for _ in range(60):
            if pinch is not None and vmax > pinch:
                raise PolePinch("integrand exceeds pinch bound on the contour")
            total = _fsum(K)
            l1 = float(np.sum(res))
            # never ask for more than the rounding floor of the absolute integral
            target = max(tol * max(abs(total), 1e-6 * l1), 500 * _EPS * l1)
            etot = float(np.sum(err))
            if etot <= target:
                break
            if used > c.budget:
                raise NonConvergence(f"line quadrature: error {etot:.3g} > {target:.3g} after {used} nodes")
            bad = err > target / max(1, err.size)
            if not bad.any():
                bad = err >= err.max()
            ma = 0.5 * (a[bad] + b[bad])
            na = np.concatenate([a[bad], ma])
            nb = np.concatenate([ma, b[bad]])
            K2, e2, r2, vm2, _ = _panel_eval(f, c, na, nb)
            used += 15 * na.size
            keep = ~bad
            a = np.concatenate([a[keep], na])
            b = np.concatenate([b[keep], nb])
            order = np.argsort(a, kind="stable")
            a, b = a[order], b[order]
            K = np.concatenate([K[keep], K2])[order]
            err = np.concatenate([err[keep], e2])[order]
            res = np.concatenate([res[keep], r2])[order]
            vmax = max(vmax, vm2)
        else:
            raise NonConvergence("line quadrature: subdivision limit reached")
        if not c.tails:
            return Evaluation(total, etot, used, 0)
        # tail beyond |s| = S: integrand in s decays at least like exp(-|s|)
        edge_mag = float(np.abs(f_edge(f, c, S)).max())
        tail = edge_mag
        if tail <= 0.1 * target or S >= smax:
            if tail > target and S >= smax:
                raise NonConvergence(f"line quadrature: tail {tail:.3g} above target at truncation radius")
            return Evaluation(total, etot + tail, used, 0)
        S = min(smax, S + max(3.0, 0.5 * S))


def f_edge(f, c, S):
    s = np.array([-S, S])
    t = c.scale * np.sinh(s)
    v = _call(f, c.point(t))
    return v * c.scale * np.cosh(s)


# --------------------------------------------------------------------------
# bilateral sums
# --------------------------------------------------------------------------

def _tail_fit(x, T, a, nterms):
    """Fit T(x) ~ sum_j c_j x^-(a+j) and return the sum over the positions past x[-1]."""
    A = np.stack([x ** -(a + j) for j in range(nterms)], axis=1)
    scale = np.abs(A).max(axis=0)
    coef, *_ = np.linalg.lstsq(A / scale, T, rcond=None)
    coef = coef / scale
    if isinstance(a, complex) and a.imag != 0:
        # oscillating tails |N|^-(a + i k); scipy's Hurwitz zeta is real-only
        z = np.array([complex(mpmath.zeta(a + j, x[-1] + 1)) for j in range(nterms)])
    else:
        z = np.array([zeta(float(np.real(a)) + j, x[-1] + 1) for j in range(nterms)])
    return complex(np.dot(coef, z))


def _estimate_exponent(x, T):
    m = np.abs(T) > 0
    if m.sum() < 4:
        return math.inf
    slope = np.polyfit(np.log(x[m]), np.log(np.abs(T[m])), 1)[0]
    return -slope


def bilateral_sum(term: Callable, eps: float = 0.0, tol: float = 1e-10,
                  decay: float | None = None, max_terms: int = 100_000,
                  first_block: int = 16) -> Evaluation:
    """Sum ``term(N)`` over ``N`` in ``Z + eps`` (``eps`` in {0, 1/2}).

    Terms are summed outward from the centre.  A side is finished when a crude bound
    on its remaining tail, ``|T| |N| / (a - 1)`` from the last 8 terms, is below
    ``tol * |running sum|``; otherwise its tail is
    extrapolated by fitting ``sum_j c_j |N|^-(a+j)`` over the last half of the
    terms (``a = decay`` if given, else fitted) and summing the fit with Hurwitz
    zeta functions.  ``term`` may return a number or an :class:`Evaluation`.
    """
    if eps not in (0, 0.5):
        raise DomainError("eps must be 0 or 1/2")
    if not tol > 0:
        raise DomainError("tol must be positive")

    def call(N):
        r = term(N)
        if isinstance(r, Evaluation):
            return r.value, r.abs_err, r.nodes_used
        return complex(r), 0.0, 0

    vals = {}
    errs = 0.0
    nodes = 0

    def ensure(kmax):
        nonlocal errs, nodes
        for k in range(kmax):
            for N in ((eps + k), -(eps + k) if eps else -k):
                if N in vals:
                    continue
                v, e, n = call(N)
                if not np.isfinite(v):
                    raise NonConvergence(f"non-finite term at N={N}")
                vals[N] = v
                errs += e
                nodes += n

    K = first_block
    last_est = None
    while True:
        if 2 * K > max_terms:
            raise NonConvergence(f"bilateral sum did not converge within {max_terms} terms")
        ensure(K)
        keys = sorted(vals)
        total = _fsum([vals[N] for N in keys])
        mag = max(abs(total), 1e-300)
        tail_total = 0j
        tail_err = 0.0
        fitted = True
        for sign in (1, -1):
            side = [N for N in keys if (N > 0 if sign > 0 else N < 0)]
            side.sort(key=abs)
            x = np.array([abs(N) for N in side], dtype=float)
            T = np.array([vals[N] for N in side])
            h = len(x) // 2
            xw, Tw = x[h:], T[h:]
            a = decay if decay is not None else _estimate_exponent(xw, Tw)
            if not np.isfinite(a):
                continue
            # an algebraic tail past x[-1] is about |T| x / (a - 1), far above the last term
            bound = float(np.abs(T[-8:]).max()) * (1 + x[-1] / max(np.real(a) - 1, 1e-3))
            if bound <= tol * 1e-2 * mag:
                continue
            if np.real(a) <= 1.2:
                raise NonConvergence(f"bilateral sum tail decays too slowly (fitted exponent {a:.3g})")
            hi_order = 5 if len(xw) >= 12 else 3
            t3 = _tail_fit(xw, Tw, a, hi_order)
            t2 = _tail_fit(xw, Tw, a, hi_order - 1)
            tail_total += t3
            tail_err += abs(t3 - t2)
            if decay is None:
                # exponent uncertainty: refit with a perturbed exponent
                tail_err += abs(_tail_fit(xw, Tw, a + 0.05, hi_order) - t3)
            fitted = True
        est = total + tail_total
        err = tail_err + errs
        if last_est is not None:
            err += 0.1 * abs(est - last_est) if tail_err else 0.0
        if err <= tol * max(abs(est), 1e-300) or (tail_err == 0 and tail_total == 0):
            return Evaluation(est, err + 4e-16 * len(vals) * mag, nodes, len(vals))
        last_est = est
        K *= 2
