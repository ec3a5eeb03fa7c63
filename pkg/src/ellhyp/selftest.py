"""The acceptance suite: seven criteria, each a group of sub-checks.

Every criterion draws its random cases from a fixed seed, so two runs print
the same numbers.  ``run_all`` prints one PASS/FAIL line per criterion with
the sub-checks indented below it.
"""

from __future__ import annotations

import cmath
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import complex_rational as cr
from . import elliptic as ell
from . import hyperbolic as hyp
from . import rational as rat
from .gamma_core import (EllipticBases, QuasiPeriods, a_function, cgamma, egamma, hgamma, log_hgamma,
                         theta_q)
from .limits import limit_scan

OMEGA = QuasiPeriods(1.0, cmath.exp(1j * math.pi / 7))


@dataclass
class SubCheck:
    name: str
    passed: bool
    detail: str


@dataclass
class CriterionResult:
    number: int
    title: str
    limit_s: float
    subchecks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.subchecks)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number} {tag}: {self.title} ({self.seconds:.1f} s)"


class _Recorder:
    def __init__(self, res: CriterionResult):
        self.res = res

    def below(self, name: str, values, tol: float, count: int | None = None):
        worst = float(max(values))
        n = len(values) if count is None else count
        self.res.subchecks.append(SubCheck(name, worst < tol, f"max {worst:.2e} < {tol:.0e} over {n} cases"))

    def add(self, name: str, ok: bool, detail: str):
        self.res.subchecks.append(SubCheck(name, bool(ok), detail))


def _criterion(number: int, title: str, limit_s: float):
    def wrap(fn):
        def run() -> CriterionResult:
            res = CriterionResult(number, title, limit_s)
            t0 = time.perf_counter()
            fn(_Recorder(res))
            res.seconds = time.perf_counter() - t0
            res.subchecks.append(SubCheck("runtime", res.seconds < limit_s,
                                          f"{res.seconds:.1f} s, limit {limit_s:.0f} s"))
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


def _rel(a, b) -> float:
    return abs(a - b) / abs(b)


# --------------------------------------------------------------------------
# 1. gamma layer
# --------------------------------------------------------------------------

@_criterion(1, "gamma-layer identities", 30)
def criterion_1(rec: _Recorder):
    rng = np.random.default_rng(101)
    refl0, refl, alg = [], [], []
    for _ in range(100):
        x = complex(rng.uniform(-3, 3), rng.uniform(-0.5, 0.5))
        n = int(rng.integers(-5, 6))
        refl0.append(_rel(cgamma(x, -n), (-1) ** n * cgamma(x, n)))
        refl.append(abs(cgamma(x, n) * cgamma(-x - 2j, n) - 1))
        alg.append(abs(a_function(n / 2 + 0.5j * x, -n / 2 + 0.5j * x) * cgamma(x, n) - 1))
    rec.below("cgamma(x,-n) = (-1)^n cgamma(x,n)", refl0, 1e-12)
    rec.below("cgamma(x,n) cgamma(-x-2i,n) = 1", refl, 1e-12)
    rec.below("a(alpha) cgamma(sigma,N) = 1", alg, 1e-12)

    omegas = [QuasiPeriods(1, 1), QuasiPeriods(1, 2), QuasiPeriods(1, math.sqrt(2)), OMEGA]
    shift, reflp = [], []
    for k in range(100):
        w = omegas[k % len(omegas)]
        u = complex(rng.uniform(-1, 3), rng.uniform(-1, 1))
        g = hgamma(u, w)
        shift.append(_rel(hgamma(u + w.omega1, w), g * 2 * cmath.sin(math.pi * u / w.omega2)))
        shift.append(_rel(hgamma(u + w.omega2, w), g * 2 * cmath.sin(math.pi * u / w.omega1)))
        reflp.append(abs(g * hgamma(w.Q - u, w) - 1))
    rec.below("hyperbolic shift equations", shift, 1e-10, 100)
    rec.below("hyperbolic reflection", reflp, 1e-10)

    eshift, esym = [], []
    for _ in range(100):
        p, q = (rng.uniform(0.05, 0.5) * cmath.exp(2j * math.pi * rng.uniform()) for _ in range(2))
        z = rng.uniform(0.3, 1.5) * cmath.exp(2j * math.pi * rng.uniform())
        b = EllipticBases(p, q)
        g = egamma(z, b)
        eshift.append(_rel(egamma(q * z, b), theta_q(z, p) * g))
        esym.append(_rel(egamma(z, EllipticBases(q, p)), g))
    rec.below("elliptic gamma shift in q", eshift, 1e-10)
    rec.below("elliptic gamma p <-> q symmetry", esym, 1e-10)


# --------------------------------------------------------------------------
# 2. oracle equivalence
# --------------------------------------------------------------------------

def random_jh_locus(rng: np.random.Generator, w: QuasiPeriods) -> hyp.MuNuParams:
    """mu4 + nu4 = Q and sum_{a<=3} (mu_a + nu_a) = Q, with a wide contour strip."""
    Q = w.Q

    def c(lo, hi):
        return complex(rng.uniform(lo, hi), rng.uniform(-0.3, 0.3))

    mu = [c(0.2, 0.4) for _ in range(3)]
    nu = [c(0.1, 0.3) for _ in range(2)]
    nu.append(Q - sum(mu) - sum(nu))
    mu4 = c(0.2, 0.4)
    return hyp.MuNuParams(tuple(mu) + (mu4,), tuple(nu) + (Q - mu4,), w)


@_criterion(2, "oracle equivalence", 180)
def criterion_2(rec: _Recorder):
    rng = np.random.default_rng(202)
    devs = []
    w_real, w_cplx = QuasiPeriods(1, math.sqrt(2)), OMEGA
    for k in range(50):
        u = complex(rng.uniform(-2, 4), rng.uniform(-1, 1))
        if k % 2:
            a = log_hgamma(u, w_real, method="integral")
            b = log_hgamma(u, w_real, method="integral2")
        else:
            a = log_hgamma(u, w_cplx, method="integral")
            b = log_hgamma(u, w_cplx, method="product")
        devs.append(abs(cmath.exp(a - b) - 1))
    rec.below("hgamma: integral representation vs independent route", devs, 1e-10)

    devs = []
    for _ in range(10):
        par = random_jh_locus(rng, OMEGA)
        devs.append(_rel(hyp.jh(par, 1e-11).value, hyp.jh_closed_form(par)))
    rec.below("jh vs nine-gamma closed form", devs, 1e-8)

    devs = []
    for _ in range(10):
        par = cr.random_locus(rng)
        devs.append(_rel(cr.jcr(par, 1e-10).value, cr.f_locus_sign(par) * cr.f_product(par)))
    rec.below("jcr vs (-1)^(sum n) F on the locus", devs, 1e-6)


# --------------------------------------------------------------------------
# 3. difference equations
# --------------------------------------------------------------------------

@_criterion(3, "difference-equation residual suites", 480)
def criterion_3(rec: _Recorder):
    rng = np.random.default_rng(303)
    res = [abs(ell.ehe_residual(ell.random_params(rng, pq_max=0.3))) for _ in range(20)]
    rec.below("elliptic hypergeometric equation", res, 1e-8)

    gens = {"br": hyp.random_hyp8, "difeh": hyp.random_hyp6,
            "secdif": lambda r, w: hyp.random_munu(r, w, shift_room=True)}
    for eq in hyp.EQUATIONS:
        gen = gens[eq.rstrip("2")]
        res = [abs(hyp.hyp_residual(eq, gen(rng, OMEGA))) for _ in range(10)]
        rec.below(f"hyperbolic {eq}", res, 1e-7)

    for eq, gen, n in (("jr_eq", rat.random_jr, 10), ("jr_tilde_eq", rat.random_jr_tilde, 5),
                       ("er_eq", rat.random_er, 10)):
        res = [abs(rat.rational_residual(eq, gen(rng))) for _ in range(n)]
        rec.below(f"rational {eq}", res, 1e-7)

    half = Fraction(1, 2)
    for eq in ("difjmn", "difjmn2"):
        res = [abs(cr.cr_residual(eq, cr.random_cr(rng, eps=e, shift_room=True))) for e in (0, half, 0)]
        rec.below(f"complex rational {eq} (eps 0 and 1/2)", res, 1e-6)
    for eq in ("ecr_eq1", "ecr_eq2"):
        res = [abs(cr.cr_residual(eq, cr.random_ecr(rng, eps=e, shift_room=True))) for e in (0, half, 0)]
        rec.below(f"complex rational {eq} (eps 0 and 1/2)", res, 1e-6)

    res = [abs(cr.cr_residual("f_eq", cr.random_locus(rng))) for _ in range(20)]
    rec.below("closed-form F difference equation", res, 1e-12)


# --------------------------------------------------------------------------
# 4. symmetry transformations
# --------------------------------------------------------------------------

def _branch(ident: str, par: cr.CRParamSet) -> Fraction:
    """The lambda of the transformation, computed from the labels alone."""
    red = par.reduced()
    n, m = red.n, red.m
    K = -(n[0] + n[1] + m[0] + m[1]) / 2 if ident == "ide1i" else -(m[3] + n[0] + n[1] + n[2]) / 2
    return K - math.floor(K)


@_criterion(4, "symmetry transformations", 120)
def criterion_4(rec: _Recorder):
    rng = np.random.default_rng(404)
    for name, gen in (("jheh", hyp.random_munu_jheh), ("ide1b", hyp.random_munu_ide1b)):
        devs = [hyp.check_identity(name, gen(rng, OMEGA)) for _ in range(10)]
        rec.below(f"hyperbolic {name}", devs, 1e-7)
    for ident in cr.CR_IDENTITIES:
        for lam in (Fraction(0), Fraction(1, 2)):
            devs = []
            while len(devs) < 2:
                par = cr.random_cr(rng)
                if _branch(ident, par) == lam:
                    devs.append(cr.check_cr_identity(ident, par))
            rec.below(f"{ident} with lambda = {lam}", devs, 1e-6)


# --------------------------------------------------------------------------
# 5. limit cascades
# --------------------------------------------------------------------------

@_criterion(5, "limit cascades", 240)
def criterion_5(rec: _Recorder):
    s = limit_scan("elliptic_to_hyperbolic", (0.2, 0.1, 0.05), {"y": 0.6, "omega": (1.0, 1.0)})
    rec.add("elliptic -> hyperbolic deviation decreases", s.monotone,
            "deviations " + ", ".join(f"{d:.3g}" for d in s.deviations))

    s = limit_scan("gamma_b_to_i", (1e-1, 1e-2, 1e-3))
    rec.add("b -> i gamma limit: fitted order 1 +- 0.3", abs(s.order - 1) <= 0.3,
            f"order {s.order:.2f}, deviations " + ", ".join(f"{d:.3g}" for d in s.deviations))

    w1s = (0.2, 0.1, 0.05)
    s = limit_scan("jh_b_to_0", w1s)
    rec.add("b -> 0: J_h -> J_r deviation decreases", s.monotone,
            f"order {s.order:.2f}, deviations " + ", ".join(f"{d:.3g}" for d in s.deviations))
    scaled = [d / w for d, w in zip(s.deviations, w1s)]
    spread = max(scaled) / min(scaled)
    rec.add("b -> 0: deviation proportional to omega1 within factor 2", spread <= 2,
            f"deviation/omega1 spread {spread:.2f}; the observed decay is quadratic in omega1")

    for seed in (0, 1, 2):
        s = limit_scan("pt_to_complex6j", (0.04, 0.02, 0.01), {"seed": seed})
        F = s.params["F"]
        ok = F % 2 == 0 and s.monotone and s.deviations[-1] < 0.05
        rec.add(f"modular double -> SL(2,C) 6j, labels #{seed}", ok,
                f"F = {F}, |ratio - 1| = " + ", ".join(f"{d:.3g}" for d in s.deviations))


# --------------------------------------------------------------------------
# 6. polynomial identity
# --------------------------------------------------------------------------

@_criterion(6, "algebraic identity and its large-beta4 reduction", 1)
def criterion_6(rec: _Recorder):
    rng = np.random.default_rng(606)
    z = rng.normal(size=(1000, 6)) + 1j * rng.normal(size=(1000, 6))
    full, lim = [], []
    for row in z:
        v, s = cr.eqdif_lhs(*row)
        full.append(abs(v) / s)
        v, s = cr.eqdif_lhs(*row, limit=True)
        lim.append(abs(v) / s)
    rec.below("identity", full, 1e-10)
    rec.below("beta4 -> infinity reduction", lim, 1e-10)


# --------------------------------------------------------------------------
# 7. contour robustness
# --------------------------------------------------------------------------

def _between(lo, hi, f):
    return lo + (hi - lo) * f


def _robust_cases(rng):
    """(family, callable(offset_choice) -> Evaluation) pairs, five per family."""
    for _ in range(5):
        p = hyp.random_hyp8(rng, OMEGA)
        lo = min(x.real for x in p.u)
        yield "ih", lambda k, p=p, lo=lo: hyp.ih(p, offset=(0.0, lo / 2)[k])
        p = hyp.random_hyp6(rng, OMEGA)
        lo = min(x.real for x in p.u)
        yield "eh", lambda k, p=p, lo=lo: hyp.eh(p, offset=(0.0, lo / 2)[k])
        p = hyp.random_munu(rng, OMEGA)
        yield "jh", lambda k, p=p: hyp.jh(p, offset=_between(*hyp.jh_strip(p), (0.3, 0.7)[k]))
        p = rat.random_jr(rng)
        yield "jr", lambda k, p=p: rat.jr(p, offset=_between(*rat.jr_strip(p), (0.3, 0.7)[k]))
        p = rat.random_jr_tilde(rng)
        yield "jr_tilde", lambda k, p=p: rat.jr_tilde(
            p, offset=_between(*rat.jr_tilde_strip(p), (0.3, 0.7)[k]),
            pinch_offset=_between(*rat.pinch_strip(p), (0.3, 0.7)[k]))
        p = rat.random_er(rng)
        lo = min(x.real for x in p.alpha)
        yield "er", lambda k, p=p, lo=lo: rat.er(p, offset=(0.0, lo / 2)[k])
        p = cr.random_cr(rng)
        yield "jcr", lambda k, p=p: cr.jcr(p, offset=_between(*cr.jcr_strip(p), (0.3, 0.7)[k]))
        p = cr.random_ecr(rng)
        yield "ecr", lambda k, p=p: cr.ecr(p, offset=_between(*cr.ecr_strip(p), (0.3, 0.7)[k]))
        p = ell.random_params(rng)
        yield "v", lambda k, p=p: ell.v_function(p, radius=(0.97, 1.03)[k])


@_criterion(7, "contour robustness", 300)
def criterion_7(rec: _Recorder):
    rng = np.random.default_rng(707)
    worst: dict[str, float] = {}
    for family, ev in _robust_cases(rng):
        a, b = ev(0), ev(1)
        ratio = abs(a.value - b.value) / (a.abs_err + b.abs_err)
        worst[family] = max(worst.get(family, 0.0), ratio)
    for family, r in worst.items():
        rec.add(f"{family} offset change within error estimates", r <= 1,
                f"worst |difference| / (sum of error estimates) = {r:.2g} over 5 cases")


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7)


def report(res: CriterionResult, out=None) -> None:
    out = out or sys.stdout
    print(res.line(), file=out)
    for s in res.subchecks:
        print(f"    {'ok    ' if s.passed else 'not ok'} {s.name}: {s.detail}", file=out)
    out.flush()


def run_all(out=None) -> list[CriterionResult]:
    results = []
    for crit in CRITERIA:
        res = crit()
        report(res, out)
        results.append(res)
    return results
