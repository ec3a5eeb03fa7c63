"""Command-line front end.

    python -m ellhyp eval  --fn jh --params mu_nu.json
    python -m ellhyp check --id ehe --seed 42 --tol 1e-8
    python -m ellhyp scan  --id gamma_b_to_i --deltas 1e-1,1e-2,1e-3
    python -m ellhyp selftest

Exit codes: 0 success, 1 a check failed, 2 non-convergence, 3 domain,
parity, pole or zero errors, 4 unreadable input.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import complex_rational as cr
from . import elliptic as ell
from . import hyperbolic as hyp
from . import rational as rat
from .contour import Evaluation, set_budget
from .errors import DomainError, EllHypError, NonConvergence, ParseError
from .gamma_core import EllipticBases, QuasiPeriods, cgamma, egamma, hgamma, theta_q
from .limits import LIMITS, limit_scan
from .paramfile import B, C, I, L, R, S, parse_file, to_json

EXIT_OK, EXIT_FAIL, EXIT_NONCONV, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2, 3, 4

# quasi-periods of the random hyperbolic suites: a non-real ratio keeps the
# product formula available and exercises complex arithmetic throughout
DEFAULT_OMEGA = (1.0 + 0j, cmath.exp(1j * math.pi / 7))


@dataclass(frozen=True)
class RunConfig:
    command: str
    ident: str | None = None
    params: str | None = None
    tol: float | None = None
    fmt: str = "json"
    seed: int = 0
    cases: int = 1
    deltas: tuple = ()
    budget: int | None = None

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise ParseError("--tol must be positive")
        if self.cases < 1:
            raise ParseError("--cases must be at least 1")


# --------------------------------------------------------------------------
# parameter families
# --------------------------------------------------------------------------

_OMEGA = {"omega": C(2, required=False), "b": C(required=False)}


def _w(d) -> QuasiPeriods:
    if "b" in d and "omega" in d:
        raise DomainError("give either omega or b")
    if "b" in d:
        return QuasiPeriods.from_b(d["b"])
    return QuasiPeriods(*d.get("omega", DEFAULT_OMEGA))


def _cr(d) -> cr.CRParamSet:
    return cr.CRParamSet(d["s"], d["n"], d["t"], d["m"], d.get("eps", 0))


@dataclass(frozen=True)
class Family:
    schema: dict
    build: Callable


FAMILIES = {
    "cgamma": Family({"x": C(), "n": I()}, lambda d: d),
    "hgamma": Family({"u": C(), **_OMEGA, "method": S()}, lambda d: d),
    "egamma": Family({"z": C(), "p": C(), "q": C()}, lambda d: d),
    "theta": Family({"z": C(), "q": C()}, lambda d: d),
    "elliptic": Family({"t": C(8), "p": C(), "q": C()},
                       lambda d: ell.EllipticParams(d["t"], EllipticBases(d["p"], d["q"]))),
    "hyp8": Family({"u": C(8), **_OMEGA}, lambda d: hyp.HypParams8(d["u"], _w(d))),
    "hyp6": Family({"u": C(6), **_OMEGA}, lambda d: hyp.HypParams6(d["u"], _w(d))),
    "munu": Family({"mu": C(4), "nu": C(4), **_OMEGA}, lambda d: hyp.MuNuParams(d["mu"], d["nu"], _w(d))),
    "pt": Family({"alpha": C(4), "alpha_s": C(), "alpha_t": C(), "b": C()},
                 lambda d: hyp.PTParams(d["alpha"], d["alpha_s"], d["alpha_t"], d["b"])),
    "jr": Family({"beta": C(4), "gamma": C(4)}, lambda d: rat.RationalParams(beta=d["beta"], gamma=d["gamma"])),
    "er": Family({"alpha": C(6)}, lambda d: rat.RationalParams(alpha=d["alpha"])),
    "cr": Family({"s": C(4), "n": L(4), "t": C(4), "m": L(4), "eps": L(required=False)}, _cr),
    "ecr": Family({"p": C(6), "l": L(6), "eps": L(required=False)},
                  lambda d: cr.ECRParamSet(d["p"], d["l"], d.get("eps", 0))),
    "sixj": Family({"sigma": C(4), "N": I(4), "rho": C(2), "M": I(2)},
                   lambda d: cr.SixJComplexParams(d["sigma"], d["N"], d["rho"], d["M"])),
    "eqdif": Family({"beta": C(3), "gamma": C(3), "limit": B()}, lambda d: d),
}

_OFFSET = {"offset": R(required=False)}


def _load(family: str, path: str, extra: dict | None = None):
    fam = FAMILIES[family]
    d = parse_file(path, {**fam.schema, **(extra or {})})
    opts = {k: d.pop(k) for k in (extra or {}) if k in d}
    return fam.build(d), opts


# --------------------------------------------------------------------------
# eval
# --------------------------------------------------------------------------

def _plain(v) -> Evaluation:
    return v if isinstance(v, Evaluation) else Evaluation(complex(v), 0.0)


EVALUATORS = {
    "cgamma": ("cgamma", lambda d, tol, o: cgamma(d["x"], d["n"])),
    "hgamma": ("hgamma", lambda d, tol, o: hgamma(d["u"], _w(d), method=d.get("method", "auto"))),
    "egamma": ("egamma", lambda d, tol, o: egamma(d["z"], EllipticBases(d["p"], d["q"]))),
    "theta": ("theta", lambda d, tol, o: theta_q(d["z"], d["q"])),
    "v": ("elliptic", lambda p, tol, o: ell.v_function(p, tol)),
    "ih": ("hyp8", lambda p, tol, o: hyp.ih(p, tol, **o)),
    "eh": ("hyp6", lambda p, tol, o: hyp.eh(p, tol, **o)),
    "jh": ("munu", lambda p, tol, o: hyp.jh(p, tol, **o)),
    "jh_closed_form": ("munu", lambda p, tol, o: hyp.jh_closed_form(p)),
    "jb": ("pt", lambda p, tol, o: hyp.jb(p, tol)),
    "pt_6j": ("pt", lambda p, tol, o: hyp.pt_6j(p, tol)),
    "jr": ("jr", lambda p, tol, o: rat.jr(p, tol, **o)),
    "jr_tilde": ("jr", lambda p, tol, o: rat.jr_tilde(p, tol)),
    "er": ("er", lambda p, tol, o: rat.er(p, tol, **o)),
    "jcr": ("cr", lambda p, tol, o: cr.jcr(p, tol, **o)),
    "f_product": ("cr", lambda p, tol, o: cr.f_product(p)),
    "ecr": ("ecr", lambda p, tol, o: cr.ecr(p, tol, **o)),
    "complex_6j": ("sixj", lambda p, tol, o: cr.complex_6j(p, tol)),
}


def run_eval(cfg: RunConfig) -> tuple[int, dict]:
    if cfg.ident not in EVALUATORS:
        raise ParseError(f"unknown function {cfg.ident!r}; expected one of {sorted(EVALUATORS)}")
    if not cfg.params:
        raise ParseError("eval needs --params")
    family, fn = EVALUATORS[cfg.ident]
    par, opts = _load(family, cfg.params, _OFFSET)
    tol = cfg.tol or 1e-10
    ev = _plain(fn(par, tol, opts))
    return EXIT_OK, {
        "fn": cfg.ident,
        "value": to_json(complex(ev.value)),
        "abs_err": ev.abs_err,
        "nodes_used": ev.nodes_used,
        "terms_used": ev.terms_used,
    }


# --------------------------------------------------------------------------
# check
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    family: str
    random: Callable  # rng -> params
    deviation: Callable  # (params, tol) -> float
    tol: float
    aliases: tuple = field(default=())


def _hyp(eq):
    return lambda p, tol: abs(hyp.hyp_residual(eq, p, min(tol, 1e-11)))


def _rat(eq):
    return lambda p, tol: abs(rat.rational_residual(eq, p, min(tol, 1e-11)))


def _crr(eq):
    return lambda p, tol: abs(cr.cr_residual(eq, p, 1e-10))


def _w0():
    return QuasiPeriods(*DEFAULT_OMEGA)


def _eqdif_dev(d, tol):
    b, g = d["beta"], d["gamma"]
    val, scale = cr.eqdif_lhs(*b, *g, limit=d.get("limit", False))
    return abs(val) / scale if scale else 0.0


def _eqdif_random(rng):
    z = rng.normal(size=6) + 1j * rng.normal(size=6)
    return {"beta": tuple(z[:3]), "gamma": tuple(z[3:]), "limit": bool(rng.integers(2))}


CHECKS = {
    "ehe": Check("elliptic", lambda r: ell.random_params(r), lambda p, tol: abs(ell.ehe_residual(p)), 1e-8,
                 ("elldif",)),
    "br": Check("hyp8", lambda r: hyp.random_hyp8(r, _w0()), _hyp("br"), 1e-7),
    "br2": Check("hyp8", lambda r: hyp.random_hyp8(r, _w0()), _hyp("br2"), 1e-7),
    "difeh": Check("hyp6", lambda r: hyp.random_hyp6(r, _w0()), _hyp("difeh"), 1e-7),
    "difeh2": Check("hyp6", lambda r: hyp.random_hyp6(r, _w0()), _hyp("difeh2"), 1e-7),
    "secdif": Check("munu", lambda r: hyp.random_munu(r, _w0(), shift_room=True), _hyp("secdif"), 1e-7),
    "secdif2": Check("munu", lambda r: hyp.random_munu(r, _w0(), shift_room=True), _hyp("secdif2"), 1e-7),
    "jheh": Check("munu", lambda r: hyp.random_munu_jheh(r, _w0()),
                  lambda p, tol: hyp.check_identity("jheh", p), 1e-7),
    "ide1b": Check("munu", lambda r: hyp.random_munu_ide1b(r, _w0()),
                   lambda p, tol: hyp.check_identity("ide1b", p), 1e-7),
    "jr_eq": Check("jr", lambda r: rat.random_jr(r), _rat("jr_eq"), 1e-7),
    "jr_tilde_eq": Check("jr", lambda r: rat.random_jr_tilde(r), _rat("jr_tilde_eq"), 1e-7),
    "er_eq": Check("er", lambda r: rat.random_er(r), _rat("er_eq"), 1e-7, ("difeh22",)),
    "difjmn": Check("cr", lambda r: cr.random_cr(r, shift_room=True), _crr("difjmn"), 1e-6),
    "difjmn2": Check("cr", lambda r: cr.random_cr(r, shift_room=True), _crr("difjmn2"), 1e-6),
    "ecr_eq1": Check("ecr", lambda r: cr.random_ecr(r, shift_room=True), _crr("ecr_eq1"), 1e-6,
                     ("difeh22'",)),
    "ecr_eq2": Check("ecr", lambda r: cr.random_ecr(r, shift_room=True), _crr("ecr_eq2"), 1e-6,
                     ("difeh22''",)),
    "f_eq": Check("cr", lambda r: cr.random_locus(r), _crr("f_eq"), 1e-12),
    "ide1i": Check("cr", lambda r: cr.random_cr(r), lambda p, tol: cr.check_cr_identity("ide1i", p), 1e-6),
    "JE": Check("cr", lambda r: cr.random_cr(r), lambda p, tol: cr.check_cr_identity("JE", p), 1e-6),
    "eqdif": Check("eqdif", _eqdif_random, _eqdif_dev, 1e-10),
}

ALIASES = {a: k for k, c in CHECKS.items() for a in c.aliases}


def run_check(cfg: RunConfig) -> tuple[int, dict]:
    ident = ALIASES.get(cfg.ident, cfg.ident)
    if ident not in CHECKS:
        raise ParseError(f"unknown check {cfg.ident!r}; expected one of {sorted(CHECKS)}")
    chk = CHECKS[ident]
    tol = cfg.tol or chk.tol
    if cfg.params:
        cases = [_load(chk.family, cfg.params)[0]]
    else:
        rng = np.random.default_rng(cfg.seed)
        cases = [chk.random(rng) for _ in range(cfg.cases)]
    devs = [float(chk.deviation(p, tol)) for p in cases]
    worst = max(devs)
    ok = worst < tol
    return (EXIT_OK if ok else EXIT_FAIL), {
        "id": ident,
        "tol": tol,
        "deviations": devs,
        "max_deviation": worst,
        "status": "PASS" if ok else "FAIL",
    }


# --------------------------------------------------------------------------
# scan
# --------------------------------------------------------------------------

SCAN_SCHEMAS = {
    "elliptic_to_hyperbolic": {"y": C(required=False), "omega": C(2, required=False)},
    "gamma_b_to_i": {"x": C(required=False), "n": I(required=False)},
    "jh_b_to_0": {"beta": C(4, required=False), "gamma": C(4, required=False),
                  "omega2": C(required=False), "seed": I(required=False)},
    "pt_to_complex6j": {"sigma": C(4, required=False), "N": I(4, required=False),
                        "rho": C(2, required=False), "M": I(2, required=False), "seed": I(required=False)},
}


def _scan_params(limit: str, path: str | None) -> dict:
    if not path:
        return {}
    d = parse_file(path, SCAN_SCHEMAS[limit])
    if limit == "jh_b_to_0" and "beta" in d:
        d["par"] = FAMILIES["jr"].build({"beta": d.pop("beta"), "gamma": d.pop("gamma")})
    if limit == "pt_to_complex6j" and "sigma" in d:
        d["par"] = FAMILIES["sixj"].build({k: d.pop(k) for k in ("sigma", "N", "rho", "M")})
    return d


def run_scan(cfg: RunConfig) -> tuple[int, dict]:
    if cfg.ident not in LIMITS:
        raise ParseError(f"unknown limit {cfg.ident!r}; expected one of {LIMITS}")
    if not cfg.deltas:
        raise ParseError("--deltas must list at least one value")
    scan = limit_scan(cfg.ident, cfg.deltas, _scan_params(cfg.ident, cfg.params), cfg.tol or 1e-10)
    rows = [{"delta": r["delta"], "lhs": to_json(complex(r["lhs"])), "rhs": to_json(complex(r["rhs"])),
             "ratio": to_json(complex(r["lhs"] / r["rhs"])), "deviation": r["deviation"]} for r in scan.rows()]
    out = {"limit": scan.limit, "rows": rows, "order": scan.order, "monotone": scan.monotone}
    if "F" in scan.params:
        out["F"] = scan.params["F"]
    return EXIT_OK, out


# --------------------------------------------------------------------------
# output and dispatch
# --------------------------------------------------------------------------

def _flatten(row: dict) -> dict:
    flat = {}
    for k, v in row.items():
        if isinstance(v, list) and len(v) == 2 and k in ("value", "lhs", "rhs", "ratio"):
            flat[f"{k}_re"], flat[f"{k}_im"] = v
        elif isinstance(v, list):
            flat[k] = ";".join(repr(x) for x in v)
        else:
            flat[k] = v
    return flat


def emit(command: str, result: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        json.dump(result, out, indent=2)
        out.write("\n")
        return
    if command == "scan":
        rows = [_flatten(r) for r in result["rows"]]
        rows.append({"delta": "order", "deviation": result["order"]})
    else:
        rows = [_flatten(result)]
    w = csv.DictWriter(out, fieldnames=list(dict.fromkeys(k for r in rows for k in r)), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def _parse_deltas(text: str | None) -> tuple:
    if text is None:
        return ()
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise ParseError(f"--deltas: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ellhyp", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="tolerance (default: per function or check)")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--budget", type=int, default=None,
                        help="node budget for every contour (overrides ELLHYP_BUDGET)")

    p = sub.add_parser("eval", parents=[common], help="evaluate one function")
    p.add_argument("--fn", dest="ident", required=True, choices=sorted(EVALUATORS))
    p.add_argument("--params", required=True)

    p = sub.add_parser("check", parents=[common], help="run a difference-equation or identity check")
    p.add_argument("--id", dest="ident", required=True)
    p.add_argument("--params", default=None, help="parameter file; random cases from --seed otherwise")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=1)

    p = sub.add_parser("scan", parents=[common], help="scan a limit relation over small parameters")
    p.add_argument("--id", dest="ident", required=True, choices=LIMITS)
    p.add_argument("--deltas", required=True, help="comma separated, strictly decreasing")
    p.add_argument("--params", default=None)

    sub.add_parser("selftest", parents=[common], help="run every acceptance criterion")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        ident=getattr(ns, "ident", None),
        params=getattr(ns, "params", None),
        tol=ns.tol,
        fmt=ns.fmt,
        seed=getattr(ns, "seed", 0),
        cases=getattr(ns, "cases", 1),
        deltas=_parse_deltas(getattr(ns, "deltas", None)),
        budget=ns.budget,
    )


def run(cfg: RunConfig, out=None) -> int:
    if cfg.budget is not None:
        set_budget(cfg.budget)
    if cfg.command == "selftest":
        from .selftest import run_all

        results = run_all(out=out or sys.stdout)
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    handler = {"eval": run_eval, "check": run_check, "scan": run_scan}[cfg.command]
    code, result = handler(cfg)
    emit(cfg.command, result, cfg.fmt, out)
    return code


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        return run(config_from_args(ns))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonConvergence as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONV
    except (EllHypError, ValueError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
