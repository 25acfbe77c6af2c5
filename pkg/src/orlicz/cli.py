"""Command-line front end.

Exit codes: 0 on success, 1 when an operation rejects its input (the
message names the failed precondition), 2 on malformed specs or flags.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import analysis, constructors, exponents, gallery, mixed, norms
from .errors import DomainError, OrliczError, SpecParseError
from .integrands import from_moments
from .spec_format import parse_integrand, parse_young
from .young import GridSpec, Power, PowerSum, Scaled, validate

__all__ = ["RunConfig", "run", "main"]

SUBCOMMANDS = ("exponents", "norm", "modular", "mixed-norm", "construct", "compare", "inclusions",
               "multiplicativity", "gallery", "validate")


@dataclass
class RunConfig:
    command: str
    phi: Optional[str] = None
    psi: Optional[str] = None
    integrand: Optional[str] = None
    moments: Optional[str] = None
    grid: Optional[GridSpec] = None
    tol: Optional[float] = None
    csv: Optional[str] = None
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise SpecParseError(f"--tol must be positive, got {self.tol}")


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return x


def _write_csv(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _grid(text):
    try:
        lo, hi, n = text.split(":")
        return GridSpec(float(lo), float(hi), int(n))
    except (ValueError, OrliczError) as exc:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:n with 0 < lo < hi and n >= 2 ({exc})")


def _moments(text):
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            r, v = part.split(":")
            out[float(r)] = float(v)
        except ValueError:
            raise SpecParseError(f"moments are r:value pairs separated by commas, got {part!r}", text,
                                 text.find(part)) from None
    if not out:
        raise SpecParseError("no moments given", text, 0)
    return out


def _show(x):
    if x is None:
        return "absent"
    return "inf" if math.isinf(x) else f"{x:.12g}"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _need(cfg, *names):
    for n in names:
        if getattr(cfg, n) is None:
            raise SpecParseError(f"--{n} is required for {cfg.command}")


def cmd_exponents(cfg, out):
    _need(cfg, "phi")
    phi = parse_young(cfg.phi)
    rep = exponents.exponent_report(phi, cfg.grid)
    print(f"phi = {phi.spec()}", file=out)
    for line in rep.lines():
        print(line, file=out)
    if cfg.csv:
        t = (cfg.grid or GridSpec()).points()
        _write_csv(cfg.csv, [("t", "value")] + list(zip(t, phi.g(t))))
    return 0


def _moment_norm(phi, moments):
    """Norm and modular of a function known only through its moments."""
    base = phi.base if isinstance(phi, Scaled) else phi
    factor = phi.factor if isinstance(phi, Scaled) else 1.0
    if isinstance(base, Power) and set(moments) == {base.p}:
        m = moments[base.p]
        return (m / factor) ** (1 / base.p), m / factor, None
    if isinstance(base, PowerSum) and set(moments) == {base.q, base.p}:
        f = from_moments(moments[base.q], moments[base.p], base.q, base.p)
        a, b = moments[base.q] / factor, moments[base.p] / factor
        lam = norms.power_sum_norm_closed_form(a, b, base.q, base.p)
        return lam, a + b, f
    raise DomainError("moments determine the norm only for power and power-sum functions with matching exponents")


def cmd_norm(cfg, out):
    _need(cfg, "phi")
    phi = parse_young(cfg.phi)
    rtol = cfg.tol or norms.NORM_RTOL
    if cfg.moments is not None:
        lam, rho, f = _moment_norm(phi, _moments(cfg.moments))
        print(f"norm = {lam:.12g} (closed form from moments)", file=out)
        print(f"modular = {rho:.12g}", file=out)
        if f is not None:
            res = norms.luxemburg_norm(f, phi, rtol=rtol)
            print(f"norm by bisection on a step function with these moments = {res.norm:.12g}", file=out)
            verdict = norms.trichotomy_check(f, phi, result=res)
            print(f"trichotomy case = {verdict.case}" + ("" if verdict.ok else f" (failures: {verdict.failures})"),
                  file=out)
        return 0
    _need(cfg, "integrand")
    f = parse_integrand(cfg.integrand)
    res = norms.luxemburg_norm(f, phi, rtol=rtol)
    print(f"integrand = {f.spec()}", file=out)
    print(f"norm = {_show(res.norm)}", file=out)
    print(f"modular = {_show(res.modular)}", file=out)
    if math.isfinite(res.norm):
        print(f"bracket = [{res.bracket[0]:.12g}, {res.bracket[1]:.12g}]", file=out)
        print(f"modular at norm = {res.modular_at_norm:.12g}", file=out)
        verdict = norms.trichotomy_check(f, phi, result=res)
        print(f"trichotomy case = {verdict.case}" + ("" if verdict.ok else f" (failures: {verdict.failures})"),
              file=out)
    for note in res.notes:
        print(f"note: {note}", file=out)
    return 0


def cmd_modular(cfg, out):
    _need(cfg, "phi")
    phi = parse_young(cfg.phi)
    if cfg.moments is not None:
        _, rho, _ = _moment_norm(phi, _moments(cfg.moments))
        print(f"modular = {rho:.12g} (from moments)", file=out)
        return 0
    _need(cfg, "integrand")
    f = parse_integrand(cfg.integrand)
    rho = norms.modular(f, phi, rtol=cfg.tol or norms.MODULAR_RTOL)
    print(f"modular = {_show(rho)}" + (" (diverges)" if math.isinf(rho) else ""), file=out)
    return 0


def cmd_mixed_norm(cfg, out):
    _need(cfg, "phi", "integrand")
    phi = parse_young(cfg.phi)
    f = parse_integrand(cfg.integrand)
    kw = {} if cfg.tol is None else {"outer_rtol": cfg.tol}
    res = mixed.mixed_norm(f, phi, y_grid=cfg.grid, **kw)
    print(f"mixed norm = {_show(res.norm)}", file=out)
    if res.l11 is not None:
        print(f"L^(1,1) = {_show(res.l11)}", file=out)
        print(f"L^(2,1) = {_show(res.l21)}", file=out)
    print(f"inner evaluations = {res.inner_evaluations}", file=out)
    for note in res.notes:
        print(f"note: {note}", file=out)
    if cfg.csv:
        _write_csv(cfg.csv, res.profile_csv_rows())
    return 0


CONSTRUCT_HELP = {
    "p1": "target lower exponent (target, widened)",
    "p": "exponent of the power the splice is equivalent to (target)",
    "p2": "target upper exponent (target, widened)",
    "r1": "power used below the first knot (target, widened, family)",
    "r2": "power used beyond the second knot (target, widened, family)",
    "r": "middle power (epsilon-tight; default midpoint of the end limits)",
    "n": "middle piece spans (1/n, n] (epsilon-tight; default 1e3)",
    "a": "first knot (family)",
    "b": "second knot (family)",
}

CONSTRUCT_OPTIONS = {
    "target": ("p1", "p", "p2", "r1", "r2"),
    "widened": ("p1", "p2", "r1", "r2"),
    "epsilon-tight": (),
    "family": ("r1", "r2", "a", "b"),
    "item3": (),
    "item4": (),
}


def cmd_construct(cfg, out):
    kind = cfg.extra["kind"]
    x = cfg.extra
    missing = [f"--{o}" for o in CONSTRUCT_OPTIONS.get(kind, ()) if x.get(o) is None]
    if missing:
        raise SpecParseError(f"construct {kind} needs {', '.join(missing)}")
    if kind == "target":
        psi, params = constructors.construct_target_exponents(x["p1"], x["p"], x["p2"], x["r1"], x["r2"])
    elif kind == "widened":
        _need(cfg, "phi")
        psi, params = constructors.construct_widened(parse_young(cfg.phi), x["p1"], x["p2"], x["r1"], x["r2"], cfg.grid)
    elif kind == "epsilon-tight":
        _need(cfg, "phi")
        psi, params = constructors.construct_epsilon_tight(parse_young(cfg.phi), x["r"], x["n"] or 1e3)
    elif kind == "family":
        psi = constructors.make_equivalent_power_family(x["r1"], x["r2"], x["a"], x["b"])
        params = constructors.ConstructorParams("family", r1=x["r1"], r2=x["r2"], a=x["a"], b=x["b"])
    elif kind in ("item3", "item4"):
        psi = constructors.item3_splice() if kind == "item3" else constructors.item4_splice()
        params = constructors.ConstructorParams(kind)
    else:
        raise SpecParseError(f"unknown construction {kind!r}")
    q, p = exponents.lebesgue_exponents(psi, cfg.grid)
    print(params.render(), file=out)
    print(f"psi = {psi.spec()}", file=out)
    print(f"measured q = {_show(q)}", file=out)
    print(f"measured p = {_show(p)}", file=out)
    rep = validate(psi, cfg.grid)
    print(f"validate = {'ok' if rep.valid else 'FAILED'}", file=out)
    if cfg.csv:
        t = (cfg.grid or GridSpec()).points()
        _write_csv(cfg.csv, [("t", "value")] + list(zip(t, psi.eval(t))))
    return 0 if rep.valid else 1


def cmd_compare(cfg, out):
    _need(cfg, "phi", "psi")
    phi, psi = parse_young(cfg.phi, check=False), parse_young(cfg.psi, check=False)
    rep = analysis.equivalence_scan(phi, psi, cfg.grid)
    for line in rep.lines():
        print(line, file=out)
    if cfg.csv:
        t = (cfg.grid or GridSpec()).points()
        with np.errstate(over="ignore", divide="ignore"):
            ratio = np.exp(phi.log_eval(t) - psi.log_eval(t))
        _write_csv(cfg.csv, [("t", "value")] + list(zip(t, ratio)))
    return 0


def cmd_inclusions(cfg, out):
    _need(cfg, "phi")
    rep = analysis.inclusion_report(parse_young(cfg.phi), cfg.grid)
    for line in rep.lines():
        print(line, file=out)
    if cfg.csv:
        _write_csv(cfg.csv, rep.csv_rows())
    return 0


def cmd_multiplicativity(cfg, out):
    _need(cfg, "phi")
    phi = parse_young(cfg.phi, check=False)
    grid = cfg.grid or analysis.MULT_GRID
    for line in analysis.multiplicativity_scan(phi, grid).lines():
        print(line, file=out)
    return 0


def cmd_gallery(cfg, out):
    only = cfg.extra.get("only")
    results = gallery.run_gallery(only.split(",") if only else None, seed=cfg.seed)
    rows = [("name", "expected", "actual", "abs_err", "verdict")]
    for res in results:
        for line in res.lines():
            print(line, file=out)
        print(f"criterion {res.number} ({res.title}): {'PASS' if res.passed else 'FAIL'} in {res.runtime:.2f} s",
              file=out)
        for c in res.checks:
            err = c.abs_err
            rows.append((f"{res.number}: {c.name}", c.expected, c.actual, "" if err is None else err,
                         "PASS" if c.passed else "FAIL"))
    ok = all(r.passed for r in results)
    print(f"gallery: {'all checks pass' if ok else 'some checks fail'}", file=out)
    if cfg.csv:
        _write_csv(cfg.csv, rows)
    return 0 if ok else 1


def cmd_validate(cfg, out):
    _need(cfg, "phi")
    phi = parse_young(cfg.phi, check=False)
    rep = validate(phi, cfg.grid)
    for group in ("convexity", "monotonicity", "knots"):
        bad = getattr(rep, group)
        print(f"{group}: {'ok' if not bad else f'{len(bad)} violations'}", file=out)
        for v in bad[:10]:
            print(f"  {v.kind} at t={v.t:.6g}: {v.detail}", file=out)
    return 0 if rep.valid else 1


COMMANDS = {
    "exponents": cmd_exponents,
    "norm": cmd_norm,
    "modular": cmd_modular,
    "mixed-norm": cmd_mixed_norm,
    "construct": cmd_construct,
    "compare": cmd_compare,
    "inclusions": cmd_inclusions,
    "multiplicativity": cmd_multiplicativity,
    "gallery": cmd_gallery,
    "validate": cmd_validate,
}


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--phi", help="Young function spec")
    common.add_argument("--psi", help="second Young function spec (compare)")
    common.add_argument("--integrand", help="integrand spec")
    common.add_argument("--moments", help='moments as "r:value, r:value"')
    common.add_argument("--grid", type=_grid, help="log grid lo:hi:n")
    common.add_argument("--tol", type=float, help="relative tolerance")
    common.add_argument("--csv", help="write a CSV file")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")

    parser = argparse.ArgumentParser(prog="orlicz", description="Young functions, exponents and Orlicz norms")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "construct":
            sp.add_argument("kind", choices=["target", "widened", "epsilon-tight", "family", "item3", "item4"])
            for opt, what in CONSTRUCT_HELP.items():
                sp.add_argument(f"--{opt}", type=float, help=what)
        if name == "gallery":
            sp.add_argument("--only", help="comma-separated criterion numbers")
    return parser


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    extra = {k: v for k, v in vars(ns).items()
             if k not in ("command", "phi", "psi", "integrand", "moments", "grid", "tol", "csv", "seed")}
    try:
        cfg = RunConfig(ns.command, ns.phi, ns.psi, ns.integrand, ns.moments, ns.grid, ns.tol, ns.csv, ns.seed, extra)
        return COMMANDS[ns.command](cfg, out)
    except SpecParseError as exc:
        kind = "usage error" if exc.line is None else "parse error"
        print(f"{kind}: {exc}", file=sys.stderr)
        return 2
    except OrliczError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
