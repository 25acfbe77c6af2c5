"""Worked examples with reference values, grouped by acceptance criterion.

Each criterion function returns a :class:`CriterionResult` whose checks
carry the expected value, the computed value and the tolerance used.  The
CLI ``gallery`` subcommand and the acceptance tests both run these.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .analysis import class_exponents, equivalence_scan, multiplicativity_scan, modular_norm_multiplicativity_check
from .constructors import (
    construct_epsilon_tight,
    construct_target_exponents,
    construct_widened,
    exponent_gap,
    item3_splice,
    item4_splice,
)
from .errors import Infeasible
from .exponents import (
    lebesgue_exponents,
    limit_exponents_g,
    limit_exponents_r,
    normalized_bounds_check,
    scaling_inequality_check,
)
from .integrands import CauchyPower, GaussQuad, Indicator, Separable, from_moments
from .mixed import (
    GAUSS_L21_CONSTANT,
    counterexample_partial_sums,
    gaussian_family_numeric,
    profiles_G_H,
)
from .norms import luxemburg_norm, modular, power_sum_norm_closed_form, trichotomy_check
from .young import (
    Dual23,
    ExpMinusOne,
    FlatOrigin,
    Power,
    PowerExp,
    PowerLog,
    PowerLogShift,
    PowerSum,
    validate,
)

__all__ = ["Check", "CriterionResult", "CRITERIA", "run_gallery", "finite_p_forms", "cardano_display"]


@dataclass
class Check:
    name: str
    expected: object
    actual: object
    tol: Optional[float] = None  # None: exact comparison of labels or booleans
    passed: bool = False
    known_failure: str = ""  # why a pinned reference value cannot be met

    @property
    def abs_err(self):
        if isinstance(self.expected, (str, bool)) or isinstance(self.actual, (str, bool)):
            return None
        try:
            err = abs(float(self.actual) - float(self.expected))
        except (TypeError, ValueError):
            return None
        return None if math.isnan(err) else err


@dataclass
class CriterionResult:
    number: str
    title: str
    checks: list = field(default_factory=list)
    runtime: float = 0.0
    budget: Optional[float] = None

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def lines(self):
        out = []
        for c in self.checks:
            verdict = "PASS" if c.passed else "FAIL"
            err = c.abs_err
            err_s = "" if err is None else f" abs_err={err:.3g}"
            tol_s = "" if c.tol is None else f" tol={c.tol:g}"
            note = f" [{c.known_failure}]" if c.known_failure and not c.passed else ""
            out.append(f"{verdict} {self.number} {c.name}: expected={_show(c.expected)} actual={_show(c.actual)}{err_s}{tol_s}{note}")
        return out


def _show(x):
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _close(name, expected, actual, tol, **kw):
    ok = actual is not None and (
        (math.isinf(expected) and actual == expected) or abs(float(actual) - float(expected)) <= tol
    )
    return Check(name, float(expected), None if actual is None else float(actual), tol, bool(ok), **kw)


def _label(name, expected, actual):
    return Check(name, expected, actual, None, expected == actual)


def _bound(name, bound, actual, below=True):
    ok = actual < bound if below else actual > bound
    return Check(name, f"{'<' if below else '>'} {bound:g}", float(actual), None, bool(ok))


def _timed(number, title, budget, body, *args):
    t0 = time.perf_counter()
    res = CriterionResult(number, title, budget=budget)
    body(res.checks, *args)
    res.runtime = time.perf_counter() - t0
    if budget is not None:
        res.checks.append(_bound("runtime seconds", budget, res.runtime))
    return res


def finite_p_forms():
    """Catalog forms and fixed splices with a finite upper exponent."""
    return [
        Power(1.0), Power(2.0), Power(3.5), PowerSum(1, 2), PowerSum(2, 3),
        PowerLog(1, 1), PowerLog(2, 1), PowerLog(2, 2), PowerLogShift(), Dual23(),
        item3_splice(), item4_splice(),
    ]


def cardano_display():
    """The displayed Cardano sum for moments ``(pi/2, 1)`` evaluated term by term."""
    s = math.sqrt(0.25 - math.pi**3 / 6**3)
    return (0.5 + s) ** (1 / 3) + (0.5 - s) ** (1 / 3)


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------


def _c1(checks):
    for p in (1.0, 2.0, 3.5):
        q_m, p_m = lebesgue_exponents(Power(p))
        checks += [_close(f"power({p:g}) q", p, q_m, 1e-6), _close(f"power({p:g}) p", p, p_m, 1e-6)]
    for name, phi, (q, p) in [("item3", item3_splice(), (4 / 3, 2.0)), ("item4", item4_splice(), (2.0, 48 / 17))]:
        q_m, p_m = lebesgue_exponents(phi)
        checks += [_close(f"{name} q", q, q_m, 1e-6), _close(f"{name} p", p, p_m, 1e-6)]
    for n, m in [(1, 1), (2, 1), (2, 2)]:
        q_m, p_m = lebesgue_exponents(PowerLog(n, m))
        checks += [_close(f"power_log({n},{m}) q", n, q_m, 1e-6), _close(f"power_log({n},{m}) p", n + m, p_m, 1e-6)]
    q_m, p_m = lebesgue_exponents(PowerExp(1))
    checks += [_close("power_exp(1) q", 1.0, q_m, 1e-6), _label("power_exp(1) p flag", "inf", "inf" if math.isinf(p_m) else repr(p_m))]


def _c2(checks, seed):
    phi, _ = construct_target_exponents(1.5, 2, 3, 1.2, 4)
    q_m, p_m = lebesgue_exponents(phi)
    checks += [_close("target (1.5,2,3,1.2,4) q", 1.5, q_m, 1e-5), _close("target (1.5,2,3,1.2,4) p", 3.0, p_m, 1e-5)]
    rep = validate(phi)
    checks.append(_label("target validate", "valid", "valid" if rep.valid else "invalid"))
    rng = np.random.default_rng(seed)
    worst, invalid, knots, done, tries = 0.0, 0, 0, 0, 0
    while done < 20 and tries < 1000:
        tries += 1
        p1 = rng.uniform(1.1, 3.0)
        p = p1 + rng.uniform(0.1, 1.5)
        p2 = p + rng.uniform(0.1, 2.0)
        r1 = rng.uniform(1.01, p1 - 0.01)
        r2 = p2 + rng.uniform(0.1, 2.0)
        try:
            psi, _ = construct_target_exponents(p1, p, p2, r1, r2)
        except Infeasible:
            continue
        done += 1
        q_m, p_m = lebesgue_exponents(psi)
        worst = max(worst, abs(q_m - p1), abs(p_m - p2))
        rep = validate(psi)
        invalid += not rep.valid
        knots += len(rep.knots)
    checks += [
        _label("random feasible tuples", 20, done),
        _close("random tuples worst exponent error", 0.0, worst, 1e-5),
        _label("random tuples invalid outputs", 0, invalid),
        _label("random tuples knot mismatches", 0, knots),
    ]


def _c3(checks):
    base = PowerLogShift()
    psi, _ = construct_widened(base, 1.5, 3, 1.2, 4)
    q_m, p_m = lebesgue_exponents(psi)
    checks += [_bound("widened q", 1.5, q_m, below=True), _bound("widened p", 3.0, p_m, below=False)]
    checks.append(_label("widened vs base scan verdict", "finite", equivalence_scan(psi, base).bounded))


def _c4(checks):
    base = PowerSum(2, 3)
    gaps = []
    for n in (1e2, 1e3, 1e4):
        psi, _ = construct_epsilon_tight(base, 2.5, n)
        gaps.append(exponent_gap(psi, 2.0, 3.0))
    # monotone non-increasing up to grid noise; the gaps can vanish exactly
    mono = all(b <= a + 1e-9 for a, b in zip(gaps, gaps[1:]))
    checks.append(_label("gaps decrease with n", True, mono))
    checks.append(_bound("gap at n=1e4", 0.02, gaps[-1], below=True))


def _c5(checks):
    lam = power_sum_norm_closed_form(math.pi / 2, 1, 2, 3)
    checks.append(_close("closed form vs pinned 1.49603", 1.49603, lam, 1e-4,
                         known_failure="the Cardano display itself evaluates to 1.4963575"))
    checks.append(_close("closed form vs Cardano display", cardano_display(), lam, 1e-12))
    f = from_moments(math.pi / 2, 1, 2, 3)
    res = luxemburg_norm(f, PowerSum(2, 3))
    checks.append(_close("bisection norm vs closed form", lam, res.norm, 1e-8))
    verdict = trichotomy_check(f, PowerSum(2, 3), result=res)
    checks.append(_label("trichotomy case", 1, verdict.case))
    checks.append(_close("modular = 1 + pi/2", 1 + math.pi / 2, res.modular, 1e-9))
    witness = CauchyPower(0.5, half=True)
    checks.append(_close("half-line (1+x^2)^(-1/2) modular", 1 + math.pi / 2, modular(witness, PowerSum(2, 3)), 1e-9))


def _c6(checks):
    target = math.pi + math.sqrt(math.pi / 2)
    for n in range(2, 11):
        s, l21 = gaussian_family_numeric(n)
        checks.append(_close(f"n={n} L1+L2", target, s, 1e-4))
        checks.append(_close(f"n={n} L21", GAUSS_L21_CONSTANT * n**0.25, l21, 1e-4))


def _c7(checks):
    phi_lo, l21_lo = counterexample_partial_sums(100)
    phi_hi, l21_hi = counterexample_partial_sums(10_000)
    growth = phi_hi / phi_lo - 1
    checks.append(_bound("phi-norm bound growth 1e2 -> 1e4", 0.03, growth, below=True))
    checks[-1].known_failure = "partial sums of n^(-5/4) still grow ~37% over this range"
    inc = l21_hi - l21_lo
    target = GAUSS_L21_CONSTANT * math.log(100)
    checks.append(_close("L21 lower bound increase vs C ln 100", target, inc, 0.01 * target))


def _c8(checks, seed):
    rng = np.random.default_rng(seed)
    forms = finite_p_forms()
    # (a) scaling inequalities
    total_a = 0
    for phi in forms:
        c = 10 ** rng.uniform(-6, 0, 1000)
        big = 10 ** rng.uniform(0, 6, 1000)
        t = 10 ** rng.uniform(-6, 6, 2000)
        total_a += len(scaling_inequality_check(phi, list(zip(c, t[:1000])) + list(zip(big, t[1000:]))))
    checks.append(_label("(a) scaling violations", 0, total_a))
    # (b) normalized bounds
    total_b = sum(len(normalized_bounds_check(phi)) for phi in forms)
    checks.append(_label("(b) normalized-bound violations", 0, total_b))
    # (c) trichotomy and power bounds
    witnesses = [CauchyPower(1.0), CauchyPower(0.75), Indicator(1, 1), Indicator(2, 0.3), Indicator(0.5, 3.0),
                 from_moments(math.pi / 2, 1, 2, 3), CauchyPower(0.5, half=True)]
    phis = [PowerSum(2, 3), PowerLog(2, 1), Dual23()]
    pairs = [(f, phi) for phi in phis for f in witnesses][:20]
    fails = sum(not trichotomy_check(f, phi).ok for f, phi in pairs)
    checks.append(_label("(c) trichotomy failures over 20 pairs", 0, fails))
    # (d) profile equivalences
    cases = profile_cases()
    consistent = sum(profiles_G_H(f, phi).consistent for f, phi in cases)
    checks.append(_label("(d) consistent profile cases", len(cases), consistent))
    # (e) modular bound from submultiplicativity
    sub_c = multiplicativity_scan(PowerSum(2, 3)).sub_c
    wit = [from_moments(math.pi / 2, 1, 2, 3), Indicator(1, 1), Indicator(10, 0.1), Indicator(0.1, 10),
           CauchyPower(1.0), CauchyPower(0.5, half=True)]
    checks.append(_label("(e) submultiplicative violations", 0,
                         len(modular_norm_multiplicativity_check(PowerSum(2, 3), 1.0, "sub", wit))))
    checks.append(_close("(e) scanned sub_c", 1.0, sub_c, 1e-3))
    # (f) r-limits vs g-limits
    worst = 0.0
    for phi in forms:
        g0, ginf = limit_exponents_g(phi)
        r = limit_exponents_r(phi)
        for g, rv in ((g0, r.r0), (ginf, r.r_inf)):
            if g is not None and math.isfinite(g):
                worst = max(worst, abs(g - rv))
    checks.append(_close("(f) worst |r-limit - g-limit|", 0.0, worst, 1e-3))


def profile_cases():
    """Six (integrand, phi) pairs on the plane: three finite, three divergent."""
    return [
        (GaussQuad(2), Power(2)),
        (GaussQuad(3), PowerSum(2, 3)),
        (Separable(CauchyPower(1.0), Indicator(1, 1)), PowerSum(2, 3)),
        (Separable(CauchyPower(0.25), Indicator(1, 1)), PowerSum(2, 3)),
        (Separable(Indicator(1, 1), CauchyPower(0.25)), PowerSum(2, 3)),
        (Separable(Indicator(1, 1), CauchyPower(0.2)), PowerLog(2, 1)),
    ]


def _c9(checks):
    for name, phi, psi in [
        ("item3 vs t^2", item3_splice(), Power(2)),
        ("item4 vs t^2", item4_splice(), Power(2)),
        ("widened vs power_log_shift", construct_widened(PowerLogShift(), 1.5, 3, 1.2, 4)[0], PowerLogShift()),
        ("eps-tight vs power_sum(2,3)", construct_epsilon_tight(PowerSum(2, 3), 2.5, 1e3)[0], PowerSum(2, 3)),
    ]:
        checks.append(_label(name, "finite", "finite" if equivalence_scan(phi, psi).finite else "diverging"))
    for name, phi, psi in [
        ("power_log(2,1) vs power_sum(2,3)", PowerLog(2, 1), PowerSum(2, 3)),
        ("flat_origin vs exp_minus_one", FlatOrigin(), ExpMinusOne()),
    ]:
        checks.append(_label(name, "diverging", "finite" if equivalence_scan(phi, psi).finite else "diverging"))
    f = CauchyPower(0.25)
    m_log = modular(f, PowerLog(2, 1))
    m_sum = modular(f, PowerSum(2, 3))
    checks.append(_label("cauchy(1/4) under t^2 ln(1+t)", "finite", "finite" if math.isfinite(m_log) else "diverges"))
    checks.append(_label("cauchy(1/4) under t^2 + t^3", "diverges", "finite" if math.isfinite(m_sum) else "diverges"))


def _c10(checks):
    cases = [Power(1.0), Power(2.0), Power(3.5), PowerSum(1, 2), PowerSum(2, 3), PowerLog(1, 1), PowerLog(2, 1),
             PowerLog(2, 2), PowerExp(1), PowerLogShift(), ExpMinusOne(), FlatOrigin(), Dual23()]
    for phi in cases:
        rep = multiplicativity_scan(phi)
        want = isinstance(phi, Power)
        checks.append(_label(f"{phi.spec()} pure power", want, rep.is_pure_power))
        if want:
            checks.append(_close(f"{phi.spec()} detected p", phi.p, rep.detected_p, 1e-9))


CRITERIA = {
    "1": ("exponent regression", 5.0, _c1, False),
    "2": ("constructor targeting", 30.0, _c2, True),
    "3": ("widening", 10.0, _c3, False),
    "4": ("epsilon tightening", 10.0, _c4, False),
    "5": ("norm values", 2.0, _c5, False),
    "6": ("gaussian family", 60.0, _c6, False),
    "7": ("counterexample trend", 1.0, _c7, False),
    "8": ("inequality property suites", 120.0, _c8, True),
    "9": ("equivalence verdicts", 10.0, _c9, False),
    "10": ("pure-power detection", None, _c10, False),
}


def run_criterion(number, seed=0):
    title, budget, body, seeded = CRITERIA[str(number)]
    args = (seed,) if seeded else ()
    return _timed(str(number), title, budget, body, *args)


def run_gallery(only=None, seed=0):
    keys = list(CRITERIA) if not only else [str(k) for k in only]
    return [run_criterion(k, seed) for k in keys]


def class_exponent_pairs():
    """Constructor outputs paired with their bases, for invariance of class exponents."""
    base = PowerLogShift()
    out = [(construct_widened(base, 1.5, 3, 1.2, 4)[0], base)]
    for n in (1e2, 1e3):
        out.append((construct_epsilon_tight(PowerSum(2, 3), 2.5, n)[0], PowerSum(2, 3)))
    return [(psi, b, class_exponents(psi), class_exponents(b)) for psi, b in out]
