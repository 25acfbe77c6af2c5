"""Comparisons between Young functions and the spaces they generate.

Equivalence (``C**-1 psi <= phi <= C psi``) is scanned on a log grid with a
trend test at both ends; it is a numerical verdict, never a proof.  The
module also measures class exponents from end limits, tests
sub/supermultiplicativity and builds the Lebesgue sandwiches around an
Orlicz space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import BoundViolation, Delta2Required, LimitsRequired, ParameterError
from .exponents import lebesgue_exponents, limit_exponents_g, limit_exponents_r
from .integrands import CauchyPower
from .norms import luxemburg_norm
from .young import Combination, GridSpec, Violation

__all__ = [
    "EquivalenceReport",
    "MultiplicativityReport",
    "InclusionReport",
    "equivalence_scan",
    "derivative_equivalence_constant",
    "class_exponents",
    "multiplicativity_scan",
    "modular_norm_multiplicativity_check",
    "inclusion_report",
    "combine_equivalent",
]

TREND_TOL = 1e-6  # log-ratio growth per decade treated as flat
DECAY = 0.5  # increments shrinking faster than this per decade count as converging
PURE_POWER_RTOL = 1e-9
MULT_GRID = GridSpec(1e-4, 1e4, 64)
PROBE_DECADES = (4, 6, 8)


# ---------------------------------------------------------------------------
# Equivalence
# ---------------------------------------------------------------------------


@dataclass
class EquivalenceReport:
    c_scan: float  # grid sup of max(phi/psi, psi/phi)
    bounded: str  # "finite", "diverging at 0" or "diverging at inf"
    c1_derivative: Optional[float] = None
    witness: Optional[tuple] = None  # (integrand, "phi" | "psi"): whose norm diverges on it
    increments: dict = field(default_factory=dict)  # per end: last two decade increments of |log ratio|

    @property
    def finite(self):
        return self.bounded == "finite"

    def lines(self):
        out = [f"c_scan = {self.c_scan:.10g}", f"scan verdict = {self.bounded}"]
        if self.c1_derivative is not None:
            out.append(f"c1_derivative = {self.c1_derivative:.10g}")
        if self.witness is not None:
            f, which = self.witness
            out.append(f"witness = {f.spec()} (modular under {which} diverges)")
        return out


def _log_gap(phi, psi, t):
    with np.errstate(invalid="ignore"):
        d = np.abs(phi.log_eval(t) - psi.log_eval(t))
    # inf - inf: both vanish there, the ratio carries no information
    return np.where(np.isnan(d), 0.0, d)


def _end_trend(d_decades):
    """``True`` when the last two decade increments are positive and not decaying."""
    inc = np.diff(d_decades)
    if not np.isfinite(d_decades[-1]):
        return True, (math.inf, math.inf)
    a, b = float(inc[-2]), float(inc[-1])
    return (a > TREND_TOL and b > TREND_TOL and b >= DECAY * a), (a, b)


def equivalence_scan(phi, psi, grid=None):
    """Grid sup of ``max(phi/psi, psi/phi)`` with a divergence test at both ends.

    The scan runs on ``|log phi - log psi|``, so swapping the arguments gives
    bit-identical results.  An end is ``diverging`` when the log ratio grew
    over each of the last two decades of the grid and the later increment is
    at least half the earlier one (geometric decay of the increments means
    the ratio settles).
    """
    grid = grid or GridSpec()
    t = grid.points()
    d = _log_gap(phi, psi, t)
    with np.errstate(over="ignore"):
        c_scan = float(np.exp(d.max()))
    k_lo, k_hi = math.log10(grid.lo), math.log10(grid.hi)
    dec0 = _log_gap(phi, psi, 10.0 ** (k_lo + np.array([2.0, 1.0, 0.0])))
    dec_inf = _log_gap(phi, psi, 10.0 ** (k_hi - np.array([2.0, 1.0, 0.0])))
    div0, inc0 = _end_trend(dec0)
    div_inf, inc_inf = _end_trend(dec_inf)
    verdict = "diverging at 0" if div0 else "diverging at inf" if div_inf else "finite"
    rep = EquivalenceReport(c_scan, verdict, increments={"0": inc0, "inf": inc_inf})
    if rep.finite:
        try:
            rep.c1_derivative = _c1(phi, psi, c_scan)
        except Exception:
            rep.c1_derivative = None
    elif div0:
        rep.witness = _witness_at_zero(phi, psi)
    return rep


def _c1(phi, psi, c, exps_phi=None, exps_psi=None):
    q1, p1 = exps_phi or lebesgue_exponents(phi)
    q2, p2 = exps_psi or lebesgue_exponents(psi)
    if math.isinf(p1) or math.isinf(p2):
        raise Delta2Required("the derivative constant needs finite upper exponents")
    return max(c * p1 / q2, c * p2 / q1)


def _witness_at_zero(phi, psi):
    """``(1 + x**2)**(-s)`` whose modular is finite for one function and not the other.

    Near 0 the functions behave like ``t**r0``; the tail ``|x|**(-2 s)`` is
    integrable against ``t**r`` iff ``2 s r > 1``, so ``s = 1/(r_a + r_b)``
    separates the two limits.
    """
    try:
        ra = limit_exponents_r(phi).r0
        rb = limit_exponents_r(psi).r0
    except Exception:
        return None
    if ra is None or rb is None or abs(ra - rb) < 1e-3:
        return None
    return CauchyPower(1.0 / (ra + rb)), ("phi" if ra < rb else "psi")


def derivative_equivalence_constant(phi, psi, c, grid=None, rtol=1e-9):
    """``C1 = max(c p_phi / q_psi, c p_psi / q_phi)``, verified on the grid.

    Raises BoundViolation when ``C1**-1 psi' <= phi' <= C1 psi'`` fails
    somewhere on the grid, which means ``c`` was not an equivalence constant.
    """
    if not c >= 1:
        raise ParameterError("an equivalence constant is at least 1")
    grid = grid or GridSpec()
    c1 = _c1(phi, psi, c)
    t = grid.points()
    gap = np.abs(np.log(phi.deriv(t)) - np.log(psi.deriv(t)))
    bad = np.nonzero(gap > math.log(c1) + math.log1p(rtol))[0]
    if bad.size:
        i = int(bad[0])
        raise BoundViolation(f"derivative ratio {math.exp(gap[i]):.6g} exceeds C1 = {c1:.6g} at t = {t[i]:.6g}")
    return c1


def class_exponents(phi):
    """``(p_class, q_class) = (max, min)`` of the end limits of ``t phi'/phi``."""
    p0, p_inf = limit_exponents_g(phi)
    if p0 is None or p_inf is None:
        raise LimitsRequired(f"end limits of g are not established for {phi.spec()}")
    return max(p0, p_inf), min(p0, p_inf)


# ---------------------------------------------------------------------------
# Multiplicativity
# ---------------------------------------------------------------------------


@dataclass
class MultiplicativityReport:
    sub_c: Optional[float]  # sup phi(ab) / (phi(a) phi(b)), None when unbounded
    super_c: Optional[float]  # inf of the same ratio, None when it tends to 0
    is_pure_power: bool
    detected_p: Optional[float]

    def __iter__(self):
        return iter((self.sub_c, self.super_c, self.is_pure_power, self.detected_p))

    def lines(self):
        def show(x):
            return "absent" if x is None else f"{x:.10g}"

        return [f"sub_c = {show(self.sub_c)}", f"super_c = {show(self.super_c)}",
                f"pure power = {'yes' if self.is_pure_power else 'no'}", f"detected p = {show(self.detected_p)}"]


def _log_mult_ratio(phi, a):
    la = phi.log_eval(a)
    with np.errstate(invalid="ignore"):
        m = phi.log_eval(np.multiply.outer(a, a)) - la[:, None] - la[None, :]
    return m[np.isfinite(m)]


def multiplicativity_scan(phi, grid2d=None):
    """Extremes of ``phi(ab) / (phi(a) phi(b))`` on a square log grid.

    The bound on each side is kept only when the extreme over the windows
    ``[10**-k, 10**k]`` for ``k = 4, 6, 8`` stops moving (increments decaying
    geometrically, as in :func:`equivalence_scan`).  Pure powers are detected
    from ``p = phi'(1)/phi(1)`` and ``|phi(t) - phi(1) t**p| <= 1e-9 phi(t)``.
    """
    grid2d = grid2d or MULT_GRID
    m = _log_mult_ratio(phi, grid2d.points())
    hi, lo = float(m.max()), float(m.min())
    probes = [_log_mult_ratio(phi, GridSpec(10.0**-k, 10.0**k, grid2d.n).points()) for k in PROBE_DECADES]
    his = np.array([max(hi, float(x.max())) for x in probes])
    los = np.array([min(lo, float(x.min())) for x in probes])
    sub_unbounded, _ = _end_trend(his)
    super_unbounded, _ = _end_trend(-los)
    sub_c = None if sub_unbounded else math.exp(hi)
    super_c = None if super_unbounded else math.exp(lo)

    pure, p = False, None
    phi1 = float(phi.eval(1.0))
    if phi1 > 0:
        p_est = float(phi.deriv(1.0)) / phi1
        t = grid2d.points()
        with np.errstate(invalid="ignore", over="ignore"):
            dev = np.expm1(phi.log_eval(t) - math.log(phi1) - p_est * np.log(t))
        pure = bool(np.all(np.abs(dev) <= PURE_POWER_RTOL))
        p = p_est if pure else None
    return MultiplicativityReport(sub_c, super_c, pure, p)


def modular_norm_multiplicativity_check(phi, c, direction, witnesses, rtol=1e-6):
    """Check ``rho(f) <= c phi(||f||)`` (``sub``) or ``>=`` (``super``) per witness."""
    if direction not in ("sub", "super"):
        raise ParameterError("direction is 'sub' or 'super'")
    out = []
    for f in witnesses:
        res = luxemburg_norm(f, phi)
        if not math.isfinite(res.norm):
            out.append(Violation("divergent-witness", math.inf, f"{f.spec()} has infinite modular"))
            continue
        bound = c * float(phi.eval(res.norm))
        if direction == "sub" and res.modular > bound * (1 + rtol):
            out.append(Violation("sub", res.norm, f"{f.spec()}: rho={res.modular:.10g} > {bound:.10g}"))
        if direction == "super" and res.modular < bound * (1 - rtol):
            out.append(Violation("super", res.norm, f"{f.spec()}: rho={res.modular:.10g} < {bound:.10g}"))
    return out


# ---------------------------------------------------------------------------
# Inclusions
# ---------------------------------------------------------------------------


@dataclass
class InclusionReport:
    """Lebesgue sandwiches ``L^p cap L^q  subset  L^phi  subset  L^p + L^q``.

    ``baseline`` uses the exponents themselves.  ``class_range`` and
    ``r_range`` hold ``(q_sup, p_inf)``: every ``q`` in ``(1, q_sup)`` and
    every ``p`` in ``(p_inf, inf)`` give a valid sandwich.
    """

    spec: str
    baseline: tuple  # (q, p), closed
    class_range: Optional[tuple]  # from end limits of g, when they exist
    r_range: tuple  # from end limits of r; always available under Delta_2
    notes: list = field(default_factory=list)

    def lines(self):
        q, p = self.baseline
        out = [f"phi = {self.spec}", f"baseline: L^{p:.10g} cap L^{q:.10g} in L^phi in L^{p:.10g} + L^{q:.10g}"]
        if self.class_range is None:
            out.append("class exponents: absent (end limits of g not established)")
        else:
            qc, pc = self.class_range
            out.append(f"class exponents: any p > {pc:.10g}, any 1 < q < {qc:.10g}")
        qr, pr = self.r_range
        out.append(f"r limits: any p > {pr:.10g}, any 1 < q < {qr:.10g} (no g limits needed)")
        return out + list(self.notes)

    def csv_rows(self):
        rows = [("level", "q_bound", "q_kind", "p_bound", "p_kind")]
        q, p = self.baseline
        rows.append(("baseline", q, "q <= q_bound", p, "p >= p_bound"))
        if self.class_range is not None:
            rows.append(("class", self.class_range[0], "q < q_bound", self.class_range[1], "p > p_bound"))
        rows.append(("r_limits", self.r_range[0], "q < q_bound", self.r_range[1], "p > p_bound"))
        return rows


def inclusion_report(phi, grid=None):
    q, p = lebesgue_exponents(phi, grid)
    if math.isinf(p):
        raise Delta2Required(f"{phi.spec()} fails Delta_2; no Lebesgue sandwich from above")
    notes = []
    if not q > 1:
        notes.append("q <= 1: the lower sandwich exponent leaves the Banach range")
    try:
        p_class, q_class = class_exponents(phi)
        class_range = (q_class, p_class)
    except LimitsRequired:
        class_range = None
    rl = limit_exponents_r(phi, grid=grid)
    r_range = (min(rl.r0, rl.r_inf), max(rl.r0, rl.r_inf))
    return InclusionReport(phi.spec(), (q, p), class_range, r_range, notes)


def combine_equivalent(phi1, phi2, mode="sum", alpha=1.0, beta=1.0):
    """``alpha phi1 + beta phi2`` (``mode="sum"``) or ``max(phi1, phi2)``."""
    if mode == "sum":
        if not (alpha > 0 and beta > 0):
            raise ParameterError("weights must be positive")
        return Combination([phi1, phi2], "sum", [alpha, beta])
    if mode == "max":
        return Combination([phi1, phi2], "max")
    raise ParameterError(f"unknown mode {mode!r}")
