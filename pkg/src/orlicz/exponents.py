"""Lebesgue exponents, limit exponents and the Delta_2 condition.

``q`` and ``p`` are the infimum and supremum of ``g(t) = t phi'(t) / phi(t)``
over ``t > 0``.  They are measured on a log grid, refined by golden-section
search around the extremal grid points, and completed with extrapolated
limits of ``g`` at both ends (the extrema of a monotone ``g`` sit at the
ends of the half-line, outside any finite window).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import Delta2Required, DomainError, NonStrict
from .young import GridSpec, Scaled, Violation, eval_inverse

__all__ = [
    "Exponents",
    "LimitEstimate",
    "RLimits",
    "Delta2Verdict",
    "ExponentReport",
    "lebesgue_exponents",
    "limit_exponents_g",
    "limit_exponents_r",
    "delta2_check",
    "scaling_inequality_check",
    "normalized_bounds_check",
    "exponent_report",
    "extrapolate_limit",
]

CEILING = 1e6
CAUCHY_RTOL = 1e-4
BOUND_RTOL = 1e-9
LIMIT_DECADES = 12
_GOLDEN = (math.sqrt(5) - 1) / 2


class Exponents(NamedTuple):
    q: float
    p: float  # math.inf when the Delta_2 condition fails


def _require_strict(phi):
    if not phi.strict:
        raise NonStrict(f"{phi.spec()} is not a strict Young function")


# ---------------------------------------------------------------------------
# Limits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LimitEstimate:
    value: Optional[float]
    order: int = 0
    spread: float = math.nan  # disagreement between shifted windows


def _neville_at_zero(h, v):
    """Value at ``h = 0`` of the interpolating polynomial through ``(h, v)``."""
    p = list(v)
    n = len(h)
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i])
    return p[0]


def extrapolate_limit(h, v, max_order=5, rtol=CAUCHY_RTOL, ceiling=CEILING):
    """Richardson-style limit of ``v`` as ``h -> 0``.

    For each polynomial order the extrapolant is computed on the last
    ``order + 1`` samples and on the window shifted one sample back; the
    order whose two estimates agree best wins.  The estimate is rejected
    (``value=None``) unless that agreement passes ``rtol``.  Samples growing
    past ``ceiling`` give ``value=inf``.
    """
    h = np.asarray(h, dtype=float)
    v = np.asarray(v, dtype=float)
    if len(v) >= 3 and v[-1] > ceiling and v[-1] > v[-2] > v[-3]:
        return LimitEstimate(math.inf, 0, 0.0)
    if not np.all(np.isfinite(v)):
        return LimitEstimate(None)
    best = None
    for order in range(0, max_order + 1):
        if order + 2 > len(v):
            break
        now = _neville_at_zero(h[-order - 1:], v[-order - 1:])
        before = _neville_at_zero(h[-order - 2:-1], v[-order - 2:-1])
        spread = abs(now - before)
        if best is None or spread < best.spread:
            best = LimitEstimate(now, order, spread)
    if best is not None:
        best = LimitEstimate(float(best.value), best.order, float(best.spread))
    if best is None or best.spread > rtol * max(abs(best.value), 1e-300):
        return LimitEstimate(None, best.order if best else 0, best.spread if best else math.inf)
    return best


def _g_samples(phi, side):
    k = np.arange(1, LIMIT_DECADES + 1, dtype=float)
    t = 10.0 ** (-k if side == 0 else k)
    return k, phi.g(t)


def limit_exponents_g(phi):
    """Limits ``(p0, p_inf)`` of ``g`` at ``0+`` and at infinity.

    Each entry is ``None`` when the samples along ``t = 10**(-+k)`` do not
    settle (oscillation), and ``inf`` when ``g`` grows without bound.
    """
    out = []
    for side in (0, 1):
        try:
            k, v = _g_samples(phi, side)
        except DomainError:
            out.append(None)
            continue
        val = extrapolate_limit(1.0 / k, v).value
        out.append(None if val is None else float(val))
    return tuple(out)


@dataclass(frozen=True)
class RLimits:
    """Limits of ``r(t) = ln(phi(t)/phi(1)) / ln t`` and the sandwich scan.

    ``k_eps`` is the smallest sampled ``K`` such that
    ``t**(r0+eps) < phi(t) < t**(r0-eps)`` for sampled ``t < 1/K`` and
    ``t**(r_inf-eps) < phi(t) < t**(r_inf+eps)`` for sampled ``t > K``;
    ``None`` when the scan window ends before the bounds settle.
    """

    r0: float
    r_inf: float
    method0: str
    method_inf: str
    eps: float = 0.1
    k_eps: Optional[float] = None
    scan_decades: float = 60.0

    def __iter__(self):
        return iter((self.r0, self.r_inf))


def _r_limit(phi, side):
    """Limit of ``r`` via the Stolz-Cesaro secants of ``ln phi`` against ``ln t``.

    ``r`` itself converges like ``1/ln t``; the decade secants
    ``(ln phi(10**(k+1)) - ln phi(10**k)) / ln 10`` share its limit and
    extrapolate cleanly in ``1/(k + 1/2)``.
    """
    k = np.arange(0, LIMIT_DECADES + 1, dtype=float)
    sign = 1.0 if side == 1 else -1.0
    logs = phi.log_eval(10.0 ** (sign * k))
    secants = sign * np.diff(logs) / math.log(10.0)
    est = extrapolate_limit(1.0 / (k[:-1] + 0.5), secants)
    if est.value is not None and math.isfinite(est.value):
        return est.value, "secant"
    # slow or oscillating secants: r itself still converges, read it far out
    for kk in (300, 200, 100, 60, 30, LIMIT_DECADES):
        t = 10.0 ** (sign * kk)
        try:
            val = float(phi.r(t))
        except (DomainError, OverflowError):
            continue
        if math.isfinite(val):
            return val, f"direct(t=1e{int(sign * kk)})"
    return float(phi.r(10.0 ** (sign * LIMIT_DECADES))), "direct"


def _sandwich(phi, r0, r_inf, eps, decades, per_decade=8):
    j = np.arange(1, int(decades * per_decade) + 1)
    u = j / per_decade * math.log(10.0)  # ln t for t > 1
    ok = np.ones(len(u), dtype=bool)
    for sign, r in ((1.0, r_inf), (-1.0, r0)):
        lt = sign * u
        lv = phi.log_eval(np.exp(lt))
        a, b = (r - eps) * lt, (r + eps) * lt
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        finite = np.isfinite(lv)
        ok &= finite & (lo < lv) & (lv < hi)
    bad = np.nonzero(~ok)[0]
    if len(bad) == 0:
        return 1.0
    last = bad[-1]
    if last >= len(u) - per_decade:
        return None
    return float(math.exp(u[last]))


def limit_exponents_r(phi, eps=0.1, scan_decades=60.0, grid=None):
    """Limits ``(r0, r_inf)`` of ``r`` plus the ``eps`` sandwich threshold."""
    _require_strict(phi)
    if math.isinf(lebesgue_exponents(phi, grid).p):
        raise Delta2Required(f"{phi.spec()} has p = inf; r-limits need Delta_2")
    r0, m0 = _r_limit(phi, 0)
    rinf, minf = _r_limit(phi, 1)
    k_eps = _sandwich(phi, r0, rinf, eps, scan_decades)
    return RLimits(r0, rinf, m0, minf, eps, k_eps, scan_decades)


# ---------------------------------------------------------------------------
# Lebesgue exponents
# ---------------------------------------------------------------------------


def _golden(f, a, b, maximize, tol=1e-11):
    sgn = -1.0 if maximize else 1.0
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = sgn * f(c), sgn * f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = sgn * f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = sgn * f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _knot_g_values(phi):
    """g from both one-sided derivatives at every knot (knots may sit outside the grid)."""
    vals = []
    for k in phi.knot_report():
        if k.value_left > 0:
            vals.append(k.knot * k.deriv_left / k.value_left)
            vals.append(k.knot * k.deriv_right / k.value_right)
    return vals


def lebesgue_exponents(phi, grid=None, ceiling=CEILING, use_limits=True):
    """Exponents ``(q, p)``: infimum and supremum of ``g``.

    ``p`` is ``inf`` when ``g`` passes ``ceiling`` at a grid end while still
    rising over the last decade, or when the extrapolated limit there is
    infinite.
    """
    _require_strict(phi)
    grid = grid or GridSpec()
    t = grid.points()
    g = phi.g(t)
    u = np.log(t)
    per_decade = max(2, int(round((len(t) - 1) / math.log10(grid.hi / grid.lo))))

    lo = _refined_min(phi, u, g)
    limits = limit_exponents_g(phi) if use_limits else (None, None)
    for lim in limits:
        if lim is not None and math.isfinite(lim):
            lo = min(lo, lim)

    for end in (-1, 0):
        tail = g[-per_decade:] if end == -1 else g[:per_decade][::-1]
        if tail[-1] > ceiling and tail[-1] > tail[0]:
            return Exponents(float(lo), math.inf)
    if any(lim is not None and math.isinf(lim) for lim in limits):
        return Exponents(float(lo), math.inf)

    hi = float(g.max())
    i = int(g.argmax())
    if 0 < i < len(u) - 1:
        hi = max(hi, _golden(lambda x: float(phi.g(math.exp(x))), u[i - 1], u[i + 1], True)[1])
    knot_vals = _knot_g_values(phi)
    if knot_vals:
        hi = max(hi, max(knot_vals))
        lo = min(lo, min(knot_vals))
    for lim in limits:
        if lim is not None:
            hi = max(hi, lim)
    return Exponents(float(lo), float(hi))


def _refined_min(phi, u, g):
    lo = float(g.min())
    i = int(g.argmin())
    if 0 < i < len(u) - 1:
        lo = min(lo, _golden(lambda x: float(phi.g(math.exp(x))), u[i - 1], u[i + 1], False)[1])
    return lo


# ---------------------------------------------------------------------------
# Delta_2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Delta2Verdict:
    holds: bool
    constant: Optional[float]  # sup of phi(2t)/phi(t) when the condition holds
    counterexample: Optional[float] = None  # t with phi(2t)/phi(t) > ceiling

    def __iter__(self):
        return iter((self.holds, self.constant if self.holds else self.counterexample))


def delta2_check(phi, grid=None, ceiling=CEILING):
    """Scan ``phi(2t)/phi(t)`` on the grid (in logs, so nothing overflows)."""
    grid = grid or GridSpec()
    t = grid.points()
    log_ratio = phi.log_eval(2 * t) - phi.log_eval(t)
    bad = ~(log_ratio <= math.log(ceiling))
    if np.any(bad):
        idx = np.nonzero(bad)[0]
        # report the violation closest to the well-behaved middle of the grid
        j = idx[0] if idx[0] > len(t) // 2 else idx[-1]
        return Delta2Verdict(False, None, float(t[j]))
    return Delta2Verdict(True, float(np.exp(log_ratio.max())))


# ---------------------------------------------------------------------------
# Inequality checks
# ---------------------------------------------------------------------------


def scaling_inequality_check(phi, samples, exponents=None, rtol=BOUND_RTOL):
    """Check the two-sided scaling bounds for each ``(scale, t)`` sample.

    For ``c <= 1``: ``c**p phi(t) <= phi(c t) <= c**q phi(t)``.
    For ``C >= 1``: ``C**q phi(t) <= phi(C t) <= C**p phi(t)``.
    Comparisons run on logarithms, where a relative tolerance is additive.
    """
    q, p = exponents or lebesgue_exponents(phi)
    out = []
    tol = math.log1p(rtol)
    for c, t in samples:
        c, t = float(c), float(t)
        if c < 0 or t <= 0:
            raise DomainError("scales must be >= 0 and points > 0")
        if c == 0:
            continue
        lc = math.log(c)
        base = float(phi.log_eval(t))
        mid = float(phi.log_eval(c * t))
        lo_exp, hi_exp = (p, q) if c <= 1 else (q, p)
        if lo_exp * lc + base > mid + tol:
            out.append(Violation("scaling-lower", t, f"c={c!r}: c^{lo_exp:g} phi(t) > phi(ct)"))
        if mid > hi_exp * lc + base + tol:
            out.append(Violation("scaling-upper", t, f"c={c!r}: phi(ct) > c^{hi_exp:g} phi(t)"))
    return out


def normalized_bounds_check(phi, grid=None, exponents=None, rtol=BOUND_RTOL):
    """Power bounds on ``psi = phi/phi(1)``, its right derivative and its inverse.

    With ``(q, p)`` the exponents of ``phi`` (shared by ``psi``):

    * ``t**p <= psi(t) <= t**q`` for ``t <= 1``, reversed for ``t > 1``;
    * ``q t**(p-1) <= psi'(t) <= p t**(q-1)`` for ``t <= 1`` and
      ``q t**(q-1) <= psi'(t) <= p t**(p-1)`` for ``t > 1``;
    * ``t**(1/q) <= psi^-1(t) <= t**(1/p)`` for ``t <= 1``, reversed for ``t > 1``.
    """
    grid = grid or GridSpec()
    q, p = exponents or lebesgue_exponents(phi, grid)
    if math.isinf(p):
        raise Delta2Required("normalized bounds need a finite upper exponent")
    psi = Scaled(phi)
    t = grid.points()
    lt = np.log(t)
    small = t <= 1
    tol = math.log1p(rtol)
    out = []

    def check(kind, lower, value, upper):
        for m in np.nonzero((lower > value + tol) | (value > upper + tol))[0]:
            out.append(Violation(kind, float(t[m]), f"{lower[m]:.17g} <= {value[m]:.17g} <= {upper[m]:.17g} fails (logs)"))

    lv = psi.log_eval(t)
    check("value", np.where(small, p * lt, q * lt), lv, np.where(small, q * lt, p * lt))

    ld = np.log(psi.deriv(t))
    check(
        "derivative",
        np.where(small, math.log(q) + (p - 1) * lt, math.log(q) + (q - 1) * lt),
        ld,
        np.where(small, math.log(p) + (q - 1) * lt, math.log(p) + (p - 1) * lt),
    )

    li = np.log(eval_inverse(psi, t))
    check("inverse", np.where(small, lt / q, lt / p), li, np.where(small, lt / p, lt / q))
    return out


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


@dataclass
class ExponentReport:
    q_phi: float
    p_phi: float
    p0: Optional[float]
    p_inf: Optional[float]
    r0: Optional[float]
    r_inf: Optional[float]
    delta2: bool
    delta2_constant: Optional[float]
    delta2_counterexample: Optional[float]
    grid: GridSpec
    refinement: str = "golden-section around grid extrema, plus extrapolated end limits"
    notes: list = field(default_factory=list)

    def lines(self):
        def show(x):
            if x is None:
                return "absent"
            return "inf" if math.isinf(x) else f"{x:.10g}"

        rows = [
            ("q", show(self.q_phi)),
            ("p", show(self.p_phi)),
            ("p0 (lim g, t->0)", show(self.p0)),
            ("p_inf (lim g, t->inf)", show(self.p_inf)),
            ("r0 (lim r, t->0)", show(self.r0)),
            ("r_inf (lim r, t->inf)", show(self.r_inf)),
            ("delta2", "holds" if self.delta2 else "fails"),
        ]
        if self.delta2:
            rows.append(("delta2 constant", show(self.delta2_constant)))
        else:
            rows.append(("delta2 counterexample t", show(self.delta2_counterexample)))
        rows.append(("grid", f"{self.grid.lo:g}:{self.grid.hi:g}:{self.grid.n}"))
        return [f"{k} = {v}" for k, v in rows] + list(self.notes)


def exponent_report(phi, grid=None):
    grid = grid or GridSpec()
    q, p = lebesgue_exponents(phi, grid)
    p0, pinf = limit_exponents_g(phi)
    d2 = delta2_check(phi, grid)
    notes = []
    r0 = rinf = None
    if math.isfinite(p):
        rl = limit_exponents_r(phi, grid=grid)
        r0, rinf = rl.r0, rl.r_inf
        if rl.k_eps is not None:
            notes.append(f"sandwich eps={rl.eps:g} holds beyond K = {rl.k_eps:.6g}")
    if d2.holds != math.isfinite(p):
        notes.append("warning: delta2 scan and p disagree on this grid")
    return ExponentReport(q, p, p0, pinf, r0, rinf, d2.holds, d2.constant, d2.counterexample, grid, notes=notes)
