"""Modulars and Luxemburg norms of catalog integrands.

``modular(f, phi) = integral phi(|f|)`` and the Luxemburg norm is the
``lam`` solving ``modular(f / lam, phi) = 1`` (for Delta_2 functions the
infimum is attained with equality).  The root search bisects on a frozen
quadrature rule, then re-checks the answer with a fresh adaptive
integration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import Divergent, ParameterError, QuadratureFailure, ZeroFunction
from .exponents import lebesgue_exponents
from .quadrature import QuadResult, integrate_line, integrate_plane
from .young import Power, PowerSum, Scaled

__all__ = [
    "NormResult",
    "TrichotomyVerdict",
    "modular",
    "modular_quad",
    "luxemburg_norm",
    "power_sum_norm_closed_form",
    "trichotomy_check",
    "check_moments",
    "lp_norm",
]

MODULAR_RTOL = 1e-12
NORM_RTOL = 1e-10
MAX_BISECTIONS = 200
MAX_STAGES = 4
ERROR_CEILING = 1e-6
TINY_MODULAR = 1e-290


def _phi_of(phi, values, scale=1.0):
    return phi.eval(np.abs(values) / scale)


def modular_quad(f, phi, scale=1.0, rtol=MODULAR_RTOL):
    """Adaptive quadrature of ``phi(|f| / scale)``; the result keeps its rule."""
    if f.dim == 1:
        res = integrate_line(lambda x: _phi_of(phi, f(x), scale), f.support(), f.breakpoints(), rtol=rtol)
    else:
        res = integrate_plane(
            lambda x, y: _phi_of(phi, f(x, y), scale),
            f.slice_geometry,
            rtol=max(rtol, 1e-10),
            outer_support=f.y_support(),
            outer_breakpoints=f.y_breakpoints(),
        )
    if not res.divergent and res.error > ERROR_CEILING * max(1.0, abs(res.value)):
        raise QuadratureFailure(f"modular error estimate {res.error:.3g} above {ERROR_CEILING:g}")
    return res


def _moment_shortcut(f, phi, scale):
    """Closed-form modular for power and power-sum Young functions with known moments."""
    base, factor = phi, 1.0
    if isinstance(phi, Scaled):
        base, factor = phi.base, phi.factor
    if isinstance(base, Power):
        terms = [(1.0, base.p)]
    elif isinstance(base, PowerSum):
        terms = [(1.0, base.q), (1.0, base.p)]
    else:
        return None
    total = 0.0
    for w, r in terms:
        m = f.moment(r)
        if m is None:
            return None
        total += w * m / scale**r
    return total / factor


def modular(f, phi, use_moments=False, rtol=MODULAR_RTOL):
    """``integral phi(|f|)``; ``inf`` on a divergence verdict.

    With ``use_moments`` the closed-form moments of ``f`` are used when
    ``phi`` is a (normalized) power or power sum.
    """
    if f.is_zero:
        return 0.0
    if use_moments:
        val = _moment_shortcut(f, phi, 1.0)
        if val is not None:
            return val
    res = modular_quad(f, phi, rtol=rtol)
    return math.inf if res.divergent else res.value


def check_moments(f, rtol=1e-9):
    """Compare each known moment with quadrature; returns ``[(r, known, computed)]`` mismatches."""
    bad = []
    for r, known in f.known_moments:
        res = modular_quad(f, Power(r) if r >= 1 else _RootPower(r), rtol=MODULAR_RTOL)
        val = math.inf if res.divergent else res.value
        if not (abs(val - known) <= rtol * abs(known)):
            bad.append((r, known, val))
    return bad


class _RootPower(Power):
    """``t**r`` for ``0 < r < 1``: a moment helper, not a Young function."""

    def __init__(self, r):
        self.p = float(r)
        self.params = (self.p,)


@dataclass
class NormResult:
    modular: float
    norm: float
    bracket: tuple  # (lower, upper) from the modular power bounds
    quad_error: float = 0.0
    iterations: int = 0
    modular_at_norm: Optional[float] = None
    exponents: tuple = ()
    notes: list = field(default_factory=list)

    @property
    def finite(self):
        return math.isfinite(self.norm)


def _bracket(rho, q, p):
    if rho <= 1:
        return rho ** (1 / q), (rho ** (1 / p) if math.isfinite(p) else 1.0)
    return (rho ** (1 / p) if math.isfinite(p) else 1.0), rho ** (1 / q)


def luxemburg_norm(f, phi, use_moments=False, rtol=NORM_RTOL, exponents=None, raise_divergent=False,
                   quad_rtol=MODULAR_RTOL, check_known_moments=True):
    """Luxemburg norm of ``f``; ``norm = inf`` when the modular diverges.

    The starting bracket is ``[rho**(1/q), rho**(1/p)]`` for ``rho <= 1`` and
    ``[rho**(1/p), rho**(1/q)]`` for ``rho > 1``, with ``rho = modular(f)``.
    """
    if f.is_zero:
        raise ZeroFunction("the Luxemburg norm problem is degenerate for f = 0")
    q, p = exponents or lebesgue_exponents(phi)
    shortcut = use_moments and _moment_shortcut(f, phi, 1.0) is not None
    if check_known_moments and f.known_moments and not shortcut:
        bad = check_moments(f)
        if bad:
            raise QuadratureFailure(f"quadrature disagrees with known moments: {bad}")

    if shortcut:
        def rho_exact(lam):
            return _moment_shortcut(f, phi, lam)
        rho0, err = rho_exact(1.0), 0.0
    else:
        res0 = modular_quad(f, phi, rtol=quad_rtol)
        if res0.divergent:
            if raise_divergent:
                raise Divergent(f"modular of {f.spec()} under {phi.spec()} diverges")
            return NormResult(math.inf, math.inf, (math.inf, math.inf), math.inf, 0, None, (q, p), ["modular diverges"])
        rho0, err = res0.value, res0.error

    if rho0 < TINY_MODULAR:
        # includes modulars that underflow: the norm is zero to double precision
        raise ZeroFunction("f vanishes almost everywhere")
    lo, hi = _bracket(rho0, q, p)
    lo, hi = lo * (1 - 1e-9), hi * (1 + 1e-9)
    bracket = (lo, hi)

    notes = []
    its = 0
    if shortcut:
        lam, n = _bisect_decreasing(rho_exact, lo, hi, rtol)
        its += n
        check = rho_exact(lam)
    else:
        # each stage freezes an adaptive rule at the current estimate, bisects on
        # it, and the next stage's rule doubles as the check of that answer
        lam = math.sqrt(lo) * math.sqrt(hi)
        tol = max(rtol, 10 * quad_rtol)
        check = None
        for stage in range(MAX_STAGES):
            rule = modular_quad(f, phi, scale=lam, rtol=quad_rtol)
            if stage > 0 and abs(rule.value - 1) <= tol:
                check = rule.value
                break
            values = np.abs(f(*rule.nodes.T)) if f.dim == 2 else np.abs(f(rule.nodes))
            weights = rule.weights

            def rho(s, values=values, weights=weights):
                return float(np.dot(weights, phi.eval(values / s)))

            lam, n = _bisect_decreasing(rho, lo, hi, rtol)
            its += n
        if check is None:
            notes.append("polished with adaptive modular evaluations")
            lam = _secant_polish(lambda s: modular_quad(f, phi, scale=s, rtol=quad_rtol).value - 1, lam, rtol)
            check = modular_quad(f, phi, scale=lam, rtol=quad_rtol).value
    return NormResult(rho0, lam, bracket, err, its, check, (q, p), notes)


def _bisect_decreasing(rho, lo, hi, rtol):
    """Solve ``rho(lam) = 1`` for decreasing ``rho``; widens ``[lo, hi]`` if needed."""
    for _ in range(60):
        if rho(lo) >= 1:
            break
        lo /= 2
    for _ in range(60):
        if rho(hi) <= 1:
            break
        hi *= 2
    its = 0
    while its < MAX_BISECTIONS and hi - lo > 0.25 * rtol * hi:
        its += 1
        # geometric midpoints while the bracket spans many decades
        mid = math.sqrt(lo) * math.sqrt(hi) if hi > 4 * lo else 0.5 * (lo + hi)
        if rho(mid) > 1:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), its


def _secant_polish(F, x, rtol, steps=60):
    """Root of decreasing ``F`` near ``x``: grow a bracket, then Illinois regula falsi."""
    width = max(rtol, 1e-9)
    for _ in range(40):
        a, b = x * (1 - width), x * (1 + width)
        fa, fb = F(a), F(b)
        if fa >= 0 >= fb:
            break
        width = min(10 * width, 0.5)
    else:
        return x
    side = 0
    for _ in range(steps):
        if b - a <= 0.1 * rtol * b or fa == fb:
            break
        c = b - fb * (b - a) / (fb - fa)
        fc = F(c)
        if fc > 0:
            a, fa = c, fc
            if side == -1:
                fb *= 0.5
            side = -1
        elif fc < 0:
            b, fb = c, fc
            if side == 1:
                fa *= 0.5
            side = 1
        else:
            return c
    return 0.5 * (a + b)


def power_sum_norm_closed_form(a, b, q, p):
    """Root ``lam > 0`` of ``a / lam**q + b / lam**p = 1``.

    ``a`` and ``b`` are the moments ``integral |f|**q`` and ``integral |f|**p``,
    so the root is the norm of ``f`` under ``t**q + t**p``.

    Cardano's formula for ``(q, p) = (2, 3)``, where the equation is the
    depressed cubic ``lam**3 - a lam - b = 0``; Newton with a bisection
    safeguard otherwise.
    """
    a, b, q, p = map(float, (a, b, q, p))
    if not (1 <= q < p):
        raise ParameterError("need 1 <= q < p")
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise ParameterError("moments must be nonnegative and not both zero")
    if (q, p) == (2.0, 3.0):
        return _cardano(a, b)
    return _power_sum_root(a, b, q, p)


def _cardano(a, b):
    if b == 0:
        return math.sqrt(a)
    if a == 0:
        return b ** (1 / 3)
    disc = b * b / 4 - a**3 / 27
    if disc >= 0:
        s = math.sqrt(disc)
        return float(np.cbrt(b / 2 + s) + np.cbrt(b / 2 - s))
    # three real roots: the largest is the positive one
    rad = 2 * math.sqrt(a / 3)
    return rad * math.cos(math.acos(3 * b / (a * rad)) / 3)


def _power_sum_root(a, b, q, p):
    def F(lam):
        return a * lam**-q + b * lam**-p - 1

    def dF(lam):
        return -q * a * lam ** (-q - 1) - p * b * lam ** (-p - 1)

    lo = max(a ** (1 / q), b ** (1 / p))  # F(lo) >= 0
    hi = max((2 * a) ** (1 / q), (2 * b) ** (1 / p))  # F(hi) <= 0
    lam = 0.5 * (lo + hi)
    for _ in range(200):
        val = F(lam)
        if val == 0:
            return lam
        if val > 0:
            lo = lam
        else:
            hi = lam
        if hi - lo <= 4e-16 * hi:
            break
        step = lam - val / dF(lam)
        lam = step if lo < step < hi else 0.5 * (lo + hi)
    return lam


@dataclass
class TrichotomyVerdict:
    case: int  # 1: norm > 1, 2: norm < 1, 3: norm = modular = 1
    norm: float
    modular: float
    exponents: tuple
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def trichotomy_check(f, phi, tol=1e-9, use_moments=False, result=None):
    """Classify ``norm`` against 1 and verify the matching orderings.

    Case 1: ``1 < norm <= modular``; case 2: ``modular <= norm < 1``;
    case 3: ``norm = modular = 1``.  Also checks
    ``norm**p <= modular <= norm**q`` (norm < 1), reversed for norm > 1.
    """
    res = result or luxemburg_norm(f, phi, use_moments=use_moments)
    lam, rho = res.norm, res.modular
    q, p = res.exponents
    fails = []
    if abs(lam - 1) <= tol:
        case = 3
        if abs(rho - 1) > tol:
            fails.append(f"norm = 1 but modular = {rho!r}")
    elif lam > 1:
        case = 1
        if not lam <= rho * (1 + tol):
            fails.append(f"case 1 needs norm <= modular, got {lam!r} > {rho!r}")
    else:
        case = 2
        if not rho <= lam * (1 + tol):
            fails.append(f"case 2 needs modular <= norm, got {rho!r} > {lam!r}")
    if case != 3:
        lo_exp, hi_exp = (p, q) if lam < 1 else (q, p)
        lower = lam**lo_exp if math.isfinite(lo_exp) else 0.0
        upper = lam**hi_exp if math.isfinite(hi_exp) else math.inf
        if not (lower <= rho * (1 + tol) and rho <= upper * (1 + tol)):
            fails.append(f"power bounds {lower!r} <= {rho!r} <= {upper!r} fail")
    return TrichotomyVerdict(case, lam, rho, (q, p), fails)


def lp_norm(f, p, rtol=MODULAR_RTOL):
    """``(integral |f|**p)**(1/p)`` by quadrature."""
    res = modular_quad(f, Power(p) if p >= 1 else _RootPower(p), rtol=rtol)
    return math.inf if res.divergent else res.value ** (1 / p)
