"""Spliced Young functions with prescribed exponents.

Every construction glues power segments ``c t**r / r + d`` (and rescaled
copies of a base function) so that values and first derivatives match at
the knots.  Coefficients are stored explicitly in the returned splice, so
:func:`orlicz.young.validate` can confirm the matching independently.

A power segment ``c t**r / r + d`` is stored as ``power(c/r, r, d)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Optional

from .errors import Infeasible, LimitsRequired, NonConvergence, ParameterError
from .exponents import lebesgue_exponents, limit_exponents_g
from .young import GridSpec, Segment, Splice

__all__ = [
    "ConstructorParams",
    "item3_splice",
    "item4_splice",
    "make_example_splices",
    "make_equivalent_power_family",
    "target_splice",
    "construct_target_exponents",
    "widened_splice",
    "construct_widened",
    "epsilon_tight_splice",
    "construct_epsilon_tight",
    "exponent_gap",
]

INF = math.inf
MAX_DOUBLINGS = 60


@dataclass
class ConstructorParams:
    """Knots, coefficients and derived ratios of one construction.

    Unused fields stay ``None``.  ``alpha``/``beta`` are the knots of the
    general two-knot splice; ``gamma``/``delta`` are the solved knots when a
    construction searches for them (then ``alpha == gamma``, ``beta == delta``).
    """

    construction: str
    base: Optional[str] = None
    p: Optional[float] = None
    r: Optional[float] = None
    r1: Optional[float] = None
    r2: Optional[float] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None
    gamma: Optional[float] = None
    delta: Optional[float] = None
    n: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None
    d: Optional[float] = None
    c1: Optional[float] = None
    c2: Optional[float] = None
    c3: Optional[float] = None
    d1: Optional[float] = None
    d2: Optional[float] = None
    d3: Optional[float] = None
    k: Optional[float] = None
    l_alpha: Optional[float] = None
    m_alpha_beta: Optional[float] = None
    k_n: Optional[float] = None
    l_n: Optional[float] = None
    search_steps: int = 0

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self) if getattr(self, f.name) is not None]

    def render(self):
        """Comment lines for a spec file, ``# key = value``."""
        out = []
        for key, val in self.items():
            out.append(f"# {key} = {val!r}" if not isinstance(val, str) else f"# {key} = {val}")
        return "\n".join(out)

    def as_dict(self):
        return {k: v for k, v in asdict(self).items() if v is not None}


def _power(lo, hi, c, r, d):
    """Segment ``c t**r / r + d`` on ``(lo, hi]``."""
    return Segment(lo, hi, "power", (c / r, r, d))


# ---------------------------------------------------------------------------
# Fixed examples
# ---------------------------------------------------------------------------


def item3_splice():
    """``t**2/2`` up to 1, ``t - 1/2`` up to 2, ``t**2/4 + 1/2`` beyond; exponents (4/3, 2)."""
    return Splice([
        Segment(0.0, 1.0, "power", (0.5, 2.0, 0.0)),
        Segment(1.0, 2.0, "power", (1.0, 1.0, -0.5)),
        Segment(2.0, INF, "power", (0.25, 2.0, 0.5)),
    ])


def item4_splice():
    """``3t**2/2`` up to 1, ``t**3 + 1/2`` up to 2, ``3t**2 - 7/2`` beyond; exponents (2, 48/17)."""
    return Splice([
        Segment(0.0, 1.0, "power", (1.5, 2.0, 0.0)),
        Segment(1.0, 2.0, "power", (1.0, 3.0, 0.5)),
        Segment(2.0, INF, "power", (3.0, 2.0, -3.5)),
    ])


def make_example_splices():
    return [item3_splice(), item4_splice()]


def make_equivalent_power_family(r1, r2, a, b):
    """Three-piece splice equivalent to ``t**r1`` with a ``t**r2`` stretch on ``(a, b]``.

    Returns the splice; its exponents approach ``r2`` at one end as ``b``
    grows while the function stays equivalent to ``t**r1``.
    """
    r1, r2, a, b = map(float, (r1, r2, a, b))
    if not (r1 >= 1 and r2 >= 1 and r1 != r2):
        raise ParameterError("need r1, r2 >= 1 and r1 != r2")
    if not (1 < a < b):
        raise ParameterError("need 1 < a < b")
    c1 = a ** (r2 - r1)
    d1 = (1 / r1 - 1 / r2) * a**r2
    c2 = b ** (r2 - r1)
    d2 = (1 / r1 - 1 / r2) * (a**r2 - b**r2)
    return Splice([_power(0.0, a, c1, r1, 0.0), _power(a, b, 1.0, r2, d1), _power(b, INF, c2, r1, d2)])


# ---------------------------------------------------------------------------
# Prescribed exponents around t**p
# ---------------------------------------------------------------------------


def target_splice(p, r1, r2, alpha, beta):
    """The four-piece splice around ``t**p / p`` with knots ``1 < alpha < beta``."""
    if not (1 < alpha < beta):
        raise ParameterError("need 1 < alpha < beta")
    c1 = 1.0
    c2 = alpha ** (r1 - r2)
    c3 = alpha ** (r1 - r2) * beta ** (r2 - p)
    d1 = 1 / p - 1 / r1
    d2 = alpha**r1 * (1 / r1 - 1 / r2) + d1
    d3 = alpha ** (r1 - r2) * beta**r2 * (1 / r2 - 1 / p) + d2
    k = r1 * d1
    c_alpha = (1 / r1 - 1 / r2) + alpha ** (-r1) * d1
    l_alpha = r2 * alpha**r2 * c_alpha
    m = p * d3 / c3
    phi = Splice([
        _power(0.0, 1.0, 1.0, p, 0.0),
        _power(1.0, alpha, c1, r1, d1),
        _power(alpha, beta, c2, r2, d2),
        _power(beta, INF, c3, p, d3),
    ])
    params = ConstructorParams(
        "target", p=p, r1=r1, r2=r2, alpha=alpha, beta=beta,
        c1=c1, c2=c2, c3=c3, d1=d1, d2=d2, d3=d3, k=k, l_alpha=l_alpha, m_alpha_beta=m,
    )
    return phi, params


def _bisect(f, lo, hi, iters=200):
    """Root of increasing-or-decreasing ``f`` on ``[lo, hi]`` (sign change required)."""
    flo = f(lo)
    if flo * f(hi) > 0:
        return None
    for _ in range(iters):
        mid = math.sqrt(lo * hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi / lo - 1 < 1e-15:
            break
    return math.sqrt(lo * hi)


def construct_target_exponents(p1, p, p2, r1, r2):
    """Splice equivalent to ``t**p`` with exponents exactly ``(p1, p2)``.

    The knot ``gamma`` solves ``r1 / (1 + k gamma**-r1) = p1`` and ``delta``
    solves ``r2 / (1 + l_gamma delta**-r2) = p2``; both have closed forms,
    with a bisection fallback on ``[1 + 1e-6, 1e8]``.
    """
    p1, p, p2, r1, r2 = map(float, (p1, p, p2, r1, r2))
    if not (1 < p1 < p < p2 < INF):
        raise ParameterError("need 1 < p1 < p < p2 < inf")
    if not (1 < r1 < p1):
        raise ParameterError("need 1 < r1 < p1")
    if not (r2 > p2):
        raise ParameterError("need r2 > p2")
    k = r1 * (1 / p - 1 / r1)

    def h(alpha):
        return r1 / (1 + k * alpha ** (-r1))

    ratio = (r1 / p1 - 1) / k
    gamma = ratio ** (-1 / r1) if ratio > 0 else math.nan
    if not (math.isfinite(gamma) and abs(h(gamma) - p1) <= 1e-12 * p1):
        gamma = _bisect(lambda a: h(a) - p1, 1 + 1e-6, 1e8)
        if gamma is None:
            raise Infeasible(f"no knot gamma > 1 gives q = {p1}")
    if not gamma > 1:
        raise Infeasible(f"solved gamma = {gamma} is not > 1")

    d1 = 1 / p - 1 / r1
    l_gamma = r2 * gamma**r2 * ((1 / r1 - 1 / r2) + gamma ** (-r1) * d1)
    ratio = (r2 / p2 - 1) / l_gamma
    delta = ratio ** (-1 / r2) if ratio > 0 else math.nan
    if not math.isfinite(delta):
        delta = _bisect(lambda b: r2 / (1 + l_gamma * b ** (-r2)) - p2, gamma * (1 + 1e-9), 1e8)
        if delta is None:
            raise Infeasible(f"no knot delta gives p = {p2}")
    if not delta > gamma:
        raise Infeasible(f"solved delta = {delta} does not exceed gamma = {gamma}")
    phi, params = target_splice(p, r1, r2, gamma, delta)
    params.gamma, params.delta = gamma, delta
    return phi, params


# ---------------------------------------------------------------------------
# Widening around a general base
# ---------------------------------------------------------------------------


def widened_splice(base, r1, r2, alpha, beta):
    """Four-piece splice: rescaled base up to 1, powers ``r1``, ``r2``, rescaled base beyond ``beta``."""
    if not (1 < alpha < beta):
        raise ParameterError("need 1 < alpha < beta")
    g1 = float(base.g(1.0))
    gb = float(base.g(beta))
    dphi1 = float(base.deriv(1.0))
    dphib = float(base.deriv(beta))
    c1 = 1.0
    c2 = alpha ** (r1 - r2)
    c3 = alpha ** (r1 - r2) * beta ** (r2 - 1)
    d1 = 1 / g1 - 1 / r1
    d2 = alpha**r1 * (1 / r1 - 1 / r2) + d1
    d3 = alpha ** (r1 - r2) * beta**r2 * (1 / r2 - 1 / gb) + d2
    k = r1 * d1
    c_alpha = (1 / r1 - 1 / r2) + alpha ** (-r1) * d1
    l_alpha = r2 * alpha**r2 * c_alpha
    m = dphib * d3 / c3
    psi = Splice([
        Segment(0.0, 1.0, "scaled", (1.0, dphi1, 0.0)),
        _power(1.0, alpha, c1, r1, d1),
        _power(alpha, beta, c2, r2, d2),
        Segment(beta, INF, "scaled", (c3, dphib, d3)),
    ], base=base)
    params = ConstructorParams(
        "widened", base=base.spec(), r1=r1, r2=r2, alpha=alpha, beta=beta,
        c1=c1, c2=c2, c3=c3, d1=d1, d2=d2, d3=d3, k=k, l_alpha=l_alpha, m_alpha_beta=m,
    )
    return psi, params


def construct_widened(base, p1, p2, r1, r2, grid=None):
    """Splice equivalent to ``base`` with ``q < p1`` and ``p > p2``.

    The knot ``alpha`` doubles from 2 until the measured lower exponent
    drops below ``p1`` (with ``beta = 2 alpha`` while searching); ``beta``
    then doubles until the measured upper exponent exceeds ``p2``.
    """
    p1, p2, r1, r2 = map(float, (p1, p2, r1, r2))
    q_base, p_base = lebesgue_exponents(base, grid)
    if not (1 < p1 < q_base <= p_base < p2 < INF):
        raise Infeasible(f"need 1 < p1 < q_base = {q_base:g} <= p_base = {p_base:g} < p2")
    if not (1 < r1 < p1 and r2 > p2):
        raise Infeasible("need 1 < r1 < p1 and r2 > p2")
    steps = 0
    alpha = 2.0
    for _ in range(MAX_DOUBLINGS):
        steps += 1
        psi, _ = widened_splice(base, r1, r2, alpha, 2 * alpha)
        if lebesgue_exponents(psi, grid).q < p1:
            break
        alpha *= 2
    else:
        raise NonConvergence(f"q stayed >= {p1} after {MAX_DOUBLINGS} doublings of alpha")
    beta = 2 * alpha
    for _ in range(MAX_DOUBLINGS):
        steps += 1
        psi, params = widened_splice(base, r1, r2, alpha, beta)
        q, p = lebesgue_exponents(psi, grid)
        if p > p2 and q < p1:
            params.gamma, params.delta, params.search_steps = alpha, beta, steps
            return psi, params
        beta *= 2
    raise NonConvergence(f"p stayed <= {p2} after {MAX_DOUBLINGS} doublings of beta")


# ---------------------------------------------------------------------------
# Tightening to the limit exponents
# ---------------------------------------------------------------------------


def epsilon_tight_splice(base, r, n):
    """Rescaled base up to ``1/n``, power ``r`` on ``(1/n, n]``, rescaled base beyond."""
    r, n = float(r), float(n)
    if not n > 1:
        raise ParameterError("need n > 1")
    g_lo = float(base.g(1 / n))
    g_hi = float(base.g(n))
    a = n ** (r - 1)
    b = (1 / n) * (1 / g_lo - 1 / r)
    c = n ** (2 * r - 2)
    d = n ** (2 * r - 1) * (1 / r - 1 / g_hi) + b
    k_n = n ** (-r) * (r / g_lo - 1)
    l_n = float(base.deriv(n)) * d / c
    psi = Splice([
        Segment(0.0, 1 / n, "scaled", (1.0, float(base.deriv(1 / n)), 0.0)),
        Segment(1 / n, n, "power", (a / r, r, b)),
        Segment(n, INF, "scaled", (c, float(base.deriv(n)), d)),
    ], base=base)
    params = ConstructorParams("epsilon_tight", base=base.spec(), r=r, n=n, a=a, b=b, c=c, d=d, k_n=k_n, l_n=l_n)
    return psi, params


def construct_epsilon_tight(base, r=None, n=1e3):
    """Splice equivalent to ``base`` whose exponents hug ``min/max`` of the g-limits.

    ``r`` defaults to the midpoint of the two limits.
    """
    p0, pinf = limit_exponents_g(base)
    if p0 is None or pinf is None or math.isinf(p0) or math.isinf(pinf):
        raise LimitsRequired(f"{base.spec()} lacks finite limits of t phi'(t)/phi(t)")
    lo, hi = min(p0, pinf), max(p0, pinf)
    r = 0.5 * (lo + hi) if r is None else float(r)
    if not (lo - 1e-9 <= r <= hi + 1e-9):
        raise ParameterError(f"r = {r} must lie between the limits {lo:g} and {hi:g}")
    return epsilon_tight_splice(base, r, n)


def exponent_gap(psi, q, p, grid=None):
    """``max(p_psi - p, q - q_psi)``: how far the exponents of ``psi`` overshoot ``[q, p]``."""
    q_psi, p_psi = lebesgue_exponents(psi, grid or GridSpec())
    return max(p_psi - p, q - q_psi, 0.0)
