"""Young functions: representation, evaluation and axiom checks.

A Young function is a convex, non-decreasing map on ``[0, inf)`` with
value 0 at the origin.  Three representations are supported:

* closed forms from a fixed catalog (:func:`catalog`),
* piecewise splices of power segments and rescaled copies of a base
  function (:class:`Splice`),
* derived functions: the normalization ``phi / phi(1)`` (:class:`Scaled`) and
  weighted sums or pointwise maxima (:class:`Combination`).

All functions accept scalars or numpy arrays and return the same shape.
Derivatives are right derivatives throughout.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NonInvertible, ParameterError

__all__ = [
    "GridSpec",
    "YoungFunction",
    "Catalog",
    "Power",
    "PowerSum",
    "PowerLog",
    "PowerExp",
    "PowerLogShift",
    "ExpMinusOne",
    "FlatOrigin",
    "Dual23",
    "Segment",
    "Splice",
    "Scaled",
    "Combination",
    "KnotReport",
    "ValidationReport",
    "catalog",
    "evaluate",
    "eval_deriv",
    "eval_inverse",
    "g_ratio",
    "r_exponent",
    "validate",
    "CATALOG_NAMES",
]

KNOT_RTOL = 1e-9


def _default_density():
    raw = os.environ.get("ORLICZ_GRID_DENSITY")
    if raw is None:
        return 512
    n = int(raw)
    if n < 2:
        raise ParameterError("ORLICZ_GRID_DENSITY must be at least 2")
    return n


@dataclass(frozen=True)
class GridSpec:
    """Log-spaced evaluation grid on ``[lo, hi]`` with ``n`` points."""

    lo: float = 1e-8
    hi: float = 1e8
    n: int = field(default_factory=_default_density)

    def __post_init__(self):
        if not (0 < self.lo < self.hi) or self.n < 2:
            raise ParameterError(f"invalid grid {self.lo}:{self.hi}:{self.n}")

    def points(self):
        return np.geomspace(self.lo, self.hi, self.n)

    def refined(self, factor):
        return GridSpec(self.lo, self.hi, (self.n - 1) * factor + 1)


def _as_array(t):
    arr = np.asarray(t, dtype=float)
    return arr, arr.ndim == 0


def _out(res, shape, scalar):
    res = np.broadcast_to(np.asarray(res, dtype=float), shape) if np.ndim(res) == 0 else np.asarray(res).reshape(shape)
    return float(res) if scalar else res


class YoungFunction:
    """Base class.  Subclasses implement ``_value`` and ``_deriv`` on arrays.

    ``_log_value`` and ``_g`` may be overridden where a closed form avoids
    overflow or cancellation.
    """

    strict = True
    knots: tuple = ()

    def __call__(self, t):
        return self.eval(t)

    # -- public evaluation -------------------------------------------------

    def eval(self, t):
        arr, scalar = _as_array(t)
        # min() is NaN-propagating, so one comparison also rejects NaN
        if arr.size and not arr.min() >= 0:
            raise DomainError("Young functions are evaluated at t >= 0")
        with np.errstate(over="ignore", under="ignore"):
            return _out(self._value(np.atleast_1d(arr)), arr.shape, scalar)

    def deriv(self, t):
        arr, scalar = _as_array(t)
        if np.any(arr <= 0) or np.any(np.isnan(arr)):
            raise DomainError("derivative needs t > 0")
        with np.errstate(over="ignore", under="ignore"):
            return _out(self._deriv(np.atleast_1d(arr)), arr.shape, scalar)

    def log_eval(self, t):
        arr, scalar = _as_array(t)
        if np.any(arr <= 0) or np.any(np.isnan(arr)):
            raise DomainError("log evaluation needs t > 0")
        with np.errstate(over="ignore", under="ignore", divide="ignore"):
            return _out(self._log_value(np.atleast_1d(arr)), arr.shape, scalar)

    def g(self, t):
        """``t * phi'(t) / phi(t)``."""
        arr, scalar = _as_array(t)
        if np.any(arr <= 0) or np.any(np.isnan(arr)):
            raise DomainError("g needs t > 0")
        with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
            out = self._g(np.atleast_1d(arr))
        if np.any(~np.isfinite(out)):
            raise DomainError("g undefined where phi(t) = 0")
        return _out(out, arr.shape, scalar)

    def r(self, t):
        """Logarithmic exponent ``ln(phi(t)/phi(1)) / ln t``."""
        arr, scalar = _as_array(t)
        if np.any(arr <= 0):
            raise DomainError("r needs t > 0")
        if np.any(arr == 1.0):
            raise DomainError("r is undefined at t = 1")
        with np.errstate(over="ignore", under="ignore", divide="ignore"):
            a1 = np.atleast_1d(arr)
            lv = self._log_value(a1) - self._log_value(np.array([1.0]))[0]
            out = lv / np.log(a1)
        if np.any(~np.isfinite(out)):
            raise DomainError("r undefined where phi(t) = 0")
        return _out(out, arr.shape, scalar)

    def inverse(self, y):
        return eval_inverse(self, y)

    # -- hooks ---------------------------------------------------------------

    def _value(self, t):
        raise NotImplementedError

    def _deriv(self, t):
        raise NotImplementedError

    def _log_value(self, t):
        return np.log(self._value(t))

    def _g(self, t):
        return t * self._deriv(t) / self._value(t)

    def knot_report(self):
        """One-sided values and derivatives at each knot (empty for smooth forms)."""
        return []

    def spec(self):
        raise NotImplementedError

    def __repr__(self):
        return self.spec()


def _fmt(x):
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


@dataclass(frozen=True)
class KnotReport:
    knot: float
    value_left: float
    value_right: float
    deriv_left: float
    deriv_right: float
    smooth: bool  # C^1 matching is claimed at this knot

    @property
    def c0_ok(self):
        return _close(self.value_left, self.value_right)

    @property
    def c1_ok(self):
        return _close(self.deriv_left, self.deriv_right)


def _close(a, b, rtol=KNOT_RTOL):
    return abs(a - b) <= rtol * max(abs(a), abs(b), 1e-300)


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------


class Catalog(YoungFunction):
    """Closed-form catalog entry; ``name`` and ``params`` identify it."""

    name = ""
    params: tuple = ()

    def spec(self):
        args = "".join(", " + _fmt(p) for p in self.params)
        return f"catalog({self.name}{args})"

    def __eq__(self, other):
        return type(self) is type(other) and self.params == other.params

    def __hash__(self):
        return hash((self.name, self.params))


class Power(Catalog):
    """``t**p``, ``p >= 1``."""

    name = "power"

    def __init__(self, p):
        p = float(p)
        if not p >= 1:
            raise ParameterError(f"power needs p >= 1, got {p}")
        self.p = p
        self.params = (p,)

    def _value(self, t):
        return t**self.p

    def _deriv(self, t):
        return self.p * t ** (self.p - 1)

    def _log_value(self, t):
        return self.p * np.log(t)

    def _g(self, t):
        return np.full_like(t, self.p)


class PowerSum(Catalog):
    """``t**q + t**p`` with ``1 <= q < p``."""

    name = "power_sum"

    def __init__(self, q, p):
        q, p = float(q), float(p)
        if not (1 <= q < p):
            raise ParameterError(f"power_sum needs 1 <= q < p, got q={q}, p={p}")
        self.q, self.p = q, p
        self.params = (q, p)

    def _value(self, t):
        return t**self.q + t**self.p

    def _deriv(self, t):
        return self.q * t ** (self.q - 1) + self.p * t ** (self.p - 1)

    def _log_value(self, t):
        lt = np.log(t)
        d = (self.p - self.q) * lt
        # log(t^q + t^p) = q log t + log(1 + t^(p-q)), stable for both signs of d
        return self.q * lt + np.where(d > 0, d + np.log1p(np.exp(-np.abs(d))), np.log1p(np.exp(-np.abs(d))))

    def _g(self, t):
        s = np.exp(-np.abs((self.p - self.q) * np.log(t)))
        return np.where(t <= 1, (self.q + self.p * s) / (1 + s), (self.q * s + self.p) / (1 + s))


class PowerLog(Catalog):
    """``t**n * log(1+t)**m``."""

    name = "power_log"

    def __init__(self, n, m):
        n, m = float(n), float(m)
        if not (n >= 1 and m >= 0):
            raise ParameterError(f"power_log needs n >= 1, m >= 0, got n={n}, m={m}")
        self.n, self.m = n, m
        self.params = (n, m)

    def _value(self, t):
        return t**self.n * np.log1p(t) ** self.m

    def _deriv(self, t):
        L = np.log1p(t)
        return self.n * t ** (self.n - 1) * L**self.m + self.m * t**self.n * L ** (self.m - 1) / (1 + t)

    def _log_value(self, t):
        return self.n * np.log(t) + self.m * np.log(np.log1p(t))

    def _g(self, t):
        return self.n + self.m * t / ((1 + t) * np.log1p(t))


class PowerExp(Catalog):
    """``t**n * exp(t)``; fails Delta_2."""

    name = "power_exp"

    def __init__(self, n):
        n = float(n)
        if not n >= 1:
            raise ParameterError(f"power_exp needs n >= 1, got {n}")
        self.n = n
        self.params = (n,)

    def _value(self, t):
        return t**self.n * np.exp(t)

    def _deriv(self, t):
        return (self.n * t ** (self.n - 1) + t**self.n) * np.exp(t)

    def _log_value(self, t):
        return self.n * np.log(t) + t

    def _g(self, t):
        return self.n + t


class PowerLogShift(Catalog):
    """``t**2 * log(2+t)``."""

    name = "power_log_shift"

    def __init__(self):
        self.params = ()

    def _value(self, t):
        return t**2 * np.log(2 + t)

    def _deriv(self, t):
        return 2 * t * np.log(2 + t) + t**2 / (2 + t)

    def _log_value(self, t):
        return 2 * np.log(t) + np.log(np.log(2 + t))

    def _g(self, t):
        return 2 + t / ((2 + t) * np.log(2 + t))


class ExpMinusOne(Catalog):
    """``exp(t) - 1``."""

    name = "exp_minus_one"

    def __init__(self):
        self.params = ()

    def _value(self, t):
        return np.expm1(t)

    def _deriv(self, t):
        return np.exp(t)

    def _log_value(self, t):
        big = t > 1
        safe = np.where(big, 1.0, t)
        return np.where(big, t + np.log(-np.expm1(-np.where(big, t, 1.0))), np.log(np.expm1(safe)))

    def _g(self, t):
        return t / -np.expm1(-t)


class FlatOrigin(Catalog):
    """``exp(-1/t)`` on ``(0, 1/2)``, ``exp(-2) (4t - 1)`` beyond.

    Infinitely flat at the origin: every power dominates it near 0, so it is
    flagged non-strict.
    """

    name = "flat_origin"
    strict = False
    knots = (0.5,)

    def __init__(self):
        self.params = ()

    def _value(self, t):
        small = t < 0.5
        with np.errstate(divide="ignore"):
            inner = np.where(t > 0, np.exp(-1 / np.where(small & (t > 0), t, 1.0)), 0.0)
        return np.where(small, inner, math.exp(-2) * (4 * t - 1))

    def _deriv(self, t):
        small = t < 0.5
        ts = np.where(small, t, 1.0)
        return np.where(small, np.exp(-1 / ts) / ts**2, 4 * math.exp(-2))

    def _log_value(self, t):
        small = t < 0.5
        return np.where(small, -1 / np.where(small, t, 1.0), -2 + np.log(np.where(small, 1.0, 4 * t - 1)))

    def _g(self, t):
        small = t < 0.5
        return np.where(small, 1 / np.where(small, t, 1.0), 4 * t / (4 * t - 1))

    def knot_report(self):
        k = 0.5
        return [KnotReport(k, math.exp(-1 / k), math.exp(-2) * (4 * k - 1),
                           math.exp(-1 / k) / k**2, 4 * math.exp(-2), True)]


class Dual23(Catalog):
    """``t**2`` for ``t <= 1``, ``2 t**1.5 - 1`` beyond; convex kink at 1."""

    name = "dual_23"
    knots = (1.0,)

    def __init__(self):
        self.params = ()

    def _value(self, t):
        return np.where(t <= 1, t**2, 2 * t**1.5 - 1)

    def _deriv(self, t):
        return np.where(t < 1, 2 * t, 3 * np.sqrt(t))

    def knot_report(self):
        return [KnotReport(1.0, 1.0, 1.0, 2.0, 3.0, False)]


_CATALOG = {
    cls.name: cls
    for cls in (Power, PowerSum, PowerLog, PowerExp, PowerLogShift, ExpMinusOne, FlatOrigin, Dual23)
}
CATALOG_NAMES = tuple(_CATALOG)


def catalog(name, *params):
    """Build a catalog Young function by (case-insensitive) name."""
    key = name.lower()
    if key not in _CATALOG:
        raise ParameterError(f"unknown catalog form {name!r}; known: {', '.join(CATALOG_NAMES)}")
    try:
        return _CATALOG[key](*params)
    except TypeError as exc:
        raise ParameterError(f"wrong number of parameters for {key}: {exc}") from None


# ---------------------------------------------------------------------------
# Splices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """One piece of a splice on the half-open interval ``(lo, hi]``.

    ``kind="power"``: ``a * t**r + d`` with ``coeffs = (a, r, d)``.
    ``kind="scaled"``: ``c * base(t) / s + d`` with ``coeffs = (c, s, d)``.
    """

    lo: float
    hi: float
    kind: str
    coeffs: tuple

    def value(self, t, base=None):
        if self.kind == "power":
            a, r, d = self.coeffs
            return a * t**r + d
        c, s, d = self.coeffs
        return c * base._value(t) / s + d

    def deriv(self, t, base=None):
        if self.kind == "power":
            a, r, _ = self.coeffs
            return a * r * t ** (r - 1)
        c, s, _ = self.coeffs
        return c * base._deriv(t) / s


class Splice(YoungFunction):
    """Piecewise Young function with explicitly stored coefficients."""

    def __init__(self, segments, base=None):
        segs = tuple(
            s if isinstance(s, Segment) else Segment(float(s[0]), float(s[1]), s[2], tuple(map(float, s[3])))
            for s in segments
        )
        if not segs:
            raise ParameterError("a splice needs at least one segment")
        if segs[0].lo != 0 or segs[-1].hi != math.inf:
            raise ParameterError("splice segments must cover [0, inf)")
        for left, right in zip(segs, segs[1:]):
            if not (left.lo < left.hi == right.lo):
                raise ParameterError(f"malformed knot ordering at ({left.lo}, {left.hi}] -> ({right.lo}, {right.hi}]")
        for s in segs:
            if s.kind not in ("power", "scaled"):
                raise ParameterError(f"unknown segment kind {s.kind!r}")
            if len(s.coeffs) != 3:
                raise ParameterError(f"segment {s.kind} needs 3 coefficients")
            if s.kind == "scaled" and base is None:
                raise ParameterError("scaled segments need a base function")
        self.segments = segs
        self.base = base
        self.knots = tuple(s.hi for s in segs[:-1])
        self._knot_arr = np.array(self.knots)
        self.strict = base.strict if base is not None else True

    def _piecewise(self, t, side, which):
        idx = np.searchsorted(self._knot_arr, t, side=side)
        out = np.empty_like(t)
        for i, seg in enumerate(self.segments):
            m = idx == i
            if np.any(m):
                fn = seg.value if which == "value" else seg.deriv
                out[m] = fn(t[m], self.base)
        return out

    def _value(self, t):
        t = np.atleast_1d(t)
        out = self._piecewise(t, "left", "value")
        return np.where(t == 0, 0.0, out)

    def _deriv(self, t):
        return self._piecewise(np.atleast_1d(t), "right", "deriv")

    def _deriv_left(self, t):
        return self._piecewise(np.atleast_1d(t), "left", "deriv")

    def segment_g(self, i, t):
        """g of segment ``i`` as a formula, independent of the knot lookup."""
        t = np.asarray(t, dtype=float)
        seg = self.segments[i]
        return t * seg.deriv(t, self.base) / seg.value(t, self.base)

    def knot_report(self):
        out = []
        for left, right in zip(self.segments, self.segments[1:]):
            k = np.array([left.hi])
            out.append(KnotReport(
                left.hi,
                float(left.value(k, self.base)[0]),
                float(right.value(k, self.base)[0]),
                float(left.deriv(k, self.base)[0]),
                float(right.deriv(k, self.base)[0]),
                True,
            ))
        return out

    def spec(self):
        parts = []
        if self.base is not None:
            parts.append("base=" + self.base.spec())
        for s in self.segments:
            parts.append(f"[({_fmt(s.lo)}, {_fmt(s.hi)}): {s.kind}({', '.join(_fmt(c) for c in s.coeffs)})]")
        return "splice(" + ", ".join(parts) + ")"


class Scaled(YoungFunction):
    """``base(t) / factor``; ``factor`` defaults to ``base(1)`` (normalization)."""

    def __init__(self, base, factor=None):
        self.base = base
        self.normalized = factor is None
        self.factor = base.eval(1.0) if factor is None else float(factor)
        if not self.factor > 0:
            raise ParameterError("scale factor must be positive")
        self.knots = base.knots
        self.strict = base.strict

    def _value(self, t):
        return self.base._value(t) / self.factor

    def _deriv(self, t):
        return self.base._deriv(t) / self.factor

    def _log_value(self, t):
        return self.base._log_value(t) - math.log(self.factor)

    def _g(self, t):
        return self.base._g(t)

    def knot_report(self):
        f = self.factor
        return [KnotReport(k.knot, k.value_left / f, k.value_right / f, k.deriv_left / f, k.deriv_right / f, k.smooth)
                for k in self.base.knot_report()]

    def spec(self):
        if self.normalized:
            return f"normalized({self.base.spec()})"
        return f"scaled({self.base.spec()}, {_fmt(self.factor)})"


class Combination(YoungFunction):
    """Weighted sum or pointwise maximum of Young functions."""

    def __init__(self, parts, mode="sum", weights=None):
        self.parts = tuple(parts)
        if mode not in ("sum", "max"):
            raise ParameterError(f"unknown combination mode {mode!r}")
        if mode == "sum":
            weights = tuple(float(w) for w in (weights or [1.0] * len(self.parts)))
            if len(weights) != len(self.parts) or any(not w > 0 for w in weights):
                raise ParameterError("weights must be positive, one per part")
        self.mode = mode
        self.weights = weights
        self.knots = tuple(sorted(set(k for p in self.parts for k in p.knots)))
        self.strict = all(p.strict for p in self.parts)

    def _value(self, t):
        vals = [p._value(t) for p in self.parts]
        if self.mode == "sum":
            return sum(w * v for w, v in zip(self.weights, vals))
        return np.maximum.reduce(vals)

    def _deriv(self, t):
        ders = [p._deriv(t) for p in self.parts]
        if self.mode == "sum":
            return sum(w * d for w, d in zip(self.weights, ders))
        vals = np.array([p._value(t) for p in self.parts])
        ders = np.array(ders)
        top = vals.max(axis=0)
        # right derivative of a max: largest slope among the active parts
        return np.where(vals >= top * (1 - 1e-15), ders, -np.inf).max(axis=0)

    def spec(self):
        if self.mode == "max":
            return "max(" + ", ".join(p.spec() for p in self.parts) + ")"
        return "sum(" + ", ".join(f"{_fmt(w)}, {p.spec()}" for w, p in zip(self.weights, self.parts)) + ")"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def evaluate(phi, t):
    return phi.eval(t)


def eval_deriv(phi, t):
    return phi.deriv(t)


def g_ratio(phi, t):
    return phi.g(t)


def r_exponent(phi, t):
    return phi.r(t)


def eval_inverse(phi, y, max_iter=200):
    """Solve ``phi(t) = y`` for ``t``.

    Power functions use their closed form.  Everything else brackets the
    root in log t and bisects (vectorized) until the bracket collapses to
    adjacent floats.
    """
    arr, scalar = _as_array(y)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("inverse needs y >= 0")
    if isinstance(phi, Power):
        return _out(arr ** (1 / phi.p), arr.shape, scalar)
    if not phi.strict and np.any(arr == 0):
        raise NonInvertible("phi vanishes on a flat range containing this value")
    flat = np.atleast_1d(arr)
    out = np.zeros_like(flat)
    pos = flat > 0
    if np.any(pos):
        out[pos] = _log_bisect(phi, np.log(flat[pos]), max_iter)
    return _out(out, arr.shape, scalar)


def _log_bisect(phi, logy, max_iter):
    lo = np.zeros_like(logy)
    hi = np.zeros_like(logy)
    with np.errstate(over="ignore", under="ignore", divide="ignore"):
        f1 = float(phi._log_value(np.array([1.0]))[0])
    # expand brackets in u = log t
    up = logy > f1
    lo[~up] = -1.0
    hi[up] = 1.0
    for _ in range(2000):
        with np.errstate(over="ignore", under="ignore", divide="ignore"):
            need_hi = up & (phi._log_value(np.exp(hi)) < logy)
            need_lo = (~up) & (phi._log_value(np.exp(lo)) > logy)
        if not (need_hi.any() or need_lo.any()):
            break
        lo[need_hi] = hi[need_hi]
        hi[need_hi] *= 2
        hi[need_lo] = lo[need_lo]
        lo[need_lo] *= 2
        if np.any(np.abs(lo) > 1e4) or np.any(np.abs(hi) > 1e4):
            raise NonInvertible("no bracket found for the inverse")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        with np.errstate(over="ignore", under="ignore", divide="ignore"):
            below = phi._log_value(np.exp(mid)) < logy
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(np.abs(hi - lo) <= 4e-16 * np.maximum(1.0, np.abs(hi))):
            break
    return np.exp(0.5 * (lo + hi))


@dataclass
class Violation:
    kind: str
    t: float
    detail: str


@dataclass
class ValidationReport:
    convexity: list = field(default_factory=list)
    monotonicity: list = field(default_factory=list)
    knots: list = field(default_factory=list)

    @property
    def valid(self):
        return not (self.convexity or self.monotonicity or self.knots)

    def __bool__(self):
        return self.valid


def validate(phi, grid=None, rtol=KNOT_RTOL):
    """Check the Young-function axioms on a log grid and the knot matching."""
    grid = grid or GridSpec()
    if grid.n < 100:
        raise ParameterError("validation grid needs at least 100 points")
    rep = ValidationReport()
    t = grid.points()
    v = phi.eval(t)
    if phi.eval(0.0) != 0:
        rep.monotonicity.append(Violation("origin", 0.0, f"phi(0) = {phi.eval(0.0)}"))
    drops = np.nonzero(v[1:] < v[:-1] * (1 - 1e-12))[0]
    for i in drops:
        rep.monotonicity.append(Violation("decrease", float(t[i + 1]), f"{v[i]} -> {v[i + 1]}"))

    for step in (1, 8, 64):
        if step >= len(t):
            continue
        t1, t2 = t[:-step], t[step:]
        v1, v2 = v[:-step], v[step:]
        for th in (0.25, 0.5, 0.75):
            mid = phi.eval(th * t1 + (1 - th) * t2)
            chord = th * v1 + (1 - th) * v2
            bad = np.nonzero(mid > chord * (1 + rtol) + 1e-300)[0]
            for i in bad[:5]:
                rep.convexity.append(Violation("chord", float(t1[i]), f"theta={th}, t2={t2[i]}: {mid[i]} > {chord[i]}"))

    for k in phi.knot_report():
        if not k.c0_ok:
            rep.knots.append(Violation("C0", k.knot, f"{k.value_left} != {k.value_right}"))
        if k.smooth and not k.c1_ok:
            rep.knots.append(Violation("C1", k.knot, f"{k.deriv_left} != {k.deriv_right}"))
        if k.deriv_left > k.deriv_right * (1 + rtol):
            rep.convexity.append(Violation("kink", k.knot, f"left slope {k.deriv_left} > right slope {k.deriv_right}"))
    return rep
