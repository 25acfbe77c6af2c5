"""Adaptive quadrature on the real line and the plane.

The line is cut into a core ``[-1, 1]`` and decade shells
``±[10^k, 10^(k+1)]``.  Each shell is integrated in the variable
``u = log|x|`` with adaptive Gauss-Kronrod (7, 15), which turns power-law
tails into slowly varying integrands.  The shell masses double as the
expanding-box divergence test: a convergent tail shows geometrically
decaying shells, a divergent one does not.

Every result carries the composite rule (nodes and weights) it was
computed with, so callers can re-weigh a family of similar integrands
without repeating the adaptive search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import QuadratureFailure

__all__ = ["QuadResult", "gauss_kronrod", "integrate_interval", "integrate_line", "integrate_plane"]

# Gauss-Kronrod 7-15 abscissae on [-1, 1] (positive half, ascending index = descending abscissa)
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WGFULL = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod abscissae
_WGFULL[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])

SHELL_RATIO_DIVERGENT = 0.98
DIVERGENCE_THRESHOLD = 1e8


@dataclass
class QuadResult:
    value: float
    error: float
    divergent: bool = False
    nodes: np.ndarray = field(default_factory=lambda: np.empty(0))
    weights: np.ndarray = field(default_factory=lambda: np.empty(0))
    shells: list = field(default_factory=list)

    def reweigh(self, values):
        """Apply the stored rule to function values at ``self.nodes``."""
        return float(np.dot(self.weights, values))


def gauss_kronrod(f, a, b):
    """G7/K15 on each interval ``[a_i, b_i]``; returns (kronrod, |K-G|, nodes, weights)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    with np.errstate(invalid="ignore"):  # inf * 0 at Kronrod-only nodes; caller sees non-finite sums
        k = half * (fx @ _WK)
        g = half * (fx @ _WGFULL)
    return k, np.abs(k - g), x, half[:, None] * _WK[None, :]


def integrate_interval(f, a, b, rtol=1e-12, atol=0.0, max_intervals=4000, breakpoints=()):
    """Globally adaptive G7/K15 on a finite interval, vectorized over subintervals."""
    edges = sorted({a, b, *(p for p in breakpoints if a < p < b)})
    lo = np.array(edges[:-1])
    hi = np.array(edges[1:])
    vals, errs, x, w = gauss_kronrod(f, lo, hi)
    if not np.all(np.isfinite(vals)):
        return QuadResult(math.inf, math.inf, True, x.ravel(), w.ravel())
    for _ in range(60):
        total = vals.sum()
        target = max(atol, rtol * abs(total))
        err = errs.sum()
        if err <= target or len(lo) >= max_intervals:
            break
        # split intervals carrying more than their share of the error budget
        share = target / len(lo)
        split = errs > share
        if not split.any():
            break
        m = 0.5 * (lo[split] + hi[split])
        nlo = np.concatenate([lo[split], m])
        nhi = np.concatenate([m, hi[split]])
        nv, ne, nx, nw = gauss_kronrod(f, nlo, nhi)
        keep = ~split
        lo = np.concatenate([lo[keep], nlo])
        hi = np.concatenate([hi[keep], nhi])
        vals = np.concatenate([vals[keep], nv])
        errs = np.concatenate([errs[keep], ne])
        x = np.concatenate([x[keep], nx])
        w = np.concatenate([w[keep], nw])
        if not np.all(np.isfinite(nv)):
            return QuadResult(math.inf, math.inf, True, x.ravel(), w.ravel())
    return QuadResult(float(vals.sum()), float(errs.sum()), False, x.ravel(), w.ravel())


def _shell(f, lo, hi, sign, rtol, breakpoints):
    """Integrate ``f`` over ``sign*[lo, hi]`` (``0 < lo < hi``) in u = log|x|."""

    def mapped(u):
        x = sign * np.exp(u)
        return f(x) * np.exp(u)

    bps = [math.log(abs(p)) for p in breakpoints if p * sign > 0 and lo < abs(p) < hi]
    res = integrate_interval(mapped, math.log(lo), math.log(hi), rtol=rtol, breakpoints=bps)
    res.nodes = sign * np.exp(res.nodes)
    res.weights = res.weights * np.abs(res.nodes)
    return res


def integrate_line(f, support=(-math.inf, math.inf), breakpoints=(), rtol=1e-10, max_decades=60):
    """Integrate a nonnegative vectorized ``f`` over ``support``.

    Infinite ends are handled shell by shell.  Returns a result flagged
    ``divergent`` when shell masses stop decaying or the partial sums pass
    ``DIVERGENCE_THRESHOLD`` while still growing.
    """
    lo, hi = support
    inner_rtol = rtol * 0.1
    pieces = []
    core_lo, core_hi = max(lo, -1.0), min(hi, 1.0)
    if core_lo < core_hi:
        pieces.append(integrate_interval(f, core_lo, core_hi, rtol=inner_rtol, breakpoints=breakpoints))
    total = sum(p.value for p in pieces)
    error = sum(p.error for p in pieces)
    shells = []
    divergent = any(p.divergent for p in pieces)

    sides = []
    if hi > 1:
        sides.append((1.0, hi))
    if lo < -1:
        sides.append((-1.0, -lo))
    # decades are walked in lockstep on both sides, masses summed per decade
    state = [dict(sign=s, end=end, done=False) for s, end in zip([1.0 if a > 0 else -1.0 for a, _ in sides], [e for _, e in sides])]
    tail = tail_err = 0.0
    zero_run = 0
    beyond = max([abs(p) for p in breakpoints] + [1.0])
    converged = not state
    for k in range(max_decades):
        if divergent or converged:
            break
        mass = 0.0
        for st in state:
            if st["done"]:
                continue
            a, b = 10.0**k, min(10.0 ** (k + 1), st["end"])
            if a >= b:
                st["done"] = True
                continue
            res = _shell(f, a, b, st["sign"], inner_rtol, breakpoints)
            pieces.append(res)
            if res.divergent:
                divergent = True
            mass += res.value
            error += res.error
            if b >= st["end"]:
                st["done"] = True
        shells.append(mass)
        total += mass
        if divergent:
            break
        if all(st["done"] for st in state):
            converged = True
            break
        if mass == 0.0:
            zero_run += 1
            if zero_run >= 2 and 10.0**k > beyond:
                converged = True
            continue
        zero_run = 0
        if len(shells) >= 4 and all(
            shells[-i] >= SHELL_RATIO_DIVERGENT * shells[-i - 1] for i in (1, 2, 3)
        ) and mass > rtol * total:
            divergent = True
            break
        if total > DIVERGENCE_THRESHOLD and len(shells) >= 2 and mass > 1e-3 * total and mass >= shells[-2]:
            divergent = True
            break
        if len(shells) >= 3 and shells[-2] > 0 and 10.0**k > beyond:
            ratio = mass / shells[-2]
            prev = shells[-2] / shells[-3] if shells[-3] > 0 else ratio
            if ratio < 1 and mass <= rtol * 1e-2 * total:
                tail = mass * ratio / (1 - ratio)
                tail_err = tail
                converged = True
            elif ratio < 0.95 and mass * abs(ratio - prev) / (1 - ratio) ** 2 <= rtol * total:
                # power-law tails give a constant shell ratio; sum the geometric remainder,
                # whose uncertainty comes from the drift of the ratio
                tail = mass * ratio / (1 - ratio)
                tail_err = mass * abs(ratio - prev) / (1 - ratio) ** 2
                converged = True
    nodes = np.concatenate([p.nodes for p in pieces]) if pieces else np.empty(0)
    weights = np.concatenate([p.weights for p in pieces]) if pieces else np.empty(0)
    if divergent:
        return QuadResult(math.inf, math.inf, True, nodes, weights, shells)
    if not converged:
        raise QuadratureFailure(f"tail neither converged nor diverged after {max_decades} decades")
    return QuadResult(total + tail, error + tail_err, False, nodes, weights, shells)


def integrate_plane(f, inner, rtol=1e-8, outer_support=(-math.inf, math.inf), outer_breakpoints=()):
    """Iterated integral ``∫ (∫ f(x, y) dx) dy``.

    ``inner(y)`` returns ``(support, breakpoints)`` of the slice at ``y``.
    The result's nodes are an ``(N, 2)`` array of ``(x, y)`` pairs.
    """
    cache = {}

    def slice_integral(y):
        sup, bps = inner(y)
        res = integrate_line(lambda x: f(x, np.full_like(x, y)), sup, bps, rtol=rtol * 0.1)
        cache[y] = res
        return res.value

    def outer(ys):
        return np.array([slice_integral(float(y)) for y in ys])

    res = integrate_line(outer, outer_support, outer_breakpoints, rtol=rtol)
    if res.divergent:
        return res
    pts = []
    wts = []
    for y, wy in zip(res.nodes, res.weights):
        r = cache[float(y)]
        if r.divergent:
            return QuadResult(math.inf, math.inf, True, shells=res.shells)
        pts.append(np.column_stack([r.nodes, np.full_like(r.nodes, y)]))
        wts.append(wy * r.weights)
    nodes = np.concatenate(pts) if pts else np.empty((0, 2))
    weights = np.concatenate(wts) if wts else np.empty(0)
    return QuadResult(res.value, res.error, False, nodes, weights, res.shells)
