"""Test functions on the line and the plane.

Each integrand is a vectorized closed form together with the information the
quadrature needs (support, kinks) and, where available, closed-form
moments ``integral |f|**r``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError

__all__ = [
    "Integrand",
    "Zero",
    "CauchyPower",
    "GaussQuad",
    "Indicator",
    "Separable",
    "FiniteSum",
    "from_moments",
    "INTEGRAND_NAMES",
]

INF = math.inf


def _fmt(x):
    return repr(float(x))


class Integrand:
    """Base class.  ``dim`` is 1 or 2; ``__call__`` takes one array per axis."""

    dim = 1
    name = ""

    def __init__(self):
        self.known_moments = []  # (r, integral |f|**r) pairs trusted as ground truth

    def __call__(self, *xs):
        raise NotImplementedError

    # 1D geometry
    def support(self):
        return (-INF, INF)

    def breakpoints(self):
        return ()

    # 2D geometry: x-slice at fixed y, then the y-axis
    def slice_geometry(self, y):
        return (-INF, INF), ()

    def y_support(self):
        return (-INF, INF)

    def y_breakpoints(self):
        return ()

    def moment(self, r):
        """Closed form of ``integral |f|**r`` or ``None``."""
        for rr, val in self.known_moments:
            if rr == r:
                return val
        return None

    @property
    def is_zero(self):
        return False

    def scaled(self, c):
        return FiniteSum([(float(c), self)])

    def spec(self):
        raise NotImplementedError

    def __repr__(self):
        return self.spec()


class Zero(Integrand):
    name = "zero"

    def __init__(self, dim=1):
        super().__init__()
        if dim not in (1, 2):
            raise ParameterError("dimension must be 1 or 2")
        self.dim = dim

    def __call__(self, *xs):
        return np.zeros_like(np.asarray(xs[0], dtype=float))

    def support(self):
        return (0.0, 0.0)

    def moment(self, r):
        return 0.0

    @property
    def is_zero(self):
        return True

    def spec(self):
        return "zero" if self.dim == 1 else "zero(2)"


class CauchyPower(Integrand):
    """``(1 + x**2)**(-s)``, optionally restricted to ``x >= 0``."""

    name = "cauchy"

    def __init__(self, s, half=False):
        super().__init__()
        if not s > 0:
            raise ParameterError("cauchy exponent must be positive")
        self.s = float(s)
        self.half = bool(half)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = (1.0 + x * x) ** (-self.s)
        return np.where(x >= 0, out, 0.0) if self.half else out

    def support(self):
        return (0.0, INF) if self.half else (-INF, INF)

    def moment(self, r):
        known = super().moment(r)
        if known is not None:
            return known
        e = self.s * r
        if e <= 0.5:
            return INF
        full = math.exp(0.5 * math.log(math.pi) + math.lgamma(e - 0.5) - math.lgamma(e))
        return full / 2 if self.half else full

    def spec(self):
        return f"cauchy({_fmt(self.s)}, half)" if self.half else f"cauchy({_fmt(self.s)})"


class GaussQuad(Integrand):
    """``exp(-n x**2 + 2 sqrt(n-1) x y - y**2)`` on the plane, ``n >= 1``.

    The quadratic form has determinant 1, so ``integral f**r = pi / r``.
    """

    name = "gauss_quad"
    dim = 2

    def __init__(self, n):
        super().__init__()
        if not n >= 1:
            raise ParameterError("gauss_quad needs n >= 1")
        self.n = float(n)
        self.b = math.sqrt(self.n - 1)

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.exp(-self.n * x * x + 2 * self.b * x * y - y * y)

    def center(self, y):
        return self.b * y / self.n

    def slice_geometry(self, y):
        return (-INF, INF), (self.center(y),)

    def moment(self, r):
        known = super().moment(r)
        return known if known is not None else math.pi / r

    def spec(self):
        return f"gauss_quad({_fmt(self.n)})"


class Indicator(Integrand):
    """``h`` on ``[offset, offset + m]``, zero elsewhere."""

    name = "indicator"

    def __init__(self, m, h, offset=0.0):
        super().__init__()
        if not (m > 0 and h > 0):
            raise ParameterError("indicator needs measure m > 0 and height h > 0")
        self.m, self.h, self.offset = float(m), float(h), float(offset)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= self.offset) & (x <= self.offset + self.m), self.h, 0.0)

    def support(self):
        return (self.offset, self.offset + self.m)

    def breakpoints(self):
        return (self.offset, self.offset + self.m)

    def moment(self, r):
        known = super().moment(r)
        return known if known is not None else self.m * self.h**r

    def spec(self):
        if self.offset:
            return f"indicator({_fmt(self.m)}, {_fmt(self.h)}, {_fmt(self.offset)})"
        return f"indicator({_fmt(self.m)}, {_fmt(self.h)})"


class Separable(Integrand):
    """``g(x) h(y)`` from two one-dimensional integrands."""

    name = "separable"
    dim = 2

    def __init__(self, g, h):
        super().__init__()
        if g.dim != 1 or h.dim != 1:
            raise ParameterError("separable factors must be one-dimensional")
        self.g, self.h = g, h

    def __call__(self, x, y):
        return self.g(x) * self.h(y)

    def slice_geometry(self, y):
        return self.g.support(), self.g.breakpoints()

    def y_support(self):
        return self.h.support()

    def y_breakpoints(self):
        return self.h.breakpoints()

    def moment(self, r):
        known = super().moment(r)
        if known is not None:
            return known
        a, b = self.g.moment(r), self.h.moment(r)
        return None if a is None or b is None else a * b

    @property
    def is_zero(self):
        return self.g.is_zero or self.h.is_zero

    def spec(self):
        return f"separable({self.g.spec()}, {self.h.spec()})"


class FiniteSum(Integrand):
    """``sum_i w_i f_i`` over integrands of one dimension."""

    name = "sum"

    def __init__(self, terms):
        super().__init__()
        self.terms = tuple((float(w), f) for w, f in terms)
        if not self.terms:
            raise ParameterError("a finite sum needs at least one term")
        dims = {f.dim for _, f in self.terms}
        if len(dims) != 1:
            raise ParameterError("all terms of a finite sum must share a dimension")
        self.dim = dims.pop()

    def __call__(self, *xs):
        return sum(w * f(*xs) for w, f in self.terms)

    def support(self):
        sups = [f.support() for _, f in self.terms if not f.is_zero]
        if not sups:
            return (0.0, 0.0)
        return (min(s[0] for s in sups), max(s[1] for s in sups))

    def breakpoints(self):
        return tuple(sorted({b for _, f in self.terms for b in f.breakpoints()}))

    def slice_geometry(self, y):
        geo = [f.slice_geometry(y) for _, f in self.terms]
        lo = min(g[0][0] for g in geo)
        hi = max(g[0][1] for g in geo)
        return (lo, hi), tuple(sorted({b for g in geo for b in g[1]}))

    def y_support(self):
        sups = [f.y_support() for _, f in self.terms]
        return (min(s[0] for s in sups), max(s[1] for s in sups))

    def y_breakpoints(self):
        return tuple(sorted({b for _, f in self.terms for b in f.y_breakpoints()}))

    def _disjoint_indicators(self):
        inds = [f for _, f in self.terms]
        if not all(isinstance(f, Indicator) for f in inds):
            return False
        spans = sorted(f.support() for f in inds)
        return all(a[1] <= b[0] for a, b in zip(spans, spans[1:]))

    def moment(self, r):
        known = super().moment(r)
        if known is not None:
            return known
        if len(self.terms) == 1:
            w, f = self.terms[0]
            m = f.moment(r)
            return None if m is None else abs(w) ** r * m
        if self._disjoint_indicators():
            # touching endpoints form a null set
            return sum(f.m * abs(w * f.h) ** r for w, f in self.terms)
        return None

    @property
    def is_zero(self):
        return all(w == 0 or f.is_zero for w, f in self.terms)

    def spec(self):
        return "sum(" + ", ".join(f"{_fmt(w)}, {f.spec()}" for w, f in self.terms) + ")"


INTEGRAND_NAMES = ("zero", "cauchy", "gauss_quad", "indicator", "separable", "sum")


def from_moments(a, b, q, p):
    """Two disjoint indicators whose ``q``-th and ``p``-th moments are ``a`` and ``b``.

    The heights straddle ``(b/a)**(1/(p-q))``, which makes the 2x2 system
    for the two measures positive.
    """
    a, b, q, p = map(float, (a, b, q, p))
    if not (1 <= q < p):
        raise ParameterError("need 1 <= q < p")
    if a < 0 or b < 0:
        raise ParameterError("moments must be nonnegative")
    if a == 0 and b == 0:
        return Zero()
    if a == 0 or b == 0:
        raise ParameterError("a nonzero function has both moments positive")
    pivot = (b / a) ** (1 / (p - q))
    h1, h2 = 0.5 * pivot, 2.0 * pivot
    mat = np.array([[h1**q, h2**q], [h1**p, h2**p]])
    m1, m2 = np.linalg.solve(mat, [a, b])
    f = FiniteSum([(1.0, Indicator(m1, h1, 0.0)), (1.0, Indicator(m2, h2, m1))])
    f.known_moments = [(q, a), (p, b)]
    return f
