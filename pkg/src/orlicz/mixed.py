"""Trace-type mixed norms on the plane.

``mixed_norm(f, phi)`` takes the Luxemburg norm in ``x`` of every slice
``f(., y)`` and then the Luxemburg norm in ``y`` of the resulting profile.
Slice norms are cached by ``y``, so the outer root search re-weighs the
profile without recomputing inner norms at known nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import Divergent, InnerFailure, OrliczError, ParameterError, ZeroFunction
from .exponents import lebesgue_exponents
from .integrands import GaussQuad, Integrand
from .norms import luxemburg_norm
from .quadrature import integrate_line, integrate_plane
from .young import GridSpec, PowerSum

__all__ = [
    "MixedNormResult",
    "SliceIntegrand",
    "mixed_norm",
    "mixed_lebesgue_norm",
    "plane_lp_norm",
    "gaussian_family_values",
    "gaussian_family_numeric",
    "counterexample_partial_sums",
    "counterexample_integrand",
    "ProfileReport",
    "profiles_G_H",
    "GAUSS_L21_CONSTANT",
]

INNER_RTOL = 1e-8
OUTER_RTOL = 1e-4
GAUSS_L21_CONSTANT = math.pi**0.75 / 2**0.25
GAUSS_PHI_NORM = math.pi + math.sqrt(math.pi / 2)


class SliceIntegrand(Integrand):
    """``x -> f(x, y)`` for a fixed ``y``."""

    def __init__(self, f, y):
        super().__init__()
        self.f, self.y = f, float(y)
        self._sup, self._bps = f.slice_geometry(self.y)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.f(x, np.full_like(x, self.y))

    def support(self):
        return self._sup

    def breakpoints(self):
        return self._bps

    @property
    def is_zero(self):
        return self.f.is_zero

    def spec(self):
        return f"slice({self.f.spec()}, y={self.y!r})"


class _Profile(Integrand):
    """The map ``y -> h(y)`` as a one-dimensional integrand, evaluated lazily."""

    def __init__(self, h, support, breakpoints):
        super().__init__()
        self.h, self._sup, self._bps = h, support, breakpoints

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return np.array([self.h(float(v)) for v in y.ravel()]).reshape(y.shape)

    def support(self):
        return self._sup

    def breakpoints(self):
        return self._bps

    def spec(self):
        return "profile"


@dataclass
class MixedNormResult:
    norm: float
    profile: list  # sorted (y, inner norm) samples
    l11: Optional[float] = None
    l21: Optional[float] = None
    inner_evaluations: int = 0
    outer_iterations: int = 0
    notes: list = field(default_factory=list)

    def profile_csv_rows(self):
        return [("y", "inner_norm")] + [(y, h) for y, h in self.profile]


def _inner_norm_fn(f, phi, exponents, inner_rtol):
    cache = {}

    def h(y):
        if y in cache:
            return cache[y]
        sl = SliceIntegrand(f, y)
        try:
            res = luxemburg_norm(sl, phi, exponents=exponents, rtol=inner_rtol, quad_rtol=inner_rtol * 1e-2,
                                 check_known_moments=False)
        except ZeroFunction:
            cache[y] = 0.0
            return 0.0
        except OrliczError as exc:
            if isinstance(exc, InnerFailure):
                raise
            raise InnerFailure(y, exc) from exc
        except ZeroDivisionError as exc:
            raise InnerFailure(y, exc) from exc
        cache[y] = res.norm
        return res.norm

    return h, cache


def mixed_norm(f, phi, y_grid=None, inner_rtol=INNER_RTOL, outer_rtol=OUTER_RTOL, raise_divergent=False,
               components=True, _inner=None):
    """``|| y -> ||f(., y)||_phi ||_phi`` for a two-dimensional integrand.

    ``y_grid`` (optional) adds profile samples at ``+-`` its points for
    reporting; integration nodes are chosen adaptively either way.  For
    ``phi = t + t**2`` the components ``||f||_{L^{1,1}}`` and
    ``||f||_{L^{2,1}}`` (inner exponent first) are attached.
    """
    if f.dim != 2:
        raise ParameterError("mixed norms need a two-dimensional integrand")
    if f.is_zero:
        return MixedNormResult(0.0, [], 0.0 if components else None, 0.0 if components else None)
    exps = lebesgue_exponents(phi)
    h, cache = _inner or _inner_norm_fn(f, phi, exps, inner_rtol)
    profile = _Profile(h, f.y_support(), f.y_breakpoints())
    res = _outer(profile, phi, exps, outer_rtol)
    notes = list(res.notes)
    if y_grid is not None:
        pts = y_grid.points()
        for y in np.concatenate([-pts[::-1], [0.0], pts]):
            h(float(y))
    if not math.isfinite(res.norm):
        if raise_divergent:
            raise Divergent("outer norm of the slice profile diverges")
        notes.append("outer integral diverges")
    l11 = l21 = None
    if components and isinstance(phi, PowerSum) and (phi.q, phi.p) == (1.0, 2.0):
        l11 = mixed_lebesgue_norm(f, 1, 1)
        l21 = mixed_lebesgue_norm(f, 2, 1)
    prof = sorted(cache.items())
    return MixedNormResult(res.norm, prof, l11, l21, len(cache), res.iterations, notes)


def _outer(profile, phi, exps, rtol):
    return luxemburg_norm(profile, phi, exponents=exps, rtol=rtol * 1e-2, quad_rtol=rtol * 1e-2,
                          check_known_moments=False)


def mixed_lebesgue_norm(f, p_inner, p_outer, rtol=1e-10):
    """``( integral ( integral |f|**p_inner dx )**(p_outer/p_inner) dy )**(1/p_outer)``."""
    cache = {}

    def inner(y):
        if y not in cache:
            sup, bps = f.slice_geometry(y)
            res = integrate_line(lambda x: np.abs(f(x, np.full_like(x, y))) ** p_inner, sup, bps, rtol=rtol * 0.1)
            cache[y] = math.inf if res.divergent else res.value ** (p_outer / p_inner)
        return cache[y]

    res = integrate_line(lambda ys: np.array([inner(float(y)) for y in ys]), f.y_support(), f.y_breakpoints(), rtol=rtol)
    return math.inf if res.divergent else res.value ** (1 / p_outer)


def plane_lp_norm(f, p, rtol=1e-10):
    """``(integral_{R^2} |f|**p)**(1/p)`` by iterated quadrature."""
    res = integrate_plane(lambda x, y: np.abs(f(x, y)) ** p, f.slice_geometry, rtol=rtol,
                          outer_support=f.y_support(), outer_breakpoints=f.y_breakpoints())
    return math.inf if res.divergent else res.value ** (1 / p)


# ---------------------------------------------------------------------------
# The Gaussian family
# ---------------------------------------------------------------------------


def gaussian_family_values(n):
    """Closed forms for ``f_n = exp(-n x**2 + 2 sqrt(n-1) x y - y**2)``.

    Returns ``(||f_n||_1 + ||f_n||_2, ||f_n||_{L^{2,1}})``.  The first is
    ``pi + sqrt(pi/2)`` for every ``n``; the second is
    ``pi**(3/4) 2**(-1/4) n**(1/4)``.
    """
    if n < 2:
        raise ParameterError("the family is indexed by n >= 2")
    return GAUSS_PHI_NORM, GAUSS_L21_CONSTANT * n**0.25


def gaussian_family_numeric(n, rtol=1e-9):
    """The same two quantities by quadrature: ``(l1 + l2, l21)``."""
    f = GaussQuad(n)
    return plane_lp_norm(f, 1, rtol) + plane_lp_norm(f, 2, rtol), mixed_lebesgue_norm(f, 2, 1, rtol)


def counterexample_partial_sums(N):
    """Partial sums for ``g = sum_{n>=2} n**(-5/4) f_n`` up to ``n = N``.

    Returns ``(phi_bound, l21_partial)``: the triangle-inequality bound
    ``(pi + sqrt(pi/2)) sum n**(-5/4)`` on the plain norm, which converges,
    and the lower bound ``C sum 1/n`` on the ``L^{2,1}`` norm, which diverges.
    """
    N = int(N)
    if N < 2:
        raise ParameterError("need N >= 2")
    n = np.arange(2, N + 1, dtype=float)
    # sum small terms first
    s54 = float(np.sum((n ** -1.25)[::-1]))
    s1 = float(np.sum((1.0 / n)[::-1]))
    return GAUSS_PHI_NORM * s54, GAUSS_L21_CONSTANT * s1


def counterexample_integrand(N):
    """Truncation ``sum_{n=2}^{N} n**(-5/4) f_n`` as a finite-sum integrand."""
    from .integrands import FiniteSum

    return FiniteSum([(n ** -1.25, GaussQuad(n)) for n in range(2, int(N) + 1)])


# ---------------------------------------------------------------------------
# Slice profiles
# ---------------------------------------------------------------------------


@dataclass
class ProfileReport:
    y: np.ndarray
    G: np.ndarray  # phi(||f(., y)||_phi)
    H: np.ndarray  # integral phi(|f(x, y)|) dx
    g_integrable: bool
    h_integrable: bool
    G_integral: float
    H_integral: float
    plain_finite: Optional[bool] = None  # ||f||_{L^phi(R^2)} < inf
    mixed_finite: Optional[bool] = None  # ||f||_{phi,phi} < inf

    @property
    def consistent(self):
        """Both equivalences ``h_integrable <=> plain finite`` and ``g_integrable <=> mixed finite``."""
        ok = True
        if self.plain_finite is not None:
            ok &= self.h_integrable == self.plain_finite
        if self.mixed_finite is not None:
            ok &= self.g_integrable == self.mixed_finite
        return ok


def profiles_G_H(f, phi, y_grid=None, cross_check=True, rtol=1e-6):
    """Sample ``G(y) = phi(||f(., y)||_phi)`` and ``H(y) = ||phi(|f(., y)|)||_1``.

    Integrability of each profile is decided by the shell test of the line
    quadrature.  With ``cross_check`` the plain modular on the plane and the
    mixed norm are computed independently, so the two equivalences can be
    compared.
    """
    if f.dim != 2:
        raise ParameterError("profiles need a two-dimensional integrand")
    y_grid = y_grid or GridSpec(1e-3, 1e3, 61)
    pts = y_grid.points()
    ys = np.concatenate([-pts[::-1], [0.0], pts])
    if f.is_zero:
        zeros = np.zeros_like(ys)
        return ProfileReport(ys, zeros, zeros, True, True, 0.0, 0.0, True if cross_check else None,
                             True if cross_check else None)
    exps = lebesgue_exponents(phi)
    inner = _inner_norm_fn(f, phi, exps, INNER_RTOL)
    h = inner[0]

    def slice_modular(y):
        sl = SliceIntegrand(f, y)
        res = integrate_line(lambda x: phi.eval(np.abs(sl(x))), sl.support(), sl.breakpoints(), rtol=1e-10)
        return math.inf if res.divergent else res.value

    def G_at(y):
        val = h(y)
        return math.inf if math.isinf(val) else float(phi.eval(val))

    def vec(fn):
        return lambda yy: np.array([fn(float(v)) for v in np.ravel(yy)])

    G = vec(G_at)(ys)
    H = vec(slice_modular)(ys)
    g_res = integrate_line(vec(G_at), f.y_support(), f.y_breakpoints(), rtol=rtol)
    h_res = integrate_line(vec(slice_modular), f.y_support(), f.y_breakpoints(), rtol=rtol)
    rep = ProfileReport(ys, G, H, not g_res.divergent, not h_res.divergent,
                        math.inf if g_res.divergent else g_res.value,
                        math.inf if h_res.divergent else h_res.value)
    if cross_check:
        plane = integrate_plane(lambda x, y: phi.eval(np.abs(f(x, y))), f.slice_geometry, rtol=1e-8,
                                outer_support=f.y_support(), outer_breakpoints=f.y_breakpoints())
        rep.plain_finite = not plane.divergent
        rep.mixed_finite = math.isfinite(mixed_norm(f, phi, components=False, _inner=inner).norm)
    return rep
