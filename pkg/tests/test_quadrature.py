import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orlicz.quadrature import gauss_kronrod, integrate_interval, integrate_line, integrate_plane


def test_kronrod_exact_for_polynomials():
    k, err, _, _ = gauss_kronrod(lambda x: x**10, np.array([0.0]), np.array([1.0]))
    assert k[0] == pytest.approx(1 / 11, rel=1e-14)


def test_interval_with_kink():
    res = integrate_interval(lambda x: np.abs(x - 0.3), 0.0, 1.0, rtol=1e-12, breakpoints=(0.3,))
    assert res.value == pytest.approx(0.3**2 / 2 + 0.7**2 / 2, rel=1e-13)


def test_line_lorentzian():
    res = integrate_line(lambda x: 1 / (1 + x * x))
    assert not res.divergent
    assert res.value == pytest.approx(math.pi, rel=1e-10)


@given(s=st.floats(0.55, 3.0))
def test_line_power_tails(s):
    # integral of (1+x^2)^(-s) = sqrt(pi) Gamma(s - 1/2) / Gamma(s)
    exact = math.exp(0.5 * math.log(math.pi) + math.lgamma(s - 0.5) - math.lgamma(s))
    res = integrate_line(lambda x: (1 + x * x) ** (-s), rtol=1e-10)
    assert res.value == pytest.approx(exact, rel=1e-7)


@pytest.mark.parametrize("s", [0.5, 0.4, 0.25])
def test_line_flags_divergence(s):
    assert integrate_line(lambda x: (1 + x * x) ** (-s)).divergent


def test_line_half_support_and_indicator():
    res = integrate_line(lambda x: np.where((x >= 2) & (x <= 5), 3.0, 0.0), (2.0, 5.0), (2.0, 5.0))
    assert res.value == pytest.approx(9.0, rel=1e-14)


def test_rule_reweighs():
    res = integrate_line(lambda x: np.exp(-x * x))
    assert res.reweigh(np.exp(-res.nodes**2)) == pytest.approx(math.sqrt(math.pi), rel=1e-10)
    assert res.reweigh(2 * np.exp(-res.nodes**2)) == pytest.approx(2 * math.sqrt(math.pi), rel=1e-10)


def test_plane_gaussian():
    res = integrate_plane(lambda x, y: np.exp(-x * x - 2 * y * y), lambda y: ((-math.inf, math.inf), ()))
    assert res.value == pytest.approx(math.pi / math.sqrt(2), rel=1e-8)
    assert res.nodes.shape[1] == 2
    assert res.reweigh(np.exp(-res.nodes[:, 0] ** 2 - 2 * res.nodes[:, 1] ** 2)) == pytest.approx(res.value, rel=1e-12)
