import math

import pytest

from orlicz.errors import ParameterError
from orlicz.integrands import CauchyPower, GaussQuad, Indicator, Separable, Zero
from orlicz.mixed import (
    GAUSS_L21_CONSTANT,
    counterexample_integrand,
    counterexample_partial_sums,
    gaussian_family_numeric,
    gaussian_family_values,
    mixed_lebesgue_norm,
    mixed_norm,
    plane_lp_norm,
    profiles_G_H,
)
from orlicz.norms import luxemburg_norm
from orlicz.young import Power, PowerLog, PowerSum


def test_gaussian_closed_forms():
    s, l21 = gaussian_family_values(4)
    assert s == pytest.approx(math.pi + math.sqrt(math.pi / 2))
    assert l21 == pytest.approx(GAUSS_L21_CONSTANT * math.sqrt(2))
    with pytest.raises(ParameterError):
        gaussian_family_values(1)


def test_gaussian_numeric_matches_closed_forms():
    s, l21 = gaussian_family_numeric(3)
    exp_s, exp_l21 = gaussian_family_values(3)
    assert s == pytest.approx(exp_s, rel=1e-8)
    assert l21 == pytest.approx(exp_l21, rel=1e-8)


def test_plane_moments_of_gauss_quad():
    # the quadratic form has determinant 1, so integral f^r = pi / r
    f = GaussQuad(5)
    assert plane_lp_norm(f, 2) ** 2 == pytest.approx(math.pi / 2, rel=1e-9)
    assert mixed_lebesgue_norm(f, 1, 1) == pytest.approx(math.pi, rel=1e-9)


def test_separable_mixed_norm_is_product_for_powers():
    g, h = CauchyPower(1.0), Indicator(2, 1.5)
    f = Separable(g, h)
    phi = Power(3)
    res = mixed_norm(f, phi)
    expected = luxemburg_norm(g, phi).norm * luxemburg_norm(h, phi).norm
    assert res.norm == pytest.approx(expected, rel=1e-6)
    assert res.profile == sorted(res.profile)


def test_mixed_norm_reports_components_for_t_plus_t2():
    f = Separable(Indicator(1, 2.0), Indicator(1, 1.0))
    res = mixed_norm(f, PowerSum(1, 2))
    assert res.l11 == pytest.approx(2.0, rel=1e-9)
    assert res.l21 == pytest.approx(2.0, rel=1e-9)


def test_mixed_norm_divergent_profile():
    f = Separable(Indicator(1, 1), CauchyPower(0.25))
    assert math.isinf(mixed_norm(f, PowerSum(2, 3), components=False).norm)


def test_mixed_norm_needs_plane():
    with pytest.raises(ParameterError):
        mixed_norm(CauchyPower(1.0), Power(2))
    assert mixed_norm(Zero(2), Power(2)).norm == 0.0


def test_counterexample_partial_sums():
    phi_lo, l21_lo = counterexample_partial_sums(100)
    phi_hi, l21_hi = counterexample_partial_sums(10_000)
    # the lower bound grows like C ln N
    assert l21_hi - l21_lo == pytest.approx(GAUSS_L21_CONSTANT * math.log(100), rel=1e-2)
    # the phi bound converges (to (pi + sqrt(pi/2)) (zeta(5/4) - 1)), but slowly
    assert phi_lo < phi_hi < (math.pi + math.sqrt(math.pi / 2)) * (4.595111 - 1)
    assert len(counterexample_integrand(5).terms) == 4


def test_profiles_consistency_on_separable_cases():
    ok = profiles_G_H(Separable(CauchyPower(1.0), Indicator(1, 1)), PowerSum(2, 3))
    assert ok.g_integrable and ok.h_integrable and ok.consistent
    bad = profiles_G_H(Separable(CauchyPower(0.25), Indicator(1, 1)), PowerSum(2, 3))
    assert not bad.g_integrable and not bad.h_integrable and bad.consistent
    tail = profiles_G_H(Separable(Indicator(1, 1), CauchyPower(0.2)), PowerLog(2, 1))
    assert tail.consistent and tail.mixed_finite
