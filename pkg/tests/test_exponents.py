import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orlicz.constructors import item3_splice, item4_splice
from orlicz.errors import Delta2Required, NonStrict
from orlicz.exponents import (
    delta2_check,
    exponent_report,
    extrapolate_limit,
    lebesgue_exponents,
    limit_exponents_g,
    limit_exponents_r,
    normalized_bounds_check,
    scaling_inequality_check,
)
from orlicz.young import Dual23, ExpMinusOne, FlatOrigin, GridSpec, Power, PowerExp, PowerLog, PowerLogShift, PowerSum

FINITE = [Power(2), PowerSum(2, 3), PowerLog(2, 1), PowerLog(1, 1), PowerLogShift(), Dual23(), item3_splice(),
          item4_splice()]


@pytest.mark.parametrize(
    "phi,q,p",
    [
        (Power(2.5), 2.5, 2.5),
        (PowerSum(2, 3), 2, 3),
        (PowerLog(2, 1), 2, 3),
        (PowerLog(2, 2), 2, 4),
        (Dual23(), 1.5, 3),
        (item3_splice(), 4 / 3, 2),
        (item4_splice(), 2, 48 / 17),
    ],
    ids=lambda x: getattr(x, "spec", lambda: str(x))()[:30],
)
def test_exponents(phi, q, p):
    eq, ep = lebesgue_exponents(phi)
    assert eq == pytest.approx(q, abs=1e-9)
    assert ep == pytest.approx(p, abs=1e-9)


def test_exponential_growth_has_infinite_p():
    for phi in (PowerExp(1), ExpMinusOne()):
        q, p = lebesgue_exponents(phi)
        assert q == pytest.approx(1, abs=1e-9) and math.isinf(p)


def test_nonstrict_refused():
    with pytest.raises(NonStrict):
        lebesgue_exponents(FlatOrigin())


def test_g_limits():
    assert limit_exponents_g(PowerLog(2, 1)) == pytest.approx((3, 2), abs=1e-9)
    p0, pinf = limit_exponents_g(PowerExp(1))
    assert p0 == pytest.approx(1, abs=1e-9) and math.isinf(pinf)
    assert limit_exponents_g(PowerLogShift()) == pytest.approx((2, 2), abs=1e-8)


def test_extrapolation_recovers_limit():
    k = np.arange(1, 13, dtype=float)
    est = extrapolate_limit(1 / k, 2 + 1 / k + 0.5 / k**2)
    assert est.value == pytest.approx(2, abs=1e-8)


def test_r_limits_agree_with_g_limits():
    for phi in FINITE:
        g0, ginf = limit_exponents_g(phi)
        r = limit_exponents_r(phi)
        assert r.r0 == pytest.approx(g0, abs=1e-3)
        assert r.r_inf == pytest.approx(ginf, abs=1e-3)


def test_r_limits_need_delta2():
    with pytest.raises(Delta2Required):
        limit_exponents_r(PowerExp(1))


def test_delta2():
    d = delta2_check(PowerSum(2, 3))
    assert d.holds and d.constant == pytest.approx(8, rel=1e-3)
    assert not delta2_check(ExpMinusOne()).holds
    assert not delta2_check(FlatOrigin()).holds


@pytest.mark.parametrize("phi", FINITE, ids=lambda p: p.spec()[:30])
@given(c=st.floats(1e-6, 1e6), t=st.floats(1e-6, 1e6))
def test_scaling_inequalities(phi, c, t):
    assert scaling_inequality_check(phi, [(c, t)], exponents=_EXPS[phi.spec()]) == []


_EXPS = {phi.spec(): lebesgue_exponents(phi) for phi in FINITE}


@pytest.mark.parametrize("phi", FINITE, ids=lambda p: p.spec()[:30])
def test_normalized_bounds(phi):
    assert normalized_bounds_check(phi, exponents=_EXPS[phi.spec()]) == []


def test_wrong_exponents_are_caught():
    # claiming q = 2.5 for t^2 + t^3 must produce violations
    bad = scaling_inequality_check(PowerSum(2, 3), [(0.1, 0.01), (10.0, 0.01)], exponents=(2.5, 3))
    assert bad


def test_report_lines():
    rep = exponent_report(PowerLog(2, 1), GridSpec(1e-6, 1e6, 241))
    text = "\n".join(rep.lines())
    assert "q = 2" in text and "p = 3" in text and "delta2 = holds" in text
