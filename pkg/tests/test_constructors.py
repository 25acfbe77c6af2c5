import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orlicz.analysis import equivalence_scan
from orlicz.constructors import (
    construct_epsilon_tight,
    construct_target_exponents,
    construct_widened,
    exponent_gap,
    item3_splice,
    make_equivalent_power_family,
)
from orlicz.errors import Infeasible, LimitsRequired, ParameterError
from orlicz.exponents import lebesgue_exponents
from orlicz.young import ExpMinusOne, Power, PowerExp, PowerLogShift, PowerSum, validate


def test_target_reference_tuple():
    phi, params = construct_target_exponents(1.5, 2, 3, 1.2, 4)
    q, p = lebesgue_exponents(phi)
    assert (q, p) == pytest.approx((1.5, 3), abs=1e-12)
    assert params.k == pytest.approx(-0.4)
    assert 1 < params.gamma < params.delta
    rep = validate(phi)
    assert rep.valid and not rep.knots


@given(
    p1=st.floats(1.1, 3.0),
    dp=st.floats(0.1, 1.5),
    dp2=st.floats(0.1, 2.0),
    f1=st.floats(0.01, 0.99),
    dr2=st.floats(0.1, 2.0),
)
def test_target_random_tuples(p1, dp, dp2, f1, dr2):
    p = p1 + dp
    p2 = p + dp2
    r1 = 1 + f1 * (p1 - 1)
    r2 = p2 + dr2
    try:
        phi, _ = construct_target_exponents(p1, p, p2, r1, r2)
    except Infeasible:
        return
    q_m, p_m = lebesgue_exponents(phi)
    assert q_m == pytest.approx(p1, abs=1e-5)
    assert p_m == pytest.approx(p2, abs=1e-5)
    assert not validate(phi).knots


def test_target_rejects_bad_order():
    with pytest.raises(ParameterError):
        construct_target_exponents(2, 1.5, 3, 1.2, 4)
    with pytest.raises(ParameterError):
        construct_target_exponents(1.5, 2, 3, 1.6, 4)


def test_equivalent_power_family():
    phi = make_equivalent_power_family(2, 4, 2, 100)
    assert validate(phi).valid
    q, p = lebesgue_exponents(phi)
    assert q == pytest.approx(2, abs=1e-9) and 3.99 < p <= 4 + 1e-9
    assert equivalence_scan(phi, Power(2)).finite


def test_widened_power_log_shift():
    base = PowerLogShift()
    psi, params = construct_widened(base, 1.5, 3, 1.2, 4)
    q, p = lebesgue_exponents(psi)
    assert q < 1.5 and p > 3
    assert validate(psi).valid
    assert equivalence_scan(psi, base).finite
    assert params.search_steps > 0


def test_widened_infeasible_targets():
    with pytest.raises(Infeasible):
        construct_widened(PowerLogShift(), 2.5, 3, 1.2, 4)


def test_epsilon_tight_gaps():
    base = PowerSum(2, 3)
    gaps = []
    for n in (1e2, 1e3, 1e4):
        psi, params = construct_epsilon_tight(base, 2.5, n)
        assert validate(psi).valid
        assert equivalence_scan(psi, base).finite
        gaps.append(exponent_gap(psi, 2, 3))
    assert all(b <= a + 1e-9 for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.02


def test_epsilon_tight_needs_limits():
    with pytest.raises(LimitsRequired):
        construct_epsilon_tight(PowerExp(1))
    with pytest.raises(ParameterError):
        construct_epsilon_tight(PowerSum(2, 3), r=3.5)


def test_params_render():
    _, params = construct_target_exponents(1.5, 2, 3, 1.2, 4)
    text = params.render()
    assert text.splitlines()[0] == "# construction = target"
    assert all(line.startswith("# ") for line in text.splitlines())
    assert params.as_dict()["r2"] == 4.0


def test_item3_exponents():
    assert lebesgue_exponents(item3_splice()) == pytest.approx((4 / 3, 2), abs=1e-12)
    assert math.isinf(lebesgue_exponents(ExpMinusOne()).p)
