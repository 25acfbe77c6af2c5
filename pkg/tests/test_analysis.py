import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orlicz.analysis import (
    class_exponents,
    combine_equivalent,
    derivative_equivalence_constant,
    equivalence_scan,
    inclusion_report,
    modular_norm_multiplicativity_check,
    multiplicativity_scan,
)
from orlicz.constructors import construct_epsilon_tight, construct_widened, item3_splice, item4_splice
from orlicz.errors import BoundViolation, Delta2Required, LimitsRequired
from orlicz.exponents import lebesgue_exponents, limit_exponents_r
from orlicz.integrands import CauchyPower, Indicator, from_moments
from orlicz.young import (
    Dual23,
    ExpMinusOne,
    FlatOrigin,
    Power,
    PowerExp,
    PowerLog,
    PowerLogShift,
    PowerSum,
)

FORMS = [Power(2), Power(3), PowerSum(2, 3), PowerLog(2, 1), PowerLogShift(), Dual23(), item3_splice(), item4_splice(),
         ExpMinusOne(), FlatOrigin()]


def test_declared_equivalent_pairs():
    for phi in (item3_splice(), item4_splice()):
        rep = equivalence_scan(phi, Power(2))
        assert rep.finite and rep.c_scan >= 1


def test_declared_non_equivalent_pairs():
    rep = equivalence_scan(PowerLog(2, 1), PowerSum(2, 3))
    assert rep.bounded == "diverging at 0"
    f, which = rep.witness
    assert which == "psi"
    assert not equivalence_scan(FlatOrigin(), ExpMinusOne()).finite


def test_self_scan_is_one():
    assert equivalence_scan(PowerLog(2, 1), PowerLog(2, 1)).c_scan == 1.0


@given(i=st.integers(0, len(FORMS) - 1), j=st.integers(0, len(FORMS) - 1))
def test_scan_is_symmetric(i, j):
    a = equivalence_scan(FORMS[i], FORMS[j])
    b = equivalence_scan(FORMS[j], FORMS[i])
    assert a.c_scan == b.c_scan and a.bounded == b.bounded


def test_constructor_outputs_are_equivalent_to_base():
    base = PowerLogShift()
    psi, _ = construct_widened(base, 1.5, 3, 1.2, 4)
    assert equivalence_scan(psi, base).finite
    for n in (1e2, 1e3):
        psi, _ = construct_epsilon_tight(PowerSum(2, 3), 2.5, n)
        assert equivalence_scan(psi, PowerSum(2, 3)).finite


def test_class_exponents_and_invariance():
    assert class_exponents(PowerLogShift()) == pytest.approx((2, 2), abs=1e-8)
    assert class_exponents(PowerLog(2, 1)) == pytest.approx((3, 2), abs=1e-9)
    assert class_exponents(Power(2.5)) == (2.5, 2.5)
    base = PowerLogShift()
    psi, _ = construct_widened(base, 1.5, 3, 1.2, 4)
    assert class_exponents(psi) == pytest.approx(class_exponents(base), abs=1e-3)
    eps, _ = construct_epsilon_tight(PowerSum(2, 3), 2.5, 1e3)
    assert class_exponents(eps) == pytest.approx(class_exponents(PowerSum(2, 3)), abs=1e-3)


def test_r_limits_agree_on_equivalent_pairs():
    base = PowerLogShift()
    psi, _ = construct_widened(base, 1.5, 3, 1.2, 4)
    a, b = limit_exponents_r(psi), limit_exponents_r(base)
    assert a.r0 == pytest.approx(b.r0, abs=1e-3) and a.r_inf == pytest.approx(b.r_inf, abs=1e-3)


def test_class_exponents_need_limits():
    class NoLimits(PowerSum):
        pass

    import orlicz.analysis as analysis

    orig = analysis.limit_exponents_g
    analysis.limit_exponents_g = lambda phi: (None, 2.0)
    try:
        with pytest.raises(LimitsRequired):
            class_exponents(NoLimits(2, 3))
    finally:
        analysis.limit_exponents_g = orig


def test_derivative_constant():
    q, p = lebesgue_exponents(PowerLog(2, 1))
    assert derivative_equivalence_constant(PowerLog(2, 1), PowerLog(2, 1), 1.0) == pytest.approx(p / q)
    assert derivative_equivalence_constant(Power(3), Power(3), 1.0) == 1.0
    c = equivalence_scan(item3_splice(), Power(2)).c_scan
    assert derivative_equivalence_constant(item3_splice(), Power(2), c) >= c


def test_derivative_constant_detects_bad_c():
    with pytest.raises(BoundViolation):
        derivative_equivalence_constant(PowerSum(2, 3), Power(2), 1.0)


def test_multiplicativity():
    rep = multiplicativity_scan(Power(2.5))
    assert rep.is_pure_power and rep.detected_p == pytest.approx(2.5, abs=1e-12)
    assert rep.sub_c == pytest.approx(1) and rep.super_c == pytest.approx(1)
    sub_c, super_c, pure, _ = multiplicativity_scan(PowerSum(2, 3))
    assert sub_c <= 1 and not pure and (super_c is None or super_c < sub_c)
    assert multiplicativity_scan(PowerExp(1)).sub_c is None


def test_pure_power_iff_equal_exponents():
    for phi in (Power(1), Power(2), Power(3.5), PowerSum(2, 3), PowerLog(2, 1), PowerLogShift(), Dual23()):
        q, p = lebesgue_exponents(phi)
        assert multiplicativity_scan(phi).is_pure_power == (abs(p - q) <= 1e-9)


def test_modular_norm_multiplicativity():
    witnesses = [from_moments(math.pi / 2, 1, 2, 3), Indicator(1, 1), Indicator(10, 0.1), Indicator(0.1, 10)]
    assert modular_norm_multiplicativity_check(PowerSum(2, 3), 1.0, "sub", witnesses) == []
    assert modular_norm_multiplicativity_check(Power(2), 1.0, "sub", [CauchyPower(1.0)]) == []
    assert modular_norm_multiplicativity_check(Power(2), 1.0, "super", [CauchyPower(1.0)]) == []
    # a constant that is too small must be flagged
    assert modular_norm_multiplicativity_check(PowerSum(2, 3), 0.2, "sub", witnesses[:1])


def test_inclusions():
    rep = inclusion_report(PowerLog(2, 1))
    assert rep.baseline == pytest.approx((2, 3), abs=1e-9)
    assert rep.r_range == pytest.approx((2, 3), abs=1e-3)
    assert rep.class_range == pytest.approx((2, 3), abs=1e-9)
    rows = rep.csv_rows()
    assert rows[0] == ("level", "q_bound", "q_kind", "p_bound", "p_kind") and len(rows) == 4
    assert "r limits" in "\n".join(rep.lines())
    p = inclusion_report(Power(2.5))
    assert p.baseline == (2.5, 2.5) and p.class_range == (2.5, 2.5)
    with pytest.raises(Delta2Required):
        inclusion_report(PowerExp(1))


def test_combine_equivalent():
    m = combine_equivalent(Power(2), Power(3), "max")
    q, p = lebesgue_exponents(m)
    assert 2 - 1e-9 <= q and p <= 3 + 1e-9
    w = combine_equivalent(item3_splice(), item4_splice(), "sum", 1.0, 1.0)
    assert equivalence_scan(w, Power(2)).finite
    tiny = combine_equivalent(PowerLog(2, 1), PowerLog(2, 1), "sum", 1.0, 1e-12)
    assert lebesgue_exponents(tiny) == pytest.approx(lebesgue_exponents(PowerLog(2, 1)), abs=1e-9)
