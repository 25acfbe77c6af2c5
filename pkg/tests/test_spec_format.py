import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orlicz.constructors import construct_epsilon_tight, construct_widened, item3_splice
from orlicz.errors import InvalidYoungFunction, SpecParseError
from orlicz.integrands import CauchyPower, GaussQuad, Indicator, Separable, Zero, from_moments
from orlicz.spec_format import parse_integrand, parse_spec, parse_young, render
from orlicz.young import Combination, GridSpec, Power, PowerLog, PowerLogShift, PowerSum, Scaled, Segment, Splice

T = GridSpec().points()


def test_catalog_and_item3():
    assert parse_spec("catalog(power, 2)") == Power(2)
    s = parse_spec("splice([(0,1): power(0.5,2,0)], [(1,2): power(1,1,-0.5)], [(2,inf): power(0.25,2,0.5)])")
    assert np.array_equal(s.eval(T), item3_splice().eval(T))


def test_comments_and_whitespace():
    text = "# item3\nsplice(\n  [(0,1): power(0.5,2,0)],  # quadratic\n  [(1,inf): power(1,1,-0.5)]\n)"
    assert parse_young(text).knots == (1.0,)


@pytest.mark.parametrize(
    "obj",
    [
        item3_splice(),
        PowerLog(2, 1),
        Scaled(PowerLog(2, 1)),
        Scaled(Power(2), 3.0),
        Combination([Power(2), Power(3)], "max"),
        Combination([Power(2), PowerSum(2, 3)], "sum", [0.3, 2.0]),
        construct_widened(PowerLogShift(), 1.5, 3, 1.2, 4)[0],
        construct_epsilon_tight(PowerSum(2, 3), 2.5, 1e3)[0],
    ],
    ids=lambda o: o.spec()[:30],
)
def test_round_trip_functions(obj):
    back = parse_spec(render(obj))
    assert np.allclose(back.eval(T), obj.eval(T), rtol=1e-15, atol=0)


@given(
    a=st.floats(0.1, 10), r=st.floats(1, 4), knot=st.floats(0.5, 5),
)
def test_round_trip_random_two_piece_splices(a, r, knot):
    # continuous, C1 at the knot and convex: slope a r knot^(r-1) continued by a line
    slope = a * r * knot ** (r - 1)
    val = a * knot**r
    s = Splice([Segment(0, knot, "power", (a, r, 0.0)), Segment(knot, math.inf, "power", (slope, 1.0, val - slope * knot))])
    back = parse_spec(render(s))
    assert np.array_equal(back.eval(T), s.eval(T))


@pytest.mark.parametrize(
    "obj",
    [CauchyPower(0.5, half=True), Zero(2), GaussQuad(3), Indicator(2, 1.5, 0.5),
     Separable(CauchyPower(1.0), Indicator(2, 1.5)), from_moments(math.pi / 2, 1, 2, 3)],
    ids=lambda o: o.spec()[:30],
)
def test_round_trip_integrands(obj):
    assert render(parse_integrand(render(obj))) == render(obj)


def test_parse_errors_carry_position():
    with pytest.raises(SpecParseError) as e:
        parse_spec("splice([(0,2): power(1,2,0)],\n  [(1,inf): power(1,2,0)])")
    assert (e.value.line, e.value.column) == (2, 3)
    with pytest.raises(SpecParseError) as e:
        parse_spec("catalog(power, 2")
    assert e.value.column == 17
    for bad in ("catalog(power,\n 2 $)", "nope(1)", "catalog(power, 2) extra", "sum(1, catalog(power,2), 1, cauchy(1))",
                "splice([(0,inf): power(1,2)])", "catalog(nope)"):
        with pytest.raises(SpecParseError):
            parse_spec(bad)


def test_validation_error_lists_axiom():
    with pytest.raises(InvalidYoungFunction) as e:
        parse_spec("splice([(0,1): power(1,0.5,0)], [(1,inf): power(1,0.5,0)])")
    assert "chord" in str(e.value)


def test_kind_checks():
    with pytest.raises(SpecParseError):
        parse_young("cauchy(1)")
    with pytest.raises(SpecParseError):
        parse_integrand("catalog(power, 2)")
