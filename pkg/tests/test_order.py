import pytest
from hypothesis import given, strategies as st

import naive
from recurmod.core import Recurrence
from recurmod.order import (
    STABILIZATION_CAP,
    order,
    order_composite,
    order_direct,
    order_lifted,
    period_length_divides,
    stabilization_exponent,
)


@pytest.mark.parametrize("m,k", [(2, 3), (4, 6), (5, 12), (25, 60), (7, 16), (13, 52), (169, 676), (2197, 8788)])
def test_orders_for_q3(m, k):
    assert order(3, m) == k
    assert order_direct(3, 1, m).order == k


@pytest.mark.parametrize("m,k", [(2, 3), (3, 8), (5, 20), (10, 60), (100, 300), (1000, 1500)])
def test_pisano_periods(m, k):
    assert order(1, m) == k


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("q", [-8, -5, -2, -1, 1, 2, 4, 7, 8])
def test_orders_match_naive_matrix_powers(q, sign):
    for m in range(2, 120):
        k = naive.matrix_order(q, m, sign)
        assert order_direct(q, sign, m).order == k
        assert order_composite(q, sign, m).order == k


@given(st.integers(-20, 20).filter(bool), st.integers(2, 5000), st.sampled_from([1, -1]))
def test_composite_equals_direct(q, m, sign):
    assert order_composite(q, sign, m).order == order_direct(q, sign, m).order


@pytest.mark.parametrize("q", [q for q in range(1, 101) if q % 5 in (1, 4)])
def test_order_mod5_is_20(q):
    assert order(q, 5) == 20


@pytest.mark.parametrize("q", [q for q in range(1, 101) if q % 5 in (2, 3)])
def test_order_mod5_is_12(q):
    assert order(q, 5) == 12


@pytest.mark.parametrize("q", [q for q in range(1, 60) if q % 3 and q % 9 not in (4, 5)])
def test_three_power_orders(q):
    assert [order_lifted(q, 1, 3, n).order for n in range(1, 6)] == [8 * 3 ** (n - 1) for n in range(1, 6)]


@pytest.mark.parametrize("q", [4, 5, 13, 14, 22, 23])
def test_three_power_orders_stall(q):
    assert order(q, 3) == order(q, 9) == 8
    assert order(q, 27) in (8, 24)
    assert stabilization_exponent(q, 1, 3) >= 2


@pytest.mark.parametrize("q", [7, 18, 32, 43, 57, 68])
def test_five_power_orders_stall(q):
    assert order(q, 5) == order(q, 25) == 12
    assert order(q, 125) in (12, 60)


def test_stabilization_cap_falls_back_to_direct():
    # p = 2 for q = 2: the chain may stall longer than the cap; lifted must still be exact
    for q in (2, 6, 10, 26):
        for e in range(1, 9):
            assert order_lifted(q, 1, 2, e).order == order_direct(q, 1, 2**e).order
    assert STABILIZATION_CAP == 3


def test_composite_factors_recorded():
    res = order_composite(3, 1, 4 * 13 * 25)
    assert res.order == order_direct(3, 1, 1300).order
    assert [(p, e) for p, e, _ in res.factors] == [(2, 2), (5, 2), (13, 1)]


@pytest.mark.parametrize("a,b,q", [(0, 1, 3), (2, 2, 2), (2, 1, 1), (3, 5, -4), (0, 3, 1)])
def test_period_divides_order(a, b, q):
    rec = Recurrence(a, b, q)
    for m in range(2, 150):
        if rec.is_trivial_mod(m):
            continue
        res = period_length_divides(rec, m)
        assert res.divides and res.order % res.period_length == 0
