from fractions import Fraction

import pytest

from involutive_gv.laurent import PSI_W, PSI_Y, psi
from involutive_gv.series import psi_twisted
from involutive_gv.worked import (
    EllipticFiberParams,
    LocalCurveParams,
    alternating_sum_matches,
    elliptic_fiber_invariants,
    football_closed_form,
    football_invariants,
    football_log,
    gen_binomial,
    local_curve_coefficient,
    regrouping_holds,
    sym_euler,
)


def test_sym_euler():
    # genus 0: Sym^d P^1 = P^d
    assert [sym_euler(0, d) for d in range(5)] == [1, 2, 3, 4, 5]
    assert [sym_euler(1, d) for d in range(4)] == [1, 0, 0, 0]
    assert [sym_euler(2, d) for d in range(4)] == [1, -2, 1, 0]
    assert gen_binomial(-2, 3) == -4


def test_local_curve_named_cases():
    c = local_curve_coefficient(LocalCurveParams(2, 1), 8)
    assert c.ok and c.computed.to_laurent() == PSI_W
    c = local_curve_coefficient(LocalCurveParams(0, 0), 8)
    assert c.ok
    assert c.expected.agrees_with(psi_twisted(1, -1, (1, 8)).mul_coeff(PSI_W))
    c = local_curve_coefficient(LocalCurveParams(3, 2), 8)
    assert c.ok and c.computed.to_laurent() == PSI_Y


@pytest.mark.parametrize("g", range(9))
def test_local_curve_all(g):
    for h in range((g + 1) // 2 + 1):
        assert local_curve_coefficient(LocalCurveParams(g, h), 12).ok, (g, h)


def test_local_curve_params():
    with pytest.raises(ValueError):
        LocalCurveParams(1, 2)
    assert LocalCurveParams(5, 2).m == 2


@pytest.mark.parametrize(
    "e0,e1,want",
    [
        (2, 6, {(1, 0): -2}),
        (0, 0, {}),
        (-2, -2, {(1, 0): 2, (0, 0): -4}),
        (24, 0, {(1, 0): -24, (0, 0): 72}),
        (1, 3, {(1, 0): -1}),
    ],
)
def test_elliptic_fiber(e0, e1, want):
    assert elliptic_fiber_invariants(EllipticFiberParams(e0, e1), 6) == want


def test_elliptic_order_guard():
    with pytest.raises(ValueError):
        elliptic_fiber_invariants(EllipticFiberParams(1, 1), 3)


def test_identities():
    assert regrouping_holds()
    for order in (1, 5, 17):
        assert alternating_sum_matches(order)


def test_football_log():
    lz = football_log(4, 10)
    assert lz[1].agrees_with(psi_twisted(1, -1, (0, 10)).mul_coeff(PSI_W))
    want2 = psi_twisted(2, -1, (0, 10)).mul_coeff(psi("w", 1, 2)).scale(Fraction(1, 2))
    assert lz[2].agrees_with(want2)
    assert lz.agrees_with(football_closed_form(4, 10))


def test_football_invariants():
    t = football_invariants(4)
    assert t.entries == {(1, 0, 0): 1}
    assert all(not t.at(d) for d in (2, 3, 4))
