from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from involutive_gv.errors import HalfIntegerLeak, NotIntegral, NotSymmetric
from involutive_gv.laurent import (
    ONE,
    PSI_W,
    PSI_Y,
    Laurent2,
    PsiExpansion,
    doubled,
    psi,
    psi_decompose,
    undoubled,
)


def test_doubled_roundtrip():
    assert doubled(3) == 6
    assert doubled(Fraction(-3, 2)) == -3
    assert undoubled(-3) == Fraction(-3, 2)
    assert undoubled(4) == 2
    with pytest.raises(ValueError):
        doubled(Fraction(1, 3))


def test_psi_values():
    assert PSI_Y == Laurent2({(0, 0): 2, (2, 0): 1, (-2, 0): 1})
    assert psi("y", -1).at_y(1) == Laurent2()
    # psi_y^2 = y^2 + 4y + 6 + 4/y + 1/y^2
    sq = PSI_Y * PSI_Y
    assert [sq.coeff(y=k) for k in range(-2, 3)] == [1, 4, 6, 4, 1]


def test_arithmetic_and_inverse():
    assert not Laurent2.monomial(3, y=1).is_unit()
    p = Laurent2.monomial(-1, y=1, w=-2)
    assert p.is_unit()
    assert p * p.inverse() == ONE
    assert (p + p - p) == p
    assert (PSI_W ** 2).swap_w() == PSI_W ** 2
    assert Laurent2({(0, 0): Fraction(4, 2)}).coeff() == 2
    assert isinstance(Laurent2({(0, 0): Fraction(4, 2)}).coeff(), int)


def test_subs_twists():
    # psi at -(-y)^2 = -y^2
    assert psi("y", -1, 2) == PSI_Y.subs(y_sign=-1, y_pow=2)


def test_decompose_examples():
    assert psi_decompose(Laurent2()).entries == {}
    assert psi_decompose(Laurent2.const(-4)).entries == {(0, 0): -4}
    p = (PSI_Y * PSI_W * PSI_W).scale(8) - PSI_W.scale(3)
    assert psi_decompose(p).entries == {(1, 2): 8, (0, 1): -3}
    assert psi_decompose(p).invariants() == {(3, 1): 8, (0, 0): -3}


def test_decompose_errors():
    with pytest.raises(NotSymmetric):
        psi_decompose(Laurent2.monomial(1, y=1))
    with pytest.raises(NotIntegral):
        psi_decompose(PSI_Y.scale(Fraction(1, 2)))
    with pytest.raises(HalfIntegerLeak):
        psi_decompose(Laurent2({(0, 1): 1, (0, -1): 1}))


expansions = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-50, 50).filter(bool), max_size=6
)


@settings(max_examples=60, deadline=None)
@given(expansions)
def test_decompose_reconstruct_roundtrip(entries):
    p = PsiExpansion(entries).reconstruct()
    assert p.is_symmetric() and p.swap_w() == p
    assert psi_decompose(p).entries == entries


@settings(max_examples=40, deadline=None)
@given(expansions, expansions)
def test_decompose_is_linear(a, b):
    pa, pb = PsiExpansion(a).reconstruct(), PsiExpansion(b).reconstruct()
    got = psi_decompose(pa + pb).entries
    want = {k: a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)}
    assert got == {k: v for k, v in want.items() if v}
