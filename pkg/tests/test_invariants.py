import random
from fractions import Fraction

import pytest

from involutive_gv.errors import NotPolynomial, WindowTooSmall
from involutive_gv.invariants import (
    ClassSeries,
    SurfaceType,
    certify_polynomial,
    extract_with_retry,
    gv_extract,
    gv_forward,
    hyperelliptic_series,
    kkv_invariants,
    kkv_table,
    ngh_polynomials,
    ngh_table,
    product_side_table,
)
from involutive_gv.laurent import PSI_W, PSI_Y, Laurent2, psi
from involutive_gv.series import WindowSeries, psi_twisted

from oracles import int_power_product


def test_kkv_examples():
    assert kkv_invariants(-1) == {0: -1}
    assert kkv_invariants(0) == {0: -24, 1: 2}
    with pytest.raises(ValueError):
        kkv_invariants(-2)


def test_kkv_genus_zero_specialization():
    # at y = -1 only h = 0 survives and R becomes 1/Delta
    table = kkv_table(10)
    inv_delta = int_power_product(-24, 11)
    assert [table[d].get(0, 0) for d in range(-1, 11)] == [-c for c in inv_delta]


def test_reference_low_degrees():
    t = ngh_table(SurfaceType.A_ODD, 2)
    assert t.entries == {
        (0, 1, 0): -4,
        (1, 2, 0): -16,
        (2, 2, 0): -48,
        (2, 3, 0): -24,
        (2, 3, 1): 8,
    }


def test_divisibility_skips():
    assert ngh_table(SurfaceType.A_EV, 7).skipped == [1, 2, 3, 5, 6, 7]
    assert ngh_table(SurfaceType.NI_EV, 4).skipped == [1, 2, 3]
    assert ngh_table(SurfaceType.N_II, 4).skipped == [1, 3]
    assert ngh_table(SurfaceType.A_ODD, 4).skipped == []
    assert all(d % 4 == 0 for d, _, _ in ngh_table(SurfaceType.A_EV, 8).entries)


@pytest.mark.parametrize("stype", list(SurfaceType))
def test_polynomials_symmetric_integral(stype):
    for d, p in ngh_polynomials(stype, 8).items():
        assert p.is_symmetric() and p.swap_w() == p and p.is_integer(), (stype, d)


@pytest.mark.parametrize("stype", list(SurfaceType))
def test_entries_respect_constraints(stype):
    t = ngh_table(stype, 8)
    assert not t.anomalies
    for d, g, h in t.entries:
        assert h >= 0 and g + 1 - 2 * h >= 0 and g >= -1


def test_two_pipelines_agree():
    assert product_side_table(SurfaceType.A_ODD, 7) == ngh_table(SurfaceType.A_ODD, 7)
    assert product_side_table(SurfaceType.NI_ODD, 6) == ngh_table(SurfaceType.NI_ODD, 6)
    # the NIodd product starts one step earlier
    assert product_side_table(SurfaceType.NI_ODD, 3, d_min=-1) == ngh_table(SurfaceType.NI_ODD, 3, d_min=-1)
    with pytest.raises(ValueError):
        product_side_table(SurfaceType.A_EV, 3)


def test_product_constant_term():
    assert product_side_table(SurfaceType.A_ODD, 0).entries == {(0, 1, 0): -4}


def test_top_genus_bound():
    for (d, g, h) in ngh_table(SurfaceType.A_ODD, 7).entries:
        assert g <= d + 1


def test_hyperelliptic():
    left, right = hyperelliptic_series(6)
    assert left[0] == Laurent2.const(-4) == right[0]
    assert left[1] == PSI_W.scale(-16) == right[1]
    assert left[2] == PSI_W.scale(-48) + (PSI_W ** 2).scale(-24)
    assert left.agrees_with(right)


def test_forward_single_term():
    lz = gv_forward({(1, 0, 0): 1}, k_max=1, window=(0, 6))
    assert lz[1].agrees_with(psi_twisted(1, -1, (0, 6)).mul_coeff(PSI_W))
    empty = gv_forward({}, m_max=2, window=(-2, 2))
    assert all(len(empty[m]) == 0 for m in (1, 2))


def test_forward_football_shape():
    lz = gv_forward({(1, 0, 0): 1}, k_max=3, m_max=3, window=(0, 9))
    want2 = psi_twisted(2, -1, (0, 9)).mul_coeff(psi("w", 1, 2)).scale(Fraction(1, 2))
    assert lz[2].agrees_with(want2)


def test_roundtrip_seed():
    lz = gv_forward({(1, 2, 1): 1})
    assert gv_extract(lz, 1).entries == {(1, 2, 1): 1}


def test_roundtrip_composite():
    odd = ngh_table(SurfaceType.A_ODD, 3)
    even = ngh_table(SurfaceType.A_EV, 0)
    table = {}
    for m, (src, d) in {1: (odd, 3), 2: (even, 0), 3: (odd, 2)}.items():
        for (g, h), n in src.at(d).items():
            table[(m, g, h)] = n
    got = extract_with_retry(lambda w: gv_forward(table, m_max=3, window=w), 3, max_genus=6)
    assert got.entries == table


def test_roundtrip_random():
    rng = random.Random(7)
    for _ in range(10):
        table = {}
        for m in range(1, 4):
            for _ in range(rng.randint(0, 3)):
                g = rng.randint(-1, 6)
                h = rng.randint(0, max(0, (g + 1) // 2))
                table[(m, g, h)] = rng.choice([-3, -2, -1, 1, 2, 5, 40])
        got = extract_with_retry(lambda w: gv_forward(table, m_max=3, window=w), 3, max_genus=6)
        assert got.entries == table


def test_certify():
    p = PSI_Y ** 2 * PSI_W
    assert certify_polynomial(WindowSeries.from_laurent(p, hi=5)) == p
    with pytest.raises(WindowTooSmall):
        certify_polynomial(WindowSeries.from_laurent(p, hi=2))
    tail = WindowSeries.from_laurent(p + Laurent2.monomial(1, y=4), hi=6)
    with pytest.raises(NotPolynomial):
        certify_polynomial(tail)
    with pytest.raises(NotPolynomial):
        certify_polynomial(WindowSeries({1: 1}, order=5, lead=0))


def test_extract_rejects_non_gv_input():
    # psi_y * y = y^2 + 2y + 1 is not symmetric, so no psi_y-clearing exists
    bad = ClassSeries._make({2: WindowSeries({1: 1}, order=8, lead=0)}, 2, 2)
    with pytest.raises(NotPolynomial):
        gv_extract(bad, 1)
