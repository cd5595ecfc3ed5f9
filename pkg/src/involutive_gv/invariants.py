"""Extraction of KKV invariants, the involutive invariants ``n_{g,h}(d; type)``, and
the generic multi-cover transforms between ``log Z`` and invariant tables.

Every theorem-level identity is used in its psi_y-cleared form: both sides are
multiplied by ``psi_y`` so that all decompositions happen in the polynomial
ring.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import HalfIntegerLeak, NotPolynomial, WindowTooSmall
from .forms import infinite_product, reduced_kkv
from .laurent import PSI_Y, Laurent2, psi, psi_decompose
from .lattice import LatticeTag, cosets_for, theta_from_cosets
from .series import QSeries, WindowSeries, dilate, psi_twisted

log = logging.getLogger(__name__)


class SurfaceType(str, Enum):
    A_EV = "Aev"
    A_ODD = "Aodd"
    NI_EV = "NIev"
    NI_ODD = "NIodd"
    N_II = "NII"

    @property
    def lattice(self) -> LatticeTag:
        return {
            SurfaceType.A_EV: LatticeTag.K,
            SurfaceType.A_ODD: LatticeTag.K_SH,
            SurfaceType.NI_EV: LatticeTag.N,
            SurfaceType.NI_ODD: LatticeTag.N_SH,
            SurfaceType.N_II: LatticeTag.N,
        }[self]

    def admits(self, d: int) -> bool:
        """Divisibility constraint on ``d`` for this type."""
        if self in (SurfaceType.A_EV, SurfaceType.NI_EV):
            return d % 4 == 0
        if self is SurfaceType.N_II:
            return d % 2 == 0
        return True


class ClassSeries(QSeries):
    """Series in the curve-class variable ``Q`` (multiples of one primitive class)."""

    var = "Q"
    __slots__ = ()


@dataclass
class InvariantTable:
    """Nonzero invariants keyed by ``(d, g, h)``.

    ``skipped`` lists the ``d`` values refused by the type's divisibility
    constraint; ``anomalies`` collects entries with ``g < -1``.
    """

    type: SurfaceType | None
    entries: dict[tuple[int, int, int], int] = field(default_factory=dict)
    skipped: list[int] = field(default_factory=list)
    anomalies: list[tuple[int, int, int]] = field(default_factory=list)

    def add(self, d: int, g: int, h: int, n: int) -> None:
        if h < 0 or g + 1 - 2 * h < 0:
            raise ValueError(f"invalid (g, h) = ({g}, {h})")
        if n:
            self.entries[(d, g, h)] = n
            if g < -1:
                log.warning("anomalous genus g=%d at d=%d, h=%d", g, d, h)
                self.anomalies.append((d, g, h))

    def rows(self) -> list[tuple[int, int, int, int]]:
        return [(d, g, h, n) for (d, g, h), n in sorted(self.entries.items())]

    def at(self, d: int) -> dict[tuple[int, int], int]:
        return {(g, h): n for (dd, g, h), n in self.entries.items() if dd == d}

    def restricted(self, d_min: int, d_max: int) -> "InvariantTable":
        return InvariantTable(
            self.type,
            {k: v for k, v in self.entries.items() if d_min <= k[0] <= d_max},
            [d for d in self.skipped if d_min <= d <= d_max],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvariantTable):
            return NotImplemented
        return self.type == other.type and self.entries == other.entries


# -- KKV -------------------------------------------------------------------


def kkv_table(d_max: int) -> dict[int, dict[int, int]]:
    """``{d: {h: n_h}}`` for ``-1 <= d <= d_max`` with ``sum_h n_h psi_y**h = -[R]_{q^d}``."""
    r = reduced_kkv(d_max)
    out = {}
    for d in range(-1, d_max + 1):
        expansion = psi_decompose(-r[d])
        if any(m for (_, m) in expansion.entries):
            raise AssertionError(f"w-dependence in KKV coefficient at d={d}")
        out[d] = {h: c for (h, _), c in sorted(expansion.entries.items())}
    return out


def kkv_invariants(d: int) -> dict[int, int]:
    if d < -1:
        raise ValueError("d must be at least -1")
    return kkv_table(d)[d]


# -- involutive invariants of S x C ----------------------------------------


def _d_range(d_min: int, d_max: int) -> range:
    return range(d_min, d_max + 1)


def ngh_polynomials(stype: SurfaceType, d_max: int, d_min: int = 0) -> dict[int, Laurent2]:
    """``P_d = -[Theta_T(q^2, w) * R(q^2, y)]_{q^d}`` for admissible ``d``.

    ``P_d`` is ``psi_y`` times the right-hand side of the main formula.
    """
    stype = SurfaceType(stype)
    if d_max < d_min:
        return {}
    theta = theta_from_cosets(cosets_for(stype.lattice), d_max + 2)
    kernel = dilate(reduced_kkv((d_max + 1) // 2 + 1), 2)
    prod = (theta * kernel).truncate(d_max)
    out = {}
    for d in _d_range(d_min, d_max):
        if not stype.admits(d):
            continue
        p = -prod[d]
        if not p.is_integral_exponent():
            raise HalfIntegerLeak(f"half-integer exponent in P_{d}")
        out[d] = p
    return out


def ngh_table(stype: SurfaceType, d_max: int, d_min: int = 0) -> InvariantTable:
    stype = SurfaceType(stype)
    table = InvariantTable(stype)
    polys = ngh_polynomials(stype, d_max, d_min)
    for d in _d_range(d_min, d_max):
        if d not in polys:
            table.skipped.append(d)
            continue
        for (g, h), n in sorted(psi_decompose(polys[d]).invariants().items()):
            table.add(d, g, h, n)
    return table


_W = Laurent2.monomial(1, w=1)
_WI = Laurent2.monomial(1, w=-1)
_Y = Laurent2.monomial(1, y=1)
_YI = Laurent2.monomial(1, y=-1)
_ONE = Laurent2.const(1)
_M1 = Laurent2.const(-1)


def product_side_series(stype: SurfaceType, order: int) -> QSeries:
    """The infinite products for the odd types, up to ``q**order``."""
    stype = SurfaceType(stype)
    y_part = [(_Y, 2, 0, -2), (_YI, 2, 0, -2)]
    if stype is SurfaceType.A_ODD:
        fs = [(_ONE, 1, 0, 8), (_W, 1, 0, 4), (_WI, 1, 0, 4), (_M1, 2, 0, -4)] + y_part
        return infinite_product(order, fs, prefactor=Laurent2.const(-4))
    if stype is SurfaceType.NI_ODD:
        fs = [(_ONE, 1, 0, 4), (_W, 1, 0, 2), (_WI, 1, 0, 2), (_M1, 2, 0, -12)] + y_part
        return infinite_product(order, fs, prefactor=_M1)
    raise ValueError(f"no product formula for type {stype.value}")


def product_side_table(stype: SurfaceType, d_max: int, d_min: int = 0) -> InvariantTable:
    """Invariants read off the infinite-product formulas for ``Aodd`` and ``NIodd``.

    ``Aodd``: the ``q**d`` coefficient is ``sum n psi_y**h psi_w**(g-1-2h)``.
    ``NIodd``: the ``q**(d+1)`` coefficient is ``sum n psi_y**h psi_w**(g-2h)``.
    """
    stype = SurfaceType(stype)
    shift, g_offset = {SurfaceType.A_ODD: (0, 1), SurfaceType.NI_ODD: (1, 0)}.get(stype, (None, None))
    if shift is None:
        raise ValueError(f"no product formula for type {stype.value}")
    series = product_side_series(stype, d_max + shift)
    table = InvariantTable(stype)
    for d in _d_range(d_min, d_max):
        if d + shift < 0:
            continue
        for (h, m), n in sorted(psi_decompose(series[d + shift]).entries.items()):
            table.add(d, m + 2 * h + g_offset, h, n)
    return table


def hyperelliptic_series(d_max: int) -> tuple[QSeries, QSeries]:
    """``(left, right)`` for the ``h = 0`` specialization of ``Aodd``.

    ``left = sum_d sum_g n_{g,0}(d) psi_w**(g-1) q**d`` from :func:`ngh_table`;
    ``right = -4 prod (1 + w q^n)^4 (1 + q^n/w)^4 / (1 - q^n)^8``.
    """
    table = ngh_table(SurfaceType.A_ODD, d_max)
    terms: dict[int, Laurent2] = {}
    for (d, g, h), n in table.entries.items():
        if h:
            continue
        if g < 1:
            raise ValueError(f"h=0 entry with g={g} has no psi_w**(g-1) form")
        terms[d] = terms.get(d, Laurent2()) + psi("w") ** (g - 1) * n
    left = QSeries(terms, order=d_max, lead=0)
    right = infinite_product(d_max, [(_W, 1, 0, 4), (_WI, 1, 0, 4), (_M1, 1, 0, -8)], prefactor=Laurent2.const(-4))
    return left, right


# -- multi-cover transforms ------------------------------------------------


def default_window(max_genus: int) -> tuple[int, int]:
    g = max(max_genus, 0)
    return -(g + 2), g + 2


def _cover_term(k: int, g: int, h: int, window: tuple[int, int]) -> WindowSeries:
    """``psi_{-(-y)^k}**(h-1) * psi_{w^k}**(g+1-2h)`` on the y-window."""
    lo, hi = window
    wpart = psi("w", 1, k) ** (g + 1 - 2 * h)
    if h == 0:
        ypart = psi_twisted(k, -1, window)
    else:
        ypart = WindowSeries.from_laurent(psi_twisted(k, h - 1), lo=lo, hi=hi)
    return ypart.mul_coeff(wpart)


def _covers(table: Mapping[tuple[int, int, int], int], m: int, k_max: int, window, skip_k1: bool):
    total = None
    for k in range(2 if skip_k1 else 1, min(m, k_max) + 1):
        if m % k:
            continue
        base = m // k
        for (d, g, h), n in table.items():
            if d != base:
                continue
            t = _cover_term(k, g, h, window) * Fraction(n, k)
            total = t if total is None else total + t
    return total


def gv_forward(
    table: InvariantTable | Mapping[tuple[int, int, int], int],
    k_max: int | None = None,
    m_max: int | None = None,
    window: tuple[int, int] | None = None,
) -> ClassSeries:
    """``log Z = sum_k sum_m (1/k) Q^(km) n_{g,h}(m) psi_{-(-y)^k}^(h-1) psi_{w^k}^(g+1-2h)``.

    The table's ``d`` field is read as the multiplicity ``m`` of the class.
    Coefficients of ``Q**m`` for ``1 <= m <= m_max`` are window series in ``y``;
    ``m_max`` defaults to the largest multiplicity present and ``k_max`` to ``m_max``.
    """
    entries = table.entries if isinstance(table, InvariantTable) else dict(table)
    if any(m < 1 for (m, _, _) in entries):
        raise ValueError("multiplicities must be positive")
    if m_max is None:
        m_max = max((m for (m, _, _) in entries), default=1)
    k_max = m_max if k_max is None else k_max
    if window is None:
        window = default_window(max((g for (_, g, _) in entries), default=0))
    lo, hi = window
    coeffs = {}
    for m in range(1, m_max + 1):
        c = _covers(entries, m, k_max, window, skip_k1=False)
        coeffs[2 * m] = c if c is not None else WindowSeries({}, order=hi, lead=lo)
    return ClassSeries._make(coeffs, 2, 2 * m_max)


def certify_polynomial(ws: WindowSeries) -> Laurent2:
    """Check that a window series is a y-symmetric Laurent polynomial and fold it.

    The lowest nonzero exponent ``-D`` fixes the degree; the window must reach
    past ``D`` and everything above ``D`` must vanish.
    """
    nz = [e for e, _ in ws.items()]
    if not nz:
        return Laurent2()
    low = nz[0]
    if low > 0:
        raise NotPolynomial(f"lowest term y^{low} has positive exponent")
    top = -low
    if ws.order == float("inf") or ws.order >= top + 1:
        bad = [e for e in nz if e > top]
        if bad:
            raise NotPolynomial(f"nonzero tail at y^{bad[0]} above degree {top}")
        return ws.to_laurent()
    raise WindowTooSmall(f"window order {ws.order} cannot certify degree {top}")


def gv_extract(
    log_z: QSeries, m_max: int, k_max: int | None = None, record: list | None = None
) -> InvariantTable:
    """Invert :func:`gv_forward` recursively in ``m``.

    If ``record`` is given, each certified ``psi_y``-cleared polynomial is appended to it.
    """
    k_max = m_max if k_max is None else k_max
    found: dict[tuple[int, int, int], int] = {}
    table = InvariantTable(None)
    for m in range(1, m_max + 1):
        residue = log_z[m]
        if not isinstance(residue, QSeries):
            residue = WindowSeries.exact(residue)
        window = (residue.lead, residue.order)
        covers = _covers(found, m, k_max, window, skip_k1=True)
        if covers is not None:
            residue = residue - covers
        cleared = residue * WindowSeries.exact(PSI_Y)
        poly = certify_polynomial(cleared)
        if record is not None:
            record.append(poly)
        for (g, h), n in sorted(psi_decompose(poly).invariants().items()):
            found[(m, g, h)] = n
            table.add(m, g, h, n)
    return table


def extract_with_retry(
    build: Callable[[tuple[int, int]], QSeries],
    m_max: int,
    max_genus: int,
    cap: int = 256,
) -> InvariantTable:
    """Run :func:`gv_extract` on ``build(window)``, doubling the window on failure."""
    lo, hi = default_window(max_genus)
    while True:
        try:
            return gv_extract(build((lo, hi)), m_max)
        except (NotPolynomial, WindowTooSmall):
            if hi >= cap:
                raise
            lo, hi = 2 * lo, 2 * hi
            log.info("retrying extraction with y-window [%d, %d]", lo, hi)


def table_from_rows(rows: Iterable[tuple[int, int, int, int]], stype: SurfaceType | None = None) -> InvariantTable:
    t = InvariantTable(stype)
    for d, g, h, n in rows:
        t.add(d, g, h, n)
    return t
