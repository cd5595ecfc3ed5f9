"""Kummer and Nikulin lattices through their glue cosets, and their theta series.

Every lattice ``T`` here sits between the exceptional lattice ``Lambda = (+) Z E_i``
(``E_i^2 = -2``) and its dual ``Lambda / 2``.  A coset of ``Lambda`` in the dual
is a bit-vector ``rho`` standing for ``1/2 sum rho_i E_i``.  For ``v = sum v_i E_i``
we use ``-v^2/2 = sum v_i^2`` and ``l(v) = sum v_i``; the series returned are
``Theta_T(q^2, w) = sum_v q^(2 sum v_i^2) w^(l(v))``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import HalfIntegerLeak
from .forms import delta, delta_half_at_q2, phi_10_1, theta_rank1
from .laurent import Laurent2, doubled
from .series import QSeries, dilate


@dataclass(frozen=True)
class CosetRep:
    bits: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.bits)

    @property
    def c1(self) -> int:
        return sum(self.bits)

    @property
    def c0(self) -> int:
        return self.rank - self.c1

    def __add__(self, other: "CosetRep") -> "CosetRep":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return CosetRep(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


class LatticeTag(str, Enum):
    K = "K"
    K_SH = "Ksh"
    N = "N"
    N_SH = "Nsh"


class Surface(str, Enum):
    ABELIAN = "Abelian"
    NIKULIN_I = "NikulinI"
    NIKULIN_II = "NikulinII"


@dataclass(frozen=True)
class GammaSelector:
    surface: Surface
    parity_m: str  # "even" | "odd"

    def __post_init__(self):
        if self.parity_m not in ("even", "odd"):
            raise ValueError("parity_m must be 'even' or 'odd'")


def gamma_select(sel: GammaSelector) -> LatticeTag:
    """Which (shifted) lattice carries the classes ``m*gamma_d + v``."""
    if sel.surface is Surface.NIKULIN_II:
        return LatticeTag.N
    odd = sel.parity_m == "odd"
    if sel.surface is Surface.NIKULIN_I:
        return LatticeTag.N_SH if odd else LatticeTag.N
    return LatticeTag.K_SH if odd else LatticeTag.K


# -- glue data -------------------------------------------------------------

F2_4 = list(product((0, 1), repeat=4))  # points of F_2^4, lexicographic


def _indicator(points: Iterable[tuple[int, ...]]) -> CosetRep:
    s = set(points)
    return CosetRep(tuple(int(p in s) for p in F2_4))


def affine_maps() -> list[CosetRep]:
    """All 32 affine maps ``F_2^4 -> F_2`` as value vectors over :data:`F2_4`."""
    out = []
    for a in product((0, 1), repeat=4):
        for b in (0, 1):
            out.append(CosetRep(tuple((sum(x * y for x, y in zip(a, p)) + b) % 2 for p in F2_4)))
    return out


def kummer_cosets() -> list[CosetRep]:
    return affine_maps()


PLANE_1 = [p for p in F2_4 if p[2] == 0 and p[3] == 0]  # span(e1, e2)
PLANE_2 = [p for p in F2_4 if p[0] == 0 and p[1] == 0]  # span(e3, e4)
KUMMER_R0 = _indicator(PLANE_1)
KUMMER_R1 = _indicator(set(PLANE_1) ^ set(PLANE_2))


def kummer_shifted_cosets() -> list[CosetRep]:
    """``(K + r0)`` followed by ``(K + r1)``: 64 cosets."""
    k = kummer_cosets()
    return [f + KUMMER_R0 for f in k] + [f + KUMMER_R1 for f in k]


def _rank8(ones: Sequence[int]) -> CosetRep:
    return CosetRep(tuple(int(i + 1 in ones) for i in range(8)))


def nikulin_cosets() -> list[CosetRep]:
    return [_rank8(()), _rank8(range(1, 9))]


NIKULIN_R1 = _rank8((1, 2))
NIKULIN_R0 = _rank8((1, 2, 3, 4))


def nikulin_shifted_cosets() -> list[CosetRep]:
    """``pi(N + r1) u pi(N + r0)`` in the order E1+E2, E3..E8, E1..E4, E5..E8."""
    n = nikulin_cosets()
    return [f + NIKULIN_R1 for f in n] + [f + NIKULIN_R0 for f in n]


def cosets_for(tag: LatticeTag) -> list[CosetRep]:
    return {
        LatticeTag.K: kummer_cosets,
        LatticeTag.K_SH: kummer_shifted_cosets,
        LatticeTag.N: nikulin_cosets,
        LatticeTag.N_SH: nikulin_shifted_cosets,
    }[LatticeTag(tag)]()


# -- theta series ----------------------------------------------------------


class _ThetaPowers:
    """Memoized ``theta_0**a * theta_1**b`` at one order."""

    def __init__(self, order):
        self.order = order
        self.base = {0: theta_rank1(0, order), 1: theta_rank1(1, order)}
        self._pow: dict[tuple[int, int], QSeries] = {}

    def power(self, i: int, n: int) -> QSeries:
        key = (i, n)
        if key not in self._pow:
            if n == 0:
                self._pow[key] = QSeries.one(order=self.order)
            elif n == 1:
                self._pow[key] = self.base[i]
            else:
                half = self.power(i, n // 2)
                sq = half * half
                self._pow[key] = sq * self.base[i] if n % 2 else sq
        return self._pow[key]

    def monomial(self, c0: int, c1: int) -> QSeries:
        return (self.power(0, c0) * self.power(1, c1)).truncate(self.order)


def theta_from_cosets(cosets: Sequence[CosetRep], order) -> QSeries:
    """``sum_rho theta_0**c0(rho) * theta_1**c1(rho)``."""
    if not cosets:
        return QSeries({}, order=order, lead=0)
    if len({r.rank for r in cosets}) != 1:
        raise ValueError("coset representatives must share one rank")
    powers = _ThetaPowers(order)
    total = QSeries({}, order=order, lead=0)
    for (c0, c1), mult in sorted(Counter((r.c0, r.c1) for r in cosets).items()):
        total = total + powers.monomial(c0, c1).scale(mult)
    if not total.is_integral_exponent() or any(
        not c.is_integral_exponent() for _, c in total.items()
    ):
        raise HalfIntegerLeak("theta series has half-integer exponents")
    return total


def bruteforce_bound(order) -> int:
    """Per-coordinate cutoff on ``|v_i|``; ``2 sum v_i^2 <= order`` forces ``|v_i| <= sqrt(order/2)``."""
    return math.ceil(math.sqrt(max(float(order), 0) / 2)) + 1


def _coordinate_values(bit: int, bound: int) -> list[int]:
    # doubled coordinates j = 2*v_i with j = bit (mod 2) and |j| <= 2*bound
    return [j for j in range(-2 * bound, 2 * bound + 1) if j % 2 == bit]


def iter_coset_vectors(rho: CosetRep, order) -> Iterator[tuple[int, ...]]:
    """Every vector of ``Lambda + rho`` with ``2 sum v_i^2 <= order``, as doubled coordinates.

    Plain nested enumeration over the box; only practical for small rank and order.
    """
    budget = doubled(order)
    vals = [_coordinate_values(b, bruteforce_bound(order)) for b in rho.bits]
    for v in product(*vals):
        if sum(j * j for j in v) <= budget:
            yield v


def _coset_counts(rho: CosetRep, order) -> Counter:
    """Counts of ``(sum j_i^2, sum j_i)`` over the coset, by coordinate-wise enumeration.

    Vectors are enumerated one coordinate at a time with the remaining norm
    budget as the pruning bound; suffix tallies are shared between prefixes
    that leave the same budget.
    """
    budget = doubled(order)
    bound = bruteforce_bound(order)
    vals = [_coordinate_values(b, bound) for b in rho.bits]
    r = len(vals)

    @lru_cache(maxsize=None)
    def suffix(i: int, remaining: int) -> tuple[tuple[tuple[int, int], int], ...]:
        if i == r:
            return (((0, 0), 1),)
        acc: Counter = Counter()
        for j in vals[i]:
            jj = j * j
            if jj > remaining:
                continue
            for (n, ell), cnt in suffix(i + 1, remaining - jj):
                acc[(n + jj, ell + j)] += cnt
        return tuple(acc.items())

    return Counter(dict(suffix(0, budget)))


def theta_bruteforce(cosets: Sequence[CosetRep], order) -> QSeries:
    """Theta series by enumerating lattice vectors coset by coset."""
    total: Counter = Counter()
    for rho in cosets:
        total.update(_coset_counts(rho, order))
    coeffs: dict[int, dict] = {}
    for (n, ell), cnt in total.items():
        # n = sum j_i^2 is the doubled q-exponent, ell = sum j_i the doubled w-exponent
        coeffs.setdefault(n, {})[(0, ell)] = cnt
    return QSeries._make({e: Laurent2(t) for e, t in coeffs.items()}, 0, doubled(order))


def theta_polynomial(c1_multiset: dict[int, int], rank: int, order) -> QSeries:
    """``sum mult * theta_0**(rank-c1) * theta_1**c1`` for a given ``{c1: mult}``."""
    powers = _ThetaPowers(order)
    total = QSeries({}, order=order, lead=0)
    for c1, mult in sorted(c1_multiset.items()):
        total = total + powers.monomial(rank - c1, c1).scale(mult)
    return total


def _padded(order):
    return order + 4


def theta_closed_form(tag: LatticeTag, order) -> QSeries:
    """Theta series of ``tag`` from its modular closed form."""
    tag = LatticeTag(tag)
    if tag is LatticeTag.K:
        return theta_polynomial({0: 1, 8: 30, 16: 1}, 16, order)
    if tag is LatticeTag.N:
        return theta_polynomial({0: 1, 8: 1}, 8, order)
    pad = _padded(order)
    phi = phi_10_1(pad, negate=True, var="w")
    inv_delta = delta(pad).inverse()
    if tag is LatticeTag.N_SH:
        # -Delta(q^2)^(1/2) / Delta(q) * phi_{10,1}(q, -w)
        out = -(delta_half_at_q2(pad) * inv_delta * phi)
    else:
        # 4 Delta(q^2) / Delta(q)^2 * phi_{10,1}(q, -w)^2
        d2 = dilate(delta(pad // 2 + 1), 2)
        out = (d2 * inv_delta * inv_delta * phi * phi).scale(4)
    return out.truncate(order)
