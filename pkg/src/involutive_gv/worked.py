"""Worked examples: the isolated local curve, the elliptic fiber class and the local football."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .forms import macmahon
from .invariants import ClassSeries, InvariantTable, gv_extract, gv_forward
from .laurent import Laurent2, psi
from .series import QSeries, WindowSeries, psi_twisted, series_log


@dataclass(frozen=True)
class LocalCurveParams:
    g: int
    h: int

    def __post_init__(self):
        if self.g < 0 or self.h < 0 or self.m < 0:
            raise ValueError(f"invalid (g, h) = ({self.g}, {self.h})")

    @property
    def m(self) -> int:
        return self.g + 1 - 2 * self.h


@dataclass(frozen=True)
class EllipticFiberParams:
    e_c0: int
    e_c1: int


@dataclass(frozen=True)
class LocalCurveCheck:
    computed: WindowSeries
    expected: WindowSeries

    @property
    def ok(self) -> bool:
        return self.computed.agrees_with(self.expected)


def gen_binomial(a: int, k: int) -> int:
    """``binom(a, k)`` for any integer ``a`` and ``k >= 0``."""
    num = 1
    for i in range(k):
        num *= a - i
    return num // factorial(k)


def sym_euler(h: int, d: int) -> int:
    """Euler characteristic of ``Sym^d`` of a genus ``h`` curve: ``[t^d] (1-t)^(2h-2)``."""
    if d < 0:
        return 0
    return (-1) ** d * gen_binomial(2 * h - 2, d)


def subset_sum(m: int) -> Laurent2:
    """``sum_{T in {1..2m}} w^(|T|-m)``."""
    return Laurent2({(0, 2 * (k - m)): comb(2 * m, k) for k in range(2 * m + 1)})


def local_curve_coefficient(p: LocalCurveParams, order: int) -> LocalCurveCheck:
    """Both sides of the local-curve identity on the y-window ``[1-h, order]``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    lo = 1 - p.h
    ysum = {n: Laurent2.const((-1) ** (n + p.h - 1) * sym_euler(p.h, n + p.h - 1)) for n in range(lo, order + 1)}
    computed = WindowSeries(ysum, order=order, lead=lo).mul_coeff(subset_sum(p.m))
    wpart = psi("w") ** p.m
    if p.h == 0:
        expected = psi_twisted(1, -1, (lo, order)).mul_coeff(wpart)
    else:
        expected = WindowSeries.from_laurent(psi("y") ** (p.h - 1) * wpart, lo=lo, hi=order)
    return LocalCurveCheck(computed, expected)


def elliptic_fiber_series(p: EllipticFiberParams, order: int) -> WindowSeries:
    """``sum_{n>=1} (-1)^n n y^n ((w^-2 + w^-1 + w + w^2) e(C0) + psi_w e(C1))``."""
    wpart = Laurent2({(0, -4): 1, (0, -2): 1, (0, 2): 1, (0, 4): 1}).scale(p.e_c0) + psi("w").scale(p.e_c1)
    terms = {n: wpart.scale((-1) ** n * n) for n in range(1, order + 1)}
    return WindowSeries(terms, order=order, lead=1)


def elliptic_fiber_invariants(p: EllipticFiberParams, order: int = 8) -> dict[tuple[int, int], int]:
    """``{(g, h): n}`` for the fiber class; expected ``{(1,0): -e(C0), (0,0): 3e(C0) - e(C1)}``."""
    if order < 4:
        raise ValueError("order must be at least 4")
    log_z = ClassSeries._make({2: elliptic_fiber_series(p, order)}, 2, 2)
    return gv_extract(log_z, 1).at(1)


def _substitute(m: QSeries, w_exp: int, order_y: int) -> ClassSeries:
    """``M(x, q) -> M(Q w^a, -y)`` with y-coefficients as window series."""
    coeffs = {}
    for j, c in m.items():
        inner = {n: Laurent2.monomial((-1) ** n * v.coeff(), w=w_exp * j) for n, v in c.items()}
        coeffs[2 * j] = WindowSeries(inner, order=order_y, lead=0)
    return ClassSeries._make(coeffs, 0, m.order2)


def football_partition(order_q: int, order_y: int) -> ClassSeries:
    """``Z = M(Q/w, -y)^-1 M(Q, -y)^-2 M(Qw, -y)^-1``."""
    if order_q < 1:
        raise ValueError("order_q must be at least 1")
    m = macmahon(order_q, order_y)
    inv = {a: _substitute(m, a, order_y).inverse() for a in (-1, 0, 1)}
    return inv[-1] * inv[0] * inv[0] * inv[1]


def football_log(order_q: int, order_y: int) -> ClassSeries:
    return series_log(football_partition(order_q, order_y))


def football_closed_form(order_q: int, order_y: int) -> ClassSeries:
    """``sum_k (1/k) Q^k psi^-1_{-(-y)^k} psi_{w^k}``."""
    return gv_forward({(1, 0, 0): 1}, k_max=order_q, m_max=order_q, window=(0, order_y))


def football_invariants(order_q: int, order_y: int = 12) -> InvariantTable:
    return gv_extract(football_log(order_q, order_y), order_q)


def regrouping_holds() -> bool:
    """``psi_w^2 - 3 psi_w = w^2 + w + w^-1 + w^-2``."""
    pw = psi("w")
    return pw * pw - pw.scale(3) == Laurent2({(0, -4): 1, (0, -2): 1, (0, 2): 1, (0, 4): 1})


def alternating_sum_matches(order: int) -> bool:
    """``(1+y)^2 * sum_{n>=1} (-1)^n n y^n = -y`` on ``[1, order]``."""
    s = WindowSeries({n: (-1) ** n * n for n in range(1, order + 1)}, order=order, lead=1)
    sq = WindowSeries.exact(Laurent2({(0, 0): 1, (2, 0): 2, (4, 0): 1}))
    return (s * sq).agrees_with(WindowSeries({1: -1}, order=order, lead=1))
