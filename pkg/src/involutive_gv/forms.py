"""Named q-series: rank-1 thetas, the discriminant, phi_{10,1}, the KKV kernel and MacMahon's function.

Products over ``n`` are cut at the last factor that can still touch the
window; every later factor is ``1 + O(q**(order+1))``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .laurent import ONE, Laurent2, doubled, psi
from .series import QSeries

# (coefficient, slope, offset, exponent) stands for prod_{n>=1} (1 + c*q**(slope*n + offset))**exponent
Factor = tuple[Laurent2, int, int, int]


def infinite_product(order, factors: Iterable[Factor], prefactor: Laurent2 = ONE, shift=0) -> QSeries:
    """``prefactor * q**shift * prod(...)`` known exactly up to ``q**order``."""
    inner_order = Fraction(order) - Fraction(shift)
    if inner_order < 0:
        return QSeries({}, order=order, lead=order)
    s = QSeries.one(order=inner_order)
    for c, slope, offset, e in factors:
        n = 1
        while slope * n + offset <= inner_order:
            step = slope * n + offset
            if step > 0:
                s = s.mul_binomial(c, step, e)
            n += 1
    s = s.mul_coeff(prefactor) if prefactor != ONE else s
    return s.shift(shift) if shift else s


_W = Laurent2.monomial(1, w=1)
_WI = Laurent2.monomial(1, w=-1)
_Y = Laurent2.monomial(1, y=1)
_YI = Laurent2.monomial(1, y=-1)
_M1 = Laurent2.const(-1)
_P1 = Laurent2.const(1)


def theta_rank1(i: int, order) -> QSeries:
    """``theta_i(q^2, w) = sum_{k in Z + i/2} q^(2k^2) w^k`` by direct summation."""
    if i not in (0, 1):
        raise ValueError("theta index must be 0 or 1")
    order2 = doubled(order)
    if order2 < 0:
        raise ValueError("order must be non-negative")
    terms = {}
    j = i
    # k = j/2, so q^(2k^2) has doubled exponent j^2 and w^k doubled exponent j
    while j * j <= order2:
        for jj in {j, -j}:
            terms[jj] = terms.get(jj, 0) + 1
        j += 2
    coeffs: dict[int, dict] = {}
    for jj in terms:
        coeffs.setdefault(jj * jj, {})[(0, jj)] = 1
    return QSeries._make({e: Laurent2(t) for e, t in coeffs.items()}, min(i, order2), order2)


def theta_rank1_product(i: int, order) -> QSeries:
    """Triple-product form of :func:`theta_rank1`."""
    if i == 0:
        return infinite_product(order, [(_M1, 4, 0, 1), (_W, 4, -2, 1), (_WI, 4, -2, 1)])
    pref = Laurent2({(0, 1): 1, (0, -1): 1})
    return infinite_product(
        order, [(_M1, 4, 0, 1), (_W, 4, 0, 1), (_WI, 4, 0, 1)], prefactor=pref, shift=Fraction(1, 2)
    )


def delta(order) -> QSeries:
    """``q * prod (1 - q^n)^24``."""
    return infinite_product(order, [(_M1, 1, 0, 24)], shift=1)


def delta_half_at_q2(order) -> QSeries:
    """Positive square root of ``Delta(q^2)``: ``q * prod (1 - q^(2n))^12``."""
    return infinite_product(order, [(_M1, 2, 0, 12)], shift=1)


def phi_10_1(order, negate: bool = False, var: str = "y") -> QSeries:
    """Weight 10, index 1 Jacobi cusp form ``phi_{10,1}(q, x)`` with ``x = var``.

    ``negate=True`` returns ``phi_{10,1}(q, -x)``.
    """
    x, xi = (_Y, _YI) if var == "y" else (_W, _WI)
    if negate:
        pref = -psi(var)
        fs = [(x, 1, 0, 2), (xi, 1, 0, 2), (_M1, 1, 0, 20)]
    else:
        pref = -psi(var, -1)
        fs = [(-x, 1, 0, 2), (-xi, 1, 0, 2), (_M1, 1, 0, 20)]
    return infinite_product(order, fs, prefactor=pref, shift=1)


def kkv_product(order) -> QSeries:
    """``q * prod (1 + y q^n)^2 (1 + q^n/y)^2 (1 - q^n)^20``, so that ``phi_{10,1}(q,-y) = -psi_y * this``."""
    return infinite_product(order, [(_Y, 1, 0, 2), (_YI, 1, 0, 2), (_M1, 1, 0, 20)], shift=1)


def reduced_kkv(order) -> QSeries:
    """``R(q, y) = 1 / kkv_product``, lead ``q^-1``; ``1/phi_{10,1}(q,-y) = -R/psi_y``."""
    if Fraction(order) < -1:
        raise ValueError("order must be at least -1")
    inner = infinite_product(order + 1, [(_Y, 1, 0, -2), (_YI, 1, 0, -2), (_M1, 1, 0, -20)])
    return inner.shift(-1)


def macmahon(order_in_x: int, order_in_q: int) -> QSeries:
    """``M(x, q) = prod (1 - x q^n)^(-n)`` as a series in ``x`` over q-series."""
    if order_in_x < 0 or order_in_q < 0:
        raise ValueError("orders must be non-negative")
    m = QSeries.one(order=order_in_x)
    for n in range(1, order_in_q + 1):
        c = QSeries({n: -1}, order=order_in_q, lead=0)
        m = m.mul_binomial(c, 1, -n)
    return m.map_coeffs(lambda c: c if isinstance(c, QSeries) else QSeries({0: c}, order=order_in_q, lead=0))


def named_form(name: str, order):
    """Dispatch by the names used on the command line and in reports."""
    table = {
        "Theta0": lambda: theta_rank1(0, order),
        "Theta1": lambda: theta_rank1(1, order),
        "Delta": lambda: delta(order),
        "DeltaHalfAtQ2": lambda: delta_half_at_q2(order),
        "Phi10_1": lambda: phi_10_1(order),
        "ReducedKKV": lambda: reduced_kkv(order),
    }
    if name not in table:
        raise ValueError(f"unknown form {name!r}")
    return table[name]()
