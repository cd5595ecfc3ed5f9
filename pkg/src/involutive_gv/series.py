"""Truncated Laurent series with exact coefficients.

A :class:`QSeries` is a Laurent series in one variable, known exactly on the
inclusive window ``lead <= e <= order``.  Coefficients below ``lead`` are zero;
coefficients above ``order`` are unknown and never assumed to vanish.  An
``order`` of ``INF`` marks an exact (finite) Laurent polynomial.

Exponents are half-integers stored doubled, as in :mod:`.laurent`.  The
coefficients are :class:`~.laurent.Laurent2` values, or, for nested series
such as ``log Z`` as a series in ``Q`` over ``y``-windows, other ``QSeries``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Iterator, Mapping

from .errors import (
    BadConstantTerm,
    HalfIntegerLeak,
    NonUnitLeading,
    TruncationError,
    WindowTooSmall,
)
from .laurent import ONE, ZERO, Laurent2, doubled, normalize, psi, undoubled

INF = float("inf")


def _as_coeff(c):
    if isinstance(c, (int, Fraction)):
        return Laurent2.const(c)
    return c


def _order2(order):
    if order is None or order == INF:
        return INF
    return doubled(order)


class QSeries:
    """Truncated Laurent series; immutable once built."""

    var = "q"
    __slots__ = ("_c", "lead2", "order2")

    def __init__(self, terms: Mapping | None = None, order=None, lead=None):
        c2 = {}
        for e, c in (terms or {}).items():
            c = _as_coeff(c)
            if c:
                c2[doubled(e)] = c
        order2 = _order2(order)
        if lead is None:
            lead2 = min(c2) if c2 else (0 if order2 == INF else order2)
        else:
            lead2 = doubled(lead)
        if any(e < lead2 for e in c2):
            raise ValueError("term below declared lead")
        self._set(c2, lead2, order2)

    def _set(self, c2, lead2, order2):
        if lead2 > order2:
            raise ValueError(f"lead {undoubled(lead2)} exceeds order {order2}")
        self._c = {e: c for e, c in c2.items() if e <= order2 and c}
        self.lead2 = lead2
        self.order2 = order2

    @classmethod
    def _make(cls, c2: dict, lead2: int, order2) -> "QSeries":
        obj = cls.__new__(cls)
        obj._set(c2, lead2, order2)
        return obj

    @classmethod
    def one(cls, order=None) -> "QSeries":
        return cls({0: ONE}, order=order, lead=0)

    @classmethod
    def monomial(cls, coeff, e, order=None) -> "QSeries":
        return cls({e: coeff}, order=order, lead=e)

    # -- inspection -------------------------------------------------------

    @property
    def lead(self):
        return undoubled(self.lead2)

    @property
    def order(self):
        return INF if self.order2 == INF else undoubled(self.order2)

    def is_exact(self) -> bool:
        return self.order2 == INF

    def coeff2(self, e2: int):
        if e2 > self.order2:
            raise TruncationError(
                f"coefficient of {self.var}^{undoubled(e2)} is beyond order {self.order}"
            )
        return self._c.get(e2, ZERO)

    def __getitem__(self, e):
        return self.coeff2(doubled(e))

    def items(self) -> Iterator[tuple[object, object]]:
        """Yield ``(exponent, coefficient)`` for the nonzero terms, ascending."""
        for e2 in sorted(self._c):
            yield undoubled(e2), self._c[e2]

    def items2(self) -> list[tuple[int, object]]:
        return sorted(self._c.items())

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        # a truncated zero is not an exact zero and must keep its window
        return bool(self._c) or self.order2 != INF

    def valuation2(self):
        return min(self._c) if self._c else None

    def is_integral_exponent(self) -> bool:
        return all(e % 2 == 0 for e in self._c)

    def require_integral(self) -> "QSeries":
        if not self.is_integral_exponent():
            raise HalfIntegerLeak(f"half-integer {self.var}-exponent in series")
        for c in self._c.values():
            if isinstance(c, Laurent2):
                c.require_integral()
            else:
                c.require_integral()
        return self

    def truncate(self, order) -> "QSeries":
        order2 = _order2(order)
        if order2 > self.order2:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return self._make(self._c, min(self.lead2, order2), order2)

    def map_coeffs(self, f: Callable) -> "QSeries":
        return self._make({e: f(c) for e, c in self._c.items()}, self.lead2, self.order2)

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order2 == other.order2 and self._c == other._c

    __hash__ = None

    def agrees_with(self, other: "QSeries", order=None) -> bool:
        return self.first_difference(other, order) is None

    def first_difference(self, other: "QSeries", order=None):
        """Lowest exponent on the common window where the two series differ, or None."""
        top = min(self.order2, other.order2)
        if order is not None:
            top = min(top, _order2(order))
        for e2 in sorted(set(self._c) | set(other._c)):
            if e2 > top:
                break
            a, b = self._c.get(e2, ZERO), other._c.get(e2, ZERO)
            if isinstance(a, QSeries) or isinstance(b, QSeries):
                a = a if isinstance(a, QSeries) else WindowSeries.exact(a)
                b = b if isinstance(b, QSeries) else WindowSeries.exact(b)
                if not a.agrees_with(b):
                    return undoubled(e2)
            elif a != b:
                return undoubled(e2)
        return None

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QSeries):
            if type(other) is not type(self):
                raise TypeError(f"cannot combine {type(self).__name__} and {type(other).__name__}")
            return other
        if isinstance(other, (int, Fraction, Laurent2)):
            return self._make({0: _as_coeff(other)}, 0, INF)
        return None

    def __neg__(self) -> "QSeries":
        return self._make({e: -c for e, c in self._c.items()}, self.lead2, self.order2)

    def __add__(self, other) -> "QSeries":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order2 = min(self.order2, other.order2)
        lead2 = min(self.lead2, other.lead2)
        out = {e: c for e, c in self._c.items() if e <= order2}
        for e, c in other._c.items():
            if e > order2:
                continue
            prev = out.get(e)
            out[e] = c if prev is None else prev + c
        return self._make(out, min(lead2, order2), order2)

    __radd__ = __add__

    def __sub__(self, other) -> "QSeries":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def scale(self, s) -> "QSeries":
        s = normalize(s)
        return self._make({e: c * s for e, c in self._c.items()}, self.lead2, self.order2)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return series_invert(self) ** (-n)
        result = self._make({0: ONE}, 0, INF)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, e) -> "QSeries":
        """Multiply by ``var**e``."""
        s2 = doubled(e)
        return self._make({k + s2: c for k, c in self._c.items()}, self.lead2 + s2, self.order2 + s2)

    def mul_coeff(self, c) -> "QSeries":
        """Multiply every coefficient by the ring element ``c``."""
        return self._make({e: v * c for e, v in self._c.items()}, self.lead2, self.order2)

    def is_unit(self) -> bool:
        v = self.valuation2()
        return v is not None and self._c[v].is_unit()

    def inverse(self) -> "QSeries":
        return series_invert(self)

    def is_one(self) -> bool:
        if set(self._c) != {0}:
            return False
        c = self._c[0]
        return c.is_one() if isinstance(c, QSeries) else c == 1

    def mul_binomial(self, c, n, e: int = 1) -> "QSeries":
        """Multiply by ``(1 + c * var**n)**e`` for ``n > 0`` and any integer ``e``."""
        n2 = doubled(n)
        if n2 <= 0:
            raise ValueError("binomial step must be positive")
        c = _as_coeff(c)
        out = dict(self._c)
        top = self.order2
        if e > 0:
            for _ in range(e):
                for k in sorted(out, reverse=True):
                    t = k + n2
                    if t > top:
                        continue
                    add = c * out[k]
                    prev = out.get(t)
                    out[t] = add if prev is None else prev + add
        elif e < 0:
            if top == INF:
                raise TruncationError("dividing an exact polynomial needs a finite order")
            start = min(out) if out else self.lead2
            for _ in range(-e):
                for k in range(start + n2, top + 1):
                    src = out.get(k - n2)
                    if src is None:
                        continue
                    sub = c * src
                    prev = out.get(k)
                    out[k] = -sub if prev is None else prev - sub
        return self._make(out, self.lead2, top)

    def dilate(self, k: int) -> "QSeries":
        return dilate(self, k)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def __str__(self) -> str:
        parts = []
        for e, c in self.items():
            cs = str(c)
            if e == 0:
                parts.append(f"({cs})")
            else:
                parts.append(f"({cs})*{self.var}^{e}")
        tail = "" if self.order2 == INF else f" + O({self.var}^{self.order}+)"
        return (" + ".join(parts) or "0") + tail


class WindowSeries(QSeries):
    """Laurent series in ``y`` whose coefficients are polynomials in ``w`` only.

    Used where ``psi_y**-1``-type expansions arise; it never mixes with q-series.
    """

    var = "y"
    __slots__ = ()

    @classmethod
    def exact(cls, p: Laurent2) -> "WindowSeries":
        return cls.from_laurent(p)

    @classmethod
    def from_laurent(cls, p: Laurent2, lo=None, hi=None) -> "WindowSeries":
        """Split the y-exponents of ``p`` off into the series variable.

        With ``hi`` given the result is truncated there; ``lo`` may only lower
        the declared lead (dropping low terms would break exactness).
        """
        c2: dict[int, dict] = {}
        for (a2, b2), c in p.doubled_terms.items():
            c2.setdefault(a2, {})[(0, b2)] = c
        coeffs = {a2: Laurent2(t) for a2, t in c2.items()}
        order2 = _order2(hi)
        if coeffs:
            low = min(coeffs)
        else:
            low = 0 if order2 == INF else order2
        lead2 = low if lo is None else doubled(lo)
        if lead2 > low:
            raise WindowTooSmall(f"window starts above the lowest y-exponent {undoubled(low)}")
        return cls._make(coeffs, min(lead2, order2), order2)

    def to_laurent(self) -> Laurent2:
        """Fold the window back into a polynomial in ``y`` and ``w`` (terms inside the window only)."""
        out = {}
        for a2, c in self._c.items():
            for (_, b2), v in c.doubled_terms.items():
                out[(a2, b2)] = v
        return Laurent2(out)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Product on the tightest provable window."""
    if type(a) is not type(b):
        raise TypeError(f"cannot multiply {type(a).__name__} by {type(b).__name__}")
    lead2 = a.lead2 + b.lead2
    order2 = min(a.lead2 + b.order2, b.lead2 + a.order2)
    if lead2 > order2:
        return a._make({}, order2, order2)
    ia, ib = a.items2(), b.items2()
    if len(ia) > len(ib):
        ia, ib = ib, ia
    if all(isinstance(c, Laurent2) for _, c in ia) and all(isinstance(c, Laurent2) for _, c in ib):
        return a._make(_mul_laurent_coeffs(ia, ib, order2), lead2, order2)
    out: dict = {}
    for ea, ca in ia:
        for eb, cb in ib:
            e = ea + eb
            if e > order2:
                break
            p = ca * cb
            prev = out.get(e)
            out[e] = p if prev is None else prev + p
    return a._make(out, lead2, order2)


def _mul_laurent_coeffs(ia, ib, order2) -> dict:
    # raw dict accumulation avoids allocating a Laurent2 per partial product
    acc: dict[int, dict] = {}
    ib_terms = [(eb, tuple(cb.doubled_terms.items())) for eb, cb in ib]
    for ea, ca in ia:
        ta = tuple(ca.doubled_terms.items())
        for eb, tb in ib_terms:
            e = ea + eb
            if e > order2:
                break
            slot = acc.get(e)
            if slot is None:
                slot = acc[e] = {}
            get = slot.get
            for (a1, b1), c1 in ta:
                for (a2, b2), c2 in tb:
                    k = (a1 + a2, b1 + b2)
                    slot[k] = get(k, 0) + c1 * c2
    return {e: Laurent2(t) for e, t in acc.items()}


def series_invert(a: QSeries) -> QSeries:
    """Multiplicative inverse; requires a unit leading coefficient."""
    v2 = a.valuation2()
    if v2 is None:
        raise NonUnitLeading("cannot invert a series with no nonzero terms")
    if a.order2 == INF and len(a) > 1:
        raise TruncationError("inverse of a non-monomial polynomial needs a finite order")
    u = a._c[v2]
    if not u.is_unit():
        raise NonUnitLeading(f"leading coefficient {u} is not a unit")
    u_inv = u.inverse()
    rel = a.order2 - v2
    terms = [(e - v2, c) for e, c in a.items2() if e != v2]
    b: dict[int, object] = {0: u_inv}
    if rel != INF:
        for n in range(1, rel + 1):
            acc = None
            for j, aj in terms:
                if j > n:
                    break
                bk = b.get(n - j)
                if bk is None:
                    continue
                p = aj * bk
                acc = p if acc is None else acc + p
            if acc is not None:
                b[n] = -(u_inv * acc)
    order2 = rel - v2 if rel != INF else INF
    return a._make({e - v2: c for e, c in b.items()}, -v2, order2)


def series_log(a: QSeries) -> QSeries:
    """``log a`` for ``a = 1 + (terms of positive exponent)``, with rational coefficients."""
    if any(e < 0 for e in a._c):
        raise BadConstantTerm("series has terms of negative exponent")
    c0 = a._c.get(0)
    if c0 is None or not (c0.is_one() if isinstance(c0, QSeries) else c0 == 1):
        raise BadConstantTerm(f"constant term is {c0}, not 1")
    if a.order2 == INF:
        raise TruncationError("log of a polynomial needs a finite order")
    b: dict[int, object] = {}
    for n in range(1, a.order2 + 1):
        acc = a._c.get(n)
        acc = None if acc is None else acc * n
        for j in sorted(b):
            if j >= n:
                break
            anj = a._c.get(n - j)
            if anj is None:
                continue
            p = (b[j] * anj) * (-j)
            acc = p if acc is None else acc + p
        if acc is not None:
            b[n] = acc * Fraction(1, n)
    lead2 = min(b) if b else a.order2
    return a._make(b, min(lead2, a.order2), a.order2)


def dilate(a: QSeries, k: int) -> QSeries:
    """Substitute ``var -> var**k``."""
    if k < 1:
        raise ValueError("dilation factor must be positive")
    order2 = a.order2 * k if a.order2 != INF else INF
    return a._make({e * k: c for e, c in a._c.items()}, a.lead2 * k, order2)


def psi_twisted(k: int, g: int, window: tuple[int, int] | None = None):
    """``psi_u**g`` at ``u = -(-y)**k``.

    For ``g >= 0`` this is an exact :class:`Laurent2`.  For ``g < 0`` it is the
    expansion of ``u**n / (1+u)**(2n)`` (``n = -g``) on the y-window
    ``window = (lo, hi)``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    s = 1 if k % 2 else -1
    if g >= 0:
        return psi("y", s, k) ** g
    if window is None:
        raise ValueError("a window is required for negative powers")
    lo, hi = window
    n = -g
    if lo > k * n:
        raise WindowTooSmall(f"window starts at y^{lo}, above the lowest term y^{k * n}")
    terms = {}
    j = 0
    while k * (n + j) <= hi:
        c = comb(2 * n + j - 1, j) * (-1) ** j * s ** (n + j)
        terms[k * (n + j)] = Laurent2.const(c)
        j += 1
    return WindowSeries(terms, order=hi, lead=lo)
