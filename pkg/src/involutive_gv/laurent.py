"""Bivariate Laurent polynomials in ``y`` and ``w`` with exact coefficients.

Exponents may be half-integers (``w**(1/2)`` shows up inside the odd theta
function), so they are stored doubled: the key ``(a2, b2)`` stands for the
monomial ``y**(a2/2) * w**(b2/2)``.  Coefficients are ``int`` or
``fractions.Fraction``; a fraction with denominator 1 is always stored as an
``int``.

The module also holds the psi-basis machinery: ``psi_x = 2 + x + 1/x`` and the
decomposition of a symmetric polynomial into ``psi_y**h * psi_w**m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterator, Mapping

from .errors import HalfIntegerLeak, NotIntegral, NotSymmetric, SeriesError

Key = tuple[int, int]


def normalize(c):
    """Return ``c`` as an ``int`` when it is integral, else as a reduced Fraction."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return normalize(Fraction(c.numerator, c.denominator))
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def doubled(x) -> int:
    """Return ``2*x`` as an int, for ``x`` an integer or half-integer."""
    if isinstance(x, int):
        return 2 * x
    x2 = Fraction(x) * 2
    if x2.denominator != 1:
        raise ValueError(f"{x} is not a half-integer")
    return x2.numerator


def undoubled(x2: int):
    """Inverse of :func:`doubled`."""
    return x2 // 2 if x2 % 2 == 0 else Fraction(x2, 2)


class Laurent2:
    """Immutable Laurent polynomial in ``y`` and ``w``."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[Key, object] | None = None):
        t = {}
        if terms:
            for k, c in terms.items():
                c = normalize(c)
                if c:
                    t[k] = c
        self._t = t

    @classmethod
    def _raw(cls, t: dict) -> "Laurent2":
        obj = cls.__new__(cls)
        obj._t = t
        return obj

    @classmethod
    def monomial(cls, coeff=1, y=0, w=0) -> "Laurent2":
        return cls({(doubled(y), doubled(w)): coeff})

    @classmethod
    def const(cls, c) -> "Laurent2":
        return cls({(0, 0): c})

    # -- inspection -------------------------------------------------------

    @property
    def doubled_terms(self) -> Mapping[Key, object]:
        return self._t

    def terms(self) -> Iterator[tuple[object, object, object]]:
        """Yield ``(y_exponent, w_exponent, coefficient)`` in sorted order."""
        for (a2, b2) in sorted(self._t):
            yield undoubled(a2), undoubled(b2), self._t[(a2, b2)]

    def coeff(self, y=0, w=0):
        return self._t.get((doubled(y), doubled(w)), 0)

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_integral_exponent(self) -> bool:
        return all(a % 2 == 0 and b % 2 == 0 for a, b in self._t)

    def is_integer(self) -> bool:
        return all(isinstance(c, int) for c in self._t.values())

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and (0, 0) in self._t)

    def depends_on_y(self) -> bool:
        return any(a for a, _ in self._t)

    def y_range(self) -> tuple[int, int]:
        """Doubled (min, max) y-exponents; raises on the zero polynomial."""
        if not self._t:
            raise ValueError("zero polynomial has no degree")
        ys = [a for a, _ in self._t]
        return min(ys), max(ys)

    def require_integral(self) -> "Laurent2":
        """Return self, raising if any exponent is half-integral or any coefficient non-integer."""
        if not self.is_integral_exponent():
            raise HalfIntegerLeak(f"half-integer exponent in {self}")
        for c in self._t.values():
            if not isinstance(c, int):
                raise NotIntegral(f"non-integer coefficient {c} in {self}")
        return self

    # -- substitutions ----------------------------------------------------

    def swap_y(self) -> "Laurent2":
        """y -> 1/y."""
        return Laurent2._raw({(-a, b): c for (a, b), c in self._t.items()})

    def swap_w(self) -> "Laurent2":
        """w -> 1/w."""
        return Laurent2._raw({(a, -b): c for (a, b), c in self._t.items()})

    def is_symmetric(self) -> bool:
        return self == self.swap_y() and self == self.swap_w()

    def subs(self, y_sign: int = 1, y_pow: int = 1, w_sign: int = 1, w_pow: int = 1) -> "Laurent2":
        """Substitute ``y -> y_sign * y**y_pow`` and ``w -> w_sign * w**w_pow``.

        A sign of -1 is only allowed on a variable with integral exponents.
        """
        out = {}
        for (a2, b2), c in self._t.items():
            if y_sign == -1:
                if a2 % 2:
                    raise HalfIntegerLeak("sign substitution on a half-integer y exponent")
                if (a2 // 2) % 2:
                    c = -c
            if w_sign == -1:
                if b2 % 2:
                    raise HalfIntegerLeak("sign substitution on a half-integer w exponent")
                if (b2 // 2) % 2:
                    c = -c
            out[(a2 * y_pow, b2 * w_pow)] = c
        return Laurent2._raw(out)

    def at_y(self, value: int) -> "Laurent2":
        """Evaluate at an integer ``y`` (``value`` must be +-1 when y appears with negative powers)."""
        out: dict = {}
        for (a2, b2), c in self._t.items():
            if a2 % 2:
                raise HalfIntegerLeak("cannot evaluate a half-integer power of y")
            e = a2 // 2
            v = c * Fraction(value) ** e if e < 0 else c * value**e
            out[(0, b2)] = out.get((0, b2), 0) + v
        return Laurent2(out)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "Laurent2":
        return Laurent2._raw({k: -c for k, c in self._t.items()})

    def __add__(self, other) -> "Laurent2":
        if not isinstance(other, Laurent2):
            if isinstance(other, (int, Fraction)):
                other = Laurent2.const(other)
            else:
                return NotImplemented
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for k, c in b.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = normalize(v)
            else:
                t.pop(k, None)
        return Laurent2._raw(t)

    __radd__ = __add__

    def __sub__(self, other) -> "Laurent2":
        if isinstance(other, (int, Fraction)):
            other = Laurent2.const(other)
        if not isinstance(other, Laurent2):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Laurent2":
        return (-self) + other

    def scale(self, s) -> "Laurent2":
        s = normalize(s)
        if not s:
            return Laurent2._raw({})
        if s == 1:
            return self
        return Laurent2._raw({k: normalize(c * s) for k, c in self._t.items()})

    def shift(self, a2: int, b2: int, c=1) -> "Laurent2":
        """Multiply by the monomial ``c * y**(a2/2) * w**(b2/2)``."""
        if c == 1:
            return Laurent2._raw({(a + a2, b + b2): v for (a, b), v in self._t.items()})
        return Laurent2._raw({(a + a2, b + b2): normalize(v * c) for (a, b), v in self._t.items()})

    def __mul__(self, other) -> "Laurent2":
        if not isinstance(other, Laurent2):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return NotImplemented
        ta, tb = self._t, other._t
        if not ta or not tb:
            return Laurent2._raw({})
        if len(ta) < len(tb):
            ta, tb = tb, ta
        if len(tb) == 1:
            ((k, c),) = tb.items()
            return Laurent2._raw(ta).shift(k[0], k[1], c)
        out: dict = {}
        get = out.get
        for (a1, b1), c1 in ta.items():
            for (a2, b2), c2 in tb.items():
                k = (a1 + a2, b1 + b2)
                out[k] = get(k, 0) + c1 * c2
        return Laurent2({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        """True for a monomial with nonzero coefficient that is invertible over the current ring."""
        if len(self._t) != 1:
            return False
        (c,) = self._t.values()
        return isinstance(c, Fraction) or c in (1, -1)

    def inverse(self) -> "Laurent2":
        if not self.is_unit():
            raise SeriesError(f"{self} is not a unit")
        ((a, b), c), = self._t.items()
        return Laurent2._raw({(-a, -b): normalize(Fraction(1) / c)})

    def __pow__(self, n: int) -> "Laurent2":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Laurent2.const(other)
        if not isinstance(other, Laurent2):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def __repr__(self) -> str:
        return f"Laurent2({self})"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for (a2, b2) in sorted(self._t, key=lambda k: (-k[0], -k[1])):
            c = self._t[(a2, b2)]
            mono = "*".join(
                _fmt_power(v, e2) for v, e2 in (("y", a2), ("w", b2)) if e2
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _fmt_power(var: str, e2: int) -> str:
    e = undoubled(e2)
    return var if e == 1 else f"{var}^({e})"


ZERO = Laurent2()
ONE = Laurent2.const(1)
Y = Laurent2.monomial(1, y=1)
W = Laurent2.monomial(1, w=1)


def psi(var: str = "y", sign: int = 1, k: int = 1) -> Laurent2:
    """``psi_x = 2 + x + 1/x`` evaluated at ``x = sign * var**k``."""
    if var == "y":
        x, xi = (2 * k, 0), (-2 * k, 0)
    elif var == "w":
        x, xi = (0, 2 * k), (0, -2 * k)
    else:
        raise ValueError(f"unknown variable {var!r}")
    return Laurent2({(0, 0): 2, x: sign, xi: sign})


PSI_Y = psi("y")
PSI_W = psi("w")


@lru_cache(maxsize=None)
def psi_power(h: int, m: int) -> Laurent2:
    """``psi_y**h * psi_w**m`` for ``h, m >= 0``."""
    return PSI_Y**h * PSI_W**m


@dataclass(frozen=True)
class PsiExpansion:
    """Finite sum ``sum c[h, m] * psi_y**h * psi_w**m`` with integer ``c``."""

    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def reconstruct(self) -> Laurent2:
        total = ZERO
        for (h, m), c in self.entries.items():
            total = total + psi_power(h, m).scale(c)
        return total

    def invariants(self) -> dict[tuple[int, int], int]:
        """Map ``(g, h) -> n`` using ``g = m + 2h - 1``."""
        return {(m + 2 * h - 1, h): c for (h, m), c in self.entries.items()}


def psi_decompose(p: Laurent2) -> PsiExpansion:
    """Write a symmetric integral polynomial in the basis ``psi_y**h * psi_w**m``.

    Peels off the top y-degree first and, inside that layer, the top w-degree.
    The psi powers are monic and triangular against monomials, so the result
    is unique.
    """
    if not p.is_integral_exponent():
        raise HalfIntegerLeak(f"half-integer exponents in {p}")
    if not p.is_symmetric():
        raise NotSymmetric(f"{p} is not invariant under y<->1/y and w<->1/w")
    for c in p.doubled_terms.values():
        if not isinstance(c, int):
            raise NotIntegral(f"coefficient {c} of {p} is not an integer")
    entries: dict[tuple[int, int], int] = {}
    rest = p
    while rest:
        a2, b2 = max(rest.doubled_terms)
        h, m = a2 // 2, b2 // 2
        c = rest.doubled_terms[(a2, b2)]
        entries[(h, m)] = c
        rest = rest - psi_power(h, m).scale(c)
    return PsiExpansion(entries)
