"""Exact scalars: rationals (``fractions.Fraction``) and elements of a real
quadratic field Q(sqrt(d)).

Field elements with a zero irrational part are always returned as plain
``Fraction`` objects, so rational and quadratic values mix freely as long as
no two distinct radicands meet.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

_TRIAL_LIMIT = 100_000


class FieldMismatchError(ValueError):
    """Raised when elements of Q(sqrt(d1)) and Q(sqrt(d2)) are combined."""


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, m) with n == s*s*m. Square factors above the trial limit are
    only removed when the remainder is itself a perfect square."""
    s, m = 1, n
    p = 2
    while p * p <= m and p < _TRIAL_LIMIT:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(m)
    if r * r == m:
        s, m = s * r, 1
    return s, m


class QuadScalar:
    """``a + b*sqrt(d)`` with rational a, b and a squarefree integer radicand d > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int) -> None:
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)
        if self.d < 2:
            raise ValueError(f"radicand must be a non-square integer > 1, got {d}")

    # construction helpers -------------------------------------------------
    def _make(self, a: Fraction, b: Fraction):
        return a if b == 0 else QuadScalar(a, b, self.d)

    def _coerce(self, other):
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise FieldMismatchError(f"Q(sqrt({self.d})) vs Q(sqrt({other.d}))")
            return other.a, other.b
        if isinstance(other, (int, _RationalABC)):
            return Fraction(other), Fraction(0)
        return None

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, float):
                return float(self) + other
            return NotImplemented
        return self._make(self.a + c[0], self.b + c[1])

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, float):
                return float(self) - other
            return NotImplemented
        return self._make(self.a - c[0], self.b - c[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, float):
                return float(self) * other
            return NotImplemented
        a, b = c
        return self._make(self.a * a + self.b * b * self.d, self.a * b + self.b * a)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - d*b^2 (nonzero for nonzero elements)."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self):
        n = self.norm()
        return self._make(self.a / n, -self.b / n)

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, float):
                return float(self) / other
            return NotImplemented
        if c[1] == 0:
            if c[0] == 0:
                raise ZeroDivisionError("division by zero in quadratic field")
            return self._make(self.a / c[0], self.b / c[0])
        return self * QuadScalar(c[0], c[1], self.d).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Fraction(1), self
        while k:
            if k & 1:
                result = base * result
            base = base * base
            k >>= 1
        return result

    # order -----------------------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with d*b^2
        lhs, rhs = self.a * self.a, self.d * self.b * self.b
        return sa if lhs > rhs else sb

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        if isinstance(other, float):
            return (float(self) > other) - (float(self) < other)
        diff = self - other
        if diff is NotImplemented:
            raise TypeError(f"cannot compare QuadScalar with {type(other).__name__}")
        return sign(diff)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        # b != 0 by construction of results, but user-built values may have b == 0
        if isinstance(other, (int, _RationalABC)):
            return self.b == 0 and self.a == other
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadScalar({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, QuadScalar, float]


def sign(x) -> int:
    if isinstance(x, QuadScalar):
        return x.sign()
    return (x > 0) - (x < 0)


def qsqrt(r) -> Union[Fraction, QuadScalar]:
    """Exact square root of a nonnegative rational, as a field element."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("square root of a negative rational is not real")
    if r == 0:
        return Fraction(0)
    p, q = r.numerator, r.denominator
    s, m = _squarefree_split(p * q)
    if m == 1:
        return Fraction(s, q)
    return QuadScalar(0, Fraction(s, q), m)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QuadScalar))


def radicand(x) -> int:
    """Radicand of a field element, 1 for rationals."""
    return x.d if isinstance(x, QuadScalar) else 1


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_QUAD_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?(?=\s*[+-]))?\s*(?P<s>[+-])?\s*(?P<b>\d+(?:/\d+)?)?\s*\*?\s*sqrt\(\s*(?P<d>\d+)\s*\)\s*$"
)


def parse_scalar(value) -> Scalar:
    """Parse a JSON matrix entry.

    Strings are exact: ``"p/q"``, ``"p"`` or ``"a+b*sqrt(d)"``. JSON numbers
    are binary64 floats (ints stay exact only when given as strings).
    """
    if isinstance(value, bool):
        raise ValueError(f"not a scalar: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _RAT_RE.match(value)
        if m:
            num, den = int(m.group(1)), int(m.group(2) or 1)
            if den == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(num, den)
        m = _QUAD_RE.match(value)
        if m:
            a = Fraction(m.group("a") or 0)
            b = Fraction(m.group("b") or 1)
            if m.group("s") == "-":
                b = -b
            s, d = _squarefree_split(int(m.group("d")))
            return a + b * s * (QuadScalar(0, 1, d) if d > 1 else Fraction(1))
        try:
            return Fraction(value)
        except ValueError:
            pass
    raise ValueError(f"cannot parse scalar {value!r}")


def format_scalar(x) -> str:
    if isinstance(x, QuadScalar):
        if x.a == 0:
            return f"{x.b}*sqrt({x.d})"
        op = "+" if x.b > 0 else "-"
        return f"{x.a}{op}{abs(x.b)}*sqrt({x.d})"
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    return repr(float(x))
