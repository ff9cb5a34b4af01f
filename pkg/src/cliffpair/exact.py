"""Exact Gaussian rationals.

A :class:`Scalar` is ``re + im*i`` with ``re`` and ``im`` arbitrary precision
rationals (``gmpy2.mpq``).  Values are immutable and always reduced, so
equality and hashing are structural.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

from gmpy2 import mpq

__all__ = ["Scalar", "ZERO", "ONE", "I", "to_scalar", "parse_scalar", "frac"]

_MPQ_ZERO = mpq(0)
_MPQ_TYPE = type(_MPQ_ZERO)


def _q(x) -> mpq:
    if type(x) is _MPQ_TYPE:
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return _parse_q(x)
    if type(x) is Scalar and not x.im:
        return x.re
    raise TypeError("not an exact rational: %r" % (x,))


class Scalar:
    """Element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> "Scalar":
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    # arithmetic
    def __add__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return Scalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return Scalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar._raw(a * c, _MPQ_ZERO)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Scalar":
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar._raw(1 / a, _MPQ_ZERO)
        n = a * a + b * b
        return Scalar._raw(a / n, -b / n)

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    # predicates
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(Fraction(int(self.re.numerator), int(self.re.denominator)))
        return hash((self.re, self.im))

    def to_fraction(self) -> Fraction:
        if self.im:
            raise ValueError("not real: %s" % self)
        return Fraction(int(self.re.numerator), int(self.re.denominator))

    # text
    def __str__(self):
        r = _fmt(self.re)
        if not self.im:
            return r
        s = _fmt(self.im)
        if not s.startswith("-"):
            s = "+" + s
        return "%s%s*i" % (r, s)

    def __repr__(self):
        return "Scalar('%s')" % self


def _fmt(q: mpq) -> str:
    return "%d/%d" % (q.numerator, q.denominator)


def _coerce(x):
    if type(x) is Scalar:
        return x
    if isinstance(x, bool):
        return None
    if isinstance(x, int) or type(x) is _MPQ_TYPE or isinstance(x, Fraction):
        return Scalar._raw(_q(x), _MPQ_ZERO)
    return None


def frac(p: int, q: int = 1) -> Scalar:
    """The real Scalar p/q."""
    return Scalar._raw(mpq(p, q), _MPQ_ZERO)


def to_scalar(x) -> Scalar:
    """Coerce an int, Fraction, mpq, Scalar or canonical string."""
    if isinstance(x, str):
        return parse_scalar(x)
    s = _coerce(x)
    if s is None:
        raise TypeError("cannot convert %r to Scalar" % (x,))
    return s


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = _re.compile(r"^\s*(%s)(?:\s*([+-]\s*\d+(?:/\d+)?)\s*\*\s*i)?\s*$" % _RAT)
_PURE_IM_RE = _re.compile(r"^\s*(%s)\s*\*\s*i\s*$" % _RAT)


def _parse_q(text: str) -> mpq:
    return mpq(text.replace(" ", "").lstrip("+"))


def parse_scalar(text: str) -> Scalar:
    """Parse ``p/q`` or ``p/q+r/s*i`` (integers may omit the denominator)."""
    m = _SCALAR_RE.match(text)
    if m:
        re_part = _parse_q(m.group(1))
        im_part = _parse_q(m.group(2)) if m.group(2) else _MPQ_ZERO
        return Scalar._raw(re_part, im_part)
    m = _PURE_IM_RE.match(text)
    if m:
        return Scalar._raw(_MPQ_ZERO, _parse_q(m.group(1)))
    raise ValueError("malformed scalar: %r" % text)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
