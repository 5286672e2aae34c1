"""Exact field scalars.

Real scalars are ``gmpy2.mpq`` rationals.  Complex scalars are Gaussian
rationals (:class:`QQi`), a pair of ``mpq``.  Both support ``+ - * /``,
equality, hashing and conversion to Python floats/complex numbers.
"""
from __future__ import annotations

from fractions import Fraction

import gmpy2

Q = gmpy2.mpq
ZERO = Q(0)
ONE = Q(1)

REAL = "R"
COMPLEX = "C"


class QQi:
    """Exact complex rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Q(re)
        self.im = Q(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, QQi):
            return x
        if isinstance(x, complex):
            return QQi(Fraction(x.real), Fraction(x.imag))
        return QQi(x, 0)

    def __add__(self, other):
        o = QQi._coerce(other)
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QQi._coerce(other)
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return QQi._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, QQi):
            if isinstance(other, complex):
                other = QQi._coerce(other)
            else:
                o = Q(other)
                return QQi(self.re * o, self.im * o)
        return QQi(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi._coerce(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero")
        return self * QQi(o.re / d, -o.im / d)

    def __rtruediv__(self, other):
        return QQi._coerce(other) / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, (QQi, int, Fraction, complex)) or type(other) is type(ZERO):
            o = QQi._coerce(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return QQi(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


def conj(x):
    if isinstance(x, QQi):
        return x.conjugate()
    return x


def abs2(x):
    """Squared modulus, exact."""
    if isinstance(x, QQi):
        return x.abs2()
    return x * x


def to_number(x):
    """Float (real field) or complex (complex field) image of an exact scalar."""
    if isinstance(x, QQi):
        return complex(x)
    return float(x)


def parse_rational(s) -> "gmpy2.mpq":
    """Parse ``"p/q"`` strings, ints and Fractions into an exact rational."""
    if isinstance(s, float):
        return Q(Fraction(s))
    if isinstance(s, str):
        s = s.strip()
        if not s:
            raise ValueError("empty rational")
        return Q(s)
    return Q(s)


def parse_scalar(s, field: str = REAL):
    """Parse a scalar for the given field.

    Complex scalars are written as ``[re, im]`` pairs of rationals; a bare
    rational is read as a real number in either field.
    """
    if isinstance(s, (list, tuple)):
        if field != COMPLEX or len(s) != 2:
            raise ValueError(f"cannot read {s!r} as a scalar over {field}")
        return QQi(parse_rational(s[0]), parse_rational(s[1]))
    if field == COMPLEX:
        return QQi(parse_rational(s), 0)
    return parse_rational(s)


def format_rational(q) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x):
    """JSON-ready representation (string, or ``[re, im]`` for complex)."""
    if isinstance(x, QQi):
        return [format_rational(x.re), format_rational(x.im)]
    return format_rational(x)


def field_zero(field: str):
    return QQi(0, 0) if field == COMPLEX else ZERO


def field_one(field: str):
    return QQi(1, 0) if field == COMPLEX else ONE


def coerce(x, field: str):
    if field == COMPLEX:
        return QQi._coerce(x)
    if isinstance(x, QQi):
        if x.im != 0:
            raise ValueError("complex value in a real algebra")
        return x.re
    if isinstance(x, float):
        return Q(Fraction(x))
    return Q(x)
