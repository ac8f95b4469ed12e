"""Exact scalars in Q(i)(s), where s = q^(1/2).

A value is stored as (re + i*im)/den with re, im, den univariate
polynomials in s over Q (``flint.fmpq_poly``).  The denominator is real
and monic and gcd(re, im, den) = 1, so every value has exactly one
representation and ``==`` is structural.

q is treated as a real parameter, so complex conjugation only flips the
sign of the imaginary numerator.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational

import flint

_P = flint.fmpq_poly
_ZERO = _P(0)
_ONE = _P(1)


class PoleError(ZeroDivisionError):
    """Raised when a denominator vanishes at an evaluation point."""


def _frac(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _coerce_rational(x):
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Rational):
        return flint.fmpq(int(x.numerator), int(x.denominator))
    if isinstance(x, flint.fmpq):
        return x
    return None


class QScalar:
    """Element of the field Q(i)(q^(1/2)), canonical and immutable."""

    __slots__ = ("re", "im", "den", "_hash", "_floats")

    def __init__(self, value=0):
        if isinstance(value, QScalar):
            re, im, den = value.re, value.im, value.den
        else:
            c = _coerce_rational(value)
            if c is None:
                raise TypeError(f"cannot build QScalar from {type(value).__name__}")
            re, im, den = _P([c]), _ZERO, _ONE
        self.re, self.im, self.den = re, im, den
        self._hash = None
        self._floats = None

    @classmethod
    def _from_parts(cls, re, im, den) -> "QScalar":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if re.is_zero() and im.is_zero():
            re, im, den = _ZERO, _ZERO, _ONE
        elif not den.is_one():
            g = re.gcd(im).gcd(den)
            if not g.is_one():
                re, im, den = re // g, im // g, den // g
            lc = den.leading_coefficient()
            if lc != 1:
                inv = 1 / lc
                re, im, den = re * inv, im * inv, den * inv
        obj = cls.__new__(cls)
        obj.re, obj.im, obj.den = re, im, den
        obj._hash = None
        obj._floats = None
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def i(cls) -> "QScalar":
        return cls._from_parts(_ZERO, _ONE, _ONE)

    @classmethod
    def s_pow(cls, k: int) -> "QScalar":
        """s**k for any integer k."""
        mono = _P([0] * abs(k) + [1])
        if k >= 0:
            return cls._from_parts(mono, _ZERO, _ONE)
        return cls._from_parts(_ONE, _ZERO, mono)

    @classmethod
    def q_pow(cls, x) -> "QScalar":
        """q**x for x an integer multiple of 1/2."""
        two_x = Fraction(x) * 2
        if two_x.denominator != 1:
            raise ValueError(f"q-power {x} is not a multiple of 1/2")
        return cls.s_pow(int(two_x))

    @classmethod
    def q(cls) -> "QScalar":
        return cls.s_pow(2)

    @classmethod
    def from_polys(cls, re, im=None, den=None) -> "QScalar":
        """Build from coefficient lists (lowest power of s first) or fmpq_poly."""
        def conv(p, default):
            if p is None:
                return default
            return p if isinstance(p, _P) else _P([flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in p])
        return cls._from_parts(conv(re, _ZERO), conv(im, _ZERO), conv(den, _ONE))

    # coercion -------------------------------------------------------------

    @staticmethod
    def _lift(x):
        if isinstance(x, QScalar):
            return x
        c = _coerce_rational(x)
        if c is None:
            return None
        return QScalar._from_parts(_P([c]), _ZERO, _ONE)

    # predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self) -> bool:
        return self.im.is_zero()

    def is_constant(self) -> bool:
        return self.re.degree() <= 0 and self.im.degree() <= 0 and self.den.degree() == 0

    def constant_value(self):
        """(re, im) as Fractions when the value does not depend on q."""
        if not self.is_constant():
            raise ValueError("value depends on q")
        d = _frac(self.den.coeffs()[0])
        re = _frac(self.re.coeffs()[0]) if not self.re.is_zero() else Fraction(0)
        im = _frac(self.im.coeffs()[0]) if not self.im.is_zero() else Fraction(0)
        return re / d, im / d

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = QScalar._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return QScalar._from_parts(self.re + o.re, self.im + o.im, self.den)
        g = self.den.gcd(o.den)
        a, b = o.den // g, self.den // g
        return QScalar._from_parts(self.re * a + o.re * b, self.im * a + o.im * b, self.den * a)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._from_parts(-self.re, -self.im, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = QScalar._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = QScalar._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = QScalar._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return QScalar(0)
        if o.im.is_zero():
            re, im = self.re * o.re, self.im * o.re
        elif self.im.is_zero():
            re, im = self.re * o.re, self.re * o.im
        else:
            re = self.re * o.re - self.im * o.im
            im = self.re * o.im + self.im * o.re
        return QScalar._from_parts(re, im, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise ZeroDivisionError("QScalar division by zero")
        if self.im.is_zero():
            return QScalar._from_parts(self.den, _ZERO, self.re)
        norm = self.re * self.re + self.im * self.im
        return QScalar._from_parts(self.den * self.re, -(self.den * self.im), norm)

    def __truediv__(self, other):
        o = QScalar._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = QScalar._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QScalar(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "QScalar":
        return QScalar._from_parts(self.re, -self.im, self.den)

    def real_part(self) -> "QScalar":
        return QScalar._from_parts(self.re, _ZERO, self.den)

    def imag_part(self) -> "QScalar":
        return QScalar._from_parts(self.im, _ZERO, self.den)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        o = QScalar._lift(other)
        if o is None:
            return NotImplemented
        return self.den == o.den and self.re == o.re and self.im == o.im

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.re), str(self.im), str(self.den)))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # evaluation -----------------------------------------------------------

    def _float_coeffs(self):
        if self._floats is None:
            self._floats = tuple(
                [float(_frac(c)) for c in p.coeffs()] for p in (self.re, self.im, self.den)
            )
        return self._floats

    def evaluate(self, q0) -> complex:
        """Numeric value at q = q0, using the principal root for s."""
        if isinstance(q0, (int, float)) and q0 >= 0:
            s0 = math.sqrt(q0)
        else:
            s0 = cmath.sqrt(q0)
        cr, ci, cd = self._float_coeffs()
        d = _split_horner(cd, q0, s0)
        if d == 0:
            raise PoleError(f"denominator vanishes at q = {q0}")
        return complex(_split_horner(cr, q0, s0) + 1j * _split_horner(ci, q0, s0)) / d

    def at_s(self, s0) -> "QScalar":
        """Exact substitution of a rational value for s (returns a constant)."""
        c = flint.fmpq(Fraction(s0).numerator, Fraction(s0).denominator)
        d = self.den(c)
        if d == 0:
            raise PoleError(f"denominator vanishes at s = {s0}")
        return QScalar._from_parts(_P([self.re(c) / d]), _P([self.im(c) / d]), _ONE)

    # display --------------------------------------------------------------

    def __str__(self):
        from .serialize import to_string

        return to_string(self)

    def __repr__(self):
        return f"QScalar('{self}')"


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _split_horner(coeffs, q0, s0):
    # p(s) = p_even(q) + s * p_odd(q): integer powers of q stay exact in q0
    return _horner(coeffs[0::2], q0) + s0 * _horner(coeffs[1::2], q0)


ZERO = QScalar(0)
ONE = QScalar(1)
I = QScalar.i()
Q = QScalar.q()
S = QScalar.s_pow(1)


def as_qscalar(x) -> QScalar:
    q = QScalar._lift(x)
    if q is None:
        raise TypeError(f"not a QScalar-compatible value: {x!r}")
    return q


def qnum(x) -> QScalar:
    """The q-number [x] = (q^x - q^-x)/(q - q^-1), x a multiple of 1/2."""
    x = Fraction(x)
    if (2 * x).denominator != 1:
        raise ValueError(f"q-number argument {x} is not a multiple of 1/2")
    if x == 0:
        return ZERO
    return (QScalar.q_pow(x) - QScalar.q_pow(-x)) / (Q - QScalar.q_pow(-1))


def evaluate(a, q0) -> complex:
    """Numeric value of any scalar of the tower at q = q0."""
    if isinstance(a, (int, Fraction)):
        return complex(a)
    return a.evaluate(q0)
