"""Polynomials in named real parameters with QScalar/QSurd coefficients.

Only what the metric tables need: ring operations, division by field
scalars, substitution.  Parameters are real, so conjugation acts on the
coefficients alone.
"""

from __future__ import annotations

from .core import ONE, QScalar
from .surd import QSurd

Monomial = tuple  # sorted tuple of (name, exponent)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for n, e in b:
        d[n] = d.get(n, 0) + e
    return tuple(sorted((n, e) for n, e in d.items() if e))


def _is_scalar(x) -> bool:
    return isinstance(x, (int, QScalar, QSurd)) or type(x).__name__ == "Fraction"


class ParamPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if not _zero(c)}

    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        return cls({((name, 1),): ONE})

    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls({(): c})

    @staticmethod
    def _lift(x):
        if isinstance(x, ParamPoly):
            return x
        if _is_scalar(x):
            return ParamPoly.const(QScalar(x) if isinstance(x, int) else x)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        o = ParamPoly._lift(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t[m] + c if m in t else c
        return ParamPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = ParamPoly._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = ParamPoly._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = ParamPoly._lift(other)
        if o is None:
            return NotImplemented
        t: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                m = _mono_mul(ma, mb)
                c = ca * cb
                t[m] = t[m] + c if m in t else c
        return ParamPoly(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ParamPoly):
            if set(other.terms) != {()}:
                raise TypeError("division by a non-constant parameter polynomial")
            other = other.terms[()]
        inv = ONE / other
        return ParamPoly({m: c * inv for m, c in self.terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = ParamPoly.const(ONE)
        for _ in range(n):
            out = out * self
        return out

    def conj(self):
        return ParamPoly({m: c.conj() for m, c in self.terms.items()})

    def __eq__(self, other):
        o = ParamPoly._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, **exps) -> object:
        m = tuple(sorted((n, e) for n, e in exps.items() if e))
        return self.terms.get(m, QScalar(0))

    def monomials(self) -> list:
        return sorted(self.terms)

    def subs(self, **values):
        total = QScalar(0)
        for m, c in self.terms.items():
            v = c
            for n, e in m:
                v = v * values[n] ** e
            total = total + v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)
            c = str(self.terms[m])
            parts.append(c if not mono else mono if c == "1" else f"({c})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def _zero(c) -> bool:
    return c == 0 if isinstance(c, int) else c.is_zero()
