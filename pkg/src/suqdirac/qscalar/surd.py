"""Square roots over Q(i)(s).

``sqrt`` reduces a real radicand to (square) * (square-free part), with
the square-free part written as a product of independent atoms: rational
primes and monic irreducible polynomials in s.  Elements of the extension
are finite sums  c_S * prod_{a in S} sqrt(a)  over sets S of atoms, with
QScalar coefficients c_S.  Since atoms are multiplicatively independent
this representation is canonical.

Branch convention: sqrt returns the root whose square-root part has a
positive rational constant and monic polynomial factors; a negative
rational constant contributes a factor i.  For 0 < q <= 1 and
radicands whose atoms are positive there this is the positive root.
Atoms are treated as real under complex conjugation.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

import flint

from .core import I, ONE, ZERO, QScalar, _frac

_P = flint.fmpq_poly

# atom -> QScalar value; atoms are ("n", p) or ("f", coefficient tuple)
_ATOM_VALUES: dict[tuple, QScalar] = {}


def _atom_value(atom) -> QScalar:
    v = _ATOM_VALUES.get(atom)
    if v is None:
        if atom[0] == "n":
            v = QScalar(atom[1])
        else:
            v = QScalar.from_polys([Fraction(n, d) for n, d in atom[1]])
        _ATOM_VALUES[atom] = v
    return v


def _poly_atom(p) -> tuple:
    return ("f", tuple((int(c.p), int(c.q)) for c in p.coeffs()))


def _atom_str(atom) -> str:
    return str(atom[1]) if atom[0] == "n" else str(_atom_value(atom))


def _atom_key(atom):
    # deterministic ordering: primes first, then polynomials by degree
    if atom[0] == "n":
        return (0, atom[1], ())
    return (1, len(atom[1]), atom[1])


def _tmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            c = ca * cb
            for atom in ka & kb:
                c = c * _atom_value(atom)
            k = ka ^ kb
            acc = out.get(k)
            out[k] = c if acc is None else acc + c
    return {k: c for k, c in out.items() if not c.is_zero()}


def _tadd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, c in b.items():
        acc = out.get(k)
        c = c if sign == 1 else -c
        out[k] = c if acc is None else acc + c
    return {k: c for k, c in out.items() if not c.is_zero()}


def _tinv(t: dict) -> dict:
    if not t:
        raise ZeroDivisionError("QSurd division by zero")
    atoms = set().union(*t.keys())
    if not atoms:
        return {frozenset(): t[frozenset()].inverse()}
    a = max(atoms, key=_atom_key)
    u = {k: c for k, c in t.items() if a not in k}
    v = {k - {a}: c for k, c in t.items() if a in k}
    av = _atom_value(a)
    norm = _tadd(_tmul(u, u), {k: c * av for k, c in _tmul(v, v).items()}, -1)
    conj = _tadd(u, {k | {a}: c for k, c in v.items()}, -1)
    return _tmul(conj, _tinv(norm))


def _wrap(t: dict):
    if not t:
        return ZERO
    if len(t) == 1 and frozenset() in t:
        return t[frozenset()]
    return QSurd._raw(t)


class QSurd:
    """Element of Q(i)(s)[sqrt(atoms)] carrying at least one radical."""

    __slots__ = ("terms", "_hash")

    @classmethod
    def _raw(cls, terms: dict) -> "QSurd":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @staticmethod
    def _lift(x):
        if isinstance(x, QSurd):
            return x.terms
        try:
            q = QScalar._lift(x)
        except TypeError:
            return None
        if q is None:
            return None
        return {} if q.is_zero() else {frozenset(): q}

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def atoms(self) -> frozenset:
        return frozenset().union(*self.terms.keys())

    def __add__(self, other):
        o = QSurd._lift(other)
        if o is None:
            return NotImplemented
        return _wrap(_tadd(self.terms, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = QSurd._lift(other)
        if o is None:
            return NotImplemented
        return _wrap(_tadd(self.terms, o, -1))

    def __rsub__(self, other):
        o = QSurd._lift(other)
        if o is None:
            return NotImplemented
        return _wrap(_tadd(o, self.terms, -1))

    def __neg__(self):
        return QSurd._raw({k: -c for k, c in self.terms.items()})

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = QSurd._lift(other)
        if o is None:
            return NotImplemented
        return _wrap(_tmul(self.terms, o))

    __rmul__ = __mul__

    def inverse(self):
        return _wrap(_tinv(self.terms))

    def __truediv__(self, other):
        o = QSurd._lift(other)
        if o is None:
            return NotImplemented
        return _wrap(_tmul(self.terms, _tinv(o)))

    def __rtruediv__(self, other):
        o = QSurd._lift(other)
        if o is None:
            return NotImplemented
        return _wrap(_tmul(o, _tinv(self.terms)))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = {frozenset(): ONE}
        base = self.terms
        while n:
            if n & 1:
                result = _tmul(result, base)
            base = _tmul(base, base)
            n >>= 1
        return _wrap(result)

    def conj(self):
        return QSurd._raw({k: c.conj() for k, c in self.terms.items()})

    def __eq__(self, other):
        o = QSurd._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, q0) -> complex:
        total = 0j
        for k, c in self.terms.items():
            v = c.evaluate(q0)
            for atom in k:
                v *= cmath.sqrt(_atom_value(atom).evaluate(q0))
            total += v
        return total

    def __str__(self):
        parts = []
        for k in sorted(self.terms, key=lambda k: sorted(_atom_key(a) for a in k)):
            c = str(self.terms[k])
            if not k:
                parts.append(c)
                continue
            rad = "*".join(f"sqrt({_atom_str(a)})" for a in sorted(k, key=_atom_key))
            parts.append(rad if c == "1" else f"-{rad}" if c == "-1" else f"({c})*{rad}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"QSurd('{self}')"


def _monic_factors(p):
    """content, {monic irreducible: multiplicity} for a nonzero fmpq_poly."""
    content, facs = p.factor()
    content = flint.fmpq(content)
    out = {}
    for f, e in facs:
        f = _P(f)
        lc = f.leading_coefficient()
        content *= lc ** e
        out[_poly_atom(f * (1 / lc))] = e
    return content, out


def sqrt(x):
    """Square root of a real element of Q(s), exact, in the radical tower."""
    if isinstance(x, QSurd):
        raise NotImplementedError("nested radicals are not supported")
    x = QScalar._lift(x) if not isinstance(x, QScalar) else x
    if x is None:
        raise TypeError("sqrt expects a QScalar")
    if x.is_zero():
        return ZERO
    if not x.is_real():
        raise ValueError("sqrt is only defined for real radicands")
    c_num, f_num = _monic_factors(x.re)
    c_den, f_den = _monic_factors(x.den)
    exps = dict(f_num)
    for a, e in f_den.items():
        exps[a] = exps.get(a, 0) - e
    const = Fraction(int(c_num.p), int(c_num.q)) / Fraction(int(c_den.p), int(c_den.q))
    coeff = ONE
    if const < 0:
        coeff, const = I, -const
    atoms = set()
    for a, e in exps.items():
        odd = e % 2
        if odd:
            atoms.add(a)
        coeff = coeff * _atom_value(a) ** ((e - odd) // 2)
    u, v = const.numerator, const.denominator
    coeff = coeff / v
    for p, e in flint.fmpz(u * v).factor():
        p, e = int(p), int(e)
        coeff = coeff * p ** (e // 2)
        if e % 2:
            atoms.add(("n", p))
    if not atoms:
        return coeff
    return QSurd._raw({frozenset(atoms): coeff})


__all__ = ["QSurd", "sqrt"]
