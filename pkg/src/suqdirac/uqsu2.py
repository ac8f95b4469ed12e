"""Action of U_q(su(2)) words on the weight vectors f(J, N).

Conventions (the gauge is a choice; reduced eigenvalues do not depend on
it, eigenvector component ratios do):

    K f(J,N) = q^(N/2) f(J,N)
    E f(J,N) = phi(J,N) f(J,N+2),   phi(J,N) = [J-N/2][J+N/2+1]
    F f(J,N) = f(J,N-2)

so that FE acts as phi and EF as eps(J,N) = [J+N/2][J-N/2+1].  Weights
with |N| > 2J are the zero vector.  A word is an operator product:
``GeneratorWord(("K", "E"))`` applies E first, then K.

The tangent vectors of the three-dimensional calculus are

    X_- = -(i/sqrt2) q^(-1/2) E K^-1
    X_+ = -(i/sqrt2) q^(1/2)  F K^-1
    X_z = (i/2) (K^-2 - 1)/(1 - q)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .qscalar import I, ONE, Q, ZERO, QScalar, qnum, sqrt
from .qscalar.ops import is_zero

GENERATORS = ("E", "F", "K", "Kinv")


@dataclass(frozen=True, order=True)
class Weight:
    J: Fraction
    N: int

    def __post_init__(self):
        J = Fraction(self.J)
        object.__setattr__(self, "J", J)
        if J < 0 or (2 * J).denominator != 1:
            raise ValueError(f"J must be a non-negative half-integer, got {J}")
        if not isinstance(self.N, int):
            raise TypeError("N must be an integer")
        if (self.N - int(2 * J)) % 2:
            raise ValueError(f"N = {self.N} violates N = 2J (mod 2) for J = {J}")

    def in_range(self) -> bool:
        return abs(self.N) <= 2 * self.J

    def shifted(self, dn: int) -> "Weight":
        return Weight(self.J, self.N + dn)

    def to_json(self) -> dict:
        return {"J": str(self.J), "N": self.N}

    @classmethod
    def from_json(cls, data) -> "Weight":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(Fraction(data["J"]), int(data["N"]))


def phi(J, N) -> QScalar:
    J = Fraction(J)
    return qnum(J - Fraction(N, 2)) * qnum(J + Fraction(N, 2) + 1)


def eps(J, N) -> QScalar:
    J = Fraction(J)
    return qnum(J + Fraction(N, 2)) * qnum(J - Fraction(N, 2) + 1)


def casimir_scalars(w: Weight) -> tuple[QScalar, QScalar]:
    """(eps, phi) at the weight, in the difference-of-squares form."""
    h = qnum(w.J + Fraction(1, 2)) ** 2
    e = h - qnum(Fraction(1 - w.N, 2)) ** 2
    f = h - qnum(Fraction(w.N + 1, 2)) ** 2
    return e, f


class ModuleVector:
    """Finite combination of f(J, N) for one fixed J."""

    __slots__ = ("J", "coeffs")

    def __init__(self, J, coeffs: dict | None = None):
        self.J = Fraction(J)
        clean = {}
        for n, c in (coeffs or {}).items():
            w = Weight(self.J, n)
            if w.in_range() and not is_zero(c):
                clean[n] = c
        self.coeffs = clean

    @classmethod
    def basis(cls, w: Weight) -> "ModuleVector":
        return cls(w.J, {w.N: ONE})

    def _check(self, other):
        if not isinstance(other, ModuleVector):
            raise TypeError("expected ModuleVector")
        if other.J != self.J and self.coeffs and other.coeffs:
            raise ValueError("ModuleVectors with different J")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out[n] + c if n in out else c
        return ModuleVector(self.J if self.coeffs else other.J, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ModuleVector(self.J, {n: -c for n, c in self.coeffs.items()})

    def scale(self, c) -> "ModuleVector":
        return ModuleVector(self.J, {n: c * v for n, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return True
        return self.J == other.J and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def component(self, N: int):
        return self.coeffs.get(N, ZERO)

    def __repr__(self):
        inner = ", ".join(f"N={n}: {c}" for n, c in sorted(self.coeffs.items()))
        return f"ModuleVector(J={self.J}, {{{inner}}})"


def generator_coefficient(g: str, J, N: int) -> tuple[int, QScalar]:
    """(shift, c) with g f(J,N) = c f(J,N+shift), without range truncation."""
    if g == "K":
        return 0, QScalar.q_pow(Fraction(N, 2))
    if g == "Kinv":
        return 0, QScalar.q_pow(Fraction(-N, 2))
    if g == "E":
        return 2, phi(J, N)
    if g == "F":
        return -2, ONE
    raise ValueError(f"unknown generator {g!r}")


def act_generator(g: str, v: ModuleVector) -> ModuleVector:
    out: dict = {}
    for n, c in v.coeffs.items():
        shift, k = generator_coefficient(g, v.J, n)
        m = n + shift
        t = c * k
        out[m] = out[m] + t if m in out else t
    return ModuleVector(v.J, out)


@dataclass(frozen=True)
class GeneratorWord:
    letters: tuple = ()
    coeff: object = field(default=ONE)

    def __post_init__(self):
        for g in self.letters:
            if g not in GENERATORS:
                raise ValueError(f"unknown generator {g!r}")

    def __mul__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(self.letters + other.letters, self.coeff * other.coeff)

    def scaled(self, c) -> "GeneratorWord":
        return GeneratorWord(self.letters, self.coeff * c)

    def __str__(self):
        body = "*".join(self.letters) or "1"
        return f"({self.coeff})*{body}"


def act_word(words, v: ModuleVector) -> ModuleVector:
    """Apply a GeneratorWord or a sum (iterable) of them."""
    if isinstance(words, GeneratorWord):
        words = [words]
    total = ModuleVector(v.J)
    for w in words:
        r = v
        for g in reversed(w.letters):
            r = act_generator(g, r)
        total = total + r.scale(w.coeff)
    return total


def word_coefficient(w: GeneratorWord, J, N: int) -> tuple[int, object]:
    """Formal (shift, c): w f(J,N) = c f(J,N+shift), ignoring truncation."""
    shift, c = 0, w.coeff
    for g in reversed(w.letters):
        ds, k = generator_coefficient(g, J, N + shift)
        shift += ds
        c = c * k
    return shift, c


# tangent vectors -------------------------------------------------------

MINUS, PLUS, Z = 0, 1, 2

_INV_SQRT2 = sqrt(QScalar(Fraction(1, 2)))


def x_words(a: int) -> list[GeneratorWord]:
    if a == MINUS:
        return [GeneratorWord(("E", "Kinv"), -I * _INV_SQRT2 * QScalar.q_pow(Fraction(-1, 2)))]
    if a == PLUS:
        return [GeneratorWord(("F", "Kinv"), -I * _INV_SQRT2 * QScalar.q_pow(Fraction(1, 2)))]
    if a == Z:
        c = I / (2 * (1 - Q))
        return [GeneratorWord(("Kinv", "Kinv"), c), GeneratorWord((), -c)]
    raise ValueError(f"unknown tangent index {a!r}")


def x_action(a: int, v: ModuleVector) -> ModuleVector:
    return act_word(x_words(a), v)


def x_shift(a: int) -> int:
    return {MINUS: 2, PLUS: -2, Z: 0}[a]


def x_coefficient(a: int, J, N: int):
    """Formal c with X_a f(J,N) = c f(J, N + shift(a))."""
    total = ZERO
    for w in x_words(a):
        _, c = word_coefficient(w, J, N)
        total = total + c
    return total


def xz_eigenvalue(N: int) -> QScalar:
    return I / 2 * (QScalar.q_pow(-N) - 1) / (1 - Q)
