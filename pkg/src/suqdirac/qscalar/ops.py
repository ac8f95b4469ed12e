"""Generic helpers that accept any scalar of the tower (or a plain int)."""

from __future__ import annotations

from fractions import Fraction


def is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


def conj(x):
    if isinstance(x, (int, Fraction)):
        return x
    return x.conj()


def to_complex(x, q0) -> complex:
    if isinstance(x, (int, Fraction)):
        return complex(x)
    return x.evaluate(q0)


def scalar_str(x) -> str:
    return str(x)
