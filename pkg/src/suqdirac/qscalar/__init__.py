"""Exact scalar tower: Q(i)(q^(1/2)), its square-root extensions, and
polynomials in named real parameters."""

from .core import I, ONE, Q, S, ZERO, PoleError, QScalar, as_qscalar, evaluate, qnum
from .params import ParamPoly
from .serialize import ParseError, parse, to_string
from .surd import QSurd, sqrt
from .ops import conj, is_zero, scalar_str, to_complex

__all__ = [
    "I", "ONE", "Q", "S", "ZERO", "PoleError", "QScalar", "QSurd", "ParamPoly",
    "as_qscalar", "evaluate", "qnum", "sqrt", "ParseError", "parse", "to_string",
    "conj", "is_zero", "scalar_str", "to_complex",
]
