"""String form of QScalar values and a safe parser for it.

The printed grammar is a quotient of two Laurent polynomials in q^(1/2)
with Gaussian-integer coefficients, for example
``(q^2+1)/(q^(1/2)-q^(-1/2))`` or ``(1+2*i)*q^(-1/2)``.  The parser
accepts any arithmetic expression over ``q``, ``i`` and rationals using
``+ - * / ^`` and parentheses.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from math import gcd, lcm

from .core import I, Q, QScalar, _frac


def _exp_str(k: int) -> str:
    # k is the exponent of s = q^(1/2)
    if k % 2 == 0:
        e = k // 2
        return "q" if e == 1 else f"q^{e}" if e > 0 else f"q^({e})"
    return f"q^({k}/2)"


def _coeff_str(a: int, b: int) -> str:
    if b == 0:
        return str(a)
    bi = "i" if b == 1 else "-i" if b == -1 else f"{b}*i"
    if a == 0:
        return bi
    sign = "+" if b > 0 else "-"
    bmag = "i" if abs(b) == 1 else f"{abs(b)}*i"
    return f"({a}{sign}{bmag})"


def _laurent_str(terms: dict[int, tuple[int, int]]) -> str:
    """terms: exponent of s -> Gaussian integer (a, b)."""
    if not terms:
        return "0"
    pieces = []
    for k in sorted(terms):
        a, b = terms[k]
        if k == 0:
            body = _coeff_str(a, b)
        elif (a, b) == (1, 0):
            body = _exp_str(k)
        elif (a, b) == (-1, 0):
            body = "-" + _exp_str(k)
        else:
            body = f"{_coeff_str(a, b)}*{_exp_str(k)}"
        pieces.append(body)
    out = pieces[0]
    for p in pieces[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def _integer_terms(re, im, den):
    """Scale so that every coefficient is an integer with content 1."""
    polys = [re, im, den]
    m = 1
    for p in polys:
        for c in p.coeffs():
            m = lcm(m, int(c.q))
    ints = [[int(_frac(c) * m) for c in p.coeffs()] for p in polys]
    g = 0
    for lst in ints:
        for c in lst:
            g = gcd(g, c)
    g = g or 1
    return [[c // g for c in lst] for lst in ints]


def to_string(x: QScalar) -> str:
    if x.is_zero():
        return "0"
    r, i_, d = _integer_terms(x.re, x.im, x.den)
    low_d = next(k for k, c in enumerate(d) if c)
    num: dict[int, tuple[int, int]] = {}
    for k in range(max(len(r), len(i_))):
        a = r[k] if k < len(r) else 0
        b = i_[k] if k < len(i_) else 0
        if a or b:
            num[k - low_d] = (a, b)
    den = {k - low_d: (c, 0) for k, c in enumerate(d) if c}
    ns = _laurent_str(num)
    if den == {0: (1, 0)}:
        return ns
    if len(num) > 1:
        ns = f"({ns})"
    ds = _laurent_str(den)
    if len(den) > 1 or ds.startswith("-") or "*" in ds:
        ds = f"({ds})"
    return f"{ns}/{ds}"


class ParseError(ValueError):
    pass


def _const_rational(node) -> Fraction | None:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _const_rational(node.operand)
        if v is None:
            return None
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Div, ast.Add, ast.Sub, ast.Mult)):
        a, b = _const_rational(node.left), _const_rational(node.right)
        if a is None or b is None:
            return None
        if isinstance(node.op, ast.Div):
            return a / b
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        return a * b
    return None


def _walk(node):
    if isinstance(node, ast.Expression):
        return _walk(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return QScalar(node.value)
        raise ParseError(f"unsupported literal {node.value!r}")
    if isinstance(node, ast.Name):
        if node.id == "q":
            return Q
        if node.id == "i":
            return I
        raise ParseError(f"unknown symbol {node.id!r}")
    if isinstance(node, ast.Call):
        if isinstance(node.func, ast.Name) and node.func.id == "sqrt" and len(node.args) == 1 and not node.keywords:
            from .surd import sqrt

            return sqrt(_walk(node.args[0]))
        raise ParseError("only sqrt(...) calls are allowed")
    if isinstance(node, ast.UnaryOp):
        v = _walk(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            e = _const_rational(node.right)
            if e is None:
                raise ParseError("exponent must be a rational constant")
            if isinstance(node.left, ast.Name) and node.left.id == "q":
                return QScalar.q_pow(e)
            if e.denominator != 1:
                raise ParseError("fractional powers are only allowed on q")
            return _walk(node.left) ** int(e)
        a, b = _walk(node.left), _walk(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    raise ParseError(f"unsupported syntax: {ast.dump(node)}")


def parse(text: str):
    """Parse a scalar expression, e.g. ``"(q^2+1)/(q^(1/2)-q^(-1/2))"``.

    ``sqrt(...)`` of a real expression is accepted and yields a QSurd.
    """
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(str(exc)) from None
    return _walk(tree)
