"""D_(q) on the spinor module spanned by psi0 = 1 + kappa tau and
phi_a = w_a + eps3 kappa star(w_a), assembled from first principles.

Coefficients of the operator matrix are first-order operators
c0 + c_- X_- + c_+ X_+ + c_z X_z acting on the left coefficient f, since
d(f w) = (X_b f) w_b ^ w + f dw for left-invariant w.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..excalc import DIMS, INDICES, SYMBOL, THETA, UNIT, FormElement, exterior_d, one_form, wedge
from ..hodge import HodgeConfig, coefficients, star
from ..qscalar import I, ONE, ZERO
from ..qscalar.ops import is_zero
from ..uqsu2 import MINUS, PLUS, Z, ModuleVector, act_word, x_action, x_words

# spinor slots, in the order of the component vector (f0, f-, fz, f+)
SLOTS = ("psi0", MINUS, Z, PLUS)
SLOT_LABELS = ("psi0", "phi-", "phiz", "phi+")
IDENTITY = None  # key of the constant term in a LinearOp


class LinearOp:
    """c0 + sum_a c_a X_a, with X_a abstract tangent vectors."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if not is_zero(v)}

    @classmethod
    def x(cls, a, c=ONE) -> "LinearOp":
        return cls({a: c})

    @classmethod
    def const(cls, c) -> "LinearOp":
        return cls({IDENTITY: c})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return LinearOp(out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c) -> "LinearOp":
        return LinearOp({k: c * v for k, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, LinearOp):
            return NotImplemented
        return (self - other).is_zero()

    def coefficient(self, key):
        return self.coeffs.get(key, ZERO)

    def words(self) -> list:
        out = []
        for k, c in self.coeffs.items():
            if k is IDENTITY:
                from ..uqsu2 import GeneratorWord

                out.append(GeneratorWord((), c))
            else:
                out.extend(w.scaled(c) for w in x_words(k))
        return out

    def act(self, v: ModuleVector, x_act=x_action) -> ModuleVector:
        out = ModuleVector(v.J)
        for k, c in self.coeffs.items():
            out = out + (v if k is IDENTITY else x_act(k, v)).scale(c)
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in [IDENTITY, MINUS, Z, PLUS]:
            if k in self.coeffs:
                name = "1" if k is IDENTITY else f"X{SYMBOL[k]}"
                parts.append(f"({self.coeffs[k]})*{name}")
        return " + ".join(parts)

    __repr__ = __str__


class OperatorMatrix:
    """Square matrix of LinearOps acting on spinor component vectors."""

    def __init__(self, entries: list[list[LinearOp]], labels=SLOT_LABELS):
        self.entries = entries
        self.labels = tuple(labels)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def size(self) -> int:
        return len(self.entries)

    def apply(self, components: list[ModuleVector], x_act=x_action) -> list[ModuleVector]:
        out = []
        for row in self.entries:
            acc = ModuleVector(components[0].J)
            for op, v in zip(row, components):
                acc = acc + op.act(v, x_act)
            out.append(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.size == other.size and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def diff(self, other) -> list:
        """(i, j, self - other) for every entry that differs."""
        return [
            (i, j, self.entries[i][j] - other.entries[i][j])
            for i in range(self.size)
            for j in range(self.size)
            if not (self.entries[i][j] - other.entries[i][j]).is_zero()
        ]

    def nonzero_count(self) -> int:
        return sum(not e.is_zero() for row in self.entries for e in row)

    def map(self, f) -> "OperatorMatrix":
        return OperatorMatrix(
            [[LinearOp({k: f(v) for k, v in e.coeffs.items()}) for e in row] for row in self.entries], self.labels
        )

    def __str__(self):
        return "\n".join(" | ".join(str(e) for e in row) for row in self.entries)


@dataclass(frozen=True)
class DiracParams:
    eps1: object
    eps2: object
    eps3: object
    kappa: object

    @classmethod
    def default(cls, cfg: HodgeConfig, kappa_sign: int = -1) -> "DiracParams":
        """eps1 = eps3 = -eps2 = 1 and kappa = -i/A (or +i/A)."""
        A, _ = coefficients(cfg)
        if kappa_sign not in (1, -1):
            raise ValueError("kappa_sign must be +1 or -1")
        return cls(ONE, -ONE, ONE, kappa_sign * I / A)

    def eps(self, k: int):
        return {1: self.eps1, 2: self.eps2, 3: self.eps3}[k]

    def closure_defects(self, A) -> tuple:
        """(eps1 - eps3, eps2 eps3^2 kappa^2 A^2 - 1)."""
        return self.eps1 - self.eps3, self.eps2 * self.eps3 ** 2 * self.kappa ** 2 * A ** 2 - ONE


# forms with operator coefficients -------------------------------------------
# an OpForm is {degree: [LinearOp per basis element]}


def _op_zero(k: int) -> list:
    return [LinearOp() for _ in range(DIMS.get(k, 0))]


def _op_add(a: dict, b: dict) -> dict:
    out = {k: list(v) for k, v in a.items()}
    for k, ops in b.items():
        cur = out.setdefault(k, _op_zero(k))
        out[k] = [x + y for x, y in zip(cur, ops)]
    return out


def _op_tensor(op: LinearOp, f: FormElement) -> dict:
    if f.degree not in DIMS:
        return {}
    return {f.degree: [op.scale(c) for c in f.coeffs]}


def _d_of_f_times(w: FormElement) -> dict:
    """d(f w) = (X_b f) w_b ^ w + f dw, as an OpForm."""
    k = w.degree
    if k + 1 > 3:
        return {}
    out: dict = {}
    for b in INDICES:
        out = _op_add(out, _op_tensor(LinearOp.x(b), wedge(one_form(b), w)))
    return _op_add(out, _op_tensor(LinearOp.const(ONE), exterior_d(w)))


def _star_ops(k: int, ops: list, cfg: HodgeConfig) -> dict:
    out: dict = {}
    for i, op in enumerate(ops):
        if not op.is_zero():
            out = _op_add(out, _op_tensor(op, star(FormElement.basis(k, i), cfg)))
    return out


def _apply_D(element: dict, params: DiracParams, cfg: HodgeConfig) -> dict:
    """D(f e) for e = {degree: scalar FormElement}, as an OpForm."""
    out: dict = {}
    for k, w in element.items():
        if w.is_zero():
            continue
        out = _op_add(out, _d_of_f_times(w))
        if k >= 1:
            inner = _d_of_f_times(star(w, cfg))
            for deg, ops in inner.items():
                out = _op_add(out, {kk: [o.scale(params.eps(k)) for o in v] for kk, v in _star_ops(deg, ops, cfg).items()})
    return out


def spinor_basis(params: DiracParams, cfg: HodgeConfig) -> list[dict]:
    """psi0, phi-, phiz, phi+ as {degree: FormElement}."""
    psi0 = {0: UNIT, 3: THETA.scale(params.kappa * cfg.delta)}
    out = [psi0]
    for a in (MINUS, Z, PLUS):
        out.append({1: one_form(a), 2: star(one_form(a), cfg).scale(params.eps3 * params.kappa)})
    return out


def _decompose(t: dict, basis: list[dict]) -> tuple[list[LinearOp], dict]:
    """Coefficients along (psi0, phi-, phiz, phi+) and the leftover OpForm."""
    coeffs = [t.get(0, _op_zero(0))[0]] + [t.get(1, _op_zero(1))[a] for a in (MINUS, Z, PLUS)]
    residual = {k: list(v) for k, v in t.items()}
    for c, e in zip(coeffs, basis):
        if c.is_zero():
            continue
        for k, w in e.items():
            sub = [c.scale(-x) for x in w.coeffs]
            cur = residual.setdefault(k, _op_zero(k))
            residual[k] = [p + s for p, s in zip(cur, sub)]
    residual = {k: v for k, v in residual.items() if any(not o.is_zero() for o in v)}
    return coeffs, residual


class ClosureError(ArithmeticError):
    def __init__(self, residual: dict):
        self.residual = residual
        items = ", ".join(f"{col}:deg{k}[{i}]" for col, r in residual.items() for k, ops in r.items() for i, o in enumerate(ops) if not o.is_zero())
        super().__init__(f"D does not close on the spinor module; nonzero residual entries: {items}")


def assemble(params: DiracParams, cfg: HodgeConfig) -> tuple[OperatorMatrix, dict]:
    """(matrix, residuals by column) without raising."""
    basis = spinor_basis(params, cfg)
    columns, residuals = [], {}
    for label, e in zip(SLOT_LABELS, basis):
        c, r = _decompose(_apply_D(e, params, cfg), basis)
        columns.append(c)
        if r:
            residuals[label] = r
    entries = [[columns[j][i] for j in range(4)] for i in range(4)]
    return OperatorMatrix(entries), residuals


def dirac_matrix(params: DiracParams, cfg: HodgeConfig, strict: bool = True) -> OperatorMatrix:
    m, residuals = assemble(params, cfg)
    if strict and residuals:
        raise ClosureError(residuals)
    return m


def closure_check(params: DiracParams, cfg: HodgeConfig) -> dict:
    """Residual of D(I) outside span{psi0, phi_a}; empty iff D closes on I."""
    _, residuals = assemble(params, cfg)
    return {
        col: {k: [str(o) for o in ops] for k, ops in r.items()}
        for col, r in residuals.items()
    }


def closed_form_matrix(cfg: HodgeConfig) -> OperatorMatrix:
    """The operator matrix written through alpha, beta, gamma, A and xi.

    Valid when D closes with eps1 = eps3 = -eps2 = 1, kappa = -i/A on a
    Cartan-Killing configuration.
    """
    from ..qscalar import Q

    A, xi = coefficients(cfg)
    t = A / xi
    p = cfg.params
    X = LinearOp.x
    C = LinearOp.const
    q2 = Q ** 2
    rows = [
        [LinearOp(), X(PLUS, Q ** 4 * p.alpha), X(Z, q2 * p.gamma), X(MINUS, p.beta)],
        [X(MINUS), C(I * t) + X(Z, -t * 2 * q2 / (1 + Q)), X(MINUS, t * 2 / (1 + Q)), LinearOp()],
        [X(Z), X(PLUS, t * (1 + Q) / 2), C(I * t) + X(Z, t * (1 - Q)), X(MINUS, -t * (1 + Q) / (2 * q2))],
        [X(PLUS), LinearOp(), X(PLUS, -t * 2 * q2 / (1 + Q)), C(I * t) + X(Z, t * 2 / (1 + Q))],
    ]
    return OperatorMatrix(rows)
