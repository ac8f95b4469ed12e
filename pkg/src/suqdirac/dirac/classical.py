"""The q = 1 operator on SU(2) and the q -> 1 comparison.

Classical tangent vectors act on f(J, N) through

    L_- f = -(i/sqrt2) (J - N/2)(J + N/2 + 1) f(J, N+2)
    L_+ f = -(i/sqrt2) f(J, N-2)
    L_z f = (i/2) N f

with the operator matrix written directly in these vectors (it does not go
through the quantum assembly).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..hodge import HodgeConfig
from ..qscalar import I, ONE, ZERO, QScalar, sqrt
from ..qscalar.ops import is_zero, to_complex
from ..uqsu2 import MINUS, PLUS, Z, ModuleVector, Weight, x_shift
from .operator import DiracParams, LinearOp, OperatorMatrix, dirac_matrix
from .reduce import LABELS, Provider, case_of, reduce, slots_for
from .spectrum import SpectrumRecord, spectrum_closed_form

_C = -I * sqrt(QScalar(Fraction(1, 2)))


def classical_coefficient(a: int, J, N: int):
    J = Fraction(J)
    if a == MINUS:
        return _C * QScalar((J - Fraction(N, 2)) * (J + Fraction(N, 2) + 1))
    if a == PLUS:
        return _C
    if a == Z:
        return I * QScalar(Fraction(N, 2))
    raise ValueError(f"unknown tangent index {a!r}")


def classical_action(a: int, v: ModuleVector) -> ModuleVector:
    out: dict = {}
    for n, c in v.coeffs.items():
        m = n + x_shift(a)
        t = c * classical_coefficient(a, v.J, n)
        out[m] = out[m] + t if m in out else t
    return ModuleVector(v.J, out)


CLASSICAL = Provider(classical_coefficient, x_shift, classical_action)


def classical_matrix() -> OperatorMatrix:
    X, C = LinearOp.x, LinearOp.const
    return OperatorMatrix(
        [
            [LinearOp(), X(PLUS), X(Z), X(MINUS)],
            [X(MINUS), X(Z) + C(-I), X(MINUS, -ONE), LinearOp()],
            [X(Z), X(PLUS, -ONE), C(-I), X(MINUS)],
            [X(PLUS), LinearOp(), X(PLUS), C(-I) + X(Z, -ONE)],
        ]
    )


def classical_spectrum(w: Weight) -> list[SpectrumRecord]:
    """Known eigenpairs at q = 1, labelled like the quantum records."""
    J, N = w.J, w.N
    case = case_of(w)
    slots = slots_for(case)
    root = sqrt(QScalar(J * (J + 1)))
    low = -I * QScalar(J + 1)
    h = Fraction(N, 2)
    recs = []
    for sign, label in ((1, "lambda+"), (-1, "lambda-")):
        lam = sign * I * root
        vec = {0: lam, 1: ONE, 2: I * QScalar(h), 3: ONE}
        recs.append(SpectrumRecord(label, lam, tuple(vec[s] for s in slots), slots=slots))
    if case == "generic":
        recs.append(SpectrumRecord("lambda'+", low, (ZERO, -I / QScalar(1 + J + h), ONE, I / QScalar(1 + J - h)), slots=slots))
        recs.append(SpectrumRecord("lambda'-", I * QScalar(J), (ZERO, I / QScalar(J - h), ONE, -I / QScalar(J + h)), slots=slots))
        return recs
    if case == "highest":
        recs.append(SpectrumRecord("third", low, (ZERO, -I, ONE), slots=slots))
        recs.append(SpectrumRecord("diagonal", low, (ONE,), kind="diagonal", slots=(3,)))
    else:
        # rho = +i mu: the psi0 row gives L+L- f + rho Lz f = -mu - i rho = 0 here
        recs.append(SpectrumRecord("third", low, (ZERO, ONE, I), slots=slots))
        recs.append(SpectrumRecord("diagonal", low, (ONE,), kind="diagonal", slots=(1,)))
    return recs


def classical_problems(w: Weight) -> list[str]:
    """Exact check of the classical records against the reduced classical matrix."""
    D = classical_matrix()
    M = reduce(D, w, prov=CLASSICAL)
    out = []
    for r in classical_spectrum(w):
        if r.kind == "diagonal":
            comps = [ModuleVector(w.J) for _ in range(4)]
            comps[r.slots[0]] = ModuleVector.basis(w)
            image = D.apply(comps, classical_action)
            expected = [v.scale(r.value) for v in comps]
            if any(a != b for a, b in zip(image, expected)):
                out.append(f"{r.label}: not an eigenvector")
            continue
        n = len(M)
        Mv = [sum((M[i][j] * r.eigvec[j] for j in range(n)), ZERO) for i in range(n)]
        if any(not is_zero(a - r.value * b) for a, b in zip(Mv, r.eigvec)):
            out.append(f"{r.label}: M v != lambda v")
    return out


# q -> 1 --------------------------------------------------------------------


@dataclass
class LimitRow:
    q: float
    label: str
    lambda_q: complex
    lambda_classical: complex
    abs_err: float
    eigvec_err: float | None


ORDER_FLOOR = 0.99  # estimates of a first-order rate land within 1% of 1


@dataclass
class LimitSweep:
    weight: Weight
    rows: list
    orders: dict  # label -> fitted rate on the asymptotic tail
    naive_orders: dict  # label -> plain log-log slope over the whole grid
    monotone: dict  # label -> errors never increase along the grid
    tail_start: dict  # label -> q where the final decreasing run starts

    def converged(self, label: str) -> bool:
        errs = [r.abs_err for r in self.rows if r.label == label]
        return errs[-1] <= errs[0] or errs[-1] < 1e-13

    def ok(self) -> bool:
        return all(
            self.converged(k) and (p is None or p >= ORDER_FLOOR) for k, p in self.orders.items()
        )


def _vec(rec: SpectrumRecord, q0) -> np.ndarray | None:
    if rec.eigvec is None:
        return None
    return np.array([to_complex(x, q0) for x in rec.eigvec])


def _vec_err(vq, vc) -> float | None:
    if vq is None or vc is None:
        return None
    ref = int(np.argmax(np.abs(vc)))
    if abs(vq[ref]) == 0:
        return None
    return float(np.max(np.abs(vq / vq[ref] - vc / vc[ref])))


def classical_limit_sweep(w: Weight, cfg: HodgeConfig, qgrid, D: OperatorMatrix | None = None) -> LimitSweep:
    """Quantum closed forms against the classical records along qgrid."""
    if D is None:
        D = dirac_matrix(DiracParams.default(cfg), cfg)
    quantum = spectrum_closed_form(w, cfg, D)
    classical = {r.label: r for r in classical_spectrum(w)}
    rows = []
    for q0 in qgrid:
        if not 0 < q0 <= 1:
            raise ValueError("q grid must lie in (0, 1]")
        for r in quantum:
            c = classical[r.label]
            lq, lc = to_complex(r.value, q0), to_complex(c.value, 1.0)
            rows.append(LimitRow(float(q0), r.label, lq, lc, float(abs(lq - lc)), _vec_err(_vec(r, q0), _vec(c, 1.0))))
    orders, naive, monotone, tail = {}, {}, {}, {}
    for r in quantum:
        pts = sorted(((row.q, row.abs_err) for row in rows if row.label == r.label), key=lambda p: p[0])
        errs = [e for _, e in pts]
        monotone[r.label] = all(b <= a + 1e-12 for a, b in zip(errs, errs[1:]))
        k = max((i for i in range(1, len(errs)) if errs[i] > errs[i - 1] + 1e-15), default=0)
        tail[r.label] = pts[k][0]
        orders[r.label] = _rate(pts[k:], corrected=True)
        naive[r.label] = _rate(pts, corrected=False)
    return LimitSweep(w, rows, orders, naive, monotone, tail)


def _rate(pts, corrected: bool) -> float | None:
    """Slope p in log e = p log h + b (+ c h), h = 1 - q.

    The linear correction absorbs the next Taylor term, so a first-order
    rate reads as p close to 1 rather than biased low by curvature.
    """
    fit = [(1 - q, e) for q, e in pts if q < 1 and e > 1e-13]
    need = 3 if corrected else 2
    if len(fit) < need:
        return None
    h = np.array([x for x, _ in fit])
    cols = [np.log(h), np.ones_like(h)] + ([h] if corrected else [])
    sol = np.linalg.lstsq(np.vstack(cols).T, np.log([e for _, e in fit]), rcond=None)[0]
    return float(sol[0])


def parse_grid(spec: str) -> list[float]:
    """'a:b:n' -> n evenly spaced points from a to b inclusive."""
    try:
        a, b, n = spec.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise ValueError(f"bad grid {spec!r}; expected a:b:n") from exc
    if n < 2 or not (0 < a <= 1 and 0 < b <= 1):
        raise ValueError("grid points must lie in (0, 1] and a rate needs n >= 2")
    return [float(x) for x in np.linspace(a, b, n)]
