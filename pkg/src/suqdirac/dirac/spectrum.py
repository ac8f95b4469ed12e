"""Closed-form and numeric spectra of the reduced operator.

Closed forms are exact tower elements.  Eigenvalues are written through
t = A / xi and c = (1 + q)^2 gamma / (2 q alpha); on the Cartan-Killing
family c = 2q.  Eigenvectors are exact null vectors of M - lambda,
scaled so that the last nonzero slot equals 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..hodge import HodgeConfig, coefficients
from ..linalg import SparseMatrix, dense_sub_scalar
from ..qscalar import I, ONE, Q, ZERO, QScalar, qnum, sqrt
from ..qscalar.ops import is_zero, scalar_str, to_complex
from ..uqsu2 import Weight, eps, phi, xz_eigenvalue
from .operator import DiracParams, OperatorMatrix, dirac_matrix
from .reduce import LABELS, case_of, diagonal_eigenvalue, diagonal_spinor, reduce, slots_for


@dataclass
class SpectrumRecord:
    label: str
    value: object
    eigvec: tuple | None = None
    kind: str = "reduced"  # or "diagonal"
    slots: tuple = field(default=())

    def eigvec_dict(self) -> dict:
        if self.eigvec is None:
            return {}
        return {LABELS[s]: v for s, v in zip(self.slots, self.eigvec)}


def _t_and_c(cfg: HodgeConfig):
    A, xi = coefficients(cfg)
    p = cfg.params
    return A / xi, (1 + Q) ** 2 * p.gamma / (2 * Q * p.alpha)


def lambda_pm_squared(w: Weight, cfg: HodgeConfig):
    """lambda_+-^2 at any weight, boundary weights included."""
    _, c = _t_and_c(cfg)
    a = cfg.params.alpha
    J, N = w.J, w.N
    brace = Q ** 2 * phi(J, N) + eps(J, N) + c * qnum(Fraction(N, 2)) ** 2
    return -(a / 2) * QScalar.q_pow(1 - N) * brace


def exact_eigenvector(M: list[list], lam) -> tuple | None:
    """Null vector of M - lam, last free slot set to 1; None if trivial."""
    n = len(M)
    B = dense_sub_scalar(M, lam)
    S = SparseMatrix(n, n, {(i, j): B[i][j] for i in range(n) for j in range(n)})
    ns = S.nullspace()
    if not ns:
        return None
    v = ns[-1]
    return tuple(v.get(i, ZERO) for i in range(n))


def _pm_records(w, cfg, M, slots):
    lam2 = lambda_pm_squared(w, cfg)
    root = sqrt(-lam2)  # lambda = +- i root
    out = []
    for sign, label in ((1, "lambda+"), (-1, "lambda-")):
        lam = sign * I * root
        vec = {0: lam, 2: xz_eigenvalue(w.N)}
        if 1 in slots:
            vec[1] = ONE
        if 3 in slots:
            vec[3] = ONE
        out.append(SpectrumRecord(label, lam, tuple(vec[s] for s in slots), slots=slots))
    return out


def spectrum_closed_form(w: Weight, cfg: HodgeConfig, D: OperatorMatrix | None = None) -> list[SpectrumRecord]:
    """All eigenvalues of the reduced matrix at w, plus the diagonal one."""
    if D is None:
        D = dirac_matrix(DiracParams.default(cfg), cfg)
    case = case_of(w)
    slots = slots_for(case)
    M = reduce(D, w, case)
    t, _ = _t_and_c(cfg)
    J, N = w.J, w.N
    records = _pm_records(w, cfg, M, slots)
    if case == "generic":
        qn = QScalar.q_pow(-N)
        rad = (3 - qn) ** 2 / 4 - 2 + 2 * qn * (qnum(J + 1) ** 2 + qnum(J) ** 2)
        root = sqrt(rad)
        for sign, label in ((1, "lambda'+"), (-1, "lambda'-")):
            lam = I / 2 * t * ((3 - qn) / 2 + sign * root)
            records.append(SpectrumRecord(label, lam, exact_eigenvector(M, lam), slots=slots))
        return records
    if case == "highest":
        qj = QScalar.q_pow(-2 * J)
        third = I * t * ((1 + qj) / 2 + Q ** 2 * (qj - 1) / (1 - Q ** 2))
        diag = I * t * QScalar.q_pow(-J) * qnum(J + 1)
    else:
        qj = QScalar.q_pow(2 * J)
        third = I * t * ((1 + qj) / 2 + (1 - qj) / (1 - Q ** 2))
        diag = I * t * (1 + QScalar.q_pow(J + 1) * qnum(J))
    records.append(SpectrumRecord("third", third, exact_eigenvector(M, third), slots=slots))
    ds = diagonal_spinor(case)
    records.append(SpectrumRecord("diagonal", diag, (ONE,), kind="diagonal", slots=(ds,)))
    return records


def verify_closed_form(w: Weight, cfg: HodgeConfig, D: OperatorMatrix | None = None) -> list[str]:
    """Exact checks: each record is an eigenpair, and the multiset is complete."""
    from ..linalg import charpoly

    if D is None:
        D = dirac_matrix(DiracParams.default(cfg), cfg)
    case = case_of(w)
    slots = slots_for(case)
    M = reduce(D, w, case)
    recs = spectrum_closed_form(w, cfg, D)
    problems = []
    reduced = [r for r in recs if r.kind == "reduced"]
    for r in reduced:
        if r.eigvec is None:
            problems.append(f"{r.label}: M - lambda is invertible")
            continue
        Mv = [sum((M[i][j] * r.eigvec[j] for j in range(len(slots))), ZERO) for i in range(len(slots))]
        if any(not is_zero(a - r.value * b) for a, b in zip(Mv, r.eigvec)):
            problems.append(f"{r.label}: M v != lambda v")
    # product over (x - lambda) equals the characteristic polynomial
    cp = charpoly(M)
    prod = [ONE]
    for r in reduced:
        nxt = [ZERO] * (len(prod) + 1)
        for k, c in enumerate(prod):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - r.value * c
        prod = nxt
    if len(prod) != len(cp) or any(not is_zero(a - b) for a, b in zip(prod, cp)):
        problems.append("closed forms do not reproduce the characteristic polynomial")
    if case != "generic":
        d = next(r for r in recs if r.kind == "diagonal")
        if not is_zero(diagonal_eigenvalue(D, w) - d.value):
            problems.append("diagonal eigenvalue mismatch")
    return problems


def module_spectrum(J, cfg: HodgeConfig, D: OperatorMatrix | None = None) -> list[tuple[Weight, SpectrumRecord]]:
    """Eigenvalues of D on the whole spin-J module, one record per eigenvector.

    For J > 0 this is the union of the per-weight records.  At J = 0 both
    X- f and X+ f vanish, the reduced matrix has a Jordan block at 0 whose
    formal eigenvector is the zero spinor, and the module splits instead
    into psi0 f (eigenvalue 0) and the three phi_a f (eigenvalue i A/xi).
    """
    J = Fraction(J)
    if D is None:
        D = dirac_matrix(DiracParams.default(cfg), cfg)
    if J == 0:
        w = Weight(0, 0)
        t, _ = _t_and_c(cfg)
        recs = [SpectrumRecord("lambda0", ZERO, (ONE,), "diagonal", (0,))]
        recs += [SpectrumRecord(f"diagonal{s}", I * t, (ONE,), "diagonal", (s,)) for s in (1, 2, 3)]
        return [(w, r) for r in recs]
    n = int(2 * J)
    return [(Weight(J, N), r) for N in range(-n, n + 1, 2) for r in spectrum_closed_form(Weight(J, N), cfg, D)]


# numeric ---------------------------------------------------------------------


DEGENERACY_TOL = 1e-7


def numeric_matrix(M: list[list], q0: float) -> np.ndarray:
    return np.array([[to_complex(x, q0) for x in row] for row in M], dtype=complex)


def numeric_eigvec(Mn: np.ndarray, lam: complex) -> np.ndarray:
    """Right-singular vector of M - lam for the smallest singular value,
    scaled so its largest component is 1."""
    _, _, vh = np.linalg.svd(Mn - lam * np.eye(len(Mn)))
    v = vh[-1].conj()
    return v / v[np.argmax(np.abs(v))]


def eigen_numeric(Mn: np.ndarray) -> np.ndarray:
    return np.linalg.eigvals(Mn) if Mn.size else np.zeros(0, dtype=complex)


def charpoly_residual(Mn: np.ndarray, lam: complex) -> float:
    return abs(np.linalg.det(Mn - lam * np.eye(len(Mn))))


def _match(closed: list[complex], found: list[complex]) -> tuple:
    """Permutation of found minimizing the largest pairwise distance."""
    best, best_cost = None, None
    for perm in itertools.permutations(range(len(found))):
        cost = max((abs(closed[i] - found[p]) for i, p in enumerate(perm)), default=0.0)
        if best_cost is None or cost < best_cost:
            best, best_cost = perm, cost
    return best


@dataclass
class NumericRecord:
    label: str
    kind: str
    lambda_closed: complex
    lambda_numeric: complex
    abs_err: float
    eigvec_closed: dict
    eigvec_numeric: dict
    eigvec_err: float | None

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "lambda_closed": _cx(self.lambda_closed),
            "lambda_numeric": _cx(self.lambda_numeric),
            "abs_err": self.abs_err,
            "eigvec_ratios": {k: _cx(v) for k, v in self.eigvec_numeric.items()},
            "eigvec_err": self.eigvec_err,
        }


def _cx(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def _normalize(vec: np.ndarray, ref: int) -> np.ndarray:
    return vec / vec[ref] if abs(vec[ref]) > 0 else vec


def spectrum_numeric(w: Weight, cfg: HodgeConfig, q0: float, D: OperatorMatrix | None = None) -> list[NumericRecord]:
    """Compare closed forms with an independent numeric diagonalization at q0."""
    if not 0 < q0 <= 1:
        raise ValueError("q must lie in (0, 1]")
    if D is None:
        D = dirac_matrix(DiracParams.default(cfg), cfg)
    case = case_of(w)
    slots = slots_for(case)
    M = reduce(D, w, case)
    Mn = numeric_matrix(M, q0)
    recs = spectrum_closed_form(w, cfg, D)
    reduced = [r for r in recs if r.kind == "reduced"]
    closed = [to_complex(r.value, q0) for r in reduced]
    found = list(eigen_numeric(Mn))
    perm = _match(closed, found)
    out = []
    for r, lc, p in zip(reduced, closed, perm):
        ln = found[p]
        vn = numeric_eigvec(Mn, ln)
        ref = int(np.argmax(np.abs(vn)))
        ev_err, vc_d = None, {}
        if r.eigvec is not None:
            vc = np.array([to_complex(x, q0) for x in r.eigvec])
            simple = sum(abs(z - ln) < DEGENERACY_TOL for z in found) == 1
            if simple and abs(vc[ref]) > 0:
                vc = _normalize(vc, ref)
                ev_err = float(np.max(np.abs(vc - vn)))
            else:
                # eigenspace is not one-dimensional: use the residual instead
                v = vc / np.max(np.abs(vc))
                ev_err = float(np.max(np.abs(Mn @ v - ln * v)))
            vc_d = {LABELS[s]: complex(x) for s, x in zip(slots, vc)}
        out.append(
            NumericRecord(
                r.label, r.kind, lc, complex(ln), float(abs(lc - ln)), vc_d,
                {LABELS[s]: complex(x) for s, x in zip(slots, vn)}, ev_err,
            )
        )
    for r in recs:
        if r.kind == "diagonal":
            lc = to_complex(r.value, q0)
            ln = complex(to_complex(diagonal_eigenvalue(D, w), q0))
            out.append(NumericRecord(r.label, r.kind, lc, ln, float(abs(lc - ln)), {}, {}, None))
    return out


def record_strings(recs: list[SpectrumRecord]) -> list[dict]:
    return [
        {
            "label": r.label,
            "kind": r.kind,
            "lambda": scalar_str(r.value),
            "eigvec": {k: scalar_str(v) for k, v in r.eigvec_dict().items()},
        }
        for r in recs
    ]
