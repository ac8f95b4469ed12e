"""Reduction of the operator matrix on weight-space ansatze.

On a fixed weight (J, N) the spinor (sigma f, mu X_- f, rho f, mu~ X_+ f),
f = f(J, N), is mapped to a spinor of the same shape.
The reduced matrix acts on (sigma, mu, rho, mu~).  At the boundary weights
one slot vanishes identically and the matrix is 3 x 3.

Entries are extracted from formal coefficients (no range truncation), which
keeps the formulas valid at J = 0; the dropped rows are then checked to
vanish on the actual module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..qscalar import ONE, ZERO
from ..qscalar.ops import is_zero
from ..uqsu2 import MINUS, PLUS, Z, ModuleVector, Weight, x_action, x_coefficient, x_shift
from .operator import IDENTITY, OperatorMatrix

# ansatz word per spinor slot: None is the identity
ANSATZ = (None, MINUS, None, PLUS)
LABELS = ("sigma", "mu", "rho", "mu~")
CASES = ("generic", "highest", "lowest")


class ReductionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Provider:
    """Formal action of tangent vectors: coefficient(a, J, N) and shift(a)."""

    coefficient: object = x_coefficient
    shift: object = x_shift
    action: object = x_action


QUANTUM = Provider()


def case_of(w: Weight) -> str:
    if not w.in_range():
        raise ValueError(f"weight {w} is outside the module")
    if w.N == 2 * w.J:
        return "highest"
    if w.N == -2 * w.J:
        return "lowest"
    return "generic"


def slots_for(case: str) -> tuple:
    return {"generic": (0, 1, 2, 3), "highest": (0, 2, 3), "lowest": (0, 1, 2)}[case]


def _slot_weight(slot: int, N: int, prov: Provider) -> int:
    a = ANSATZ[slot]
    return N if a is None else N + prov.shift(a)


def _formal(key, J, N: int, prov: Provider) -> tuple[int, object]:
    if key is IDENTITY or key is None:
        return 0, ONE
    return prov.shift(key), prov.coefficient(key, J, N)


def _entry(op, i: int, j: int, J, N: int, prov: Provider):
    """Coefficient of B_i f_i in op(B_j f_j), all taken formally."""
    s1, c1 = _formal(ANSATZ[j], J, N, prov)
    total = ZERO
    for key, c in op.coeffs.items():
        s2, c2 = _formal(key, J, N + s1, prov)
        if N + s1 + s2 != _slot_weight(i, N, prov):
            raise ReductionError(f"entry ({i},{j}) lands on the wrong weight")
        total = total + c * c1 * c2
    if is_zero(total):
        return ZERO
    _, ci = _formal(ANSATZ[i], J, N, prov)
    if is_zero(ci):
        raise ReductionError(f"ansatz slot {LABELS[i]} vanishes at N = {N}")
    return total / ci


def reduce(D: OperatorMatrix, w: Weight, case: str | None = None, prov: Provider = QUANTUM) -> list[list]:
    """Reduced matrix on the ansatz slots of the given case."""
    case = case or case_of(w)
    J, N = w.J, w.N
    if case == "generic" and abs(N) >= 2 * J:
        side = "reduce_highest" if N > 0 or J == 0 else "reduce_lowest"
        raise ReductionError(f"weight {w} is a boundary weight (|N| = 2J); use {side}")
    if case == "highest" and N != 2 * J or case == "lowest" and N != -2 * J:
        raise ReductionError(f"weight {w} is not the {case} weight")
    slots = slots_for(case)
    return [[_entry(D[i, j], i, j, J, N, prov) for j in slots] for i in slots]


def reduce_generic(D, w: Weight, prov: Provider = QUANTUM):
    return reduce(D, w, "generic", prov)


def reduce_highest(D, J, prov: Provider = QUANTUM):
    J = Fraction(J)
    return reduce(D, Weight(J, int(2 * J)), "highest", prov)


def reduce_lowest(D, J, prov: Provider = QUANTUM):
    J = Fraction(J)
    return reduce(D, Weight(J, -int(2 * J)), "lowest", prov)


def ansatz_spinor(w: Weight, values: dict, prov: Provider = QUANTUM) -> list[ModuleVector]:
    """Component vector (f0, f-, fz, f+) for {slot: coefficient}, truncated."""
    out = []
    for slot in range(4):
        c = values.get(slot, ZERO)
        a = ANSATZ[slot]
        f = ModuleVector(w.J, {w.N: c})
        out.append(f if a is None else prov.action(a, f))
    return out


def check_reduction(D: OperatorMatrix, w: Weight, case: str | None = None, prov: Provider = QUANTUM) -> list[str]:
    """Compare the reduced matrix with D applied on the actual module.

    Returns a list of discrepancies (empty when consistent), including rows
    of the dropped slot that fail to vanish.
    """
    case = case or case_of(w)
    slots = slots_for(case)
    M = reduce(D, w, case, prov)
    problems = []
    for jj, j in enumerate(slots):
        image = D.apply(ansatz_spinor(w, {j: ONE}, prov), prov.action)
        predicted = ansatz_spinor(w, {i: M[ii][jj] for ii, i in enumerate(slots)}, prov)
        for slot in range(4):
            diff = image[slot] - predicted[slot]
            if not diff.is_zero():
                problems.append(f"column {LABELS[j]}, slot {LABELS[slot]}: {diff}")
    return problems


def diagonal_spinor(case: str) -> int:
    """Slot carrying the extra eigenvector f at the boundary weights."""
    return {"highest": 3, "lowest": 1}[case]


def diagonal_eigenvalue(D: OperatorMatrix, w: Weight, prov: Provider = QUANTUM):
    """Eigenvalue on the spinor with the bare highest (lowest) vector in slot +(-).

    At N = 2J the spinor (0, 0, 0, f(J, 2J)) is an eigenvector; likewise
    (0, f(J, -2J), 0, 0) at N = -2J.
    """
    case = case_of(w)
    if case == "generic":
        raise ValueError("only boundary weights carry the diagonal eigenvector")
    slot = diagonal_spinor(case)
    comps = [ModuleVector(w.J) for _ in range(4)]
    comps[slot] = ModuleVector.basis(w)
    image = D.apply(comps, prov.action)
    for i, v in enumerate(image):
        if i != slot and not v.is_zero():
            raise ReductionError(f"spinor in slot {slot} is not an eigenvector")
    return image[slot].component(w.N)
