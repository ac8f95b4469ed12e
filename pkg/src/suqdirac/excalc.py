"""Braided exterior algebra over the left-invariant forms omega_-, omega_+, omega_z.

Index order is minus < plus < z; tensor words are laid out
lexicographically, so (a, b) sits at 3a + b.  Forms live in the fixed
quotient bases

    L0 = {1}, L1 = {w-, w+, wz}, L2 = {w-^w+, w+^wz, wz^w-}, L3 = {theta}

with ``w_a ^ w_b`` the class of ``w_a (x) w_b`` modulo ker A(2) and
``theta`` the class of ``i w- (x) w+ (x) wz``, whose lift A(3)(...) is the
volume tensor.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass

from .linalg import SparseMatrix, solve_in_span
from .qscalar import I, ONE, Q, ZERO, QScalar, parse
from .qscalar.ops import conj, is_zero
from .uqsu2 import MINUS, PLUS, Z, ModuleVector, Weight, x_action, x_shift

INDICES = (MINUS, PLUS, Z)
SYMBOL = {MINUS: "-", PLUS: "+", Z: "z"}
_FROM_SYMBOL = {v: k for k, v in SYMBOL.items()}
STAR = {MINUS: PLUS, PLUS: MINUS, Z: Z}

DIMS = {0: 1, 1: 3, 2: 3, 3: 1}
# representative words with their coefficient: basis element = class of coeff * word
BASIS_REPS = {
    0: [((), ONE)],
    1: [((MINUS,), ONE), ((PLUS,), ONE), ((Z,), ONE)],
    2: [((MINUS, PLUS), ONE), ((PLUS, Z), ONE), ((Z, MINUS), ONE)],
    3: [((MINUS, PLUS, Z), I)],
}
BASIS_LABELS = {0: ["1"], 1: ["-", "+", "z"], 2: ["-+", "+z", "z-"], 3: ["theta"]}


def lam(k: int) -> QScalar:
    """lambda(k): the scalar by which A(k) acts on its image."""
    out = ONE
    for j in range(1, k + 1):
        out = out * sum((Q ** (2 * t) for t in range(j)), ZERO)
    return out


def word_index(word) -> int:
    idx = 0
    for a in word:
        idx = 3 * idx + a
    return idx


def index_word(idx: int, k: int) -> tuple:
    out = []
    for _ in range(k):
        idx, a = divmod(idx, 3)
        out.append(a)
    return tuple(reversed(out))


# braiding and antisymmetrizers ------------------------------------------


@functools.cache
def braiding() -> SparseMatrix:
    """sigma on Gamma (x) Gamma; column (a,b) is the image of w_a (x) w_b."""
    q2 = Q ** 2
    c = 2 * Q * (Q - 1) / (1 + 1 / Q)
    img = {
        (MINUS, MINUS): {(MINUS, MINUS): ONE},
        (PLUS, PLUS): {(PLUS, PLUS): ONE},
        (Z, Z): {(Z, Z): ONE, (PLUS, MINUS): c, (MINUS, PLUS): -c},
        (PLUS, MINUS): {(MINUS, PLUS): q2, (PLUS, MINUS): 1 - q2},
        (MINUS, PLUS): {(PLUS, MINUS): ONE},
        (Z, MINUS): {(MINUS, Z): q2, (Z, MINUS): 1 - q2},
        (MINUS, Z): {(Z, MINUS): ONE},
        (PLUS, Z): {(Z, PLUS): q2, (PLUS, Z): 1 - q2},
        (Z, PLUS): {(PLUS, Z): ONE},
    }
    ent = {}
    for src, tgt in img.items():
        for w, v in tgt.items():
            ent[(word_index(w), word_index(src))] = v
    return SparseMatrix(9, 9, ent)


@functools.cache
def sigma_at(i: int, k: int) -> SparseMatrix:
    """sigma acting on slots i, i+1 (1-based) of Gamma^(x)k."""
    if not 1 <= i < k:
        raise ValueError("slot out of range")
    left = SparseMatrix.identity(3 ** (i - 1))
    right = SparseMatrix.identity(3 ** (k - i - 1))
    return left.kron(braiding()).kron(right)


@functools.cache
def antisymmetrizer(k: int) -> SparseMatrix:
    """A(k) via A(k+1) = (1 (x) A(k)) (1 - s1 + s1 s2 - ... +- s1...sk)."""
    if k < 1:
        raise ValueError("k >= 1 required")
    if k == 1:
        return SparseMatrix.identity(3)
    n = 3 ** k
    inner = SparseMatrix.identity(3).kron(antisymmetrizer(k - 1))
    alt = SparseMatrix.identity(n)
    prod = SparseMatrix.identity(n)
    for j in range(1, k):
        prod = prod @ sigma_at(j, k)
        alt = alt + prod.scale(QScalar((-1) ** j))
    return inner @ alt


# tensors and forms ---------------------------------------------------------


class TensorElement:
    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: dict | None = None):
        self.degree = degree
        clean = {}
        for w, c in (coeffs or {}).items():
            w = tuple(w)
            if len(w) != degree:
                raise ValueError("word length does not match degree")
            if not is_zero(c):
                clean[w] = clean[w] + c if w in clean else c
        self.coeffs = {w: c for w, c in clean.items() if not is_zero(c)}

    @classmethod
    def word(cls, *letters, coeff=ONE) -> "TensorElement":
        return cls(len(letters), {tuple(letters): coeff})

    def to_vector(self) -> dict:
        return {word_index(w): c for w, c in self.coeffs.items()}

    @classmethod
    def from_vector(cls, degree: int, vec: dict) -> "TensorElement":
        return cls(degree, {index_word(i, degree): c for i, c in vec.items()})

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out[w] + c if w in out else c
        return TensorElement(self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c) -> "TensorElement":
        return TensorElement(self.degree, {w: c * v for w, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def tensor(self, other) -> "TensorElement":
        return TensorElement(
            self.degree + other.degree,
            {a + b: ca * cb for a, ca in self.coeffs.items() for b, cb in other.coeffs.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.degree == other.degree and (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, *letters):
        return self.coeffs.get(tuple(letters), ZERO)

    def __repr__(self):
        inner = " + ".join(f"({c})*{''.join(SYMBOL[a] for a in w)}" for w, c in sorted(self.coeffs.items()))
        return f"TensorElement[{self.degree}]({inner or '0'})"


@dataclass(frozen=True)
class FormElement:
    degree: int
    coeffs: tuple

    def __post_init__(self):
        c = tuple(self.coeffs)
        if len(c) != DIMS.get(self.degree, 0):
            raise ValueError(f"degree {self.degree} form needs {DIMS.get(self.degree, 0)} coefficients")
        object.__setattr__(self, "coeffs", tuple(ZERO if is_zero(x) else x for x in c))

    @classmethod
    def zero(cls, degree: int) -> "FormElement":
        return cls(degree, (ZERO,) * DIMS.get(degree, 0))

    @classmethod
    def basis(cls, degree: int, i: int, coeff=ONE) -> "FormElement":
        c = [ZERO] * DIMS[degree]
        c[i] = coeff
        return cls(degree, tuple(c))

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("adding forms of different degree")
        return FormElement(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c) -> "FormElement":
        return FormElement(self.degree, tuple(c * x for x in self.coeffs))

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return all(is_zero(x) for x in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FormElement):
            return NotImplemented
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        return all(is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def map(self, f) -> "FormElement":
        return FormElement(self.degree, tuple(f(x) for x in self.coeffs))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": {lbl: str(c) for lbl, c in zip(BASIS_LABELS.get(self.degree, []), self.coeffs) if not is_zero(c)},
        }

    @classmethod
    def from_json(cls, data) -> "FormElement":
        if isinstance(data, str):
            data = json.loads(data)
        k = int(data["degree"])
        labels = BASIS_LABELS[k]
        unknown = set(data["coeffs"]) - set(labels)
        if unknown:
            raise ValueError(f"unknown basis words {sorted(unknown)}")
        return cls(k, tuple(parse(data["coeffs"][lbl]) if lbl in data["coeffs"] else ZERO for lbl in labels))

    def __repr__(self):
        inner = " + ".join(f"({c})*[{lbl}]" for lbl, c in zip(BASIS_LABELS.get(self.degree, []), self.coeffs) if not is_zero(c))
        return f"FormElement[{self.degree}]({inner or '0'})"


def one_form(a: int, coeff=ONE) -> FormElement:
    return FormElement.basis(1, a, coeff)


UNIT = FormElement.basis(0, 0)
THETA = FormElement.basis(3, 0)


def two_form(a: int, b: int) -> FormElement:
    """The class of w_a (x) w_b."""
    return project(TensorElement.word(a, b))


# quotient maps -----------------------------------------------------------


@functools.cache
def _rep_images(k: int) -> tuple:
    a = antisymmetrizer(k) if k > 0 else None
    out = []
    for word, c in BASIS_REPS[k]:
        if k == 0:
            out.append({0: c})
        else:
            out.append({i: c * v for i, v in a.column(word_index(word)).items()})
    return tuple(out)


@functools.cache
def _class_coords(k: int, idx: int) -> tuple:
    """Coordinates of [e_word] in the L^k basis."""
    if k == 0:
        return (ONE,)
    col = antisymmetrizer(k).column(idx)
    coords = solve_in_span(list(_rep_images(k)), col)
    if coords is None:
        raise ArithmeticError("antisymmetrizer column outside the span of the basis images")
    return tuple(coords)


def project(t: TensorElement) -> FormElement:
    """Quotient map Gamma^(x)k -> L^k."""
    k = t.degree
    if k > 3:
        return FormElement.zero(k)
    acc = [ZERO] * DIMS[k]
    for w, c in t.coeffs.items():
        for i, x in enumerate(_class_coords(k, word_index(w))):
            if not is_zero(x):
                acc[i] = acc[i] + c * x
    return FormElement(k, tuple(acc))


def lift(f: FormElement) -> TensorElement:
    """A(k) applied to a representative: the antisymmetric tensor of f."""
    k = f.degree
    if k > 3:
        return TensorElement(k)
    vec: dict = {}
    for c, img in zip(f.coeffs, _rep_images(k)):
        if is_zero(c):
            continue
        for i, v in img.items():
            vec[i] = vec[i] + c * v if i in vec else c * v
    return TensorElement.from_vector(k, vec)


def unlift(t: TensorElement) -> FormElement:
    """Inverse of ``lift`` on the image of A(k)."""
    k = t.degree
    if k > 3:
        if not t.is_zero():
            raise ValueError("nonzero tensor of degree > 3 is not antisymmetric")
        return FormElement.zero(k)
    coords = solve_in_span(list(_rep_images(k)), t.to_vector())
    if coords is None:
        raise ValueError("tensor is not in the image of the antisymmetrizer")
    return FormElement(k, tuple(coords))


def representative(f: FormElement) -> TensorElement:
    """A tensor whose class is f (built from the basis representatives)."""
    out = TensorElement(f.degree)
    for c, (word, rc) in zip(f.coeffs, BASIS_REPS.get(f.degree, [])):
        if not is_zero(c):
            out = out + TensorElement(f.degree, {word: c * rc})
    return out


def wedge(a: FormElement, b: FormElement) -> FormElement:
    k = a.degree + b.degree
    if k > 3:
        return FormElement.zero(k)
    return project(representative(a).tensor(representative(b)))


def volume_theta(with_i: bool = True) -> TensorElement:
    """A(3)(i w- (x) w+ (x) wz); ``with_i=False`` drops the factor i."""
    t = lift(THETA)
    return t if with_i else t.scale(-I)


# quantum tangent vectors -------------------------------------------------


_PROBE = Weight(__import__("fractions").Fraction(3, 2), 1)


@functools.cache
def structure_constants() -> dict:
    """f_ab^c with [X_a, X_b] = X_a X_b - sum sigma^{ab}_{ks} X_k X_s = f_ab^c X_c.

    Derived by letting the braided commutator act on a weight vector on
    which all three X_c act injectively; each X_c shifts N by a different
    amount, so the fit is read off component by component.
    """
    sig = braiding()
    f0 = ModuleVector.basis(_PROBE)
    xs = {c: x_action(c, f0) for c in INDICES}
    table = {}
    for a, b in itertools.product(INDICES, repeat=2):
        v = x_action(a, x_action(b, f0))
        for (k, s) in itertools.product(INDICES, repeat=2):
            coef = sig.get(word_index((a, b)), word_index((k, s)))
            if not is_zero(coef):
                v = v - x_action(k, x_action(s, f0)).scale(coef)
        row = {}
        for c in INDICES:
            n = _PROBE.N + x_shift(c)
            comp = v.component(n)
            if not is_zero(comp):
                row[c] = comp / xs[c].component(n)
        table[(a, b)] = row
    return table


def quantum_commutator(a: int, b: int) -> dict:
    """[X_a, X_b] as {c: coefficient of X_c}."""
    return dict(structure_constants()[(a, b)])


def braided_commutator_action(a: int, b: int, v: ModuleVector) -> ModuleVector:
    sig = braiding()
    out = x_action(a, x_action(b, v))
    for (k, s) in itertools.product(INDICES, repeat=2):
        coef = sig.get(word_index((a, b)), word_index((k, s)))
        if not is_zero(coef):
            out = out - x_action(k, x_action(s, v)).scale(coef)
    return out


# exterior derivative and involution ----------------------------------------


@functools.cache
def _d_one_forms() -> tuple:
    consts = structure_constants()
    l2 = lam(2)
    out = []
    for a in INDICES:
        t = TensorElement(2)
        for (b, c), row in consts.items():
            if a in row:
                t = t + TensorElement.word(b, c, coeff=row[a])
        out.append(project(t).scale(-ONE / l2))
    return tuple(out)


def exterior_d(f: FormElement) -> FormElement:
    k = f.degree
    if k == 0 or k >= 3:
        return FormElement.zero(k + 1)
    if k == 1:
        out = FormElement.zero(2)
        for c, dw in zip(f.coeffs, _d_one_forms()):
            if not is_zero(c):
                out = out + dw.scale(c)
        return out
    out = FormElement.zero(3)
    for c, ((a, b), rc) in zip(f.coeffs, BASIS_REPS[2]):
        if is_zero(c):
            continue
        wa, wb = one_form(a), one_form(b)
        term = wedge(exterior_d(wa), wb) - wedge(wa, exterior_d(wb))
        out = out + term.scale(c * rc)
    return out


def tensor_star(t: TensorElement) -> TensorElement:
    """(v1 (x) ... (x) vk)* = (-1)^(k(k-1)/2) vk* (x) ... (x) v1*, antilinear."""
    k = t.degree
    sign = -ONE if (k * (k - 1) // 2) % 2 else ONE
    return TensorElement(k, {tuple(STAR[a] for a in reversed(w)): sign * conj(c) for w, c in t.coeffs.items()})


def star_involution(f: FormElement) -> FormElement:
    if f.degree > 3:
        return f
    return project(tensor_star(representative(f)))
