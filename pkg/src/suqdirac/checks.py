"""Named verification checks, shared by the command line and the tests.

Each check returns a CheckResult; ``run_suite`` stops nothing and reports
every result in order, so the first failure is simply the first non-ok entry.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .excalc import (
    DIMS,
    FormElement,
    antisymmetrizer,
    braiding,
    exterior_d,
    lam,
    one_form,
    sigma_at,
    star_involution,
    wedge,
)
from .hodge import HodgeConfig, NonCKError, _proportionality, coefficients, s_operator
from .linalg import SparseMatrix
from .qscalar import ONE, Q
from .qscalar.ops import conj, is_zero


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail, "seconds": round(self.seconds, 3)}


def _timed(name, fn) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except (NonCKError, ArithmeticError, ValueError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, ok, detail, time.perf_counter() - t0)


# calculus ------------------------------------------------------------------


def braid_equation():
    s1, s2 = sigma_at(1, 3), sigma_at(2, 3)
    ok = s1 @ s2 @ s1 == s2 @ s1 @ s2
    return ok, "s1 s2 s1 = s2 s1 s2 on 27 dimensions" if ok else "braid relation violated"


def spectral_identity():
    s = braiding()
    one = SparseMatrix.identity(9)
    prod = (one - s) @ (one.scale(Q ** 2) + s)
    k1 = len((one - s).nullspace())
    k2 = len((one.scale(Q ** 2) + s).nullspace())
    ok = prod.is_zero() and (k1, k2) == (6, 3)
    return ok, f"(1-s)(q^2+s) zero: {prod.is_zero()}; kernel dimensions {k1}, {k2}"


def antisymmetrizer_spectra():
    notes, ok = [], True
    for k, rank in ((2, 3), (3, 1)):
        a = antisymmetrizer(k)
        scalar = a @ a == a.scale(lam(k))
        r = a.rank()
        ok &= scalar and r == rank
        notes.append(f"A({k})^2 = lambda({k}) A({k}): {scalar}, rank {r}")
    a4 = antisymmetrizer(4).is_zero()
    ok &= a4
    notes.append(f"A(4) = 0: {a4}")
    return ok, "; ".join(notes)


def d_squared():
    bad = []
    for k in (0, 1):
        for i in range(DIMS[k]):
            f = FormElement.basis(k, i)
            if not exterior_d(exterior_d(f)).is_zero():
                bad.append(f"deg {k} #{i}")
    return not bad, "d^2 = 0 on all basis forms" if not bad else f"d^2 != 0 on {bad}"


def leibniz():
    bad = []
    for ka in (0, 1, 2):
        for kb in (0, 1, 2):
            if ka + kb > 2:
                continue
            for i in range(DIMS[ka]):
                for j in range(DIMS[kb]):
                    a, b = FormElement.basis(ka, i), FormElement.basis(kb, j)
                    lhs = exterior_d(wedge(a, b))
                    sign = -ONE if ka % 2 else ONE
                    rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)).scale(sign)
                    if lhs != rhs:
                        bad.append((ka, i, kb, j))
    return not bad, "graded Leibniz on all basis pairs" if not bad else f"fails on {bad}"


# Hodge ---------------------------------------------------------------------


def s_squared_degeneracy(cfg: HodgeConfig):
    """S^2 is one scalar on all of L1 (true iff alpha = beta)."""
    zetas = []
    for i in range(3):
        f = FormElement.basis(1, i)
        zetas.append(_proportionality(s_operator(s_operator(f, cfg), cfg), f))
    ok = all(z is not None for z in zetas) and all(is_zero(z - zetas[0]) for z in zetas)
    return ok, "S^2 scalar on L1" if ok else "S^2 has distinct eigenvalues on L1"


def s_reality(cfg: HodgeConfig):
    bad = []
    for k in (0, 1, 2, 3):
        for i in range(DIMS[k]):
            f = FormElement.basis(k, i)
            if s_operator(star_involution(f), cfg) != star_involution(s_operator(f, cfg)):
                bad.append(f"deg {k} #{i}")
    return not bad, "S commutes with *" if not bad else f"S(w*) != S(w)* on {bad}"


def cartan_killing(cfg: HodgeConfig):
    A, xi = coefficients(cfg)
    return True, f"A = {A}; xi = {xi}"


def dirac_identity(cfg: HodgeConfig):
    from .dirac.operator import DiracParams, closed_form_matrix, dirac_matrix

    D = dirac_matrix(DiracParams.default(cfg), cfg)
    diffs = D.diff(closed_form_matrix(cfg))
    n = D.nonzero_count()
    ok = not diffs and n == 13
    return ok, f"{n} nonzero entries, {len(diffs)} differ from the closed form"


def closure(cfg: HodgeConfig, params=None):
    from .dirac.operator import DiracParams, closure_check

    params = params or DiracParams.default(cfg)
    res = closure_check(params, cfg)
    return not res, "D closes on the spinor module" if not res else f"residual in columns {sorted(res)}"


def run_suite(cfg: HodgeConfig, params=None) -> list[CheckResult]:
    """All checks in a fixed order (calculus, Hodge, Dirac)."""
    checks = [
        ("braid equation", braid_equation),
        ("spectral identity", spectral_identity),
        ("antisymmetrizer spectra", antisymmetrizer_spectra),
        ("d^2 = 0", d_squared),
        ("Leibniz rule", leibniz),
        ("S^2 degeneracy", lambda: s_squared_degeneracy(cfg)),
        ("reality", lambda: s_reality(cfg)),
        ("Cartan-Killing", lambda: cartan_killing(cfg)),
        ("closure", lambda: closure(cfg, params)),
        ("Dirac matrix identity", lambda: dirac_identity(cfg)),
    ]
    return [_timed(name, fn) for name, fn in checks]
