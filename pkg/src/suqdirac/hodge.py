"""Contraction, the duality operator S, Cartan-Killing metrics and the star.

The metric family is g(w-, w+) = alpha, g(w+, w-) = beta, g(wz, wz) = gamma
(all other pairings zero).  S(w) = (1/lambda(k)) g(w, tau) with tau = delta
theta.  In "star" mode delta is the positive root of
delta^2 = lambda(3) / (6 q^4 alpha beta gamma), which makes S(tau) = 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .excalc import (
    BASIS_REPS,
    DIMS,
    INDICES,
    THETA,
    UNIT,
    FormElement,
    TensorElement,
    exterior_d,
    lam,
    lift,
    one_form,
    star_involution,
    unlift,
    wedge,
)
from .linalg import solve_in_span
from .qscalar import ONE, Q, ZERO, ParamPoly, QScalar, parse, sqrt
from .qscalar.ops import is_zero
from .uqsu2 import MINUS, PLUS, Z


class NonCKError(ValueError):
    """The configuration does not satisfy S(w_a) = xi d(w_a) with one xi."""


@dataclass(frozen=True)
class MetricParams:
    alpha: object
    beta: object
    gamma: object

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = getattr(self, name)
            if isinstance(v, (int, Fraction)):
                object.__setattr__(self, name, QScalar(v))
        if any(is_zero(x) for x in (self.alpha, self.beta, self.gamma)):
            raise ValueError("degenerate metric: alpha*beta*gamma must be nonzero")

    @property
    def is_real(self) -> bool:
        return all(getattr(x, "is_real", lambda: False)() for x in (self.alpha, self.beta, self.gamma))

    @classmethod
    def symbolic(cls) -> "MetricParams":
        return cls(ParamPoly.var("alpha"), ParamPoly.var("beta"), ParamPoly.var("gamma"))

    def pairing(self, a: int, b: int):
        if (a, b) == (MINUS, PLUS):
            return self.alpha
        if (a, b) == (PLUS, MINUS):
            return self.beta
        if (a, b) == (Z, Z):
            return self.gamma
        return ZERO


@dataclass(frozen=True)
class HodgeConfig:
    params: MetricParams
    delta: object
    mode: str = "raw"

    def __post_init__(self):
        if self.mode not in ("raw", "star"):
            raise ValueError(f"unknown normalization mode {self.mode!r}")
        if is_zero(self.delta):
            raise ValueError("delta must be nonzero")

    @classmethod
    def star_normalized(cls, params: MetricParams) -> "HodgeConfig":
        p = params
        return cls(p, sqrt(lam(3) / (6 * Q ** 4 * p.alpha * p.beta * p.gamma)), "star")

    @classmethod
    def raw(cls, params: MetricParams, delta) -> "HodgeConfig":
        return cls(params, delta, "raw")

    def tau(self) -> FormElement:
        return THETA.scale(self.delta)

    def describe(self) -> dict:
        out = {
            "mode": self.mode,
            "alpha": str(self.params.alpha),
            "beta": str(self.params.beta),
            "gamma": str(self.params.gamma),
            "delta": str(self.delta),
        }
        if self.mode == "star":
            try:
                A, xi = coefficients(self)
                out.update(A=str(A), xi=str(xi))
            except NonCKError:
                pass
        return out


def load_config(path_or_data) -> tuple[HodgeConfig, float | None]:
    """Read {gamma, mode, q} (JSON); returns the config and the numeric q if given.

    ``mode`` is "ck" (Cartan-Killing, star-normalized) or "raw".  In ck mode
    an "alpha" key fixes the metric by alpha instead of gamma; in raw mode
    alpha, beta and delta may be given too.
    """
    if isinstance(path_or_data, dict):
        data = path_or_data
    else:
        with open(path_or_data) as fh:
            data = json.load(fh)
    gamma = _read_scalar(data.get("gamma", 1))
    mode = data.get("mode", "ck")
    if mode == "ck" and "alpha" in data:
        cfg = HodgeConfig.star_normalized(ck_params_from_alpha(_read_scalar(data["alpha"])))
    elif mode == "ck":
        cfg = HodgeConfig.star_normalized(ck_solve(gamma))
    elif mode == "raw":
        params = MetricParams(_read_scalar(data.get("alpha", 1)), _read_scalar(data.get("beta", data.get("alpha", 1))), gamma)
        cfg = HodgeConfig.raw(params, _read_scalar(data.get("delta", 1)))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    q = data.get("q")
    if q is not None:
        q = float(q)
        if not 0 < q <= 1:
            raise ValueError("q must lie in (0, 1]")
    return cfg, q


def _read_scalar(v):
    if isinstance(v, str):
        return parse(v)
    if isinstance(v, float):
        return QScalar(Fraction(v).limit_denominator(10 ** 12))
    return QScalar(v)


# contraction -------------------------------------------------------------


def contract(a: TensorElement, b: TensorElement, params: MetricParams) -> TensorElement:
    """Pair the first deg(a) factors of b with a, in order."""
    s, j = a.degree, b.degree
    if s > j:
        raise ValueError(f"cannot contract degree {s} into degree {j}")
    out: dict = {}
    for wa, ca in a.coeffs.items():
        for wb, cb in b.coeffs.items():
            g = ca * cb
            for x, y in zip(wa, wb[:s]):
                gv = params.pairing(x, y)
                if is_zero(gv):
                    g = None
                    break
                g = g * gv
            if g is None:
                continue
            rest = wb[s:]
            out[rest] = out[rest] + g if rest in out else g
    return TensorElement(j - s, out)


def g_on_forms(a: FormElement, b: FormElement, params: MetricParams):
    """g(A(k)a, A(s)b) contracted; a scalar when the degrees agree."""
    if a.degree > b.degree:
        raise ValueError("g_on_forms needs deg a <= deg b")
    t = contract(lift(a), lift(b), params)
    if a.degree == b.degree:
        return t.coeffs.get((), ZERO)
    return unlift(t)


def det_theta(params: MetricParams):
    return g_on_forms(THETA, THETA, params) / lam(3)


# S and the star ------------------------------------------------------------


def s_operator(a: FormElement, cfg: HodgeConfig) -> FormElement:
    k = a.degree
    r = g_on_forms(a, cfg.tau(), cfg.params)
    if k == 3:
        return UNIT.scale(r / lam(3))
    return r.scale(ONE / lam(k))


def star(a: FormElement, cfg: HodgeConfig) -> FormElement:
    if cfg.mode != "star":
        raise NonCKError("the star needs a star-normalized configuration")
    return s_operator(a, cfg)


def s_matrix(k: int, cfg: HodgeConfig) -> list[FormElement]:
    return [s_operator(FormElement.basis(k, i), cfg) for i in range(DIMS[k])]


def s_inverse(b: FormElement, cfg: HodgeConfig) -> FormElement:
    k = 3 - b.degree
    images = [dict(enumerate(f.coeffs)) for f in s_matrix(k, cfg)]
    x = solve_in_span(images, dict(enumerate(b.coeffs)))
    if x is None:
        raise ArithmeticError("S is not invertible here")
    return FormElement(k, tuple(x))


def _proportionality(u: FormElement, v: FormElement):
    """c with u = c v, or None."""
    c = None
    for x, y in zip(u.coeffs, v.coeffs):
        if is_zero(y):
            if not is_zero(x):
                return None
            continue
        r = x / y
        if c is None:
            c = r
        elif not is_zero(c - r):
            return None
    return c


def ck_factors(cfg: HodgeConfig) -> list:
    """Per-index ratios S(w_a)/d(w_a) (None where not proportional)."""
    return [_proportionality(s_operator(one_form(a), cfg), exterior_d(one_form(a))) for a in INDICES]


def ck_solve(gamma) -> MetricParams:
    """The unique (alpha, beta) making S(w_a) = xi d(w_a) for all a."""
    gamma = QScalar(gamma) if isinstance(gamma, (int, Fraction)) else gamma
    if is_zero(gamma):
        raise ValueError("gamma must be nonzero")
    if hasattr(gamma, "is_real") and not gamma.is_real():
        raise ValueError("gamma must be real")
    al, be = ParamPoly.var("alpha"), ParamPoly.var("beta")
    cfg = HodgeConfig.raw(MetricParams(al, be, ParamPoly.const(gamma)), ParamPoly.var("delta"))
    ratios = []
    for a in INDICES:
        s, d = s_operator(one_form(a), cfg), exterior_d(one_form(a))
        nz = [i for i, y in enumerate(d.coeffs) if not is_zero(y)]
        if len(nz) != 1 or any(not is_zero(x) for i, x in enumerate(s.coeffs) if i != nz[0]):
            raise NonCKError(f"S(w_{a}) is not parallel to d(w_{a})")
        ratios.append(s.coeffs[nz[0]] / d.coeffs[nz[0]])
    xi_z = ratios[Z]
    solved = {}
    for idx, name in ((MINUS, "alpha"), (PLUS, "beta")):
        eq = ratios[idx] - xi_z  # = delta * (k * name + m)
        k = eq.coefficient(**{name: 1, "delta": 1})
        m = eq.coefficient(delta=1)
        rest = eq - ParamPoly({((name, 1), ("delta", 1)): k}) - ParamPoly({(("delta", 1),): m})
        if is_zero(k) or not rest.is_zero():
            raise NonCKError("Cartan-Killing condition has no unique solution")
        solved[name] = -m / k
    p = MetricParams(solved["alpha"], solved["beta"], gamma)
    if any(r is None for r in ck_factors(HodgeConfig.star_normalized(p))):
        raise NonCKError("solution failed verification")
    return p


def ck_params_from_alpha(alpha) -> MetricParams:
    """Cartan-Killing metric fixed by alpha instead of gamma."""
    ratio = ck_solve(ONE).alpha  # alpha / gamma on the family
    alpha = QScalar(alpha) if isinstance(alpha, (int, Fraction)) else alpha
    return ck_solve(alpha / ratio)


def coefficients(cfg: HodgeConfig) -> tuple:
    """(A, xi) with star^2 = A on L1 and L2, and star(w_a) = xi d(w_a)."""
    if cfg.mode != "star":
        raise NonCKError("coefficients need a star-normalized configuration")
    A = None
    for k in (1, 2):
        for i in range(3):
            f = FormElement.basis(k, i)
            c = _proportionality(star(star(f, cfg), cfg), f)
            if c is None or (A is not None and not is_zero(c - A)):
                raise NonCKError("star^2 is not a scalar on L1 and L2")
            A = c
    xs = ck_factors(cfg)
    if any(x is None for x in xs) or any(not is_zero(x - xs[0]) for x in xs):
        raise NonCKError("S(w_a) / d(w_a) is not one common factor")
    return A, xs[0]


# inner product and codifferential -----------------------------------------------


def integrate(top: FormElement, cfg: HodgeConfig):
    """Integral of a left-invariant top form against tau (Haar state h(1) = 1)."""
    if top.degree != 3:
        raise ValueError("only 3-forms integrate")
    return top.coeffs[0] / cfg.delta


def inner_product(a: FormElement, b: FormElement, cfg: HodgeConfig):
    """<a|b> = integral of b* ^ S(a)."""
    if a.degree != b.degree:
        return ZERO
    return integrate(wedge(star_involution(b), s_operator(a, cfg)), cfg)


def codifferential(a: FormElement, cfg: HodgeConfig) -> FormElement:
    """d^dagger a = (-1)^k S^-1 d S a."""
    k = a.degree
    if k == 0:
        return FormElement.zero(-1)
    y = exterior_d(s_operator(a, cfg))
    x = s_inverse(y, cfg)
    return x if k % 2 == 0 else x.scale(-ONE)
