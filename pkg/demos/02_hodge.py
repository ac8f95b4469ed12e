"""
Metric, Hodge star and the Cartan-Killing choice
================================================

The S operator is computed for a symbolic metric, then the metric is fixed by
asking that S act on 1-forms as a multiple of d.
"""

from suqdirac.excalc import DIMS, THETA, UNIT, FormElement, exterior_d, one_form
from suqdirac.hodge import (
    HodgeConfig, MetricParams, ck_solve, codifferential, coefficients, g_on_forms, inner_product, s_operator, star,
)
from suqdirac.qscalar import ParamPoly
from suqdirac.uqsu2 import MINUS, PLUS, Z

delta = ParamPoly.var("delta")
sym = HodgeConfig.raw(MetricParams.symbolic(), delta)
print("g(theta, theta) =", g_on_forms(THETA, THETA, MetricParams.symbolic()))
for a in (MINUS, PLUS, Z):
    print(f"S(w{'-+z'[a]}) =", s_operator(one_form(a), sym))
print("S(1) =", s_operator(UNIT, sym))

# the unique metric for which S(w_a) = xi d(w_a)
cfg = HodgeConfig.star_normalized(ck_solve(1))
A, xi = coefficients(cfg)
print("alpha = beta =", cfg.params.alpha)
print("A =", A, " xi =", xi)
for q0 in (0.5, 0.9, 0.999):
    print(f"  q = {q0}: A = {A.evaluate(q0):.6f}, xi = {xi.evaluate(q0):.6f}")

for a in (MINUS, PLUS, Z):
    w = one_form(a)
    print(f"star(w{'-+z'[a]}) == xi d(w{'-+z'[a]}):", star(w, cfg) == exterior_d(w).scale(xi))

# the codifferential is the adjoint of d
forms = [FormElement.basis(k, i) for k in range(4) for i in range(DIMS[k])]
adj = all(
    inner_product(codifferential(w, cfg), v, cfg) == inner_product(w, exterior_d(v), cfg)
    for w in forms for v in forms if w.degree >= 1 and v.degree == w.degree - 1
)
print("<d^dagger w, v> = <w, d v>:", adj)
