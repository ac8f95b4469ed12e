"""
Approaching q = 1
=================

At q = 1 the eigenvalues become those of the classical Dirac operator on the
3-sphere.  The quantum eigenvalues converge to them linearly in 1 - q.
"""

from suqdirac.dirac import DiracParams, classical_limit_sweep, classical_spectrum, dirac_matrix, parse_grid
from suqdirac.hodge import HodgeConfig, ck_params_from_alpha
from suqdirac.uqsu2 import Weight

cfg = HodgeConfig.star_normalized(ck_params_from_alpha(1))
D = dirac_matrix(DiracParams.default(cfg), cfg)

w = Weight(1, 0)
print("classical eigenvalues at J=1, N=0:")
for r in classical_spectrum(w):
    print(f"  {r.label:10s} {complex(r.value.evaluate(1.0)):.6f}")

grid = parse_grid("0.9:0.999:6")
sweep = classical_limit_sweep(w, cfg, grid, D)
print("\n|lambda(q) - lambda(1)| along the grid")
for label, order in sweep.orders.items():
    errs = [r.abs_err for r in sweep.rows if r.label == label]
    print(f"  {label:10s}", " ".join(f"{e:.2e}" for e in errs), f" order {order:.3f}" if order is not None else "")
print("converges:", sweep.ok())
