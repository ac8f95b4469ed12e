"""
Spectrum of the Dirac operator, weight by weight
================================================

The operator is a 4x4 matrix over the quantum group.  On a weight vector of
the spin-J module it reduces to a small matrix with entries in q, and its
eigenvalues have closed forms.
"""

from fractions import Fraction

import numpy as np

from suqdirac.dirac import DiracParams, dirac_matrix, module_spectrum, reduce, spectrum_closed_form
from suqdirac.dirac.spectrum import numeric_matrix
from suqdirac.hodge import HodgeConfig, ck_params_from_alpha
from suqdirac.uqsu2 import Weight

cfg = HodgeConfig.star_normalized(ck_params_from_alpha(1))
D = dirac_matrix(DiracParams.default(cfg), cfg)
print("operator entries with nonzero coefficients:", D.nonzero_count())

w = Weight(1, 0)
M = reduce(D, w)
q0 = 0.5
print(f"\nreduced matrix at J=1, N=0, q={q0}:")
print(np.round(numeric_matrix(M, q0), 6))
print("numerical eigenvalues:", np.round(np.sort_complex(np.linalg.eigvals(numeric_matrix(M, q0))), 9))
for r in spectrum_closed_form(w, cfg, D):
    print(f"  {r.label:10s} {complex(r.value.evaluate(q0)):.12f}")

# J = 0 is special: the reduced matrix is not diagonalizable, but the module is
print("\nJ = 0 module spectrum:")
for wt, r in module_spectrum(0, cfg, D):
    print(f"  {r.label:10s} {complex(r.value.evaluate(q0)):.12f}")

print("\nlambda+ across the spin-3/2 module at q = 0.9:")
for N in (-3, -1, 1, 3):
    recs = spectrum_closed_form(Weight(Fraction(3, 2), N), cfg, D)
    plus = next(r for r in recs if r.label == "lambda+")
    print(f"  N = {N:+d}: {complex(plus.value.evaluate(0.9)):.9f}")
