"""
The braided exterior algebra on three generators
================================================

Builds the braiding on the 3-dimensional module, checks the braid equation,
and walks through wedge products and the exterior derivative.
"""

from suqdirac.excalc import (
    DIMS, FormElement, antisymmetrizer, braiding, exterior_d, lam, one_form, sigma_at, two_form, wedge,
)
from suqdirac.linalg import SparseMatrix
from suqdirac.qscalar import Q
from suqdirac.uqsu2 import MINUS, PLUS, Z

# the braiding satisfies the braid relation on three tensor factors
s1, s2 = sigma_at(1, 3), sigma_at(2, 3)
print("braid relation:", s1 @ s2 @ s1 == s2 @ s1 @ s2)

# two eigenvalues, 1 and -q^2, with multiplicities 6 and 3
s, one = braiding(), SparseMatrix.identity(9)
print("dim ker(1 - s) =", len((one - s).nullspace()))
print("dim ker(q^2 + s) =", len((one.scale(Q ** 2) + s).nullspace()))

# antisymmetrizers act as scalars on their images; the fourth one vanishes
for k in (2, 3):
    a = antisymmetrizer(k)
    print(f"A({k})^2 = {lam(k)} * A({k}):", a @ a == a.scale(lam(k)))
print("A(4) = 0:", antisymmetrizer(4).is_zero())

m, p, z = (one_form(a) for a in (MINUS, PLUS, Z))
print("w+ ^ w- =", wedge(p, m))
print("d w- =", exterior_d(m))
print("d w+ =", exterior_d(p))
print("d wz =", exterior_d(z))

# d squares to zero on every basis form
forms = [FormElement.basis(k, i) for k in range(4) for i in range(DIMS[k])]
print("d^2 = 0 on all", len(forms), "basis forms:", all(exterior_d(exterior_d(f)).is_zero() for f in forms))
print("d(z^-) =", exterior_d(two_form(Z, MINUS)))
