"""Built-in Lie algebras and the metric structure on their duals.

Every computation downstream leans on a compact algebra g with a
negative-definite Killing form.  The inner product used everywhere is
-B, which is positive definite, and its inverse supplies the metric on
g* for covector fields.
"""

import numpy as np

from spencer_hodge import so3, so4, su2

for alg in (so3(), su2(), so4()):
    B = -np.asarray(alg.killing)  # positive definite by compactness
    eigs = np.linalg.eigvalsh(B)
    print(f"{alg.name}: dim {alg.dim}, -B eigenvalues {np.round(eigs, 6)}")

# so3 in the standard basis: [e1, e2] = e3 and cyclic.
alg = so3()
e1, e2, e3 = np.eye(3)
print("\nso3 bracket [e1, e2] =", alg.bracket(e1, e2))

# Norms differ between algebras because the Killing form scales with
# the representation: |e3|^2 is 2 for so3 but 8 for su2, and the dual
# norms are the reciprocals.
for a in (so3(), su2()):
    print(f"{a.name}: |e3|^2 = {a.killing_norm_sq(e3):.1f}, "
          f"|e3*|^2 = {a.dual_norm_sq(e3):.4f}")

# The coadjoint action moves covectors around an orbit without changing
# their dual norm; for so3, ad*_{e1} sends e3* to -e2*.
alg = so3()
e3_star = e3.copy()
moved = alg.coadjoint(e1, e3_star)
print("\nad*_{e1} e3* =", moved)
print("dual norm before/after:",
      float(alg.dual_norm_sq(e3_star)), "/", float(alg.dual_norm_sq(moved)))

# Algebras can also be loaded from a structure-constant file; the
# loader checks antisymmetry, the Jacobi identity, and that the Killing
# form is nondegenerate, so typos fail loudly instead of corrupting
# every result built on top.
