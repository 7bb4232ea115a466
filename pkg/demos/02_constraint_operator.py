"""The degree-raising constraint operator and its two equivalent forms.

For a covector lam on a Lie algebra, the operator sends a generator v
to the symmetric 2-tensor

    (w1, w2) -> (1/2) (<lam, [w1, [w2, v]]> + <lam, [w2, [w1, v]]>)

and climbs to higher symmetric degrees through a signed Leibniz rule.
A Jacobi rewrite gives a second expression for the same tensor; both
are assembled here and compared numerically.
"""

import numpy as np

from spencer_hodge import so3, su2
from spencer_hodge.spencer import (
    build_spencer_maps,
    check_symbolic_equivalence,
    delta_on_generator,
    nilpotency_residual,
)

alg = so3()
lam = np.array([0.0, 0.0, 1.0])  # e3*

# Image of the generator e1 under the operator.
image = delta_on_generator(alg, lam, np.array([1.0, 0.0, 0.0]))
print("delta(e1) against the sorted degree-2 monomials:")
for mono, coeff in zip(image.space.basis, image.coeffs):
    if coeff != 0.0:
        label = ".".join(f"e{i + 1}" for i in mono)
        print(f"  {label}: {coeff:+.3f}")

# The symmetrized rule and its Jacobi-reduced rewrite agree to rounding
# for random covectors on both algebras.
rng = np.random.default_rng(7)
for a in (so3(), su2()):
    worst = max(
        check_symbolic_equivalence(a, rng.standard_normal(a.dim))
        for _ in range(100)
    )
    print(f"\n{a.name}: max deviation between the two forms over "
          f"100 random covectors = {worst:.3e}")

# The full graded family. matrices[j] maps Sym^j to Sym^(j+1); the map
# out of the unit is zero, so truncating at degree 1 kills all the
# vertical structure, which is why low truncations reproduce plain
# de Rham answers.
maps = build_spencer_maps(alg, lam, degree_cap=4)
print("\nmatrix shapes:", [m.shape for m in maps.matrices])

# The composites delta delta do not vanish in general; nothing in the
# assembly assumes they do.
print("composite norms |delta_{j+1} delta_j|:",
      [f"{r:.3f}" for r in nilpotency_residual(maps)])

# Linearity in lam: doubling the covector doubles every matrix.
double = build_spencer_maps(alg, 2.0 * lam, degree_cap=4)
gap = max(
    float(np.max(np.abs(two - 2.0 * one)))
    for one, two in zip(maps.matrices, double.matrices)
)
print("linearity defect under lam -> 2 lam:", gap)
