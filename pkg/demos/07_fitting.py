"""Fitting a covector field to a connection by residual descent.

Given a connection omega, the fit minimizes the volume-weighted Cartan
residual |d lam + ad*_omega lam|^2 over covector tables on the mesh,
by plain gradient descent with backtracking.  An optional anchor
penalty pulls each row toward the line spanned by a target covector,
removing the scale and gauge slack of the pure residual.
"""

import numpy as np

from spencer_hodge import so3
from spencer_hodge.fields import fit_lambda
from spencer_hodge.mesh import build_torus_mesh

E3 = {"name": "constant", "coeffs": [0.0, 0.0, 1.0]}

# Flat case on a 12 x 12 torus: with the zero connection the residual
# is just |d lam|^2, so any constant table is optimal.  Starting from
# the target plus noise, descent drives the residual to the floor.
mesh = build_torus_mesh([12, 12])
rng = np.random.default_rng(5)
init = np.tile([0.0, 0.0, 1.0], (mesh.counts[0], 1))
init += 0.3 * rng.standard_normal(init.shape)

result = fit_lambda(mesh, so3(), {"name": "zero"}, E3, init=init)
print(f"flat fit: converged {result.converged} after {result.iterations} "
      f"iterations, residual {result.residual:.2e}")
print("objective head:", [f"{v:.3e}" for v in result.objective[:4]])
print("objective tail:", [f"{v:.3e}" for v in result.objective[-2:]])
drops = np.diff(result.objective)
print("strictly decreasing on every accepted step:", bool(np.all(drops < 0.0)))

# Without an anchor the solution is only fixed up to the kernel of the
# residual; rows drift toward a common constant but not necessarily the
# target.  The anchor penalty pins the line.
circle = build_torus_mesh([16])
anchored = fit_lambda(circle, so3(), {"name": "zero"}, E3,
                      alpha=5.0, max_iter=20000, tol=1e-14)
lam = anchored.lam
target = np.array([0.0, 0.0, 1.0])
alg = so3()
dist = max(
    min(float(alg.dual_norm_sq(row - target)),
        float(alg.dual_norm_sq(row + target))) ** 0.5
    for row in lam / np.linalg.norm(lam, axis=1, keepdims=True)
)
print(f"\nanchored fit: converged {anchored.converged}, "
      f"residual {anchored.residual:.2e}")
print(f"largest dual distance of normalized rows to the target line: "
      f"{dist:.2e}")

# Random restarts stay monotone; the trace never ticks upward because
# only strictly improving steps are accepted.
for seed in range(3):
    r = fit_lambda(circle, so3(), {"name": "zero"}, E3, alpha=5.0,
                   max_iter=2000, seed=seed)
    drops = np.diff(r.objective)
    print(f"seed {seed}: iterations {r.iterations}, monotone "
          f"{bool(np.all(drops < 0.0))}, final objective "
          f"{r.objective[-1]:.3e}")
