"""Real Lie algebras given by structure constants, with Killing-form metrics.

Conventions. A basis e_1..e_d is fixed once and for all; the structure
constants c[i, j, k] encode [e_i, e_j] = sum_k c[i, j, k] e_k. Algebra
elements and covectors are plain coefficient arrays in this raw basis.
The pairing between a covector mu and an element X is the coordinate sum
mu @ X. Inner products on the algebra use -B (minus the Killing matrix),
so they are positive definite exactly when the algebra passes the
definiteness gate; covector norms use the inverse matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import JacobiViolated, KillingDegenerate

JACOBI_TOL = 1e-10
KILLING_TOL = 1e-10
BUILTIN_NAMES = ("so3", "su2", "so4")


def jacobi_residual(c: np.ndarray) -> float:
    """Max-norm residual of the Jacobi identity over all basis triples."""
    cyc1 = np.einsum("jkm,iml->ijkl", c, c)
    cyc2 = np.einsum("kim,jml->ijkl", c, c)
    cyc3 = np.einsum("ijm,kml->ijkl", c, c)
    return float(np.abs(cyc1 + cyc2 + cyc3).max())


def killing_matrix(c: np.ndarray) -> np.ndarray:
    """Killing matrix B[i, j] = trace(ad_i ad_j) = sum_kl c[i,k,l] c[j,l,k]."""
    return np.einsum("ikl,jlk->ij", c, c)


@dataclass(frozen=True)
class LieAlgebra:
    """Lie algebra with validated structure constants and Killing metric.

    Attributes:
        dim: number of basis elements d.
        structure_constants: shape (d, d, d), [e_i, e_j] = c[i, j, :].
        killing: the Killing matrix B, negative definite by construction.
        killing_dual: inverse of -B, the Gram matrix for covector norms.
        onb_transform: T with T.T @ (-B) @ T = identity.
        name: optional label for reports ("so3", "su2", "so4", "file").
    """

    dim: int
    structure_constants: np.ndarray
    killing: np.ndarray
    killing_dual: np.ndarray
    onb_transform: np.ndarray
    name: str = "custom"

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Lie bracket [x, y] of coefficient vectors."""
        return np.einsum("i,j,ijk->k", x, y, self.structure_constants)

    def ad(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ad_x, so ad(x) @ y == bracket(x, y)."""
        return np.einsum("i,ijk->kj", x, self.structure_constants)

    def coadjoint(self, x: np.ndarray, mu: np.ndarray) -> np.ndarray:
        """Coadjoint action with the sign fixed by <ad*_x mu, y> = -<mu, [x, y]>."""
        return -self.ad(x).T @ mu

    def coadjoint_apply(self, x_batch: np.ndarray, mu_batch: np.ndarray) -> np.ndarray:
        """Row-wise coadjoint action for batches of shape (m, d)."""
        c = self.structure_constants
        # (ad_x)^T mu has components sum_{i,k} x_i c[i, j, k] mu_k
        return -np.einsum("mi,ijk,mk->mj", x_batch, c, mu_batch)

    def killing_inner(self, x: np.ndarray, y: np.ndarray) -> float:
        """Positive-definite inner product <x, y> = -B(x, y)."""
        return float(-x @ self.killing @ y)

    def killing_norm_sq(self, x: np.ndarray) -> np.ndarray:
        """Squared Killing norm, row-wise when x has shape (m, d)."""
        k = -self.killing
        if x.ndim == 1:
            return x @ k @ x
        return np.einsum("mi,ij,mj->m", x, k, x)

    def dual_norm_sq(self, mu: np.ndarray) -> np.ndarray:
        """Squared dual norm of covectors, row-wise for shape (m, d)."""
        g = self.killing_dual
        if mu.ndim == 1:
            return mu @ g @ mu
        return np.einsum("mi,ij,mj->m", mu, g, mu)

    def dual_norm(self, mu: np.ndarray) -> np.ndarray:
        return np.sqrt(self.dual_norm_sq(mu))


@dataclass(frozen=True)
class DualVector:
    """Covector on a Lie algebra, stored in the raw dual basis."""

    algebra: LieAlgebra
    coeffs: np.ndarray

    def pair(self, x: np.ndarray) -> float:
        """Pairing <mu, x> as the plain coordinate sum."""
        return float(self.coeffs @ np.asarray(x, dtype=float))

    def norm(self) -> float:
        return float(self.algebra.dual_norm(self.coeffs))


def build_lie_algebra(
    c: np.ndarray,
    name: str = "custom",
    jacobi_tol: float = JACOBI_TOL,
) -> LieAlgebra:
    """Validate structure constants and assemble the algebra.

    Args:
        c: array of shape (d, d, d) with [e_i, e_j] = sum_k c[i, j, k] e_k.
        name: label carried into reports.
        jacobi_tol: max allowed Jacobi residual.

    Raises:
        JacobiViolated: antisymmetry or the Jacobi identity fails.
        KillingDegenerate: -B is not positive definite (relative tolerance),
            which rejects abelian and other non-semisimple inputs.
    """
    c = np.asarray(c, dtype=float)
    if c.ndim != 3 or len(set(c.shape)) != 1:
        raise JacobiViolated(f"structure constants must be cubic, got shape {c.shape}")
    skew = float(np.abs(c + np.swapaxes(c, 0, 1)).max())
    if skew > jacobi_tol:
        raise JacobiViolated(f"bracket not antisymmetric, residual {skew:.3e}")
    res = jacobi_residual(c)
    if res > jacobi_tol:
        raise JacobiViolated(f"Jacobi residual {res:.3e} exceeds {jacobi_tol:.1e}")

    b = killing_matrix(c)
    neg = -b
    eigs = np.linalg.eigvalsh(neg)
    scale = max(1.0, float(eigs.max()))
    if float(eigs.min()) <= KILLING_TOL * scale:
        raise KillingDegenerate(
            f"-B eigenvalues {eigs} are not uniformly positive; "
            "the Killing metric is unusable"
        )
    # T = inv(L).T for the Cholesky factor L of -B gives T.T @ (-B) @ T = I.
    chol = np.linalg.cholesky(neg)
    onb = np.linalg.inv(chol).T
    dual = np.linalg.inv(neg)
    dual = 0.5 * (dual + dual.T)
    return LieAlgebra(
        dim=c.shape[0],
        structure_constants=c,
        killing=b,
        killing_dual=dual,
        onb_transform=onb,
        name=name,
    )


def _epsilon3() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for (i, j, k), sign in (
        ((0, 1, 2), 1.0), ((1, 2, 0), 1.0), ((2, 0, 1), 1.0),
        ((0, 2, 1), -1.0), ((2, 1, 0), -1.0), ((1, 0, 2), -1.0),
    ):
        eps[i, j, k] = sign
    return eps


def so3() -> LieAlgebra:
    """Rotation algebra, c[i, j, k] = epsilon_ijk, Killing matrix -2 I."""
    return build_lie_algebra(_epsilon3(), name="so3")


def su2() -> LieAlgebra:
    """su(2) in the real basis with c = 2 epsilon_ijk, Killing matrix -8 I."""
    return build_lie_algebra(2.0 * _epsilon3(), name="su2")


def so4() -> LieAlgebra:
    """so(4) realized as two commuting so(3) blocks."""
    eps = _epsilon3()
    c = np.zeros((6, 6, 6))
    c[:3, :3, :3] = eps
    c[3:, 3:, 3:] = eps
    return build_lie_algebra(c, name="so4")


def builtin_algebra(name: str) -> LieAlgebra:
    """Look up one of the shipped algebras by name."""
    table = {"so3": so3, "su2": su2, "so4": so4}
    if name not in table:
        raise KeyError(f"unknown algebra {name!r}, expected one of {BUILTIN_NAMES}")
    return table[name]()


def load_structure_constants(path) -> np.ndarray:
    """Read structure constants from a plain-text file.

    Format: the first whitespace-separated token is the dimension d, the
    remaining d**3 tokens are c[i, j, k] flattened in row-major order
    (k fastest, then j, then i). Line breaks are not significant and
    lines starting with '#' are skipped.
    """
    with open(path) as fh:
        tokens = [
            tok
            for line in fh
            if not line.lstrip().startswith("#")
            for tok in line.split()
        ]
    data = np.array([float(t) for t in tokens])
    if data.size < 1:
        raise ValueError(f"{path}: empty structure-constant file")
    d = int(round(data[0]))
    if d <= 0 or data.size != 1 + d**3:
        raise ValueError(
            f"{path}: expected 1 + d^3 numbers for d={d}, got {data.size}"
        )
    return data[1:].reshape(d, d, d)


def load_lie_algebra(path, jacobi_tol: float = JACOBI_TOL) -> LieAlgebra:
    """Build a validated algebra from a structure-constant file."""
    return build_lie_algebra(load_structure_constants(path), name="file", jacobi_tol=jacobi_tol)
