"""Coupled covector and connection fields over a discretized torus.

A pair field samples a constraint covector lam(x) and connection
components omega_a(x), both valued in a fixed Lie algebra's coefficient
space, at the barycenters of any cell degree. Derived quantities:

    constraint weight   1 + |lam|^2                     (dual norm)
    enhanced weight     adds |d lam + ad*_omega lam|^2 per axis
    curvature           Omega_12 = d1 omega_2 - d2 omega_1 + [omega_1, omega_2]
    curvature weight    1 + |Omega|^2 + |grad Omega|^2   (Killing norms)

Base derivatives use central differences on the periodic grid of
whichever barycenter family is being sampled, so every weight is
available at every cell degree. Field specs are small dicts (documented
in the config schema) or plain callables mapping (m, dim) coordinate
arrays to (m, d) coefficient arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import (
    DegenerateLambda,
    DimensionUnsupported,
    NonConvergence,
    ShapeMismatch,
    StepCollapse,
    ZeroCovector,
)
from .lie import LieAlgebra
from .mesh import CellBlock, Mesh

DEGENERACY_TOL = 1e-12
WEIGHT_KINDS = ("plain", "constraint", "enhanced", "curvature")


def _periodic_interpolate(mesh: Mesh, table: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Multilinear periodic interpolation of vertex-grid values."""
    res = mesh.resolutions
    vals = table.reshape(*res, -1)
    if mesh.dim == 1:
        t = points[:, 0] / mesh.spacings[0]
        i0 = np.floor(t).astype(int) % res[0]
        i1 = (i0 + 1) % res[0]
        w = (t - np.floor(t))[:, None]
        return (1.0 - w) * vals[i0] + w * vals[i1]
    t1 = points[:, 0] / mesh.spacings[0]
    t2 = points[:, 1] / mesh.spacings[1]
    i0 = np.floor(t1).astype(int) % res[0]
    j0 = np.floor(t2).astype(int) % res[1]
    i1 = (i0 + 1) % res[0]
    j1 = (j0 + 1) % res[1]
    u = (t1 - np.floor(t1))[:, None]
    v = (t2 - np.floor(t2))[:, None]
    return (
        (1 - u) * (1 - v) * vals[i0, j0]
        + u * (1 - v) * vals[i1, j0]
        + (1 - u) * v * vals[i0, j1]
        + u * v * vals[i1, j1]
    )


def _sinusoid(spec: dict, mesh: Mesh, points: np.ndarray) -> np.ndarray:
    axis = int(spec.get("axis", 0))
    if not 0 <= axis < mesh.dim:
        raise ShapeMismatch(f"sinusoid axis {axis} outside base dimension {mesh.dim}")
    wavenumber = float(spec.get("wavenumber", 1.0))
    offset = float(spec.get("offset", 1.0))
    amp = float(spec.get("amp", 0.5))
    phase = 2.0 * np.pi * wavenumber * points[:, axis] / mesh.sides[axis]
    return offset + amp * np.sin(phase)


def make_covector_field(alg: LieAlgebra, mesh: Mesh, spec):
    """Build a callable covector field from a spec dict or pass through."""
    if callable(spec):
        return spec
    name = spec.get("name")
    if name == "constant":
        coeffs = np.asarray(spec["coeffs"], dtype=float)
        if coeffs.shape != (alg.dim,):
            raise ShapeMismatch(f"constant covector needs {alg.dim} coefficients")
        return lambda points: np.broadcast_to(coeffs, (points.shape[0], alg.dim)).copy()
    if name == "vortex-sin":
        direction = np.asarray(spec["direction"], dtype=float)
        if direction.shape != (alg.dim,):
            raise ShapeMismatch(f"direction needs {alg.dim} coefficients")
        return lambda points: _sinusoid(spec, mesh, points)[:, None] * direction
    if name == "table":
        table = np.asarray(spec["values"], dtype=float).reshape(-1, alg.dim)
        if table.shape[0] != mesh.counts[0]:
            raise ShapeMismatch(
                f"table needs one row per vertex ({mesh.counts[0]}), got {table.shape[0]}"
            )
        return lambda points: _periodic_interpolate(mesh, table, points)
    raise ShapeMismatch(f"unknown covector spec {name!r}")


def make_connection_field(alg: LieAlgebra, mesh: Mesh, spec):
    """Build per-axis connection callables from a spec dict.

    Returns a tuple of mesh.dim callables, one per base axis.
    """
    if isinstance(spec, (tuple, list)) and all(callable(f) for f in spec):
        if len(spec) != mesh.dim:
            raise ShapeMismatch(f"need {mesh.dim} connection components")
        return tuple(spec)
    name = spec.get("name")
    zero = lambda points: np.zeros((points.shape[0], alg.dim))
    if name == "zero":
        return tuple(zero for _ in range(mesh.dim))
    if name == "constant":
        coeffs = np.asarray(spec["coeffs"], dtype=float)
        if coeffs.shape != (mesh.dim, alg.dim):
            raise ShapeMismatch(
                f"constant connection needs shape ({mesh.dim}, {alg.dim})"
            )

        def component(row):
            return lambda points: np.broadcast_to(
                coeffs[row], (points.shape[0], alg.dim)
            ).copy()

        return tuple(component(a) for a in range(mesh.dim))
    if name == "shear-sin":
        component_axis = int(spec.get("component", 0))
        direction = np.asarray(spec["direction"], dtype=float)
        if direction.shape != (alg.dim,):
            raise ShapeMismatch(f"direction needs {alg.dim} coefficients")
        vary = dict(spec)
        vary.setdefault("axis", 1 if mesh.dim == 2 else 0)
        vary.setdefault("offset", 0.0)
        vary.setdefault("amp", 1.0)

        def sheared(points):
            return _sinusoid(vary, mesh, points)[:, None] * direction

        return tuple(
            sheared if a == component_axis else zero for a in range(mesh.dim)
        )
    if name == "table":
        tables = np.asarray(spec["values"], dtype=float)
        tables = tables.reshape(mesh.dim, -1, alg.dim)
        if tables.shape[1] != mesh.counts[0]:
            raise ShapeMismatch(
                f"connection table needs one row per vertex per axis"
            )

        def component(row):
            return lambda points: _periodic_interpolate(mesh, tables[row], points)

        return tuple(component(a) for a in range(mesh.dim))
    raise ShapeMismatch(f"unknown connection spec {name!r}")


@dataclass
class PairField:
    """Sampled covector and connection data with derived weights.

    Instances behave as immutable after construction; the mutable dict
    only memoizes derived arrays, and every query is pure.
    """

    mesh: Mesh
    algebra: LieAlgebra
    lambda_fn: object
    omega_fns: tuple
    degeneracy_tol: float = DEGENERACY_TOL
    _cache: dict = field(default_factory=dict, repr=False)

    def lambda_at(self, points: np.ndarray) -> np.ndarray:
        """Sample lam with the non-degeneracy gate applied."""
        out = np.asarray(self.lambda_fn(points), dtype=float)
        if out.shape != (points.shape[0], self.algebra.dim):
            raise ShapeMismatch(
                f"covector field returned shape {out.shape}, expected "
                f"({points.shape[0]}, {self.algebra.dim})"
            )
        norms = self.algebra.dual_norm_sq(out)
        low = float(norms.min()) if norms.size else 1.0
        if low <= self.degeneracy_tol**2:
            raise DegenerateLambda(
                f"constraint covector degenerates (min |lam|^2 = {low:.3e})"
            )
        return out

    def omega_at(self, axis: int, points: np.ndarray) -> np.ndarray:
        out = np.asarray(self.omega_fns[axis](points), dtype=float)
        if out.shape != (points.shape[0], self.algebra.dim):
            raise ShapeMismatch(
                f"connection component {axis} returned shape {out.shape}"
            )
        return out

    def lambda_on(self, k: int) -> np.ndarray:
        """lam at every degree-k barycenter."""
        key = ("lambda", k)
        if key not in self._cache:
            self._cache[key] = self.lambda_at(self.mesh.barycenters(k))
        return self._cache[key]

    def _grid_diff(self, values: np.ndarray, axis: int) -> np.ndarray:
        res = self.mesh.resolutions
        grid = values.reshape(*res, -1)
        out = (np.roll(grid, -1, axis=axis) - np.roll(grid, 1, axis=axis)) / (
            2.0 * self.mesh.spacings[axis]
        )
        return out.reshape(values.shape)

    def _cartan_parts(self, block: CellBlock) -> np.ndarray:
        """Per-axis residual d_a lam + ad*_{omega_a} lam on one block grid."""
        lam = self.lambda_at(block.points)
        parts = np.empty((self.mesh.dim,) + lam.shape)
        for a in range(self.mesh.dim):
            omega = self.omega_at(a, block.points)
            parts[a] = self._grid_diff(lam, a) + self.algebra.coadjoint_apply(
                omega, lam
            )
        return parts

    def _curvature_block(self, block: CellBlock) -> np.ndarray:
        if self.mesh.dim != 2:
            raise DimensionUnsupported(
                "curvature needs two base axes; a circle has none"
            )
        w0 = self.omega_at(0, block.points)
        w1 = self.omega_at(1, block.points)
        c = self.algebra.structure_constants
        comm = np.einsum("mi,mj,ijk->mk", w0, w1, c)
        return self._grid_diff(w1, 0) - self._grid_diff(w0, 1) + comm

    def _weight_block(self, kind: str, block: CellBlock) -> np.ndarray:
        if kind == "plain":
            return np.ones(block.size)
        if kind == "constraint":
            lam = self.lambda_at(block.points)
            return 1.0 + self.algebra.dual_norm_sq(lam)
        if kind == "enhanced":
            lam = self.lambda_at(block.points)
            parts = self._cartan_parts(block)
            extra = sum(
                self.algebra.dual_norm_sq(parts[a]) for a in range(self.mesh.dim)
            )
            return 1.0 + self.algebra.dual_norm_sq(lam) + extra
        if kind == "curvature":
            if self.mesh.dim == 1:
                return np.ones(block.size)
            curv = self._curvature_block(block)
            total = self.algebra.killing_norm_sq(curv)
            for a in range(self.mesh.dim):
                total = total + self.algebra.killing_norm_sq(
                    self._grid_diff(curv, a)
                )
            return 1.0 + total
        raise ShapeMismatch(f"unknown weight kind {kind!r}")

    def weight_on(self, kind: str, k: int) -> np.ndarray:
        """Weight of the given kind at every degree-k barycenter."""
        key = ("weight", kind, k)
        if key not in self._cache:
            self._cache[key] = np.concatenate(
                [self._weight_block(kind, b) for b in self.mesh.blocks[k]]
            )
        return self._cache[key]


def sample_fields(
    mesh: Mesh,
    alg: LieAlgebra,
    lambda_spec,
    omega_spec=None,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> PairField:
    """Bind field specs to a mesh and validate non-degeneracy at vertices.

    Raises:
        DegenerateLambda: lam vanishes at some vertex sample.
        ShapeMismatch: malformed spec or wrong coefficient counts.
    """
    if omega_spec is None:
        omega_spec = {"name": "zero"}
    field_ = PairField(
        mesh=mesh,
        algebra=alg,
        lambda_fn=make_covector_field(alg, mesh, lambda_spec),
        omega_fns=make_connection_field(alg, mesh, omega_spec),
        degeneracy_tol=degeneracy_tol,
    )
    field_.lambda_on(0)
    return field_


def weight_constraint(field_: PairField) -> np.ndarray:
    """Constraint-strength weight 1 + |lam|^2 at the vertices."""
    return field_.weight_on("constraint", 0)


def weight_constraint_enhanced(field_: PairField) -> np.ndarray:
    """Constraint weight plus the squared compatibility residual."""
    return field_.weight_on("enhanced", 0)


def weight_curvature(field_: PairField) -> np.ndarray:
    """Curvature-complexity weight 1 + |Omega|^2 + |grad Omega|^2 at vertices."""
    return field_.weight_on("curvature", 0)


def curvature(field_: PairField) -> np.ndarray:
    """Curvature coefficients Omega_12 at face barycenters (two axes only)."""
    if field_.mesh.dim != 2:
        raise DimensionUnsupported("curvature needs two base axes")
    blocks = field_.mesh.blocks[2]
    return np.concatenate([field_._curvature_block(b) for b in blocks], axis=0)


def cartan_residual(field_: PairField) -> tuple[np.ndarray, float]:
    """Pointwise and global compatibility residual |d lam + ad*_omega lam|.

    The global value is the volume-weighted L2 aggregate of the pointwise
    residual over the vertices. Linear in lam by construction.
    """
    block = field_.mesh.blocks[0][0]
    parts = field_._cartan_parts(block)
    sq = sum(field_.algebra.dual_norm_sq(parts[a]) for a in range(field_.mesh.dim))
    pointwise = np.sqrt(sq)
    volumes = field_.mesh.hodge[0]
    total = float(np.sqrt(np.sum(volumes * sq)))
    return pointwise, total


def transversality_margin(field_: PairField, x, xi) -> float:
    """Smallest singular value of the constraint-projection pair at x.

    The map sends a tangent vector (v_base, v_fiber) to the pair
    (<lam, omega(v)>, <xi, v_base>); its two singular values measure how
    far the constraint functional and the chosen base direction are from
    degeneracy. Returns the smaller one.

    Raises:
        ZeroCovector: xi is zero.
        DegenerateLambda: lam vanishes at x.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (field_.mesh.dim,):
        raise ShapeMismatch(f"direction covector needs {field_.mesh.dim} components")
    if float(np.abs(xi).max()) == 0.0:
        raise ZeroCovector("base direction covector is zero")
    lam = field_.lambda_at(x)[0]
    n, d = field_.mesh.dim, field_.algebra.dim
    phi = np.zeros((2, n + d))
    for a in range(n):
        phi[0, a] = lam @ field_.omega_at(a, x)[0]
    phi[0, n:] = lam
    phi[1, :n] = xi
    return float(np.linalg.svd(phi, compute_uv=False).min())


def geometric_gap(field_: PairField, x) -> float:
    """Unit-sphere gap between the horizontal and vertical subspaces at x.

    Horizontal means the graph complement {(v, -omega(v))} determined by
    the connection; for a flat connection the subspaces are orthogonal
    and the gap is sqrt(2).
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    n, d = field_.mesh.dim, field_.algebra.dim
    omega_mat = np.stack(
        [field_.omega_at(a, x)[0] for a in range(n)], axis=1
    )  # (d, n)
    horiz = np.vstack([np.eye(n), -omega_mat])
    q, _ = np.linalg.qr(horiz)
    cos = 0.0
    if d:
        overlap = q[n:, :]  # rows of the vertical coordinates
        svals = np.linalg.svd(overlap, compute_uv=False)
        cos = float(min(svals.max(initial=0.0), 1.0))
    return float(np.sqrt(max(2.0 - 2.0 * cos, 0.0)))


@dataclass(frozen=True)
class FitResult:
    """Outcome of the covector fitting loop."""

    lam: np.ndarray
    objective: np.ndarray
    residual: float
    converged: bool
    iterations: int
    final_step: float


def _central_difference_matrix(mesh: Mesh, axis: int) -> sp.csr_matrix:
    res = mesh.resolutions
    nv = mesh.counts[0]
    idx = np.arange(nv).reshape(*res)
    fwd = np.roll(idx, -1, axis=axis).ravel()
    bwd = np.roll(idx, 1, axis=axis).ravel()
    flat = idx.ravel()
    h = mesh.spacings[axis]
    data = np.concatenate([np.full(nv, 0.5 / h), np.full(nv, -0.5 / h)])
    rows = np.concatenate([flat, flat])
    cols = np.concatenate([fwd, bwd])
    return sp.csr_matrix((data, (rows, cols)), shape=(nv, nv))


def fit_lambda(
    mesh: Mesh,
    alg: LieAlgebra,
    omega_spec,
    target_spec,
    alpha: float = 0.0,
    max_iter: int = 5000,
    step0: float = 1.0,
    tol: float = 1e-8,
    init=None,
    seed: int = 0,
    raise_on_max_iter: bool = False,
) -> FitResult:
    """Fit a vertex covector table by gradient descent.

    Minimizes half the squared compatibility residual plus alpha times
    the squared dual-norm distance from the line through the target
    covector, both integrated with vertex volumes. Fixed initial step
    with backtracking halving; a step is accepted only if the objective
    decreases, so the recorded objective trace is non-increasing.

    Args:
        mesh: discretized torus.
        alg: Lie algebra.
        omega_spec: connection spec or callables.
        target_spec: covector spec or callable giving the anchor line.
        alpha: anchor penalty strength (alpha = 0 disables it).
        max_iter: iteration budget.
        step0: initial step size for each iteration.
        tol: relative objective-decrease threshold declaring convergence.
        init: optional (vertices, d) starting table; random unit-scale
            normal entries from seed otherwise.
        raise_on_max_iter: raise NonConvergence instead of returning an
            unconverged result when the budget runs out.

    When backtracking exhausts the step range but the predicted descent
    is smaller than the objective's own evaluation noise, the iterate
    counts as converged at the numerical floor.

    Raises:
        StepCollapse: backtracking exhausted while a decrease beyond
            evaluation noise was still predicted.
        NonConvergence: budget exhausted and raise_on_max_iter is set.
        ZeroCovector: the target covector vanishes at some vertex.
    """
    nv = mesh.counts[0]
    d = alg.dim
    omega_fns = make_connection_field(alg, mesh, omega_spec)
    target_fn = make_covector_field(alg, mesh, target_spec)
    verts = mesh.barycenters(0)
    mu = np.asarray(target_fn(verts), dtype=float)
    gdual = alg.killing_dual
    mu_norm_sq = np.einsum("mi,ij,mj->m", mu, gdual, mu)
    if alpha != 0.0 and float(mu_norm_sq.min()) <= 0.0:
        raise ZeroCovector("target covector vanishes at a vertex")

    volumes = mesh.hodge[0]
    weight = sp.kron(sp.diags(volumes), gdual).tocsr()
    c = alg.structure_constants
    quadratic = sp.csr_matrix((nv * d, nv * d))
    for a in range(mesh.dim):
        omega = np.asarray(omega_fns[a](verts), dtype=float)
        coad = -np.einsum("mi,ijk->mjk", omega, c)
        pointwise = sp.block_diag(list(coad), format="csr")
        op = sp.kron(_central_difference_matrix(mesh, a), sp.eye(d)).tocsr() + pointwise
        quadratic = quadratic + op.T @ weight @ op
    cartan_quadratic = quadratic.copy()
    if alpha != 0.0:
        gmu = np.einsum("ij,mj->mi", gdual, mu)
        proj = gdual[None, :, :] - gmu[:, :, None] * gmu[:, None, :] / mu_norm_sq[
            :, None, None
        ]
        penalty = sp.block_diag(list(volumes[:, None, None] * proj), format="csr")
        quadratic = quadratic + 2.0 * alpha * penalty

    if init is None:
        rng = np.random.default_rng(seed)
        lam = rng.standard_normal((nv, d))
    else:
        lam = np.array(init, dtype=float)
        if lam.shape != (nv, d):
            raise ShapeMismatch(f"initial table must have shape ({nv}, {d})")
    vec = lam.ravel()

    def objective(v):
        return 0.5 * float(v @ (quadratic @ v))

    def residual_of(v):
        # rounding can push the form a hair below zero at convergence
        return float(np.sqrt(max(float(v @ (cartan_quadratic @ v)), 0.0)))

    def numerically_zero(value, v):
        return value <= 1e-24 * max(1.0, float(v @ v))

    # largest row sum bounds the operator norm, which sets the rounding
    # scale of evaluating the quadratic form
    opnorm_bound = float(np.abs(quadratic).sum(axis=1).max())

    trace = [objective(vec)]
    converged = numerically_zero(trace[0], vec)
    iterations = 0
    step = step0
    while not converged and iterations < max_iter:
        current = trace[-1]
        grad = quadratic @ vec
        step = step0
        accepted = False
        while True:
            candidate = vec - step * grad
            value = objective(candidate)
            if value < current:
                accepted = True
                break
            step *= 0.5
            if step < 1e-18 * step0:
                # no representable step beats the current value; decide
                # whether that is the numerical floor or a real failure
                # by comparing the ideal line-search gain against the
                # evaluation noise of the objective
                grad_sq = float(grad @ grad)
                curvature = float(grad @ (quadratic @ grad))
                if curvature > 0.0:
                    predicted = grad_sq * grad_sq / (2.0 * curvature)
                else:
                    predicted = step0 * grad_sq
                noise = np.finfo(float).eps * opnorm_bound * max(
                    1.0, float(vec @ vec)
                )
                if predicted <= noise:
                    converged = True
                    break
                raise StepCollapse(
                    f"step collapsed at iteration {iterations} "
                    f"(objective {current:.6e})"
                )
        if not accepted:
            break
        vec = candidate
        trace.append(value)
        iterations += 1
        if (current - value) / current < tol or numerically_zero(value, vec):
            converged = True
    if not converged and raise_on_max_iter:
        raise NonConvergence(
            f"no convergence within {max_iter} iterations "
            f"(objective {trace[-1]:.6e})"
        )
    return FitResult(
        lam=vec.reshape(nv, d),
        objective=np.array(trace),
        residual=residual_of(vec),
        converged=converged,
        iterations=iterations,
        final_step=step,
    )
