"""Assembly and spectral analysis of the weighted constraint complex.

The total space at degree n collects blocks (k, j) with k + j = n, where
k indexes base cell degree and j the symmetric fiber degree up to the
truncation order J. Each block stores one fiber coefficient vector per
cell, flattened as cell * sym_dim + sym_index, blocks ordered by
ascending k.

The differential couples a horizontal part (mesh incidence tensored with
the fiber identity) and a vertical part ((-1)^k times the constraint
operator families contracted with lam sampled at the k-cell
barycenters). Mass matrices are diagonal: cell weight times the diagonal
Hodge ratio, repeated over fiber components. Everything downstream
(adjoints, Laplacians, harmonic extraction, Green inverses) reduces to
symmetric generalized eigenproblems whitened by the mass diagonal.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh, minres

from .errors import (
    DegreeOutOfRange,
    EigensolverFailure,
    PipelineError,
    ShapeMismatch,
    SolverFailure,
)
from .fields import PairField, cartan_residual, geometric_gap, sample_fields
from .lie import LieAlgebra, builtin_algebra
from .mesh import Mesh, build_torus_mesh, betti_reference
from .spencer import build_spencer_maps
from .symalg import sym_dim

DENSE_CUTOFF = 5000
KERNEL_RTOL = 1e-8
METRIC_KINDS = ("A", "A-enhanced", "B", "mixed", "plain")
_METRIC_WEIGHT = {
    "A": "constraint",
    "A-enhanced": "enhanced",
    "B": "curvature",
    "plain": "plain",
}
_METRIC_ALIASES = {"A-enh": "A-enhanced", "a": "A", "b": "B"}


def canonical_metric(kind: str) -> str:
    kind = _METRIC_ALIASES.get(kind, kind)
    if kind not in METRIC_KINDS:
        raise ShapeMismatch(
            f"unknown metric kind {kind!r}; expected one of {METRIC_KINDS}"
        )
    return kind


@dataclass(frozen=True)
class BlockInfo:
    """One (base degree, fiber degree) block inside a total-degree space."""

    base: int
    fiber: int
    offset: int
    cells: int
    sym: int

    @property
    def size(self) -> int:
        return self.cells * self.sym


@dataclass(frozen=True)
class DecompositionResult:
    """Orthogonal splitting of a cochain at fixed total degree."""

    harmonic: np.ndarray
    exact: np.ndarray
    coexact: np.ndarray
    residual: float


class SpencerAssembly:
    """Weighted complex over a pair field at a fixed truncation order."""

    def __init__(
        self,
        field: PairField,
        truncation: int = 0,
        metric: str = "A",
        alpha: float = 0.5,
        dense_cutoff: int = DENSE_CUTOFF,
    ):
        if truncation < 0:
            raise DegreeOutOfRange(f"truncation order must be >= 0, got {truncation}")
        self.field = field
        self.mesh: Mesh = field.mesh
        self.algebra: LieAlgebra = field.algebra
        self.truncation = int(truncation)
        self.top = self.mesh.dim + self.truncation
        self.metric = canonical_metric(metric)
        self.alpha = float(alpha)
        self.dense_cutoff = int(dense_cutoff)
        d = self.algebra.dim
        self.sym_dims = tuple(sym_dim(d, j) for j in range(self.truncation + 1))
        if self.truncation >= 1:
            basis = np.eye(d)
            self.families = tuple(
                build_spencer_maps(self.algebra, basis[i], degree_cap=self.truncation)
                for i in range(d)
            )
        else:
            self.families = ()
        self._cache: dict = {}

    # -- layout ---------------------------------------------------------

    def blocks(self, n: int) -> tuple[BlockInfo, ...]:
        """Blocks (k, j) with k + j = n, ascending in k."""
        if not 0 <= n <= self.top:
            raise DegreeOutOfRange(f"total degree {n} outside 0..{self.top}")
        key = ("blocks", n)
        if key not in self._cache:
            out = []
            offset = 0
            for k in range(max(0, n - self.truncation), min(self.mesh.dim, n) + 1):
                j = n - k
                info = BlockInfo(
                    base=k,
                    fiber=j,
                    offset=offset,
                    cells=self.mesh.counts[k],
                    sym=self.sym_dims[j],
                )
                out.append(info)
                offset += info.size
            self._cache[key] = tuple(out)
        return self._cache[key]

    def space_dim(self, n: int) -> int:
        return sum(b.size for b in self.blocks(n))

    def _weight(self, k: int) -> np.ndarray:
        if self.metric == "mixed":
            a = self.field.weight_on("constraint", k)
            b = self.field.weight_on("curvature", k)
            return (1.0 - self.alpha) * a + self.alpha * b
        return self.field.weight_on(_METRIC_WEIGHT[self.metric], k)

    def mass_diag(self, n: int) -> np.ndarray:
        """Diagonal of the degree-n mass matrix."""
        key = ("mass", n)
        if key not in self._cache:
            parts = [
                np.repeat(self._weight(b.base) * self.mesh.hodge[b.base], b.sym)
                for b in self.blocks(n)
            ]
            self._cache[key] = np.concatenate(parts)
        return self._cache[key]

    # -- operators ------------------------------------------------------

    def differential(self, n: int) -> sp.csr_matrix:
        """Total differential from degree n to degree n + 1."""
        if not 0 <= n < self.top:
            raise DegreeOutOfRange(f"no differential out of degree {n}")
        key = ("diff", n)
        if key in self._cache:
            return self._cache[key]
        sources = self.blocks(n)
        targets = self.blocks(n + 1)
        pos = {(b.base, b.fiber): i for i, b in enumerate(targets)}
        grid = [[None] * len(sources) for _ in targets]
        for s_idx, src in enumerate(sources):
            if src.base < self.mesh.dim:
                t_idx = pos.get((src.base + 1, src.fiber))
                if t_idx is not None:
                    grid[t_idx][s_idx] = sp.kron(
                        self.mesh.incidence[src.base], sp.eye(src.sym), format="csr"
                    )
            if src.fiber < self.truncation:
                t_idx = pos.get((src.base, src.fiber + 1))
                if t_idx is not None:
                    lam = self.field.lambda_on(src.base)
                    sign = -1.0 if src.base % 2 else 1.0
                    vert = None
                    for i, fam in enumerate(self.families):
                        piece = sp.kron(
                            sp.diags(sign * lam[:, i]),
                            sp.csr_matrix(fam.matrices[src.fiber]),
                            format="csr",
                        )
                        vert = piece if vert is None else vert + piece
                    grid[t_idx][s_idx] = vert
        out = sp.bmat(grid, format="csr")
        if out.shape != (self.space_dim(n + 1), self.space_dim(n)):
            raise ShapeMismatch("assembled differential has inconsistent shape")
        self._cache[key] = out
        return out

    def adjoint(self, n: int) -> sp.csr_matrix:
        """Metric adjoint of differential(n), mapping degree n + 1 to n."""
        key = ("adj", n)
        if key not in self._cache:
            d = self.differential(n)
            m_lo = self.mass_diag(n)
            m_hi = self.mass_diag(n + 1)
            self._cache[key] = (
                sp.diags(1.0 / m_lo) @ d.T @ sp.diags(m_hi)
            ).tocsr()
        return self._cache[key]

    def complex_residual(self) -> float:
        """Largest entry of any composite differential; zero means a complex."""
        worst = 0.0
        for n in range(self.top - 1):
            prod = (self.differential(n + 1) @ self.differential(n)).tocoo()
            if prod.nnz:
                worst = max(worst, float(np.abs(prod.data).max()))
        return worst

    def stiffness(self, n: int) -> sp.csr_matrix:
        """Symmetric form of the degree-n Laplacian: S = D^T M D both ways."""
        key = ("stiff", n)
        if key in self._cache:
            return self._cache[key]
        dim = self.space_dim(n)
        out = sp.csr_matrix((dim, dim))
        if n < self.top:
            d = self.differential(n)
            out = out + d.T @ sp.diags(self.mass_diag(n + 1)) @ d
        if n > 0:
            d = self.differential(n - 1)
            m = sp.diags(self.mass_diag(n))
            inv = sp.diags(1.0 / self.mass_diag(n - 1))
            out = out + m @ d @ inv @ d.T @ m
        out = ((out + out.T) * 0.5).tocsr()
        self._cache[key] = out
        return out

    def laplacian_apply(self, values: np.ndarray, n: int) -> np.ndarray:
        """Apply the degree-n Laplacian (mass-inverse times stiffness)."""
        return (self.stiffness(n) @ values) / self.mass_diag(n)

    def _whitened(self, n: int) -> sp.csr_matrix:
        root = np.sqrt(self.mass_diag(n))
        scale = sp.diags(1.0 / root)
        w = (scale @ self.stiffness(n) @ scale).tocsr()
        return ((w + w.T) * 0.5).tocsr()

    # -- spectra --------------------------------------------------------

    def eigendecomposition(self, n: int):
        """(eigenvalues, mass-orthonormal eigenvectors or None, lambda_max).

        Dense spaces get the full decomposition; above the cutoff only
        the lower spectrum is computed and the vector matrix covers just
        those modes.
        """
        key = ("eig", n)
        if key in self._cache:
            return self._cache[key]
        dim = self.space_dim(n)
        white = self._whitened(n)
        root = np.sqrt(self.mass_diag(n))
        if dim <= self.dense_cutoff:
            evals, evecs = np.linalg.eigh(white.toarray())
            vecs = evecs / root[:, None]
            lam_max = float(evals[-1]) if dim else 0.0
            full = True
        else:
            gersh = float(np.abs(white).sum(axis=1).max())
            k = min(max(32, 2 * 10), dim - 1)
            try:
                evals, evecs = eigsh(white, k=k, sigma=-1e-2, which="LM")
            except Exception as exc:  # pragma: no cover - solver internals
                raise EigensolverFailure(
                    f"sparse eigensolve failed at degree {n}: {exc}"
                ) from exc
            order = np.argsort(evals)
            evals = evals[order]
            vecs = evecs[:, order] / root[:, None]
            lam_max = gersh
            full = False
            tol = KERNEL_RTOL * max(1.0, lam_max)
            while np.all(evals < tol) and k < dim - 1:
                k = min(2 * k + 5, dim - 1)
                evals, evecs = eigsh(white, k=k, sigma=-1e-2, which="LM")
                order = np.argsort(evals)
                evals = evals[order]
                vecs = evecs[:, order] / root[:, None]
        result = (evals, vecs, lam_max, full)
        self._cache[key] = result
        return result

    def kernel_tol(self, n: int) -> float:
        evals, _, lam_max, _ = self.eigendecomposition(n)
        return KERNEL_RTOL * max(1.0, lam_max)

    def spectrum(self, n: int, count: int = 10) -> np.ndarray:
        """Smallest eigenvalues of the degree-n Laplacian, ascending."""
        evals, _, _, _ = self.eigendecomposition(n)
        return np.array(evals[: min(count, len(evals))])

    def harmonic_space(self, n: int) -> np.ndarray:
        """Mass-orthonormal basis (dim x h) of the numerical kernel."""
        evals, vecs, _, _ = self.eigendecomposition(n)
        mask = evals < self.kernel_tol(n)
        return vecs[:, mask]

    def harmonic_dims(self) -> tuple[int, ...]:
        return tuple(
            self.harmonic_space(n).shape[1] for n in range(self.top + 1)
        )

    # -- solves ---------------------------------------------------------

    def _mass_inner(self, n: int, u: np.ndarray, v: np.ndarray) -> float:
        return float(u @ (self.mass_diag(n) * v))

    def harmonic_project(self, values: np.ndarray, n: int) -> np.ndarray:
        basis = self.harmonic_space(n)
        if basis.shape[1] == 0:
            return np.zeros_like(values)
        coeffs = basis.T @ (self.mass_diag(n) * values)
        return basis @ coeffs

    def green_apply(self, values: np.ndarray, n: int) -> np.ndarray:
        """Solve Laplacian w = values - harmonic part; w has no kernel piece."""
        evals, vecs, _, full = self.eigendecomposition(n)
        tol = self.kernel_tol(n)
        if full:
            weighted = vecs.T @ (self.mass_diag(n) * values)
            keep = evals >= tol
            coeffs = np.zeros_like(weighted)
            coeffs[keep] = weighted[keep] / evals[keep]
            return vecs @ coeffs
        root = np.sqrt(self.mass_diag(n))
        rhs = values - self.harmonic_project(values, n)
        white_rhs = root * rhs
        sol, info = minres(self._whitened(n), white_rhs, rtol=1e-12, maxiter=20000)
        if info != 0:
            raise SolverFailure(f"green solve did not converge at degree {n}")
        w = sol / root
        return w - self.harmonic_project(w, n)

    def hodge_decompose(self, values: np.ndarray, n: int) -> DecompositionResult:
        """Split a cochain into harmonic, exact, and coexact parts."""
        values = np.asarray(values, dtype=float)
        if values.shape != (self.space_dim(n),):
            raise ShapeMismatch(
                f"cochain needs shape ({self.space_dim(n)},), got {values.shape}"
            )
        harm = self.harmonic_project(values, n)
        green = self.green_apply(values, n)
        if n > 0:
            exact = self.differential(n - 1) @ (self.adjoint(n - 1) @ green)
        else:
            exact = np.zeros_like(values)
        if n < self.top:
            coexact = self.adjoint(n) @ (self.differential(n) @ green)
        else:
            coexact = np.zeros_like(values)
        gap = values - harm - exact - coexact
        denom = np.sqrt(self._mass_inner(n, values, values))
        residual = float(np.sqrt(self._mass_inner(n, gap, gap)) / max(denom, 1e-300))
        return DecompositionResult(harm, exact, coexact, residual)

    def self_adjoint_defect(self, n: int, samples: int = 5, seed: int = 0) -> float:
        """Largest relative pairing asymmetry of the Laplacian on samples."""
        rng = np.random.default_rng(seed + 97 * n)
        dim = self.space_dim(n)
        worst = 0.0
        for _ in range(samples):
            u = rng.standard_normal(dim)
            v = rng.standard_normal(dim)
            left = self._mass_inner(n, self.laplacian_apply(u, n), v)
            right = self._mass_inner(n, u, self.laplacian_apply(v, n))
            scale = max(1.0, abs(left), abs(right))
            worst = max(worst, abs(left - right) / scale)
        return worst


# -- comparison and diagnostics ----------------------------------------


def metric_equivalence_constants(field: PairField) -> tuple[float, float]:
    """Constants (c1, c2) with c1 |u|_B^2 <= |u|_A^2 <= c2 |u|_B^2.

    Extrema are taken over every cell-degree grid, so the sandwich holds
    for cochains of every degree simultaneously. For constant weights
    the two constants coincide with the pointwise ratio.
    """
    inf_a = np.inf
    sup_a = -np.inf
    inf_b = np.inf
    sup_b = -np.inf
    for k in range(field.mesh.dim + 1):
        wa = field.weight_on("constraint", k)
        wb = field.weight_on("curvature", k)
        inf_a = min(inf_a, float(wa.min()))
        sup_a = max(sup_a, float(wa.max()))
        inf_b = min(inf_b, float(wb.min()))
        sup_b = max(sup_b, float(wb.max()))
    return inf_a / sup_b, sup_a / inf_b


def elliptic_constant_estimate(assembly: SpencerAssembly) -> float:
    """Heuristic coercivity proxy: weight infimum times gap times spectrum.

    The spectral factor comes from unweighted reference operators (the
    base Laplacian on functions, and the constraint-operator normal form
    at the mean covector when fiber degrees are present), so comparing
    two assemblies over the same field isolates the weight ratio.
    """
    field = assembly.field
    mesh = assembly.mesh
    inf_w = min(
        float(assembly._weight(k).min()) for k in range(mesh.dim + 1)
    )
    verts = mesh.barycenters(0)
    gap_min = min(geometric_gap(field, verts[i]) for i in range(verts.shape[0]))
    d0 = mesh.incidence[0]
    stiff = (d0.T @ sp.diags(mesh.hodge[1]) @ d0).toarray()
    mass = mesh.hodge[0]
    white = stiff / np.sqrt(np.outer(mass, mass))
    evals = np.linalg.eigvalsh(white)
    spectral = float(evals[evals > 1e-10 * max(1.0, evals[-1])].min())
    if assembly.truncation >= 1:
        lam_bar = field.lambda_on(0).mean(axis=0)
        gen = sum(
            lam_bar[i] * fam.matrices[1]
            for i, fam in enumerate(assembly.families)
            if len(fam.matrices) > 1
        )
        if not np.isscalar(gen):
            gram = np.asarray(gen).T @ np.asarray(gen)
            gvals = np.linalg.eigvalsh(gram)
            positive = gvals[gvals > 1e-10 * max(1.0, gvals[-1])]
            if positive.size:
                spectral = min(spectral, float(positive.min()))
    return inf_w * gap_min * spectral


# -- reporting pipeline -------------------------------------------------


@dataclass(frozen=True)
class DegreeSpectrum:
    degree: int
    dim: int
    harmonic_dim: int
    kernel_tol: float
    lambda_max: float
    eigenvalues: tuple


@dataclass(frozen=True)
class MetricReport:
    metric: str
    alpha: float
    degrees: tuple
    harmonic_dims: tuple
    self_adjoint_defect: float
    min_eigenvalue: float
    elapsed: float


@dataclass(frozen=True)
class PipelineReport:
    algebra: str
    resolutions: tuple
    sides: tuple
    truncation: int
    betti: tuple
    cartan_max: float
    cartan_global: float
    metrics: dict
    equivalence: tuple
    elapsed: float

    def as_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "resolutions": list(self.resolutions),
            "sides": list(self.sides),
            "truncation": self.truncation,
            "betti": list(self.betti),
            "cartan_max": self.cartan_max,
            "cartan_global": self.cartan_global,
            "equivalence": list(self.equivalence) if self.equivalence else None,
            "elapsed": self.elapsed,
            "metrics": {
                name: {
                    "metric": rep.metric,
                    "alpha": rep.alpha,
                    "harmonic_dims": list(rep.harmonic_dims),
                    "self_adjoint_defect": rep.self_adjoint_defect,
                    "min_eigenvalue": rep.min_eigenvalue,
                    "elapsed": rep.elapsed,
                    "degrees": [
                        {
                            "degree": d.degree,
                            "dim": d.dim,
                            "harmonic_dim": d.harmonic_dim,
                            "kernel_tol": d.kernel_tol,
                            "lambda_max": d.lambda_max,
                            "eigenvalues": list(d.eigenvalues),
                        }
                        for d in rep.degrees
                    ],
                }
                for name, rep in self.metrics.items()
            },
        }


def _thread_workers() -> int:
    raw = os.environ.get("SPENCER_HODGE_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def analyze_metric(
    assembly: SpencerAssembly, n_eigs: int = 10, seed: int = 0
) -> MetricReport:
    """Solve every degree, extract harmonics, and enforce operator sanity.

    Raises PipelineError if the assembled Laplacians fail self-adjointness,
    positivity, or eigenvalue ordering at the pinned tolerances.
    """
    start = time.perf_counter()
    degrees = range(assembly.top + 1)
    workers = _thread_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(assembly.eigendecomposition, degrees))
    specs = []
    defect = 0.0
    min_eig = np.inf
    for n in degrees:
        evals, _, lam_max, _ = assembly.eigendecomposition(n)
        if np.any(np.diff(evals) < 0.0):
            raise PipelineError(5, f"eigenvalues out of order at degree {n}")
        low = float(evals[0]) if len(evals) else 0.0
        if low < -1e-10 * max(1.0, lam_max):
            raise PipelineError(
                5, f"negative eigenvalue {low:.3e} at degree {n}"
            )
        min_eig = min(min_eig, low)
        d_defect = assembly.self_adjoint_defect(n, seed=seed)
        if d_defect >= 1e-10:
            raise PipelineError(
                5, f"self-adjointness defect {d_defect:.3e} at degree {n}"
            )
        defect = max(defect, d_defect)
        harmonic = assembly.harmonic_space(n).shape[1]
        specs.append(
            DegreeSpectrum(
                degree=n,
                dim=assembly.space_dim(n),
                harmonic_dim=harmonic,
                kernel_tol=assembly.kernel_tol(n),
                lambda_max=lam_max,
                eigenvalues=tuple(float(v) for v in evals[:n_eigs]),
            )
        )
    return MetricReport(
        metric=assembly.metric,
        alpha=assembly.alpha,
        degrees=tuple(specs),
        harmonic_dims=tuple(s.harmonic_dim for s in specs),
        self_adjoint_defect=defect,
        min_eigenvalue=float(min_eig),
        elapsed=time.perf_counter() - start,
    )


def run_pipeline(
    algebra,
    resolutions,
    lambda_spec,
    omega_spec=None,
    sides=None,
    truncation: int = 0,
    metrics=("A", "B"),
    alpha: float = 0.5,
    n_eigs: int = 10,
    dense_cutoff: int = DENSE_CUTOFF,
    seed: int = 0,
) -> PipelineReport:
    """Full analysis: mesh, fields, assemblies, spectra, harmonics, report.

    The steps mirror the solution algorithm: (1) geometry, (2) field
    sampling with the degeneracy gate, (3) operator assembly, (4)
    spectral solves, (5) harmonic extraction with operator checks, (6)
    report packaging. Failures surface as PipelineError with the step
    recorded, except typed domain errors from the inputs themselves.
    """
    t0 = time.perf_counter()

    def guard(step, fn):
        try:
            return fn()
        except PipelineError:
            raise
        except Exception as exc:
            raise PipelineError(step, str(exc)) from exc

    alg = guard(
        1, lambda: algebra if isinstance(algebra, LieAlgebra) else builtin_algebra(algebra)
    )
    mesh = guard(1, lambda: build_torus_mesh(resolutions, sides))
    field = guard(2, lambda: sample_fields(mesh, alg, lambda_spec, omega_spec))
    cartan_point, cartan_total = guard(2, lambda: cartan_residual(field))

    assemblies = {}
    for kind in metrics:
        name = canonical_metric(kind)
        assemblies[name] = guard(
            3,
            lambda k=name: SpencerAssembly(
                field, truncation=truncation, metric=k, alpha=alpha,
                dense_cutoff=dense_cutoff,
            ),
        )
    reports = {}
    for name, assembly in assemblies.items():
        reports[name] = guard(
            4, lambda a=assembly: analyze_metric(a, n_eigs=n_eigs, seed=seed)
        )
    equivalence = ()
    if "A" in assemblies and "B" in assemblies:
        equivalence = guard(6, lambda: metric_equivalence_constants(field))
    return PipelineReport(
        algebra=alg.name,
        resolutions=tuple(mesh.resolutions),
        sides=tuple(float(s) for s in mesh.sides),
        truncation=truncation,
        betti=betti_reference(mesh),
        cartan_max=float(np.max(cartan_point)),
        cartan_global=cartan_total,
        metrics=reports,
        equivalence=tuple(equivalence),
        elapsed=time.perf_counter() - t0,
    )


def eigenvalue_convergence(
    resolutions,
    algebra="so3",
    lambda_spec=None,
    degree: int = 0,
    index: int = 1,
    reference: float = 1.0,
    metric: str = "plain",
) -> dict:
    """Track one eigenvalue across mesh resolutions against a reference.

    Returns per-resolution eigenvalues, errors, observed orders between
    consecutive refinements, and the harmonic dimensions (which should
    not move under refinement).
    """
    if lambda_spec is None:
        lambda_spec = {"name": "constant", "coeffs": [0.0, 0.0, 1.0]}
    rows = []
    dims = []
    for res in resolutions:
        mesh = build_torus_mesh(res if isinstance(res, (list, tuple)) else [res])
        alg = algebra if isinstance(algebra, LieAlgebra) else builtin_algebra(algebra)
        field = sample_fields(mesh, alg, lambda_spec)
        assembly = SpencerAssembly(field, truncation=0, metric=metric)
        evals = assembly.spectrum(degree, count=index + 1)
        value = float(evals[index])
        rows.append(
            {
                "resolution": list(mesh.resolutions),
                "spacing": float(max(mesh.spacings)),
                "eigenvalue": value,
                "error": abs(value - reference),
            }
        )
        dims.append(assembly.harmonic_dims())
    orders = []
    for a, b in zip(rows, rows[1:]):
        if b["error"] == 0.0 or a["error"] == 0.0:
            orders.append(float("inf"))
        else:
            orders.append(
                float(
                    np.log(a["error"] / b["error"])
                    / np.log(a["spacing"] / b["spacing"])
                )
            )
    return {
        "degree": degree,
        "index": index,
        "reference": reference,
        "rows": rows,
        "orders": orders,
        "harmonic_dims": [list(d) for d in dims],
    }
