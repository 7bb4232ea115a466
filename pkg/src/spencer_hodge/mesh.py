"""Periodic structured grids on flat tori with integer incidence matrices.

Cells are indexed in C order over the grid: on a two-axis torus with
resolutions (N1, N2) the flat index of grid position (i1, i2) is
i1 * N2 + i2. Degree-1 cells come in axis blocks, all axis-0 edges first.
Cochain values represent integrals over cells, so a smooth k-form is
sampled into a cochain by midpoint quadrature: value at the barycenter
times the primal cell volume.

Diagonal mass matrices carry the discrete Hodge ratio of each cell
(dual volume over primal volume) times a weight sampled at the cell
barycenter; with weight 1 on a square torus of side L and resolution N,
every vertex entry is (L / N)^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import (
    DegreeOutOfRange,
    DimensionUnsupported,
    NonPositiveWeight,
    ResolutionTooSmall,
    ShapeMismatch,
)

TWO_PI = 2.0 * np.pi
MIN_RESOLUTION = 3


@dataclass(frozen=True)
class CellBlock:
    """Contiguous run of same-degree cells whose barycenters fill the grid.

    Attributes:
        offset: index of the block's first cell within its degree.
        axis: grid axis the cells extend along, or -1 for point-like
            and top-dimensional cells.
        points: barycenter coordinates, shape (prod(res), dim), C order.
    """

    offset: int
    axis: int
    points: np.ndarray

    @property
    def size(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class Mesh:
    """Flat torus discretized by a periodic structured grid.

    Attributes:
        dim: base dimension, 1 or 2.
        resolutions: cells per axis.
        sides: period lengths per axis, default 2*pi each.
        spacings: sides / resolutions.
        counts: number of cells per degree 0 .. dim.
        incidence: integer coboundary matrices, incidence[k] maps
            degree-k cochains to degree-(k+1) cochains.
        hodge: per degree, the diagonal of dual/primal volume ratios.
        blocks: per degree, the list of CellBlocks covering that degree.
    """

    dim: int
    resolutions: tuple[int, ...]
    sides: tuple[float, ...]
    spacings: tuple[float, ...]
    counts: tuple[int, ...]
    incidence: tuple[sp.csr_matrix, ...]
    hodge: tuple[np.ndarray, ...]
    blocks: tuple[tuple[CellBlock, ...], ...]

    def check_degree(self, k: int) -> None:
        if not 0 <= k <= self.dim:
            raise DegreeOutOfRange(
                f"degree {k} outside 0..{self.dim} for a {self.dim}-torus"
            )

    def barycenters(self, k: int) -> np.ndarray:
        """Barycenter coordinates of every degree-k cell, shape (counts[k], dim)."""
        self.check_degree(k)
        return np.concatenate([b.points for b in self.blocks[k]], axis=0)


def _grid_points(res, spacings, shifts) -> np.ndarray:
    axes = [
        (np.arange(n) + s) * h
        for n, h, s in zip(res, spacings, shifts)
    ]
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def build_torus_mesh(resolutions, sides=None) -> Mesh:
    """Build a one- or two-axis periodic grid.

    Args:
        resolutions: sequence of 1 or 2 positive cell counts.
        sides: matching period lengths; defaults to 2*pi per axis.

    Raises:
        ResolutionTooSmall: any resolution below 3.
        DimensionUnsupported: base dimension other than 1 or 2.
    """
    res = tuple(int(n) for n in resolutions)
    dim = len(res)
    if dim not in (1, 2):
        raise DimensionUnsupported(f"base dimension {dim} not supported")
    if any(n < MIN_RESOLUTION for n in res):
        raise ResolutionTooSmall(
            f"resolutions {res} below the minimum of {MIN_RESOLUTION}"
        )
    if sides is None:
        sides = tuple(TWO_PI for _ in res)
    else:
        sides = tuple(float(s) for s in sides)
        if len(sides) != dim or any(s <= 0 for s in sides):
            raise DimensionUnsupported(f"bad side lengths {sides}")
    spacings = tuple(s / n for s, n in zip(sides, res))

    if dim == 1:
        return _build_circle(res, sides, spacings)
    return _build_torus2(res, sides, spacings)


def _build_circle(res, sides, spacings) -> Mesh:
    (n,) = res
    (h,) = spacings
    idx = np.arange(n)
    nxt = np.roll(idx, -1)
    d0 = sp.csr_matrix(
        (
            np.concatenate([np.ones(n), -np.ones(n)]),
            (np.concatenate([idx, idx]), np.concatenate([nxt, idx])),
        ),
        shape=(n, n),
    )
    verts = CellBlock(0, -1, _grid_points(res, spacings, (0.0,)))
    edges = CellBlock(0, 0, _grid_points(res, spacings, (0.5,)))
    return Mesh(
        dim=1,
        resolutions=res,
        sides=sides,
        spacings=spacings,
        counts=(n, n),
        incidence=(d0,),
        hodge=(np.full(n, h), np.full(n, 1.0 / h)),
        blocks=((verts,), (edges,)),
    )


def _build_torus2(res, sides, spacings) -> Mesh:
    n1, n2 = res
    h1, h2 = spacings
    nv = n1 * n2
    idx = np.arange(nv).reshape(n1, n2)
    up1 = np.roll(idx, -1, axis=0).ravel()   # (i1 + 1, i2)
    up2 = np.roll(idx, -1, axis=1).ravel()   # (i1, i2 + 1)
    flat = idx.ravel()

    rows = np.concatenate([flat, flat, nv + flat, nv + flat])
    cols = np.concatenate([up1, flat, up2, flat])
    vals = np.concatenate([np.ones(nv), -np.ones(nv), np.ones(nv), -np.ones(nv)])
    d0 = sp.csr_matrix((vals, (rows, cols)), shape=(2 * nv, nv))

    # face (i1, i2): +a0(i1, i2) +a1(i1+1, i2) -a0(i1, i2+1) -a1(i1, i2)
    rows = np.concatenate([flat] * 4)
    cols = np.concatenate([flat, nv + up1, up2, nv + flat])
    vals = np.concatenate([np.ones(nv), np.ones(nv), -np.ones(nv), -np.ones(nv)])
    d1 = sp.csr_matrix((vals, (rows, cols)), shape=(nv, 2 * nv))

    verts = CellBlock(0, -1, _grid_points(res, spacings, (0.0, 0.0)))
    e0 = CellBlock(0, 0, _grid_points(res, spacings, (0.5, 0.0)))
    e1 = CellBlock(nv, 1, _grid_points(res, spacings, (0.0, 0.5)))
    faces = CellBlock(0, -1, _grid_points(res, spacings, (0.5, 0.5)))

    hodge1 = np.concatenate([np.full(nv, h2 / h1), np.full(nv, h1 / h2)])
    return Mesh(
        dim=2,
        resolutions=res,
        sides=sides,
        spacings=spacings,
        counts=(nv, 2 * nv, nv),
        incidence=(d0, d1),
        hodge=(np.full(nv, h1 * h2), hodge1, np.full(nv, 1.0 / (h1 * h2))),
        blocks=((verts,), (e0, e1), (faces,)),
    )


@dataclass(frozen=True)
class Cochain:
    """Real-valued cochain of fixed degree on a mesh."""

    mesh: Mesh
    degree: int
    values: np.ndarray

    def __post_init__(self):
        self.mesh.check_degree(self.degree)
        expected = self.mesh.counts[self.degree]
        if self.values.shape != (expected,):
            raise ShapeMismatch(
                f"degree-{self.degree} cochain needs {expected} values, "
                f"got shape {self.values.shape}"
            )


def exterior_derivative(mesh: Mesh, k: int, values) -> np.ndarray:
    """Coboundary of a degree-k cochain; exact integer stencil.

    Raises:
        DegreeOutOfRange: k is not a codegree with a derivative (k >= dim).
        ShapeMismatch: wrong number of values.
    """
    if not 0 <= k < mesh.dim:
        raise DegreeOutOfRange(
            f"no derivative from degree {k} on a {mesh.dim}-torus"
        )
    values = np.asarray(values, dtype=float)
    if values.shape != (mesh.counts[k],):
        raise ShapeMismatch(
            f"degree-{k} cochain needs {mesh.counts[k]} values, got {values.shape}"
        )
    return mesh.incidence[k] @ values


@dataclass(frozen=True)
class MassMatrix:
    """Diagonal weighted mass matrix for one cochain degree."""

    degree: int
    diag: np.ndarray

    def inner(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(u @ (self.diag * v))

    def matrix(self) -> sp.dia_matrix:
        return sp.diags(self.diag)


def _weight_values(mesh: Mesh, k: int, weight) -> np.ndarray:
    if callable(weight):
        vals = np.asarray(weight(mesh.barycenters(k)), dtype=float)
    elif np.isscalar(weight):
        vals = np.full(mesh.counts[k], float(weight))
    else:
        vals = np.asarray(weight, dtype=float)
    if vals.shape != (mesh.counts[k],):
        raise ShapeMismatch(
            f"weight for degree {k} must give {mesh.counts[k]} values, "
            f"got shape {vals.shape}"
        )
    return vals


def mass_matrix(mesh: Mesh, k: int, weight=1.0) -> MassMatrix:
    """Lumped mass matrix with a positive weight sampled at barycenters.

    Args:
        mesh: the discretized torus.
        k: cochain degree.
        weight: callable on barycenter coordinates, scalar, or per-cell
            array; must be strictly positive.

    Raises:
        NonPositiveWeight: some sampled weight is <= 0.
    """
    mesh.check_degree(k)
    vals = _weight_values(mesh, k, weight)
    if vals.min() <= 0.0:
        raise NonPositiveWeight(
            f"weight reaches {vals.min():.3e} at a degree-{k} barycenter"
        )
    return MassMatrix(degree=k, diag=vals * mesh.hodge[k])


def betti_reference(mesh: Mesh) -> tuple[int, ...]:
    """Unweighted harmonic dimensions of the underlying torus.

    These serve as ground truth for degree-wise kernel counts: positive
    weights rescale the mass inner products but never change the kernel
    dimensions of the assembled Laplacians.
    """
    return (1, 1) if mesh.dim == 1 else (1, 2, 1)
