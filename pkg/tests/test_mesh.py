"""Periodic grid complexes: incidence, masses, and stencil spectra."""

import numpy as np
import pytest
import scipy.linalg

from spencer_hodge.errors import (
    DegreeOutOfRange,
    DimensionUnsupported,
    NonPositiveWeight,
    ResolutionTooSmall,
    ShapeMismatch,
)
from spencer_hodge.mesh import (
    Cochain,
    betti_reference,
    build_torus_mesh,
    exterior_derivative,
    mass_matrix,
)


def test_circle_counts_and_hodge():
    mesh = build_torus_mesh([8])
    h = 2.0 * np.pi / 8
    assert mesh.counts == (8, 8)
    assert np.allclose(mesh.hodge[0], h)
    assert np.allclose(mesh.hodge[1], 1.0 / h)


def test_torus_counts():
    mesh = build_torus_mesh([4, 6])
    assert mesh.counts == (24, 48, 24)
    assert mesh.dim == 2
    assert mesh.spacings == (2.0 * np.pi / 4, 2.0 * np.pi / 6)


def test_incidence_entries_are_signs():
    mesh = build_torus_mesh([4, 4])
    for d in mesh.incidence:
        assert set(np.unique(d.toarray())) <= {-1.0, 0.0, 1.0}


def test_composite_boundary_vanishes_exactly():
    for res in ([5, 4], [3, 3], [4, 8]):
        mesh = build_torus_mesh(res)
        prod = (mesh.incidence[1] @ mesh.incidence[0]).toarray()
        assert np.array_equal(prod, np.zeros_like(prod))


def test_circle_forward_difference():
    mesh = build_torus_mesh([8])
    u = np.sin(2.0 * np.pi * np.arange(8) / 8)
    du = exterior_derivative(mesh, 0, u)
    assert np.array_equal(du, np.roll(u, -1) - u)


def test_torus_derivative_stencil():
    mesh = build_torus_mesh([4, 5])
    n1, n2 = 4, 5
    rng = np.random.default_rng(2)
    u = rng.standard_normal(n1 * n2)
    du = exterior_derivative(mesh, 0, u)
    grid = u.reshape(n1, n2)
    assert np.allclose(du[: n1 * n2].reshape(n1, n2), np.roll(grid, -1, 0) - grid)
    assert np.allclose(du[n1 * n2 :].reshape(n1, n2), np.roll(grid, -1, 1) - grid)


def test_face_boundary_orientation():
    # a constant axis-0 edge cochain has zero curl, and a shear in the
    # axis-1 direction measures the jump across the face
    mesh = build_torus_mesh([4, 4])
    w = np.zeros(32)
    grid = np.arange(4)
    shear = np.zeros((4, 4))
    shear[:, :] = np.sin(2 * np.pi * grid / 4)[None, :]  # varies along axis 1
    w[:16] = shear.ravel()
    curl = exterior_derivative(mesh, 1, w)
    expected = -(np.roll(shear, -1, 1) - shear).ravel()
    assert np.allclose(curl, expected)


def test_barycenter_layout():
    mesh = build_torus_mesh([4, 4], sides=[4.0, 8.0])
    verts = mesh.barycenters(0)
    assert np.allclose(verts[0], [0.0, 0.0])
    assert np.allclose(verts[1], [0.0, 2.0])      # axis 1 is fastest
    assert np.allclose(verts[4], [1.0, 0.0])
    edges = mesh.barycenters(1)
    assert np.allclose(edges[0], [0.5, 0.0])      # axis-0 edge midpoint
    assert np.allclose(edges[16], [0.0, 1.0])     # axis-1 block starts
    faces = mesh.barycenters(2)
    assert np.allclose(faces[0], [0.5, 1.0])


def test_hodge_ratios_anisotropic():
    mesh = build_torus_mesh([4, 8], sides=[4.0, 4.0])
    h1, h2 = 1.0, 0.5
    nv = 32
    assert np.allclose(mesh.hodge[0], h1 * h2)
    assert np.allclose(mesh.hodge[1][:nv], h2 / h1)
    assert np.allclose(mesh.hodge[1][nv:], h1 / h2)
    assert np.allclose(mesh.hodge[2], 1.0 / (h1 * h2))


def test_mass_matrix_uniform_example():
    mesh = build_torus_mesh([4, 4])
    m0 = mass_matrix(mesh, 0, 1.0)
    assert np.allclose(m0.diag, (2.0 * np.pi / 4) ** 2)


def test_mass_matrix_callable_and_array_agree():
    mesh = build_torus_mesh([6, 4])

    def w(points):
        return 1.0 + 0.5 * np.sin(points[:, 0]) * np.cos(points[:, 1])

    for k in range(3):
        by_callable = mass_matrix(mesh, k, w)
        by_array = mass_matrix(mesh, k, w(mesh.barycenters(k)))
        assert np.allclose(by_callable.diag, by_array.diag)
        assert by_callable.diag.min() > 0.0


def test_mass_matrix_rejects_nonpositive_weight():
    mesh = build_torus_mesh([4, 4])
    with pytest.raises(NonPositiveWeight):
        mass_matrix(mesh, 0, lambda p: np.sin(p[:, 0]))
    with pytest.raises(NonPositiveWeight):
        mass_matrix(mesh, 1, 0.0)


def test_mass_inner_product():
    mesh = build_torus_mesh([5])
    m = mass_matrix(mesh, 0, 2.0)
    u = np.ones(5)
    # total weighted volume: 2 * (2 pi)
    assert abs(m.inner(u, u) - 4.0 * np.pi) < 1e-12


def test_resolution_and_dimension_guards():
    with pytest.raises(ResolutionTooSmall):
        build_torus_mesh([2])
    with pytest.raises(ResolutionTooSmall):
        build_torus_mesh([8, 2])
    with pytest.raises(DimensionUnsupported):
        build_torus_mesh([4, 4, 4])
    with pytest.raises(DimensionUnsupported):
        build_torus_mesh([4, 4], sides=[1.0])


def test_degree_guards():
    mesh1 = build_torus_mesh([8])
    with pytest.raises(DegreeOutOfRange):
        exterior_derivative(mesh1, 1, np.zeros(8))
    with pytest.raises(DegreeOutOfRange):
        mass_matrix(mesh1, 2, 1.0)
    with pytest.raises(ShapeMismatch):
        exterior_derivative(mesh1, 0, np.zeros(7))


def test_cochain_shape_guard():
    mesh = build_torus_mesh([4, 4])
    with pytest.raises(ShapeMismatch):
        Cochain(mesh, 1, np.zeros(16))
    c = Cochain(mesh, 1, np.zeros(32))
    assert c.degree == 1


def test_betti_reference():
    assert betti_reference(build_torus_mesh([8])) == (1, 1)
    assert betti_reference(build_torus_mesh([4, 4])) == (1, 2, 1)


@pytest.mark.parametrize("n", [8, 16])
def test_circle_laplacian_matches_stencil_eigenvalue(n):
    # generalized problem (D0^T M1 D0) u = eig * M0 u on the circle has
    # eigenvalues (2 - 2 cos(2 pi k / n)) / h^2
    mesh = build_torus_mesh([n])
    d0 = mesh.incidence[0].toarray().astype(float)
    m0 = mass_matrix(mesh, 0, 1.0).diag
    m1 = mass_matrix(mesh, 1, 1.0).diag
    stiff = d0.T @ np.diag(m1) @ d0
    eigs = scipy.linalg.eigh(stiff, np.diag(m0), eigvals_only=True)
    h = 2.0 * np.pi / n
    expected = np.sort((2.0 - 2.0 * np.cos(2.0 * np.pi * np.arange(n) / n)) / h**2)
    assert np.allclose(np.sort(eigs), expected, atol=1e-10)
    # first nonzero eigenvalue approaches 1 from below at second order
    lam1 = np.sort(eigs)[1]
    assert abs(lam1 - (2.0 - 2.0 * np.cos(h)) / h**2) < 1e-12
    assert abs(lam1 - 1.0) < h**2
