"""Pair fields: weights, curvature, compatibility residual, fitting."""

import numpy as np
import pytest
from scipy.linalg import expm

from spencer_hodge import so3, su2
from spencer_hodge.errors import (
    DegenerateLambda,
    DimensionUnsupported,
    NonConvergence,
    ShapeMismatch,
    ZeroCovector,
)
from spencer_hodge.fields import (
    PairField,
    cartan_residual,
    curvature,
    fit_lambda,
    geometric_gap,
    sample_fields,
    transversality_margin,
    weight_constraint,
    weight_constraint_enhanced,
    weight_curvature,
)
from spencer_hodge.mesh import build_torus_mesh

E3_STAR = {"name": "constant", "coeffs": [0.0, 0.0, 1.0]}


def test_constraint_weight_constant_field():
    # |e3*|^2 = 1/2 for the rotation algebra, so w = 1.5 everywhere
    mesh = build_torus_mesh([8, 8])
    field = sample_fields(mesh, so3(), E3_STAR)
    for k in range(3):
        assert np.allclose(field.weight_on("constraint", k), 1.5, atol=1e-14)
    # quadratic in the covector scale
    doubled = sample_fields(
        mesh, so3(), {"name": "constant", "coeffs": [0.0, 0.0, 2.0]}
    )
    assert np.allclose(weight_constraint(doubled), 3.0, atol=1e-14)


def test_constraint_weight_vortex_range():
    # amplitude (1 + sin(x)/2) in the e1* direction: |c e1*|^2 = c^2 / 2
    mesh = build_torus_mesh([16, 16])
    field = sample_fields(
        mesh,
        so3(),
        {"name": "vortex-sin", "direction": [1.0, 0.0, 0.0], "offset": 1.0,
         "amp": 0.5, "axis": 0},
    )
    w = weight_constraint(field)
    assert abs(w.min() - (1.0 + 0.25 / 2.0)) < 1e-12
    assert abs(w.max() - (1.0 + 2.25 / 2.0)) < 1e-12


def test_enhanced_weight_matches_derivative_oracle():
    # lam = (1 + sin(x)/2) e3*, flat connection: the enhancement is
    # (cos(x)/2)^2 * |e3*|^2 up to the second-order stencil factor
    n = 64
    mesh = build_torus_mesh([n])
    field = sample_fields(
        mesh,
        so3(),
        {"name": "vortex-sin", "direction": [0.0, 0.0, 1.0], "offset": 1.0,
         "amp": 0.5, "axis": 0},
    )
    x = mesh.barycenters(0)[:, 0]
    h = mesh.spacings[0]
    stencil = np.sin(h) / h
    expected = (0.5 * np.cos(x) * stencil) ** 2 * 0.5
    gap = weight_constraint_enhanced(field) - weight_constraint(field)
    assert np.allclose(gap, expected, atol=1e-12)
    assert np.abs(gap - (0.5 * np.cos(x)) ** 2 * 0.5).max() < h**2


def test_enhanced_reduces_to_constraint_for_covariantly_constant():
    mesh = build_torus_mesh([8])
    field = sample_fields(
        mesh, so3(), E3_STAR,
        {"name": "constant", "coeffs": [[0.0, 0.0, 4.0]]},
    )
    assert np.allclose(
        weight_constraint_enhanced(field), weight_constraint(field), atol=1e-14
    )


def test_curvature_constant_connection():
    # omega = (e1, e2): all derivatives vanish and Omega = [e1, e2]
    mesh = build_torus_mesh([8, 8])
    field = sample_fields(
        mesh, so3(), E3_STAR,
        {"name": "constant", "coeffs": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]},
    )
    curv = curvature(field)
    assert np.allclose(curv, [0.0, 0.0, 1.0], atol=1e-14)
    # kappa = 1 + <e3, e3> = 1 + 2
    assert np.allclose(weight_curvature(field), 3.0, atol=1e-13)

    su_field = sample_fields(
        mesh, su2(), E3_STAR,
        {"name": "constant", "coeffs": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]},
    )
    # [e1, e2] = 2 e3 and <2 e3, 2 e3> = 4 * 8
    assert np.allclose(curvature(su_field), [0.0, 0.0, 2.0], atol=1e-14)
    assert np.allclose(weight_curvature(su_field), 33.0, atol=1e-12)


def test_curvature_shear_matches_derivative_oracle():
    # omega_1 = sin(x2) e3, omega_2 = 0: Omega = -cos(x2) e3 + O(h^2)
    n = 32
    mesh = build_torus_mesh([n, n])
    field = sample_fields(
        mesh, so3(), E3_STAR,
        {"name": "shear-sin", "component": 0, "axis": 1,
         "direction": [0.0, 0.0, 1.0], "offset": 0.0, "amp": 1.0},
    )
    curv = curvature(field)
    y = mesh.barycenters(2)[:, 1]
    h = mesh.spacings[1]
    assert np.allclose(curv[:, 2], -np.cos(y) * np.sin(h) / h, atol=1e-12)
    assert np.allclose(curv[:, :2], 0.0, atol=1e-14)
    assert np.abs(curv[:, 2] + np.cos(y)).max() < h**2


def test_flat_connection_gives_unit_curvature_weight():
    mesh = build_torus_mesh([8, 8])
    field = sample_fields(mesh, so3(), E3_STAR)
    assert np.allclose(weight_curvature(field), 1.0, atol=1e-14)
    mesh1 = build_torus_mesh([8])
    field1 = sample_fields(mesh1, so3(), E3_STAR)
    assert np.allclose(field1.weight_on("curvature", 0), 1.0)
    with pytest.raises(DimensionUnsupported):
        curvature(field1)


def test_cartan_residual_zero_for_stabilizing_connection():
    # ad*_{e3} e3* = 0, so a connection along e3 keeps e3* compatible
    mesh = build_torus_mesh([8])
    field = sample_fields(
        mesh, so3(), E3_STAR, {"name": "constant", "coeffs": [[0.0, 0.0, 2.5]]}
    )
    pointwise, total = cartan_residual(field)
    assert np.abs(pointwise).max() < 1e-14
    assert total < 1e-14


def test_cartan_residual_pinned_value():
    # ad*_{e1} e3* = -e2*, so each vertex contributes |e2*| = sqrt(1/2)
    # and the volume-weighted aggregate over the circle is sqrt(pi)
    mesh = build_torus_mesh([8])
    field = sample_fields(
        mesh, so3(), E3_STAR, {"name": "constant", "coeffs": [[1.0, 0.0, 0.0]]}
    )
    pointwise, total = cartan_residual(field)
    assert np.allclose(pointwise, np.sqrt(0.5), atol=1e-14)
    assert abs(total - np.sqrt(np.pi)) < 1e-12


def test_cartan_residual_linear_in_lambda():
    mesh = build_torus_mesh([8, 8])
    spec = {"name": "vortex-sin", "direction": [0.3, -1.0, 0.4], "offset": 1.2,
            "amp": 0.5, "axis": 1}
    omega = {"name": "constant", "coeffs": [[1.0, 0.2, 0.0], [0.0, 0.4, -0.3]]}
    base = sample_fields(mesh, so3(), spec, omega)
    scaled_spec = dict(spec, direction=[0.9, -3.0, 1.2])
    scaled = sample_fields(mesh, so3(), scaled_spec, omega)
    p1, t1 = cartan_residual(base)
    p3, t3 = cartan_residual(scaled)
    assert np.allclose(p3, 3.0 * p1, atol=1e-12)
    assert abs(t3 - 3.0 * t1) < 1e-12


def test_dual_norm_invariant_under_coadjoint_orbit():
    # the weight depends on lam only through an orbit-invariant norm
    alg = so3()
    rng = np.random.default_rng(19)
    for _ in range(10):
        z = rng.standard_normal(3)
        mu = rng.standard_normal(3)
        adjoint_action = expm(alg.ad(z))
        mu_moved = np.linalg.inv(adjoint_action).T @ mu
        assert abs(alg.dual_norm_sq(mu_moved) - alg.dual_norm_sq(mu)) < 1e-10


def test_curvature_weight_gauge_covariant():
    # conjugating the connection by a constant frame rotation moves the
    # curvature along the adjoint orbit and leaves kappa unchanged
    alg = so3()
    mesh = build_torus_mesh([12, 12])
    spec = {"name": "shear-sin", "component": 0, "axis": 1,
            "direction": [0.3, 0.7, -0.2], "offset": 0.4, "amp": 1.0}
    field = sample_fields(mesh, alg, E3_STAR, spec)
    z = np.array([0.3, -0.5, 0.9])
    rot = expm(alg.ad(z))
    moved = PairField(
        mesh=mesh,
        algebra=alg,
        lambda_fn=field.lambda_fn,
        omega_fns=tuple(
            (lambda f: (lambda p: f(p) @ rot.T))(f) for f in field.omega_fns
        ),
    )
    kappa = weight_curvature(field)
    kappa_moved = weight_curvature(moved)
    assert np.allclose(kappa, kappa_moved, atol=1e-10)


def test_weights_cached_per_degree():
    mesh = build_torus_mesh([6, 6])
    field = sample_fields(mesh, so3(), E3_STAR)
    first = field.weight_on("constraint", 1)
    assert field.weight_on("constraint", 1) is first


def test_degenerate_lambda_rejected():
    mesh = build_torus_mesh([8, 8])
    with pytest.raises(DegenerateLambda):
        sample_fields(mesh, so3(), {"name": "constant", "coeffs": [0.0, 0.0, 0.0]})
    with pytest.raises(DegenerateLambda):
        # vanishes where sin crosses zero
        sample_fields(
            mesh, so3(),
            {"name": "vortex-sin", "direction": [1.0, 0.0, 0.0],
             "offset": 0.0, "amp": 1.0, "axis": 0},
        )


def test_table_interpolation_reproduces_vertices():
    mesh = build_torus_mesh([6, 4])
    rng = np.random.default_rng(23)
    table = rng.standard_normal((24, 3)) + 3.0
    field = sample_fields(mesh, so3(), {"name": "table", "values": table})
    assert np.allclose(field.lambda_on(0), table, atol=1e-14)
    # midpoints of an axis-0 edge average the two endpoint rows
    verts = table.reshape(6, 4, 3)
    expected = 0.5 * (verts + np.roll(verts, -1, axis=0))
    assert np.allclose(field.lambda_on(1)[:24], expected.reshape(24, 3), atol=1e-13)


def test_bad_specs_rejected():
    mesh = build_torus_mesh([4, 4])
    with pytest.raises(ShapeMismatch):
        sample_fields(mesh, so3(), {"name": "nope"})
    with pytest.raises(ShapeMismatch):
        sample_fields(mesh, so3(), {"name": "constant", "coeffs": [1.0, 0.0]})
    with pytest.raises(ShapeMismatch):
        sample_fields(mesh, so3(), E3_STAR, {"name": "constant", "coeffs": [[1.0, 0.0, 0.0]]})


def test_transversality_margin_flat_example():
    # lam = e3*, flat connection: the pair matrix has orthogonal unit rows
    mesh = build_torus_mesh([8])
    field = sample_fields(mesh, so3(), E3_STAR)
    x = np.array([0.7])
    assert abs(transversality_margin(field, x, np.array([1.0])) - 1.0) < 1e-14
    # the margin follows the smaller of |lam| and |xi|
    half = sample_fields(mesh, so3(), {"name": "constant", "coeffs": [0, 0, 0.5]})
    assert abs(transversality_margin(half, x, np.array([1.0])) - 0.5) < 1e-14
    with pytest.raises(ZeroCovector):
        transversality_margin(field, x, np.array([0.0]))
    with pytest.raises(ShapeMismatch):
        transversality_margin(field, x, np.array([1.0, 0.0]))


def test_geometric_gap():
    mesh = build_torus_mesh([8, 8])
    flat = sample_fields(mesh, so3(), E3_STAR)
    x = np.array([0.1, 0.2])
    assert abs(geometric_gap(flat, x) - np.sqrt(2.0)) < 1e-12
    # a large connection tilts the horizontal space toward the fiber
    tilted = sample_fields(
        mesh, so3(), E3_STAR,
        {"name": "constant", "coeffs": [[30.0, 0.0, 0.0], [0.0, 30.0, 0.0]]},
    )
    assert geometric_gap(tilted, x) < 0.1


def test_fit_zero_iterations_when_optimal():
    mesh = build_torus_mesh([8])
    init = np.tile([0.0, 0.0, 2.0], (8, 1))
    result = fit_lambda(
        mesh, so3(), {"name": "zero"}, E3_STAR, alpha=1.0, init=init
    )
    assert result.converged
    assert result.iterations == 0
    assert result.objective[0] < 1e-26
    assert result.residual < 1e-13


def test_fit_flat_connection_reaches_tiny_residual():
    mesh = build_torus_mesh([16])
    result = fit_lambda(
        mesh, so3(), {"name": "zero"}, E3_STAR, alpha=0.0, max_iter=5000, seed=3
    )
    assert result.residual < 1e-6
    assert result.iterations <= 5000
    # accepted steps strictly decrease the objective
    assert np.all(np.diff(result.objective) < 0.0)


def test_fit_anchor_pulls_onto_target_line():
    mesh = build_torus_mesh([8])
    alg = so3()
    result = fit_lambda(
        mesh, alg, {"name": "zero"}, E3_STAR, alpha=5.0, max_iter=20000,
        tol=1e-14, seed=7,
    )
    lam = result.lam
    mu = np.array([0.0, 0.0, 1.0])
    gd = alg.killing_dual
    coeff = (lam @ gd @ mu) / (mu @ gd @ mu)
    offline = lam - coeff[:, None] * mu
    dist = np.sqrt(np.einsum("mi,ij,mj->m", offline, gd, offline))
    assert dist.max() < 1e-4


def test_fit_budget_exhaustion_raises_when_asked():
    mesh = build_torus_mesh([16])
    with pytest.raises(NonConvergence):
        fit_lambda(
            mesh, so3(), {"name": "zero"}, E3_STAR, alpha=0.0, max_iter=1,
            seed=3, raise_on_max_iter=True,
        )
    result = fit_lambda(
        mesh, so3(), {"name": "zero"}, E3_STAR, alpha=0.0, max_iter=1, seed=3
    )
    assert not result.converged
    assert result.iterations == 1


def test_fit_rejects_vanishing_target():
    mesh = build_torus_mesh([8])
    with pytest.raises(ZeroCovector):
        fit_lambda(
            mesh, so3(), {"name": "zero"},
            {"name": "vortex-sin", "direction": [1, 0, 0], "offset": 0.0,
             "amp": 1.0},
            alpha=1.0,
        )


def test_fit_bad_init_shape():
    mesh = build_torus_mesh([8])
    with pytest.raises(ShapeMismatch):
        fit_lambda(mesh, so3(), {"name": "zero"}, E3_STAR, init=np.zeros((4, 3)))
