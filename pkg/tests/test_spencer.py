"""Spencer differentials against bracket-level oracles."""

import numpy as np
import pytest

from spencer_hodge import (
    build_spencer_maps,
    builtin_algebra,
    check_symbolic_equivalence,
    delta_on_generator,
    nilpotency_residual,
    so3,
    spencer_adjoint,
    su2,
    sym_basis,
    sym_evaluate,
    sym_inner,
    sym_product,
    sym_tensor,
)
from spencer_hodge.errors import DegreeCapExceeded


def rule_a_oracle(alg, lam, v, w1, w2):
    """Evaluate the symmetrized double-bracket pairing directly."""
    first = lam @ alg.bracket(w1, alg.bracket(w2, v))
    second = lam @ alg.bracket(w2, alg.bracket(w1, v))
    return 0.5 * (first + second)


@pytest.mark.parametrize("name", ["so3", "su2", "so4"])
def test_generator_rule_matches_bracket_oracle(name):
    alg = builtin_algebra(name)
    rng = np.random.default_rng(17)
    for _ in range(5):
        lam = rng.standard_normal(alg.dim)
        v = rng.standard_normal(alg.dim)
        image = delta_on_generator(alg, lam, v)
        for _ in range(8):
            w1 = rng.standard_normal(alg.dim)
            w2 = rng.standard_normal(alg.dim)
            expected = rule_a_oracle(alg, lam, v, w1, w2)
            assert abs(sym_evaluate(image, [w1, w2]) - expected) < 1e-10


def test_so3_images_of_generators():
    # lam = e3*: delta(e1) = e1.e3, delta(e2) = e2.e3,
    # delta(e3) = -(e1.e1) - (e2.e2)
    alg = so3()
    lam = np.array([0.0, 0.0, 1.0])
    e = np.eye(3)
    space = sym_basis(3, 2)

    img1 = delta_on_generator(alg, lam, e[0])
    expected1 = np.zeros(space.dim)
    expected1[space.index((0, 2))] = 1.0
    assert np.allclose(img1.coeffs, expected1, atol=1e-14)

    img2 = delta_on_generator(alg, lam, e[1])
    expected2 = np.zeros(space.dim)
    expected2[space.index((1, 2))] = 1.0
    assert np.allclose(img2.coeffs, expected2, atol=1e-14)

    img3 = delta_on_generator(alg, lam, e[2])
    expected3 = np.zeros(space.dim)
    expected3[space.index((0, 0))] = -1.0
    expected3[space.index((1, 1))] = -1.0
    assert np.allclose(img3.coeffs, expected3, atol=1e-14)
    # evaluation on (e1, e1) equals the bracket chain value -1
    assert abs(sym_evaluate(img3, [e[0], e[0]]) + 1.0) < 1e-14


def test_generator_rule_linear_in_lambda():
    alg = su2()
    rng = np.random.default_rng(23)
    lam1 = rng.standard_normal(3)
    lam2 = rng.standard_normal(3)
    v = rng.standard_normal(3)
    a, b = 0.7, -1.3
    combo = delta_on_generator(alg, a * lam1 + b * lam2, v)
    img1 = delta_on_generator(alg, lam1, v)
    img2 = delta_on_generator(alg, lam2, v)
    assert np.allclose(combo.coeffs, a * img1.coeffs + b * img2.coeffs, atol=1e-12)


def test_maps_linear_in_lambda():
    alg = so3()
    rng = np.random.default_rng(29)
    lam = rng.standard_normal(3)
    maps = build_spencer_maps(alg, lam, degree_cap=4)
    scaled = build_spencer_maps(alg, 2.5 * lam, degree_cap=4)
    for m, s in zip(maps.matrices, scaled.matrices):
        assert np.allclose(2.5 * m, s, atol=1e-12)


def test_map_shapes_and_unit_annihilation():
    alg = so3()
    maps = build_spencer_maps(alg, np.array([0.0, 0.0, 1.0]), degree_cap=4)
    dims = [sym_basis(3, j).dim for j in range(5)]
    assert len(maps.matrices) == 4
    for j, m in enumerate(maps.matrices):
        assert m.shape == (dims[j + 1], dims[j])
    assert np.all(maps.matrices[0] == 0.0)


def test_degree_cap_guard():
    with pytest.raises(DegreeCapExceeded):
        build_spencer_maps(so3(), np.ones(3), degree_cap=0)


def test_squared_generators_annihilated():
    # paired repeats cancel in the alternating position sum
    alg = su2()
    rng = np.random.default_rng(31)
    lam = rng.standard_normal(3)
    maps = build_spencer_maps(alg, lam, degree_cap=3)
    space = sym_basis(3, 2)
    for a in range(3):
        col = maps.matrices[2] @ np.eye(space.dim)[space.index((a, a))]
        assert np.allclose(col, 0.0, atol=1e-13)


def test_leibniz_on_sorted_splits():
    # delta(prefix . suffix) = delta(prefix) . suffix
    #                          + (-1)^len(prefix) prefix . delta(suffix)
    # for every split of a sorted monomial into prefix and suffix
    alg = so3()
    rng = np.random.default_rng(37)
    lam = rng.standard_normal(3)
    maps = build_spencer_maps(alg, lam, degree_cap=4)

    def apply_delta(mono):
        j = len(mono)
        space = sym_basis(3, j)
        vec = np.zeros(space.dim)
        vec[space.index(mono)] = 1.0
        return sym_tensor(3, j + 1, maps.matrices[j] @ vec)

    for mono in sym_basis(3, 3).basis:
        whole = apply_delta(mono)
        for cut in range(1, len(mono)):
            prefix, suffix = mono[:cut], mono[cut:]
            p_space = sym_basis(3, len(prefix))
            s_space = sym_basis(3, len(suffix))
            p_vec = np.zeros(p_space.dim)
            p_vec[p_space.index(prefix)] = 1.0
            s_vec = np.zeros(s_space.dim)
            s_vec[s_space.index(suffix)] = 1.0
            p_t = sym_tensor(3, len(prefix), p_vec)
            s_t = sym_tensor(3, len(suffix), s_vec)
            term1 = sym_product(apply_delta(prefix), s_t)
            term2 = sym_product(p_t, apply_delta(suffix))
            sign = -1.0 if cut % 2 else 1.0
            assert np.allclose(
                whole.coeffs, term1.coeffs + sign * term2.coeffs, atol=1e-10
            )


@pytest.mark.parametrize("name", ["so3", "su2", "so4"])
def test_symbolic_equivalence_random_lambdas(name):
    alg = builtin_algebra(name)
    rng = np.random.default_rng(41)
    for _ in range(20):
        lam = rng.standard_normal(alg.dim)
        assert check_symbolic_equivalence(alg, lam) < 1e-12


def test_composite_oracle_and_pinned_norm():
    # so3 with lam = e3*: the degree 1 -> 3 composite has two orthogonal
    # nonzero columns of norm sqrt(3), so its spectral norm is sqrt(3)
    alg = so3()
    lam = np.array([0.0, 0.0, 1.0])
    maps = build_spencer_maps(alg, lam, degree_cap=3)
    prod = maps.matrices[1] @ maps.matrices[0]
    assert np.allclose(prod, 0.0, atol=1e-14)

    composite = maps.matrices[2] @ maps.matrices[1]
    space3 = sym_basis(3, 3)
    expected = np.zeros((space3.dim, 3))
    for multiset in [(0, 0, 0), (0, 1, 1), (0, 2, 2)]:
        expected[space3.index(multiset), 0] = 1.0
    for multiset in [(0, 0, 1), (1, 1, 1), (1, 2, 2)]:
        expected[space3.index(multiset), 1] = 1.0
    assert np.allclose(composite, expected, atol=1e-13)

    residuals = nilpotency_residual(maps)
    assert residuals[0] < 1e-14
    assert abs(residuals[1] - np.sqrt(3.0)) < 1e-12
    # independent norm oracle via the Gram matrix
    gram_eigs = np.linalg.eigvalsh(composite.T @ composite)
    assert abs(residuals[1] - np.sqrt(gram_eigs[-1])) < 1e-12


def test_adjoint_is_transpose_for_plain_inner():
    alg = su2()
    rng = np.random.default_rng(43)
    lam = rng.standard_normal(3)
    maps = build_spencer_maps(alg, lam, degree_cap=3)
    adj = spencer_adjoint(maps)
    for j, (m, mt) in enumerate(zip(maps.matrices, adj)):
        src = sym_basis(3, j)
        dst = sym_basis(3, j + 1)
        for _ in range(10):
            s = sym_tensor(3, j, rng.standard_normal(src.dim))
            t = sym_tensor(3, j + 1, rng.standard_normal(dst.dim))
            lhs = sym_inner(sym_tensor(3, j + 1, m @ s.coeffs), t)
            rhs = sym_inner(s, sym_tensor(3, j, mt @ t.coeffs))
            assert abs(lhs - rhs) < 1e-10


def test_adjoint_pairing_example():
    # <delta(e3), e1.e1> = -1 = <e3, delta^T(e1.e1)> for so3, lam = e3*
    alg = so3()
    lam = np.array([0.0, 0.0, 1.0])
    maps = build_spencer_maps(alg, lam, degree_cap=2)
    space = sym_basis(3, 2)
    e3 = np.eye(3)[2]
    basis_11 = np.eye(space.dim)[space.index((0, 0))]
    forward = (maps.matrices[1] @ e3) @ basis_11
    backward = e3 @ (maps.adjoints[1] @ basis_11)
    assert abs(forward + 1.0) < 1e-14
    assert abs(backward + 1.0) < 1e-14
