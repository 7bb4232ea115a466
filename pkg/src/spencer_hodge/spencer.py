"""Constructive Spencer differentials on symmetric powers.

For a covector lam the degree-raising operator delta sends a generator v
to the symmetric 2-tensor whose evaluation on test vectors (w1, w2) is

    (1/2) * ( <lam, [w1, [w2, v]]> + <lam, [w2, [w1, v]]> )

and extends to higher degrees through the graded Leibniz rule with sign
(-1)^p on the left factor's degree. On a sorted monomial e_{i1} ... e_{ij}
the extension unrolls to the alternating position sum

    delta(e_alpha) = sum_m (-1)^(m-1) delta(e_{i_m}) . e_{alpha without i_m},

which is the form used to assemble the matrices. The sign convention is
order sensitive: the Leibniz identity holds for splits of a monomial into
its sorted prefix and suffix, and that is the split the tests exercise.
All matrices are linear in lam.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegreeCapExceeded
from .lie import LieAlgebra
from .symalg import DEFAULT_DEGREE_CAP, SymTensor, sym_basis

OperatorList = list[np.ndarray]


def _pair_table(alg: LieAlgebra, lam: np.ndarray) -> np.ndarray:
    """Symmetrized evaluation table T[v, a, b] of delta(e_v) on (e_a, e_b)."""
    c = alg.structure_constants
    # n[a, b, v] = <lam, [e_a, [e_b, e_v]]>
    n = np.einsum("bvm,amk,k->abv", c, c, lam)
    t = 0.5 * (n + np.swapaxes(n, 0, 1))
    return np.moveaxis(t, 2, 0)


def delta_on_generator(alg: LieAlgebra, lam, v) -> SymTensor:
    """Apply the generator rule to an algebra element.

    Args:
        alg: validated Lie algebra.
        lam: covector coefficients, shape (d,).
        v: element coefficients, shape (d,).

    Returns:
        The degree-2 tensor whose polarized evaluation on (w1, w2)
        reproduces the symmetrized double-bracket pairing.
    """
    lam = np.asarray(lam, dtype=float)
    v = np.asarray(v, dtype=float)
    t = np.einsum("v,vab->ab", v, _pair_table(alg, lam))
    space = sym_basis(alg.dim, 2)
    coeffs = np.empty(space.dim)
    for n, (a, b) in enumerate(space.basis):
        coeffs[n] = t[a, a] if a == b else 2.0 * t[a, b]
    return SymTensor(space, coeffs)


def generator_matrix(alg: LieAlgebra, lam) -> np.ndarray:
    """Matrix of delta on Sym^1, columns indexed by generators."""
    lam = np.asarray(lam, dtype=float)
    table = _pair_table(alg, lam)
    space = sym_basis(alg.dim, 2)
    out = np.empty((space.dim, alg.dim))
    for n, (a, b) in enumerate(space.basis):
        if a == b:
            out[n, :] = table[:, a, a]
        else:
            out[n, :] = 2.0 * table[:, a, b]
    return out


def _extend(alg: LieAlgebra, gen: np.ndarray, degree: int) -> np.ndarray:
    """Matrix of delta on Sym^degree from the generator images.

    Uses the alternating position sum over each sorted basis monomial;
    paired repeats cancel, so delta annihilates squared generators.
    """
    d = alg.dim
    src = sym_basis(d, degree)
    dst = sym_basis(d, degree + 1)
    pair_space = sym_basis(d, 2)
    lut = {m: n for n, m in enumerate(dst.basis)}
    out = np.zeros((dst.dim, src.dim))
    for col, alpha in enumerate(src.basis):
        for pos in range(degree):
            sign = -1.0 if pos % 2 else 1.0
            rest = alpha[:pos] + alpha[pos + 1:]
            gcol = gen[:, alpha[pos]]
            for row in np.nonzero(gcol)[0]:
                merged = tuple(sorted(pair_space.basis[row] + rest))
                out[lut[merged], col] += sign * gcol[row]
    return out


@dataclass(frozen=True)
class SpencerMaps:
    """Degree-graded family of Spencer differentials for one covector.

    matrices[j] maps Sym^j to Sym^(j+1), for j = 0 .. degree_cap - 1;
    matrices[0] is the zero map out of the unit. adjoints[j] is the
    transpose, which is the adjoint for the coordinate-sum inner product.
    """

    algebra: LieAlgebra
    lam: np.ndarray
    degree_cap: int
    matrices: tuple[np.ndarray, ...]

    @property
    def adjoints(self) -> tuple[np.ndarray, ...]:
        return tuple(m.T for m in self.matrices)


def build_spencer_maps(
    alg: LieAlgebra,
    lam,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> SpencerMaps:
    """Assemble delta matrices for degrees 0 .. degree_cap - 1.

    Raises:
        DegreeCapExceeded: degree_cap < 1.
    """
    if degree_cap < 1:
        raise DegreeCapExceeded(f"degree cap must be >= 1, got {degree_cap}")
    lam = np.asarray(lam, dtype=float)
    gen = generator_matrix(alg, lam)
    mats: list[np.ndarray] = [np.zeros((alg.dim, 1))]
    if degree_cap >= 2:
        mats.append(gen)
    for j in range(2, degree_cap):
        mats.append(_extend(alg, gen, j))
    return SpencerMaps(algebra=alg, lam=lam, degree_cap=degree_cap, matrices=tuple(mats))


def spencer_adjoint(maps: SpencerMaps) -> tuple[np.ndarray, ...]:
    """Adjoint family for the plain coordinate-sum inner product."""
    return maps.adjoints


def nilpotency_residual(maps: SpencerMaps) -> list[float]:
    """Spectral norms of the composites delta_{j+1} delta_j.

    Returns one number per composable pair, j = 0 .. degree_cap - 2.
    The values are diagnostics; they vanish only when the operator
    squares to zero, which the truncation never assumes.
    """
    out = []
    for j in range(len(maps.matrices) - 1):
        prod = maps.matrices[j + 1] @ maps.matrices[j]
        out.append(float(np.linalg.norm(prod, 2)))
    return out


def check_symbolic_equivalence(alg: LieAlgebra, lam) -> float:
    """Compare the symmetrized rule with its Jacobi-reduced form.

    The reduced expression is <lam, [w2, [w1, v]]> + (1/2) <lam, [[w1, w2], v]>.
    Returns the maximum absolute discrepancy of the two evaluations over
    all basis triples (v, w1, w2).
    """
    lam = np.asarray(lam, dtype=float)
    c = alg.structure_constants
    sym = np.moveaxis(_pair_table(alg, lam), 0, 2)          # [a, b, v]
    swapped = np.einsum("avm,bmk,k->abv", c, c, lam)        # <lam,[w2,[w1,v]]>
    comm = 0.5 * np.einsum("abm,mvk,k->abv", c, c, lam)     # (1/2)<lam,[[w1,w2],v]>
    return float(np.abs(sym - (swapped + comm)).max())
