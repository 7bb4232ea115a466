"""Symmetric powers of a coefficient space in the monomial basis.

Sym^j over d generators is spanned by sorted multisets of basis indices;
a degree-j tensor is its coefficient vector over that basis. Products
merge multisets with coefficient 1 (polynomial multiplication in the
monomial basis, no multinomial weights), and the inner product is the
plain coordinate sum. A multiplicity-weighted inner product is available
behind a flag but is not the default anywhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

import numpy as np

from .errors import DegreeCapExceeded, DegreeMismatch

DEFAULT_DEGREE_CAP = 4
DIM_CAP = 200_000


@lru_cache(maxsize=None)
def _basis(d: int, degree: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations_with_replacement(range(d), degree))


@dataclass(frozen=True)
class SymSpace:
    """Degree-j symmetric power over d generators.

    Attributes:
        d: number of generators.
        degree: symmetric degree j.
        basis: sorted multisets (i_1 <= ... <= i_j), lexicographic order.
    """

    d: int
    degree: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, multiset) -> int:
        return self.basis.index(tuple(sorted(multiset)))


def sym_dim(d: int, degree: int) -> int:
    """Dimension of Sym^degree over d generators (stars and bars)."""
    return math.comb(d + degree - 1, degree)


def sym_basis(d: int, degree: int, dim_cap: int = DIM_CAP) -> SymSpace:
    """Enumerate the sorted-multiset basis of Sym^degree.

    Raises:
        DegreeCapExceeded: negative degree or basis larger than dim_cap.
    """
    if degree < 0:
        raise DegreeCapExceeded(f"negative symmetric degree {degree}")
    if d < 1:
        raise DegreeCapExceeded(f"need at least one generator, got d={d}")
    n = sym_dim(d, degree)
    if n > dim_cap:
        raise DegreeCapExceeded(
            f"Sym^{degree} over {d} generators has dimension {n} > cap {dim_cap}"
        )
    return SymSpace(d=d, degree=degree, basis=_basis(d, degree))


@dataclass(frozen=True)
class SymTensor:
    """Coefficient vector over the monomial basis of a SymSpace."""

    space: SymSpace
    coeffs: np.ndarray

    @property
    def degree(self) -> int:
        return self.space.degree

    def __post_init__(self):
        if self.coeffs.shape != (self.space.dim,):
            raise DegreeMismatch(
                f"coefficient vector of length {self.coeffs.shape} does not "
                f"match Sym^{self.space.degree} dimension {self.space.dim}"
            )


def sym_tensor(d: int, degree: int, coeffs) -> SymTensor:
    return SymTensor(sym_basis(d, degree), np.asarray(coeffs, dtype=float))


def sym_unit(d: int) -> SymTensor:
    """The unit of the algebra: degree 0, coefficient 1."""
    return sym_tensor(d, 0, [1.0])


def sym_generator(d: int, i: int) -> SymTensor:
    """The generator e_i as a degree-1 tensor."""
    coeffs = np.zeros(d)
    coeffs[i] = 1.0
    return sym_tensor(d, 1, coeffs)


def sym_product(s: SymTensor, t: SymTensor, degree_cap: int | None = None) -> SymTensor:
    """Symmetric product; merges index multisets with coefficient 1.

    Args:
        s, t: tensors over the same generator count.
        degree_cap: optional cap on the resulting degree.

    Raises:
        DegreeMismatch: generator counts differ.
        DegreeCapExceeded: result degree exceeds degree_cap.
    """
    if s.space.d != t.space.d:
        raise DegreeMismatch(
            f"generator counts differ: {s.space.d} vs {t.space.d}"
        )
    out_degree = s.degree + t.degree
    if degree_cap is not None and out_degree > degree_cap:
        raise DegreeCapExceeded(
            f"product degree {out_degree} exceeds cap {degree_cap}"
        )
    out_space = sym_basis(s.space.d, out_degree)
    lut = {m: n for n, m in enumerate(out_space.basis)}
    out = np.zeros(out_space.dim)
    s_nz = np.nonzero(s.coeffs)[0]
    t_nz = np.nonzero(t.coeffs)[0]
    for a in s_nz:
        ma = s.space.basis[a]
        ca = s.coeffs[a]
        for b in t_nz:
            merged = tuple(sorted(ma + t.space.basis[b]))
            out[lut[merged]] += ca * t.coeffs[b]
    return SymTensor(out_space, out)


def multiplicity_weights(space: SymSpace) -> np.ndarray:
    """Multinomial multiplicity j! / prod(m_i!) of each basis multiset."""
    out = np.empty(space.dim)
    for n, m in enumerate(space.basis):
        counts: dict[int, int] = {}
        for i in m:
            counts[i] = counts.get(i, 0) + 1
        w = math.factorial(space.degree)
        for v in counts.values():
            w //= math.factorial(v)
        out[n] = float(w)
    return out


def sym_inner(s: SymTensor, t: SymTensor, multiplicity_weighted: bool = False) -> float:
    """Coordinate-sum inner product of same-degree tensors.

    The default weights every monomial coordinate equally. Passing
    multiplicity_weighted=True scales each coordinate by its multinomial
    multiplicity; nothing else in the package uses that variant.

    Raises:
        DegreeMismatch: degrees or generator counts differ.
    """
    if s.space != t.space:
        raise DegreeMismatch(
            f"cannot pair Sym^{s.degree} (d={s.space.d}) with "
            f"Sym^{t.degree} (d={t.space.d})"
        )
    if multiplicity_weighted:
        return float(np.sum(s.coeffs * multiplicity_weights(s.space) * t.coeffs))
    return float(s.coeffs @ t.coeffs)


def sym_evaluate(t: SymTensor, vectors) -> float:
    """Evaluate a degree-j tensor on j test vectors by polarization.

    Each basis monomial evaluates as the symmetrized coordinate product
    (1/j!) sum over orderings, so e_a . e_a evaluates to 1 on (e_a, e_a)
    and e_a . e_b to 1/2 on (e_a, e_b) for a != b.
    """
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    if len(vecs) != t.degree:
        raise DegreeMismatch(
            f"degree-{t.degree} tensor evaluated on {len(vecs)} vectors"
        )
    if t.degree == 0:
        return float(t.coeffs[0])
    total = 0.0
    fact = math.factorial(t.degree)
    for n, m in enumerate(t.space.basis):
        c = t.coeffs[n]
        if c == 0.0:
            continue
        acc = 0.0
        for perm in permutations(range(t.degree)):
            prod = 1.0
            for slot, idx in zip(perm, m):
                prod *= vecs[slot][idx]
            acc += prod
        total += c * acc / fact
    return total
