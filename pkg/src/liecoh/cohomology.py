"""Cocycles, coboundaries and cohomology as exact rank computations.

Cochain spaces are coordinatized in lexicographic key order, so every
kernel and image inherits the canonical echelon basis of the linear
algebra core and class representatives are reproducible.  Relative
spaces (cocycles with prescribed curvature, cocycles with a prescribed
restriction) are solved as affine-linear systems; emptiness is returned
as a value carrying the inconsistency certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cochains import (Cochain, OuterActionMap, cochain_space_dim,
                       covariant_differential, curvature, increasing_tuples)
from .errors import DimensionMismatchError, SpaceMismatchError
from .liealg import LieAlgebra, Representation
from .linalg import (InconsistencyCertificate, Matrix, Subspace, image, kernel,
                     solve_affine, vec_is_zero, vec_sub, zero_vec)


def differential_matrix(rep: Representation, p: int) -> Matrix:
    """Matrix of the degree-p differential in lexicographic coordinates."""
    from .cochains import cochain_differential
    n = rep.algebra.dim
    m = rep.space_dim
    rows = cochain_space_dim(n, p + 1, m)
    cols = []
    for key in increasing_tuples(n, p):
        for comp in range(m):
            vec = [0] * m
            vec[comp] = 1
            basis_cochain = Cochain(rep.algebra, p, m, {key: vec})
            cols.append(cochain_differential(rep, basis_cochain).coordinates())
    return Matrix.from_columns(cols, rows=rows)


def operator_matrix(fn, algebra: LieAlgebra, p: int, value_dim: int, out_rows: int) -> Matrix:
    """Matrix of a linear cochain operator, built column by column."""
    cols = []
    for key in increasing_tuples(algebra.dim, p):
        for comp in range(value_dim):
            vec = [0] * value_dim
            vec[comp] = 1
            cols.append(fn(Cochain(algebra, p, value_dim, {key: vec})))
    return Matrix.from_columns(cols, rows=out_rows)


class CohomologySpace:
    """Cocycles, coboundaries and canonical class representatives."""

    __slots__ = ("rep", "degree", "cocycles", "coboundaries", "h_dim", "_h_basis")

    def __init__(self, rep: Representation, degree: int):
        self.rep = rep
        self.degree = degree
        self.cocycles = kernel(differential_matrix(rep, degree))
        if degree == 0:
            dim = cochain_space_dim(rep.algebra.dim, 0, rep.space_dim)
            self.coboundaries = Subspace.zero(dim)
        else:
            self.coboundaries = image(differential_matrix(rep, degree - 1))
        if not self.cocycles.contains_subspace(self.coboundaries):
            raise SpaceMismatchError("coboundaries escape the cocycle space")
        self.h_dim = self.cocycles.dim - self.coboundaries.dim
        reduced = [self.coboundaries.reduce(v) for v in self.cocycles.basis]
        self._h_basis = Subspace.from_vectors(self.cocycles.ambient_dim,
                                              [v for v in reduced if not vec_is_zero(v)])

    @property
    def dim_cocycles(self) -> int:
        return self.cocycles.dim

    @property
    def dim_coboundaries(self) -> int:
        return self.coboundaries.dim

    def representative_cochains(self) -> tuple:
        """Canonical cocycles spanning the cohomology, one per class."""
        return tuple(self._cochain(v) for v in self._h_basis.basis)

    def _cochain(self, coords) -> Cochain:
        return Cochain.from_coordinates(self.rep.algebra, self.degree,
                                        self.rep.space_dim, coords)

    def normalize(self, c: Cochain) -> tuple:
        """Canonical coordinates of the class of c (reduce modulo coboundaries)."""
        coords = c.coordinates()
        if not self.cocycles.contains(coords):
            raise SpaceMismatchError("the cochain is not a cocycle of this space")
        return self.coboundaries.reduce(coords)

    def class_of(self, c: Cochain) -> "CohomologyClass":
        return CohomologyClass(self, c)

    def zero_class(self) -> "CohomologyClass":
        return CohomologyClass(
            self, Cochain.zero(self.rep.algebra, self.degree, self.rep.space_dim))

    def __eq__(self, other) -> bool:
        return (isinstance(other, CohomologySpace) and self.rep == other.rep
                and self.degree == other.degree)

    def __hash__(self):
        return hash((self.rep, self.degree))

    def __repr__(self):
        return (f"CohomologySpace(degree={self.degree}, z={self.dim_cocycles}, "
                f"b={self.dim_coboundaries}, h={self.h_dim})")


class CohomologyClass:
    """A cocycle together with the space it represents a class in."""

    __slots__ = ("space", "representative", "normalized")

    def __init__(self, space: CohomologySpace, representative: Cochain):
        if (representative.degree != space.degree
                or representative.value_dim != space.rep.space_dim
                or representative.algebra != space.rep.algebra):
            raise SpaceMismatchError("representative does not fit the space")
        self.space = space
        self.representative = representative
        self.normalized = space.normalize(representative)

    def is_zero(self) -> bool:
        return vec_is_zero(self.normalized)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CohomologyClass) and self.space == other.space
                and self.normalized == other.normalized)

    def __hash__(self):
        return hash((self.space, self.normalized))

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if self.space != other.space:
            raise SpaceMismatchError("classes live in different spaces")
        return CohomologyClass(self.space, self.representative + other.representative)

    def __repr__(self):
        return f"CohomologyClass(zero={self.is_zero()})"


def cohomology(rep: Representation, p: int) -> CohomologySpace:
    if p < 0:
        raise DimensionMismatchError("cohomology degree must be nonnegative")
    return CohomologySpace(rep, p)


def classes_equal(a: CohomologyClass, b: CohomologyClass) -> bool:
    if a.space != b.space:
        raise SpaceMismatchError("classes live in different spaces")
    return a.normalized == b.normalized


@dataclass(frozen=True)
class AffineCochainSpace:
    """Nonempty solution set: particular cochain plus homogeneous basis."""

    particular: Cochain
    basis: tuple
    homogeneous: Subspace

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coords: Sequence) -> Cochain:
        out = self.particular
        for c, b in zip(coords, self.basis):
            if c != 0:
                out = out + b.scale(c)
        return out

    def contains(self, c: Cochain) -> bool:
        diff = vec_sub(c.coordinates(), self.particular.coordinates())
        return self.homogeneous.contains(diff)


@dataclass(frozen=True)
class EmptyAffine:
    """An inconsistent affine system, with the failing reduced row."""

    certificate: InconsistencyCertificate

    @property
    def dim(self) -> int:
        return -1

    def describe(self) -> str:
        return self.certificate.describe()


def relative_cocycles(S: OuterActionMap, n_alg: LieAlgebra):
    """Solutions omega of ad(omega) = curvature(S), d_S omega = 0.

    The unknown is a 2-cochain valued in n; the system couples the inner
    lift of the curvature with closedness under the covariant
    differential.  Returns an AffineCochainSpace or EmptyAffine.
    """
    if S.target is not None and S.target != n_alg:
        raise DimensionMismatchError("S does not act on the given algebra")
    if S.space_dim != n_alg.dim:
        raise DimensionMismatchError("S endomorphisms have the wrong size")
    g = S.algebra
    nd = n_alg.dim
    c2_dim = cochain_space_dim(g.dim, 2, nd)
    R = curvature(S)

    # ad-lift block: for each increasing pair key, ad(omega(key)) = R(key).
    ad_cols = [n_alg.ad_matrix(k).flatten() for k in range(nd)]
    pair_keys = list(increasing_tuples(g.dim, 2))
    rows_ad = []
    rhs_ad = []
    for r, key in enumerate(pair_keys):
        target = R.component(key)
        base = r * nd
        for flat_idx in range(nd * nd):
            row = [0] * c2_dim
            for k in range(nd):
                row[base + k] = ad_cols[k][flat_idx]
            rows_ad.append(row)
            rhs_ad.append(target[flat_idx])

    d_block = operator_matrix(lambda c: covariant_differential(S, c).coordinates(),
                              g, 2, nd, cochain_space_dim(g.dim, 3, nd))
    rows = rows_ad + [list(d_block.row(i)) for i in range(d_block.rows)]
    rhs = rhs_ad + [0] * d_block.rows
    system = Matrix(rows, cols=c2_dim) if rows else Matrix.zero(0, c2_dim)
    particular, hom, certificate = solve_affine(system, rhs)
    if particular is None:
        return EmptyAffine(certificate)
    part = Cochain.from_coordinates(g, 2, nd, particular)
    basis = tuple(Cochain.from_coordinates(g, 2, nd, v) for v in hom.basis)
    return AffineCochainSpace(part, basis, hom)


def theta_constrained_cocycles(gS: LieAlgebra, ideal: Subspace,
                               z_rep: Representation, theta: dict):
    """2-cocycles on gS restricting to theta against the ideal.

    ``theta`` maps (basis index of gS, basis index of the ideal) to a
    value-space vector.  Solutions are returned as a particular cocycle
    plus the homogeneous space of cocycles vanishing against the ideal.
    """
    if z_rep.algebra != gS:
        raise DimensionMismatchError("the coefficient module must be a gS-module")
    if ideal.ambient_dim != gS.dim:
        raise DimensionMismatchError("ideal lives in a different space")
    zd = z_rep.space_dim
    c2_dim = cochain_space_dim(gS.dim, 2, zd)
    pair_keys = list(increasing_tuples(gS.dim, 2))
    key_index = {key: r for r, key in enumerate(pair_keys)}

    rows = []
    rhs = []
    d_mat = differential_matrix(z_rep, 2)
    for i in range(d_mat.rows):
        rows.append(list(d_mat.row(i)))
        rhs.append(0)
    for i in range(gS.dim):
        for a, b in enumerate(ideal.basis):
            target = theta.get((i, a), zero_vec(zd))
            for comp in range(zd):
                row = [0] * c2_dim
                for j, coeff in enumerate(b):
                    if coeff == 0 or j == i:
                        continue
                    key = (i, j) if i < j else (j, i)
                    sign = 1 if i < j else -1
                    row[key_index[key] * zd + comp] += sign * coeff
                rows.append(row)
                rhs.append(target[comp])
    system = Matrix(rows, cols=c2_dim) if rows else Matrix.zero(0, c2_dim)
    particular, hom, certificate = solve_affine(system, rhs)
    if particular is None:
        return EmptyAffine(certificate)
    part = Cochain.from_coordinates(gS, 2, zd, particular)
    basis = tuple(Cochain.from_coordinates(gS, 2, zd, v) for v in hom.basis)
    return AffineCochainSpace(part, basis, hom)
