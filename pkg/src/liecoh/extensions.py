"""Factor systems, extensions, obstruction classes and the quotient-stage
reduction of non-abelian extensions to abelian ones.

A factor system is a pair (S, omega): a linear map S from g into the
derivations of n whose curvature is the inner map ad(omega), with omega
closed under the covariant differential.  Exactly these pairs make the
product bracket

    [(n, x), (n', x')] = ([n, n'] + S(x)n' - S(x')n + omega(x, x'), [x, x'])

a Lie algebra, and every split extension arises this way from a choice
of linear section.  Equivalence of two such presentations over the same
kernel and quotient is an affine-linear feasibility problem and is
decided exactly.

For a kernel class [S] the cocycle d_S omega lands in the center of n
and its degree-3 class obstructs realizability; when it vanishes the
classes form an affine space over the degree-2 center-valued cohomology.
The reduction stage rewrites every n-extension of g as a center-valued
abelian extension of the auxiliary algebra built from (ad S, proj omega)
on n/z(n) x g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cochains import (Cochain, HALF, OuterActionMap, covariant_differential,
                       curvature, gauge_action, increasing_tuples, superbracket)
from .cohomology import (AffineCochainSpace, CohomologyClass, CohomologySpace,
                         EmptyAffine, cochain_space_dim, cohomology,
                         differential_matrix, relative_cocycles,
                         theta_constrained_cocycles)
from .errors import (DimensionMismatchError, InvalidFactorSystemError,
                     InvariantViolation, NoLiftError, NotAHomomorphismError,
                     NotASectionError, ObstructedError)
from .liealg import (LieAlgebra, Representation, bracket_preserving, center,
                     is_derivation, quotient_algebra)
from .linalg import (Matrix, Subspace, invert, left_inverse, solve_affine,
                     unit_vec, vec_add, vec_is_zero, vec_scale, vec_sub,
                     zero_vec)


# ---------------------------------------------------------------------------
# subspace-valued cochain helpers
# ---------------------------------------------------------------------------

def restrict_cochain_to_subspace(c: Cochain, sub: Subspace) -> Cochain:
    """Rewrite a cochain whose values lie in ``sub`` in subspace coordinates."""
    table = {}
    for key, vec in c.coeffs.items():
        coords = sub.coordinates_of(vec)
        if coords is None:
            raise InvariantViolation(
                f"cochain value at {key} lies outside the expected subspace")
        table[key] = coords
    return Cochain(c.algebra, c.degree, sub.dim, table)


def embed_cochain_from_subspace(c: Cochain, sub: Subspace) -> Cochain:
    """Push a subspace-coordinate cochain back into the ambient space."""
    if c.value_dim != sub.dim:
        raise DimensionMismatchError("cochain values do not match the subspace dimension")
    table = {key: sub.embed(vec) for key, vec in c.coeffs.items()}
    return Cochain(c.algebra, c.degree, sub.ambient_dim, table)


def pullback_cochain(c: Cochain, phi: Matrix, domain: LieAlgebra) -> Cochain:
    """The cochain c(phi ., ..., phi .) on ``domain``."""
    if phi.rows != c.algebra.dim or phi.cols != domain.dim:
        raise DimensionMismatchError("pullback map has the wrong shape")
    table = {}
    for key in increasing_tuples(domain.dim, c.degree):
        val = c.evaluate([phi.column(k) for k in key])
        if not vec_is_zero(val):
            table[key] = val
    return Cochain(domain, c.degree, c.value_dim, table)


def transport_cochain(alpha: Matrix, beta_inv: Matrix, c: Cochain) -> Cochain:
    """alpha . c(beta^{-1} ., ..., beta^{-1} .) over the same algebra."""
    table = {}
    for key in increasing_tuples(c.algebra.dim, c.degree):
        val = c.evaluate([beta_inv.column(k) for k in key])
        val = alpha.matvec(val)
        if not vec_is_zero(val):
            table[key] = val
    return Cochain(c.algebra, c.degree, alpha.rows, table)


def transport_outer_action(alpha: Matrix, alpha_inv: Matrix, beta_inv: Matrix,
                           S: OuterActionMap) -> OuterActionMap:
    """x -> alpha S(beta^{-1} x) alpha^{-1}."""
    mats = []
    for i in range(S.algebra.dim):
        m = Matrix.zero(S.space_dim, S.space_dim)
        for j, coeff in enumerate(beta_inv.column(i)):
            if coeff != 0:
                m = m + S.matrices[j].scale(coeff)
        mats.append(alpha @ m @ alpha_inv)
    return OuterActionMap(S.algebra, mats, target=S.target, validate=False)


# ---------------------------------------------------------------------------
# factor systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorSystemReport:
    """Which of the three defining conditions hold, with witnesses."""

    derivation_failures: tuple
    curvature_failures: tuple
    cocycle_failures: tuple

    @property
    def ok(self) -> bool:
        return not (self.derivation_failures or self.curvature_failures
                    or self.cocycle_failures)

    def describe(self) -> str:
        parts = []
        if self.derivation_failures:
            parts.append(f"S is not derivation-valued at indices {self.derivation_failures}")
        if self.curvature_failures:
            parts.append(f"curvature differs from ad(omega) at pairs {self.curvature_failures}")
        if self.cocycle_failures:
            parts.append(f"d_S omega is nonzero at triples {self.cocycle_failures}")
        return "; ".join(parts) if parts else "valid"

    def as_dict(self) -> dict:
        return {
            "valid": self.ok,
            "derivation_failures": [list(x) if isinstance(x, tuple) else x
                                    for x in self.derivation_failures],
            "curvature_failures": [list(x) for x in self.curvature_failures],
            "cocycle_failures": [list(x) for x in self.cocycle_failures],
        }


def factor_system_report(n_alg: LieAlgebra, g_alg: LieAlgebra,
                         matrices: Sequence[Matrix], omega: Cochain) -> FactorSystemReport:
    if len(matrices) != g_alg.dim:
        raise DimensionMismatchError("one action matrix per basis element of g is required")
    if omega.degree != 2 or omega.value_dim != n_alg.dim or omega.algebra != g_alg:
        raise DimensionMismatchError("omega must be a 2-cochain on g valued in n")
    der_fail = tuple(i for i, m in enumerate(matrices) if not is_derivation(n_alg, m))
    S = OuterActionMap(g_alg, matrices, target=n_alg, validate=False)
    R = curvature(S)
    curv_fail = []
    for key in increasing_tuples(g_alg.dim, 2):
        if R.component(key) != n_alg.ad(omega.component(key)).flatten():
            curv_fail.append(key)
    closed = covariant_differential(S, omega)
    cocycle_fail = tuple(sorted(closed.coeffs))
    return FactorSystemReport(der_fail, tuple(curv_fail), cocycle_fail)


class FactorSystem:
    """A validated pair (S, omega) encoding an n-extension of g."""

    __slots__ = ("n", "g", "S", "omega")

    def __init__(self, n_alg: LieAlgebra, g_alg: LieAlgebra, S, omega: Cochain):
        if isinstance(S, OuterActionMap):
            matrices = S.matrices
        else:
            matrices = tuple(S)
        report = factor_system_report(n_alg, g_alg, matrices, omega)
        if not report.ok:
            raise InvalidFactorSystemError(report)
        self.n = n_alg
        self.g = g_alg
        self.S = OuterActionMap(g_alg, matrices, target=n_alg, validate=False)
        self.omega = omega

    def gauge(self, gamma: Cochain) -> "FactorSystem":
        new_S, new_omega = gauge_action(gamma, self.S, self.omega)
        return FactorSystem(self.n, self.g, new_S, new_omega)

    def center_rep(self) -> Representation:
        return self.S.restrict_to_center()

    def __eq__(self, other) -> bool:
        return (isinstance(other, FactorSystem) and self.n == other.n
                and self.g == other.g and self.S == other.S
                and self.omega == other.omega)

    def __hash__(self):
        return hash((self.n, self.g, self.S, self.omega))

    def __repr__(self):
        return f"FactorSystem(n dim {self.n.dim}, g dim {self.g.dim})"


class ExtensionPresentation:
    """A total algebra with a distinguished split ideal and quotient maps."""

    __slots__ = ("total", "n", "g", "inclusion", "projection", "section",
                 "ideal", "provenance", "_left_inv")

    def __init__(self, total: LieAlgebra, n_alg: LieAlgebra, g_alg: LieAlgebra,
                 inclusion: Matrix, projection: Matrix, section: Matrix,
                 provenance: Optional[FactorSystem] = None):
        violations = []
        if inclusion.rows != total.dim or inclusion.cols != n_alg.dim:
            raise DimensionMismatchError("inclusion shape disagrees with n/total")
        if projection.rows != g_alg.dim or projection.cols != total.dim:
            raise DimensionMismatchError("projection shape disagrees with g/total")
        if section.rows != total.dim or section.cols != g_alg.dim:
            raise DimensionMismatchError("section shape disagrees with g/total")
        if (projection @ section) != Matrix.identity(g_alg.dim):
            violations.append("section is not a right inverse of the projection")
        if (projection @ inclusion) != Matrix.zero(g_alg.dim, n_alg.dim):
            violations.append("the ideal does not lie in the kernel of the projection")
        if not bracket_preserving(n_alg, total, inclusion):
            violations.append("the inclusion does not preserve brackets")
        if not bracket_preserving(total, g_alg, projection):
            violations.append("the projection does not preserve brackets")
        li = left_inverse(inclusion)
        if li is None:
            violations.append("the inclusion is not injective")
        ideal = Subspace.from_vectors(total.dim,
                                      [inclusion.column(j) for j in range(n_alg.dim)])
        if ideal.dim + g_alg.dim != total.dim:
            violations.append("ideal and quotient dimensions do not add up")
        for i in range(total.dim):
            for b in ideal.basis:
                if not ideal.contains(total.bracket(unit_vec(total.dim, i), b)):
                    violations.append(f"the image of n is not an ideal (fails at e{i})")
                    break
        if violations:
            raise InvariantViolation("invalid extension presentation", violations)
        self.total = total
        self.n = n_alg
        self.g = g_alg
        self.inclusion = inclusion
        self.projection = projection
        self.section = section
        self.ideal = ideal
        self.provenance = provenance
        self._left_inv = li

    def ideal_coordinates(self, v: Sequence[Fraction]) -> tuple:
        """n-coordinates of a total vector lying in the ideal."""
        coords = self._left_inv.matvec(v)
        if self.inclusion.matvec(coords) != tuple(Fraction(x) for x in v):
            raise InvariantViolation("vector does not lie in the ideal")
        return coords

    def __repr__(self):
        return (f"ExtensionPresentation(total dim {self.total.dim}, "
                f"n dim {self.n.dim}, g dim {self.g.dim})")


def build_extension(fs: FactorSystem) -> ExtensionPresentation:
    """The product-coordinate Lie algebra of a factor system."""
    nd, gd = fs.n.dim, fs.g.dim
    table = {}

    def put(i, j, vec):
        entry = {k: c for k, c in enumerate(vec) if c != 0}
        if entry:
            table[(i, j)] = entry

    for i in range(nd):
        for j in range(i + 1, nd):
            put(i, j, tuple(fs.n.bracket_basis(i, j)) + zero_vec(gd))
    for i in range(nd):
        for a in range(gd):
            put(i, nd + a,
                tuple(vec_scale(Fraction(-1), fs.S.matrices[a].column(i))) + zero_vec(gd))
    for a in range(gd):
        for b in range(a + 1, gd):
            put(nd + a, nd + b,
                tuple(fs.omega.component((a, b))) + tuple(fs.g.bracket_basis(a, b)))
    labels = (tuple(f"n.{l}" for l in fs.n.labels)
              + tuple(f"g.{l}" for l in fs.g.labels))
    total = LieAlgebra(nd + gd, table, labels=labels)
    inclusion = Matrix.from_columns([unit_vec(nd + gd, i) for i in range(nd)],
                                    rows=nd + gd)
    projection = Matrix.from_columns(
        [zero_vec(gd)] * nd + [unit_vec(gd, a) for a in range(gd)], rows=gd)
    section = Matrix.from_columns([unit_vec(nd + gd, nd + a) for a in range(gd)],
                                  rows=nd + gd)
    return ExtensionPresentation(total, fs.n, fs.g, inclusion, projection, section,
                                 provenance=fs)


def extract_factor_system(ext: ExtensionPresentation,
                          sigma: Optional[Matrix] = None) -> FactorSystem:
    """The factor system induced by a linear section of the projection."""
    if sigma is None:
        sigma = ext.section
    if sigma.rows != ext.total.dim or sigma.cols != ext.g.dim:
        raise NotASectionError("section has the wrong shape")
    if (ext.projection @ sigma) != Matrix.identity(ext.g.dim):
        raise NotASectionError("the map is not a right inverse of the projection")
    total = ext.total
    matrices = []
    for a in range(ext.g.dim):
        sa = sigma.column(a)
        cols = []
        for i in range(ext.n.dim):
            w = total.bracket(sa, ext.inclusion.column(i))
            cols.append(ext.ideal_coordinates(w))
        matrices.append(Matrix.from_columns(cols, rows=ext.n.dim))
    table = {}
    for a in range(ext.g.dim):
        for b in range(a + 1, ext.g.dim):
            w = total.bracket(sigma.column(a), sigma.column(b))
            w = vec_sub(w, sigma.matvec(ext.g.bracket_basis(a, b)))
            coords = ext.ideal_coordinates(w)
            if not vec_is_zero(coords):
                table[(a, b)] = coords
    omega = Cochain(ext.g, 2, ext.n.dim, table)
    return FactorSystem(ext.n, ext.g, matrices, omega)


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------

def check_equivalence_map(alpha: Matrix, beta: Matrix, gamma: Cochain,
                          fs1: FactorSystem, fs2: FactorSystem) -> bool:
    """Decide whether (alpha, beta, gamma) assembles to an isomorphism.

    The transported pair of fs1 must equal the gauge translate of fs2 by
    gamma; when it does, the assembled map (n, x) -> (alpha n + gamma(beta x),
    beta x) is verified to preserve brackets between the built totals.
    """
    if fs1.n != fs2.n or fs1.g != fs2.g:
        raise DimensionMismatchError("factor systems must share kernel and quotient")
    alpha_inv = invert(alpha)
    beta_inv = invert(beta)
    if alpha_inv is None or not bracket_preserving(fs1.n, fs1.n, alpha):
        raise NotAHomomorphismError("alpha is not an automorphism of n")
    if beta_inv is None or not bracket_preserving(fs1.g, fs1.g, beta):
        raise NotAHomomorphismError("beta is not an automorphism of g")
    lhs_S = transport_outer_action(alpha, alpha_inv, beta_inv, fs1.S)
    lhs_omega = transport_cochain(alpha, beta_inv, fs1.omega)
    rhs_S, rhs_omega = gauge_action(gamma, fs2.S, fs2.omega)
    ok = lhs_S.matrices == rhs_S.matrices and lhs_omega == rhs_omega
    if ok:
        nd, gd = fs1.n.dim, fs1.g.dim
        cols = [tuple(alpha.column(i)) + zero_vec(gd) for i in range(nd)]
        for a in range(gd):
            bx = beta.column(a)
            cols.append(tuple(gamma.evaluate([bx])) + bx)
        phi = Matrix.from_columns(cols, rows=nd + gd)
        total1 = build_extension(fs1).total
        total2 = build_extension(fs2).total
        if not bracket_preserving(total1, total2, phi):
            raise InvariantViolation(
                "equivalence conditions hold but the assembled map fails; "
                "this indicates an internal inconsistency")
    return ok


@dataclass(frozen=True)
class EquivalenceWitness:
    gamma: Cochain
    matrix: Matrix

    @property
    def found(self) -> bool:
        return True


@dataclass(frozen=True)
class Inequivalent:
    stage: str  # "kernel-mismatch" or "class-difference"
    certificate: object

    @property
    def found(self) -> bool:
        return False


def equivalent_extensions(fs1: FactorSystem, fs2: FactorSystem):
    """Witness gamma with (S1, omega1) = gamma.(S2, omega2), or absence.

    Solving proceeds in two affine stages: ad(gamma0) = S1 - S2, then a
    center-valued correction of gamma0 absorbing the omega difference.
    Both stages are exact linear algebra.
    """
    if fs1.n != fs2.n or fs1.g != fs2.g:
        raise DimensionMismatchError("factor systems must share kernel and quotient")
    n_alg, g_alg = fs1.n, fs1.g
    nd, gd = n_alg.dim, g_alg.dim
    ad_cols = [n_alg.ad_matrix(k).flatten() for k in range(nd)]
    rows = []
    rhs = []
    for a in range(gd):
        diff = (fs1.S.matrices[a] - fs2.S.matrices[a]).flatten()
        for flat_idx in range(nd * nd):
            row = [0] * (gd * nd)
            for k in range(nd):
                row[a * nd + k] = ad_cols[k][flat_idx]
            rows.append(row)
            rhs.append(diff[flat_idx])
    system = Matrix(rows, cols=gd * nd) if rows else Matrix.zero(0, gd * nd)
    particular, _, certificate = solve_affine(system, rhs)
    if particular is None:
        return Inequivalent("kernel-mismatch", certificate)
    gamma0 = Cochain(g_alg, 1, nd,
                     {(a,): particular[a * nd:(a + 1) * nd] for a in range(gd)})
    delta = (fs1.omega - fs2.omega - covariant_differential(fs2.S, gamma0)
             - superbracket(n_alg, gamma0, gamma0).scale(HALF))
    z = center(n_alg)
    delta_z = restrict_cochain_to_subspace(delta, z)
    z_rep = fs2.S.restrict_to_center()
    d1 = differential_matrix(z_rep, 1)
    zeta_coords, _, certificate = solve_affine(d1, delta_z.coordinates())
    if zeta_coords is None:
        return Inequivalent("class-difference", certificate)
    zeta = embed_cochain_from_subspace(
        Cochain.from_coordinates(g_alg, 1, z.dim, zeta_coords), z)
    gamma = gamma0 + zeta
    ok = check_equivalence_map(Matrix.identity(nd), Matrix.identity(gd),
                               gamma, fs1, fs2)
    if not ok:
        raise InvariantViolation("solved equivalence system does not verify")
    nd_gd = nd + gd
    cols = [unit_vec(nd_gd, i) for i in range(nd)]
    for a in range(gd):
        cols.append(tuple(gamma.component((a,))) + unit_vec(gd, a))
    return EquivalenceWitness(gamma, Matrix.from_columns(cols, rows=nd_gd))


# ---------------------------------------------------------------------------
# kernels and obstructions
# ---------------------------------------------------------------------------

class GKernel:
    """An outer action with a stored curvature lift omega."""

    __slots__ = ("n", "g", "S", "omega")

    def __init__(self, n_alg: LieAlgebra, g_alg: LieAlgebra, S: OuterActionMap,
                 omega: Optional[Cochain] = None):
        if S.algebra != g_alg or S.space_dim != n_alg.dim:
            raise DimensionMismatchError("S does not map g into endomorphisms of n")
        for i, m in enumerate(S.matrices):
            if not is_derivation(n_alg, m):
                raise DimensionMismatchError(f"S(e{i}) is not a derivation of n")
        self.n = n_alg
        self.g = g_alg
        self.S = OuterActionMap(g_alg, S.matrices, target=n_alg, validate=False)
        if omega is None:
            omega = self._solve_omega()
        else:
            R = curvature(self.S)
            for key in increasing_tuples(g_alg.dim, 2):
                if R.component(key) != n_alg.ad(omega.component(key)).flatten():
                    raise NoLiftError(f"stored omega does not lift the curvature at {key}")
        self.omega = omega

    def _solve_omega(self) -> Cochain:
        n_alg, g_alg = self.n, self.g
        nd, gd = n_alg.dim, g_alg.dim
        R = curvature(self.S)
        c2 = cochain_space_dim(gd, 2, nd)
        pair_keys = list(increasing_tuples(gd, 2))
        ad_cols = [n_alg.ad_matrix(k).flatten() for k in range(nd)]
        rows = []
        rhs = []
        for r, key in enumerate(pair_keys):
            target = R.component(key)
            for flat_idx in range(nd * nd):
                row = [0] * c2
                for k in range(nd):
                    row[r * nd + k] = ad_cols[k][flat_idx]
                rows.append(row)
                rhs.append(target[flat_idx])
        system = Matrix(rows, cols=c2) if rows else Matrix.zero(0, c2)
        particular, _, certificate = solve_affine(system, rhs)
        if particular is None:
            raise NoLiftError(certificate)
        return Cochain.from_coordinates(g_alg, 2, nd, particular)

    @classmethod
    def from_factor_system(cls, fs: FactorSystem) -> "GKernel":
        return cls(fs.n, fs.g, fs.S, fs.omega)

    def center_rep(self) -> Representation:
        return self.S.restrict_to_center()

    def __repr__(self):
        return f"GKernel(n dim {self.n.dim}, g dim {self.g.dim})"


def kernels_equivalent(k1: GKernel, k2: GKernel) -> Optional[Cochain]:
    """gamma with S1 = S2 + ad(gamma), or None."""
    if k1.n != k2.n or k1.g != k2.g:
        raise DimensionMismatchError("kernels live over different pairs")
    n_alg, g_alg = k1.n, k1.g
    nd, gd = n_alg.dim, g_alg.dim
    ad_cols = [n_alg.ad_matrix(k).flatten() for k in range(nd)]
    rows = []
    rhs = []
    for a in range(gd):
        diff = (k1.S.matrices[a] - k2.S.matrices[a]).flatten()
        for flat_idx in range(nd * nd):
            row = [0] * (gd * nd)
            for k in range(nd):
                row[a * nd + k] = ad_cols[k][flat_idx]
            rows.append(row)
            rhs.append(diff[flat_idx])
    system = Matrix(rows, cols=gd * nd) if rows else Matrix.zero(0, gd * nd)
    particular, _, _ = solve_affine(system, rhs)
    if particular is None:
        return None
    return Cochain(g_alg, 1, nd,
                   {(a,): particular[a * nd:(a + 1) * nd] for a in range(gd)})


def obstruction_class(kernel: GKernel) -> CohomologyClass:
    """The class of d_S omega in degree-3 cohomology with center coefficients."""
    d_s_omega = covariant_differential(kernel.S, kernel.omega)
    z = center(kernel.n)
    z_cochain = restrict_cochain_to_subspace(d_s_omega, z)
    z_rep = kernel.center_rep()
    from .cochains import cochain_differential
    if not cochain_differential(z_rep, z_cochain).is_zero():
        raise InvariantViolation("d_S omega failed to be a relative cocycle")
    return cohomology(z_rep, 3).class_of(z_cochain)


@dataclass(frozen=True)
class ExtensionClassification:
    """Base point plus simply transitive translations for one kernel class."""

    kernel: GKernel
    base: FactorSystem
    h2: CohomologySpace
    translations: tuple  # n-valued 2-cochains, one per degree-2 class
    representatives: tuple  # FactorSystem per translation (base included first)

    @property
    def count_basis(self) -> int:
        return len(self.translations)


def classify_extensions(kernel: GKernel) -> ExtensionClassification:
    """Affine description of all extension classes realizing the kernel."""
    chi = obstruction_class(kernel)
    if not chi.is_zero():
        raise ObstructedError(chi)
    solutions = relative_cocycles(kernel.S, kernel.n)
    if isinstance(solutions, EmptyAffine):
        raise InvariantViolation(
            "vanishing obstruction but empty relative cocycle space: "
            + solutions.describe())
    base_omega = solutions.particular
    base = FactorSystem(kernel.n, kernel.g, kernel.S, base_omega)
    z = center(kernel.n)
    h2 = cohomology(kernel.center_rep(), 2)
    translations = tuple(embed_cochain_from_subspace(rep, z)
                         for rep in h2.representative_cochains())
    representatives = [base]
    for t in translations:
        representatives.append(FactorSystem(kernel.n, kernel.g, kernel.S,
                                            base_omega + t))
    for i, fs1 in enumerate(representatives):
        for fs2 in representatives[i + 1:]:
            if equivalent_extensions(fs1, fs2).found:
                raise InvariantViolation(
                    "distinct degree-2 classes produced equivalent extensions")
    return ExtensionClassification(kernel, base, h2, translations,
                                   tuple(representatives))


# ---------------------------------------------------------------------------
# the auxiliary quotient-stage algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientStage:
    """The algebra built from (ad S, proj omega) on n/z(n) x g, with the
    action of it on n and the inner-quotient map from n."""

    kernel: GKernel
    z: Subspace
    n_ad: LieAlgebra
    proj_ad: Matrix
    sect_ad: Matrix
    fs: FactorSystem
    ext: ExtensionPresentation
    rho: Representation
    alpha_matrix: Matrix

    @property
    def gs(self) -> LieAlgebra:
        return self.ext.total

    def z_rep_on_gs(self) -> Representation:
        """The center of n as a module of the stage algebra (through g)."""
        z_rep_g = self.kernel.center_rep()
        mats = []
        for i in range(self.gs.dim):
            x = self.ext.projection.column(i)
            mats.append(z_rep_g.matrix_of(x))
        return Representation(self.gs, self.z.dim, mats)

    def z_part(self, v: Sequence[Fraction]) -> tuple:
        """Center coordinates of an n-vector's component along z."""
        complement = self.sect_ad.matvec(self.proj_ad.matvec(v))
        coords = self.z.coordinates_of(vec_sub(tuple(Fraction(x) for x in v), complement))
        if coords is None:
            raise InvariantViolation("vector does not split along the center")
        return coords


def build_quotient_stage(kernel: GKernel) -> QuotientStage:
    """Assemble the stage algebra and the crossed-module data on it."""
    n_alg, g_alg = kernel.n, kernel.g
    z = center(n_alg)
    n_ad, proj_ad, sect_ad = quotient_algebra(n_alg, z)
    s1_mats = []
    for a in range(g_alg.dim):
        cols = [proj_ad.matvec(kernel.S.matrices[a].matvec(sect_ad.column(i)))
                for i in range(n_ad.dim)]
        s1_mats.append(Matrix.from_columns(cols, rows=n_ad.dim))
    omega_bar = Cochain(g_alg, 2, n_ad.dim,
                        {key: proj_ad.matvec(vec)
                         for key, vec in kernel.omega.coeffs.items()})
    fs = FactorSystem(n_ad, g_alg, s1_mats, omega_bar)
    ext = build_extension(fs)
    gs = ext.total
    rho_mats = []
    for i in range(n_ad.dim):
        rho_mats.append(n_alg.ad(sect_ad.column(i)))
    for a in range(g_alg.dim):
        rho_mats.append(kernel.S.matrices[a])
    rho = Representation(gs, n_alg.dim, rho_mats)
    alpha_cols = [tuple(proj_ad.column(j)) + zero_vec(g_alg.dim)
                  for j in range(n_alg.dim)]
    alpha_matrix = Matrix.from_columns(alpha_cols, rows=gs.dim)
    stage = QuotientStage(kernel, z, n_ad, proj_ad, sect_ad, fs, ext, rho,
                          alpha_matrix)
    if __debug__:
        psi_cols = [tuple(rho.matrices[i].flatten()) + tuple(ext.projection.column(i))
                    for i in range(gs.dim)]
        psi = Matrix.from_columns(psi_cols, rows=n_alg.dim * n_alg.dim + g_alg.dim)
        assert psi.rank() == gs.dim, "the stage embedding into der(n) x g is not injective"
    return stage


@dataclass(frozen=True)
class StageReduction:
    """An n-extension of g rewritten as a center-valued extension of the stage."""

    stage: QuotientStage
    f: Cochain        # 2-cochain on n_ad, center coordinates
    theta: dict       # (gs basis index, n_ad basis index) -> center coordinates
    f_tilde: Cochain  # 2-cocycle on gs extending theta
    solutions: AffineCochainSpace
    rebuilt: ExtensionPresentation
    rebuilt_fs: FactorSystem
    witness: Matrix   # isomorphism original total -> rebuilt total


def stage_theta(stage: QuotientStage) -> tuple[Cochain, dict]:
    """The center cocycle of n and the action table of the stage on n."""
    n_ad, sect_ad = stage.n_ad, stage.sect_ad
    f_table = {}
    for key in increasing_tuples(n_ad.dim, 2):
        i, j = key
        w = stage.kernel.n.bracket(sect_ad.column(i), sect_ad.column(j))
        w = vec_sub(w, sect_ad.matvec(n_ad.bracket_basis(i, j)))
        coords = stage.z.coordinates_of(w)
        if coords is None:
            raise InvariantViolation("the center cocycle left the center")
        if not vec_is_zero(coords):
            f_table[key] = coords
    f = Cochain(n_ad, 2, stage.z.dim, f_table)
    theta = {}
    for i in range(stage.gs.dim):
        for a in range(n_ad.dim):
            val = stage.z_part(stage.rho.matrices[i].matvec(sect_ad.column(a)))
            if not vec_is_zero(val):
                theta[(i, a)] = val
    return f, theta


def rebuild_from_cocycle(stage: QuotientStage, f_tilde: Cochain):
    """The center-by-stage extension of f_tilde, viewed as an n-extension of g.

    Returns the presentation and its extracted factor system in the
    original n-coordinates.
    """
    z_rep_gs = stage.z_rep_on_gs()
    zd = stage.z.dim
    abelian_z = LieAlgebra(zd)
    fs_tot = FactorSystem(abelian_z, stage.gs, z_rep_gs.matrices, f_tilde)
    ext_tot = build_extension(fs_tot)
    total = ext_tot.total
    nd = stage.kernel.n.dim
    gd = stage.kernel.g.dim
    nad = stage.n_ad.dim
    incl_cols = []
    for j in range(nd):
        v = unit_vec(nd, j)
        incl_cols.append(tuple(stage.z_part(v)) + tuple(stage.proj_ad.column(j))
                         + zero_vec(gd))
    inclusion = Matrix.from_columns(incl_cols, rows=total.dim)
    proj_cols = [zero_vec(gd)] * (zd + nad) + [unit_vec(gd, a) for a in range(gd)]
    projection = Matrix.from_columns(proj_cols, rows=gd)
    sect_cols = [unit_vec(total.dim, zd + nad + a) for a in range(gd)]
    section = Matrix.from_columns(sect_cols, rows=total.dim)
    rebuilt = ExtensionPresentation(total, stage.kernel.n, stage.kernel.g,
                                    inclusion, projection, section)
    rebuilt_fs = extract_factor_system(rebuilt)
    return rebuilt, rebuilt_fs


def reduce_via_stage(fs: FactorSystem) -> StageReduction:
    """Rewrite the extension of fs as a center-valued extension of the stage.

    The stage cocycle extending theta is read off the canonical section of
    the quotient map, verified to solve the constrained cocycle system,
    and the rebuilt algebra is matched to the original by an explicit
    bracket-preserving isomorphism.
    """
    kernel = GKernel.from_factor_system(fs)
    stage = build_quotient_stage(kernel)
    f, theta = stage_theta(stage)
    nd, gd, nad, zd = fs.n.dim, fs.g.dim, stage.n_ad.dim, stage.z.dim

    # theta restricted to the ideal block must reproduce f on all pairs.
    for i in range(nad):
        for j in range(nad):
            if theta.get((i, j), zero_vec(zd)) != f.value_at_indices((i, j)):
                raise InvariantViolation("theta does not restrict to the center cocycle")

    ghat = build_extension(fs)
    f_tilde_table = {}
    for key in increasing_tuples(stage.gs.dim, 2):
        i, j = key
        si = _stage_section_vec(stage, i, nd, gd, nad)
        sj = _stage_section_vec(stage, j, nd, gd, nad)
        w = ghat.total.bracket(si, sj)
        w = vec_sub(w, _stage_section_apply(stage, stage.gs.bracket_basis(i, j),
                                            nd, gd, nad))
        # the difference lies in the center block of the n-part
        n_part = w[:nd]
        if not vec_is_zero(w[nd:]):
            raise InvariantViolation("stage cocycle has a nonzero quotient part")
        coords = stage.z.coordinates_of(n_part)
        if coords is None:
            raise InvariantViolation("stage cocycle left the center")
        if not vec_is_zero(coords):
            f_tilde_table[key] = coords
    f_tilde = Cochain(stage.gs, 2, zd, f_tilde_table)

    ideal = Subspace.from_vectors(
        stage.gs.dim, [unit_vec(stage.gs.dim, i) for i in range(nad)])
    solutions = theta_constrained_cocycles(stage.gs, ideal, stage.z_rep_on_gs(),
                                           theta)
    if isinstance(solutions, EmptyAffine):
        raise ObstructedError(solutions)
    if not solutions.contains(f_tilde):
        raise InvariantViolation("the section cocycle misses the solution space")

    rebuilt, rebuilt_fs = rebuild_from_cocycle(stage, f_tilde)
    witness_cols = []
    for j in range(nd):
        witness_cols.append(tuple(stage.z_part(unit_vec(nd, j)))
                            + tuple(stage.proj_ad.column(j)) + zero_vec(gd))
    for a in range(gd):
        witness_cols.append(zero_vec(zd + nad) + unit_vec(gd, a))
    witness = Matrix.from_columns(witness_cols, rows=zd + nad + gd)
    if not bracket_preserving(ghat.total, rebuilt.total, witness):
        raise InvariantViolation("the stage rewrite witness fails to preserve brackets")
    if invert(witness) is None:
        raise InvariantViolation("the stage rewrite witness is singular")
    return StageReduction(stage, f, theta, f_tilde, solutions, rebuilt,
                          rebuilt_fs, witness)


def _stage_section_vec(stage: QuotientStage, i: int, nd: int, gd: int, nad: int):
    """Canonical lift of the i-th stage basis vector into n + g coordinates."""
    if i < nad:
        return tuple(stage.sect_ad.column(i)) + zero_vec(gd)
    return zero_vec(nd) + unit_vec(gd, i - nad)


def _stage_section_apply(stage: QuotientStage, v, nd: int, gd: int, nad: int):
    out = zero_vec(nd + gd)
    for i, c in enumerate(v):
        if c != 0:
            out = vec_add(out, vec_scale(c, _stage_section_vec(stage, i, nd, gd, nad)))
    return out


# ---------------------------------------------------------------------------
# pullback
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PullbackResult:
    fs: FactorSystem
    ext: ExtensionPresentation
    abelian_class: Optional[CohomologyClass]
    lift: Optional[Matrix]  # homomorphism h -> original total when it exists


def pullback_extension(ext: ExtensionPresentation, phi: Matrix,
                       h_alg: LieAlgebra) -> PullbackResult:
    """Pull an extension of g back along a homomorphism h -> g."""
    if not bracket_preserving(h_alg, ext.g, phi):
        raise NotAHomomorphismError("phi must be a Lie algebra homomorphism into g")
    base = extract_factor_system(ext)
    pulled_S = [base.S.matrix_of(phi.column(a)) for a in range(h_alg.dim)]
    pulled_omega = pullback_cochain(base.omega, phi, h_alg)
    fs = FactorSystem(base.n, h_alg, pulled_S, pulled_omega)
    pulled_ext = build_extension(fs)
    abelian_class = None
    lift = None
    if base.n.is_abelian():
        rep = Representation(h_alg, base.n.dim, pulled_S)
        space = cohomology(rep, 2)
        abelian_class = space.class_of(pulled_omega)
        if abelian_class.is_zero():
            d1 = differential_matrix(rep, 1)
            target = vec_scale(Fraction(-1), pulled_omega.coordinates())
            c_coords, _, _ = solve_affine(d1, target)
            correction = Cochain.from_coordinates(h_alg, 1, base.n.dim, c_coords)
            cols = []
            for a in range(h_alg.dim):
                v = ext.section.matvec(phi.column(a))
                v = vec_add(v, ext.inclusion.matvec(correction.component((a,))))
                cols.append(v)
            lift = Matrix.from_columns(cols, rows=ext.total.dim)
            if not bracket_preserving(h_alg, ext.total, lift):
                raise InvariantViolation("constructed lift fails to preserve brackets")
    return PullbackResult(fs, pulled_ext, abelian_class, lift)
