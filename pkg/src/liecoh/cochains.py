"""Alternating multilinear calculus on a Lie algebra.

Cochains are stored on strictly increasing index tuples; evaluation at
arbitrary tuples inserts the permutation sign.  The wedge product is the
shuffle sum, which equals the Alt formula with its 1/(p!q!) factor but
never divides: char 0 keeps every identity exact.

The covariant differential of a linear map S into endomorphisms is
S wedge + d (trivial coefficients); its square is wedging with the
curvature of S, and curvature is computed both from the bracket formula
and from the calculus, cross-checked in debug runs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Optional, Sequence

from .config import degree_cap
from .errors import (DegreeCapExceededError, DegreeMismatchError,
                     DimensionMismatchError, NotADerivationError)
from .liealg import LieAlgebra, Representation, is_derivation
from .linalg import (Matrix, ZERO, vec_add, vec_is_zero, vec_scale, vec_sub,
                     zero_vec)

HALF = Fraction(1, 2)


def check_degree(p: int) -> int:
    cap = degree_cap()
    if p > cap:
        raise DegreeCapExceededError(p, cap)
    return p


def increasing_tuples(n: int, p: int):
    """All strictly increasing p-tuples below n, in lexicographic order."""
    return combinations(range(n), p)


def sort_with_sign(idx: Sequence[int]):
    """(sorted tuple, sign) or (None, 0) when an index repeats."""
    idx = list(idx)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idx)):
        if idx[i - 1] == idx[i]:
            return None, 0
    return tuple(idx), sign


def shuffle_sign(positions: Sequence[int]) -> int:
    """Sign of the permutation sending (positions, complement) to 0..n-1."""
    inversions = sum(pos - r for r, pos in enumerate(positions))
    return -1 if inversions % 2 else 1


class Cochain:
    """Degree-p alternating multilinear map with vector values."""

    __slots__ = ("algebra", "degree", "value_dim", "coeffs")

    def __init__(self, algebra: LieAlgebra, degree: int, value_dim: int, coeffs=None):
        check_degree(degree)
        self.algebra = algebra
        self.degree = degree
        self.value_dim = value_dim
        table = {}
        for key, vec in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise DegreeMismatchError(f"key {key} has the wrong length for degree {degree}")
            if any(not 0 <= i < algebra.dim for i in key):
                raise DimensionMismatchError(f"key {key} is out of range")
            if any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                raise DimensionMismatchError(f"key {key} is not strictly increasing")
            vec = tuple(Fraction(x) for x in vec)
            if len(vec) != value_dim:
                raise DimensionMismatchError("coefficient vector has the wrong length")
            if not vec_is_zero(vec):
                table[key] = vec
        self.coeffs = table

    @classmethod
    def zero(cls, algebra: LieAlgebra, degree: int, value_dim: int) -> "Cochain":
        return cls(algebra, degree, value_dim)

    @classmethod
    def from_vector(cls, algebra: LieAlgebra, vec: Sequence[Fraction]) -> "Cochain":
        """Degree-0 cochain: a plain vector."""
        return cls(algebra, 0, len(vec), {(): vec})

    @classmethod
    def from_matrix(cls, algebra: LieAlgebra, m: Matrix) -> "Cochain":
        """Degree-1 cochain: column i is the value at e_i."""
        if m.cols != algebra.dim:
            raise DimensionMismatchError("column count disagrees with the algebra dimension")
        return cls(algebra, 1, m.rows,
                   {(i,): m.column(i) for i in range(algebra.dim)})

    def as_vector(self) -> tuple:
        if self.degree != 0:
            raise DegreeMismatchError("only degree-0 cochains are vectors")
        return self.component(())

    def as_matrix(self) -> Matrix:
        if self.degree != 1:
            raise DegreeMismatchError("only degree-1 cochains are matrices")
        return Matrix.from_columns([self.component((i,)) for i in range(self.algebra.dim)],
                                   rows=self.value_dim)

    def component(self, key) -> tuple:
        return self.coeffs.get(tuple(key), zero_vec(self.value_dim))

    def value_at_indices(self, idx: Sequence[int]) -> tuple:
        """Value at a tuple of basis indices, alternation sign included."""
        if len(idx) != self.degree:
            raise DegreeMismatchError("index tuple length disagrees with the degree")
        key, sign = sort_with_sign(idx)
        if key is None:
            return zero_vec(self.value_dim)
        vec = self.coeffs.get(key)
        if vec is None:
            return zero_vec(self.value_dim)
        return vec if sign == 1 else vec_scale(Fraction(-1), vec)

    def evaluate(self, args: Sequence[Sequence[Fraction]]) -> tuple:
        """Fully multilinear alternating evaluation at coefficient vectors."""
        if len(args) != self.degree:
            raise DegreeMismatchError(
                f"expected {self.degree} arguments, got {len(args)}")
        args = [tuple(Fraction(x) for x in v) for v in args]
        for v in args:
            if len(v) != self.algebra.dim:
                raise DimensionMismatchError("argument length disagrees with the algebra")
        supports = [[i for i, x in enumerate(v) if x != 0] for v in args]
        out = zero_vec(self.value_dim)
        for idx in product(*supports):
            val = self.value_at_indices(idx)
            if vec_is_zero(val):
                continue
            c = Fraction(1)
            for v, i in zip(args, idx):
                c *= v[i]
            out = vec_add(out, vec_scale(c, val))
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def _compatible(self, other: "Cochain") -> None:
        if self.algebra != other.algebra:
            raise DimensionMismatchError("cochains live over different algebras")
        if self.degree != other.degree:
            raise DegreeMismatchError("cochain degrees differ")
        if self.value_dim != other.value_dim:
            raise DimensionMismatchError("cochain value dimensions differ")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        table = dict(self.coeffs)
        for key, vec in other.coeffs.items():
            table[key] = vec_add(table.get(key, zero_vec(self.value_dim)), vec)
        return Cochain(self.algebra, self.degree, self.value_dim, table)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def scale(self, c) -> "Cochain":
        c = Fraction(c)
        if c == 0:
            return Cochain(self.algebra, self.degree, self.value_dim)
        return Cochain(self.algebra, self.degree, self.value_dim,
                       {k: vec_scale(c, v) for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and self.algebra == other.algebra
                and self.degree == other.degree and self.value_dim == other.value_dim
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.value_dim, tuple(sorted(self.coeffs.items()))))

    def coordinates(self) -> tuple:
        """Flat coordinates: keys in lexicographic order, values contiguous."""
        out = []
        for key in increasing_tuples(self.algebra.dim, self.degree):
            out.extend(self.component(key))
        return tuple(out)

    @classmethod
    def from_coordinates(cls, algebra: LieAlgebra, degree: int, value_dim: int,
                         coords: Sequence[Fraction]) -> "Cochain":
        keys = list(increasing_tuples(algebra.dim, degree))
        if len(coords) != len(keys) * value_dim:
            raise DimensionMismatchError("coordinate vector has the wrong length")
        table = {}
        for r, key in enumerate(keys):
            table[key] = tuple(coords[r * value_dim:(r + 1) * value_dim])
        return cls(algebra, degree, value_dim, table)

    def __repr__(self):
        return f"Cochain(degree={self.degree}, value_dim={self.value_dim})"


def cochain_space_dim(algebra_dim: int, degree: int, value_dim: int) -> int:
    from math import comb
    return comb(algebra_dim, degree) * value_dim


class EquivariantPairing:
    """Bilinear map U x V -> W usable as a wedge multiplier.

    When witness representations are supplied they are checked to
    intertwine the pairing on all basis triples.
    """

    __slots__ = ("left_dim", "right_dim", "out_dim", "_fn", "witness")

    def __init__(self, left_dim: int, right_dim: int, out_dim: int,
                 fn: Callable[[tuple, tuple], tuple],
                 witness: Optional[tuple] = None):
        self.left_dim = left_dim
        self.right_dim = right_dim
        self.out_dim = out_dim
        self._fn = fn
        self.witness = witness
        if witness is not None:
            self._check_equivariance()

    def apply(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
        if len(u) != self.left_dim or len(v) != self.right_dim:
            raise DimensionMismatchError("pairing arguments have the wrong lengths")
        return tuple(self._fn(tuple(u), tuple(v)))

    def tensor(self) -> tuple:
        """3-index table t[k][i][j] with m(u,v)_k = sum t[k][i][j] u_i v_j."""
        from .linalg import unit_vec
        cols = [[self.apply(unit_vec(self.left_dim, i), unit_vec(self.right_dim, j))
                 for j in range(self.right_dim)] for i in range(self.left_dim)]
        return tuple(tuple(tuple(cols[i][j][k] for j in range(self.right_dim))
                           for i in range(self.left_dim))
                     for k in range(self.out_dim))

    def _check_equivariance(self):
        rep_u, rep_v, rep_w = self.witness
        if (rep_u.space_dim != self.left_dim or rep_v.space_dim != self.right_dim
                or rep_w.space_dim != self.out_dim):
            raise DimensionMismatchError("witness module dimensions disagree with the pairing")
        from .linalg import unit_vec
        g_dim = rep_u.algebra.dim
        for x in range(g_dim):
            for i in range(self.left_dim):
                ui = unit_vec(self.left_dim, i)
                xui = rep_u.act(x, ui)
                for j in range(self.right_dim):
                    vj = unit_vec(self.right_dim, j)
                    lhs = rep_w.act(x, self.apply(ui, vj))
                    rhs = vec_add(self.apply(xui, vj), self.apply(ui, rep_v.act(x, vj)))
                    if lhs != rhs:
                        raise DimensionMismatchError(
                            f"pairing is not equivariant at basis triple ({x},{i},{j})")

    @classmethod
    def from_tensor(cls, tensor, witness=None) -> "EquivariantPairing":
        tensor = tuple(tuple(tuple(Fraction(x) for x in row) for row in plane)
                       for plane in tensor)
        out_dim = len(tensor)
        left_dim = len(tensor[0]) if out_dim else 0
        right_dim = len(tensor[0][0]) if out_dim and left_dim else 0

        def fn(u, v):
            return tuple(
                sum((tensor[k][i][j] * u[i] * v[j]
                     for i in range(left_dim) if u[i] != 0
                     for j in range(right_dim) if v[j] != 0), ZERO)
                for k in range(out_dim))

        return cls(left_dim, right_dim, out_dim, fn, witness=witness)

    @classmethod
    def scalar_multiplication(cls) -> "EquivariantPairing":
        return cls(1, 1, 1, lambda u, v: (u[0] * v[0],))

    @classmethod
    def bilinear_form(cls, gram: Matrix) -> "EquivariantPairing":
        return cls(gram.rows, gram.cols, 1,
                   lambda u, v: (sum((x * y for x, y in zip(u, gram.matvec(v))), ZERO),))

    @classmethod
    def lie_bracket(cls, V: LieAlgebra) -> "EquivariantPairing":
        return cls(V.dim, V.dim, V.dim, V.bracket)

    @classmethod
    def evaluation(cls, m: int) -> "EquivariantPairing":
        """End(V) x V -> V on row-major flattened endomorphisms."""

        def fn(u, v):
            return tuple(sum((u[k * m + l] * v[l] for l in range(m)), ZERO)
                         for k in range(m))

        return cls(m * m, m, m, fn)

    @classmethod
    def composition(cls, m: int) -> "EquivariantPairing":
        """End(V) x End(V) -> End(V) on row-major flattened endomorphisms."""

        def fn(u, v):
            return tuple(sum((u[i * m + l] * v[l * m + j] for l in range(m)), ZERO)
                         for i in range(m) for j in range(m))

        return cls(m * m, m * m, m * m, fn)

    @classmethod
    def commutator(cls, m: int) -> "EquivariantPairing":
        comp = cls.composition(m)
        return cls(m * m, m * m, m * m,
                   lambda u, v: vec_sub(comp.apply(u, v), comp.apply(v, u)))


def wedge(m: EquivariantPairing, a: Cochain, b: Cochain) -> Cochain:
    """Shuffle-sum product of degree p + q."""
    if a.algebra != b.algebra:
        raise DimensionMismatchError("cochains live over different algebras")
    if a.value_dim != m.left_dim or b.value_dim != m.right_dim:
        raise DimensionMismatchError("cochain values do not match the pairing")
    p, q = a.degree, b.degree
    check_degree(p + q)
    n = a.algebra.dim
    table = {}
    positions = list(combinations(range(p + q), p))
    for key in increasing_tuples(n, p + q):
        total = zero_vec(m.out_dim)
        for pos in positions:
            left_key = tuple(key[i] for i in pos)
            va = a.coeffs.get(left_key)
            if va is None:
                continue
            pos_set = set(pos)
            right_key = tuple(key[i] for i in range(p + q) if i not in pos_set)
            vb = b.coeffs.get(right_key)
            if vb is None:
                continue
            term = m.apply(va, vb)
            if shuffle_sign(pos) < 0:
                term = vec_scale(Fraction(-1), term)
            total = vec_add(total, term)
        if not vec_is_zero(total):
            table[key] = total
    return Cochain(a.algebra, p + q, m.out_dim, table)


def superbracket(V: LieAlgebra, a: Cochain, b: Cochain) -> Cochain:
    """Wedge with the bracket of the value algebra V."""
    if a.value_dim != V.dim or b.value_dim != V.dim:
        raise DimensionMismatchError("cochain values do not match the value algebra")
    return wedge(EquivariantPairing.lie_bracket(V), a, b)


def cochain_differential(rep: Representation, c: Cochain) -> Cochain:
    """The degree-raising differential of the module given by rep.

    (df)(x_0..x_p) = sum_j (-1)^j x_j.f(..omit j..)
                   + sum_{i<j} (-1)^{i+j} f([x_i,x_j], ..omit i,j..).
    """
    if rep.algebra != c.algebra:
        raise DimensionMismatchError("representation and cochain algebras differ")
    if rep.space_dim != c.value_dim:
        raise DimensionMismatchError("module dimension disagrees with cochain values")
    p = c.degree
    check_degree(p + 1)
    L = c.algebra
    n = L.dim
    trivial = rep.is_trivial()
    table = {}
    for key in increasing_tuples(n, p + 1):
        total = zero_vec(c.value_dim)
        if not trivial:
            for j in range(p + 1):
                rest = key[:j] + key[j + 1:]
                val = c.coeffs.get(rest)
                if val is None:
                    continue
                term = rep.act(key[j], val)
                if j % 2:
                    term = vec_scale(Fraction(-1), term)
                total = vec_add(total, term)
        for i in range(p + 1):
            for j in range(i + 1, p + 1):
                bracket = L.bracket_basis(key[i], key[j])
                if vec_is_zero(bracket):
                    continue
                rest = tuple(key[r] for r in range(p + 1) if r != i and r != j)
                sign = -1 if (i + j) % 2 else 1
                for k, coeff in enumerate(bracket):
                    if coeff == 0:
                        continue
                    val = c.value_at_indices((k,) + rest)
                    if vec_is_zero(val):
                        continue
                    total = vec_add(total, vec_scale(sign * coeff, val))
        if not vec_is_zero(total):
            table[key] = total
    return Cochain(L, p + 1, c.value_dim, table)


def trivial_differential(c: Cochain) -> Cochain:
    return cochain_differential(Representation.trivial(c.algebra, c.value_dim), c)


class OuterActionMap:
    """A linear map from the algebra into endomorphisms of a value space.

    With ``target`` set, each matrix is checked to be a derivation of the
    target algebra; without it the map lands in plain endomorphisms.
    """

    __slots__ = ("algebra", "matrices", "space_dim", "target")

    def __init__(self, algebra: LieAlgebra, matrices: Sequence[Matrix],
                 target: Optional[LieAlgebra] = None, validate: bool = True,
                 space_dim: Optional[int] = None):
        matrices = tuple(matrices)
        if len(matrices) != algebra.dim:
            raise DimensionMismatchError("one matrix per basis element is required")
        if matrices:
            space_dim = matrices[0].rows
        elif target is not None:
            space_dim = target.dim
        elif space_dim is None:
            raise DimensionMismatchError("cannot infer the value dimension")
        for m in matrices:
            if m.rows != space_dim or m.cols != space_dim:
                raise DimensionMismatchError("endomorphism matrices must be square and equal-sized")
        if target is not None:
            if target.dim != space_dim:
                raise DimensionMismatchError("target dimension disagrees with the matrices")
            if validate:
                for i, m in enumerate(matrices):
                    if not is_derivation(target, m):
                        raise NotADerivationError(f"S(e{i}) is not a derivation of the target")
        self.algebra = algebra
        self.matrices = matrices
        self.space_dim = space_dim
        self.target = target

    @classmethod
    def zero(cls, algebra: LieAlgebra, target: LieAlgebra) -> "OuterActionMap":
        z = Matrix.zero(target.dim, target.dim)
        return cls(algebra, [z] * algebra.dim, target=target)

    def matrix_of(self, u: Sequence[Fraction]) -> Matrix:
        out = Matrix.zero(self.space_dim, self.space_dim)
        for i, a in enumerate(u):
            if a != 0:
                out = out + self.matrices[i].scale(a)
        return out

    def as_end_cochain(self) -> Cochain:
        m = self.space_dim
        return Cochain(self.algebra, 1, m * m,
                       {(i,): mat.flatten() for i, mat in enumerate(self.matrices)})

    def restrict_to_center(self) -> Representation:
        """The induced module structure on the center of the target."""
        if self.target is None:
            raise DimensionMismatchError("restriction needs a target algebra")
        from .liealg import center
        z = center(self.target)
        mats = []
        for m in self.matrices:
            cols = []
            for b in z.basis:
                coords = z.coordinates_of(m.matvec(b))
                if coords is None:
                    raise NotADerivationError("a derivation did not preserve the center")
                cols.append(coords)
            mats.append(Matrix.from_columns(cols, rows=z.dim))
        return Representation(self.algebra, z.dim, mats)

    def add_inner(self, gamma: Cochain) -> "OuterActionMap":
        """S + ad(gamma(.)) for an n-valued 1-cochain gamma."""
        if self.target is None:
            raise DimensionMismatchError("adding an inner part needs a target algebra")
        if gamma.degree != 1 or gamma.value_dim != self.target.dim:
            raise DimensionMismatchError("gamma must be a 1-cochain valued in the target")
        mats = [m + self.target.ad(gamma.component((i,)))
                for i, m in enumerate(self.matrices)]
        return OuterActionMap(self.algebra, mats, target=self.target)

    def __eq__(self, other) -> bool:
        return (isinstance(other, OuterActionMap) and self.algebra == other.algebra
                and self.matrices == other.matrices)

    def __hash__(self):
        return hash((self.algebra, self.matrices))

    def __repr__(self):
        return f"OuterActionMap(dim g={self.algebra.dim}, space={self.space_dim})"


def covariant_differential(S: OuterActionMap, c: Cochain) -> Cochain:
    """S wedge c plus the trivial-coefficient differential."""
    if S.algebra != c.algebra:
        raise DimensionMismatchError("map and cochain algebras differ")
    if S.space_dim != c.value_dim:
        raise DimensionMismatchError("endomorphism size disagrees with cochain values")
    ev = EquivariantPairing.evaluation(S.space_dim)
    return wedge(ev, S.as_end_cochain(), c) + trivial_differential(c)


def curvature(S: OuterActionMap) -> Cochain:
    """[S(x), S(y)] - S([x, y]) on basis pairs, as an End-valued 2-cochain."""
    L = S.algebra
    m = S.space_dim
    table = {}
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            val = (S.matrices[i].commutator(S.matrices[j])
                   - S.matrix_of(L.bracket_basis(i, j))).flatten()
            if not vec_is_zero(val):
                table[(i, j)] = val
    result = Cochain(L, 2, m * m, table)
    if __debug__:
        s_coch = S.as_end_cochain()
        comm = EquivariantPairing.commutator(m)
        calculus = trivial_differential(s_coch) + wedge(comm, s_coch, s_coch).scale(HALF)
        assert calculus == result, "curvature formulas disagree"
    return result


def gauge_action(gamma: Cochain, S: OuterActionMap, omega: Cochain):
    """(S + ad gamma, omega + d_S gamma + [gamma,gamma]/2)."""
    if S.target is None:
        raise DimensionMismatchError("the gauge action needs derivations of a target algebra")
    n_alg = S.target
    if gamma.degree != 1 or gamma.value_dim != n_alg.dim:
        raise DimensionMismatchError("gamma must be a 1-cochain valued in the kernel algebra")
    if omega.degree != 2 or omega.value_dim != n_alg.dim:
        raise DimensionMismatchError("omega must be a 2-cochain valued in the kernel algebra")
    new_S = S.add_inner(gamma)
    correction = covariant_differential(S, gamma) + superbracket(n_alg, gamma, gamma).scale(HALF)
    return new_S, omega + correction
