"""Polynomial current algebras and the degree-3 class of an invariant form.

The scalars live on A = t k[t] (polynomials vanishing at 0), with the
evaluation character chi(f) = f(1), the derivation D = d/dt and the
functional I(f) = integral of f over [0, 1].  On that ideal I compose
with D to give chi, which is exactly what the cyclic-cocycle identity
needs; evaluating the two-slot current cocycle's differential collapses
to (1/2) kappa(x'', [x, x']) chi(a a' a'').  For general polynomials the
boundary term at 0 survives and the identity picks up -(a a' a'')(0);
both conventions are exposed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .catalog import InvariantForm
from .cochains import Cochain, cochain_differential, increasing_tuples
from .cohomology import cohomology
from .errors import DimensionMismatchError, InputError
from .liealg import Representation
from .linalg import ZERO

DEFAULT_MAX_DEGREE = 32


class Polynomial:
    """A rational polynomial in one variable, exact arithmetic."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def t(cls) -> "Polynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return Polynomial(out)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial([c * a for a in self.coeffs])

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if i < len(self.coeffs) else ZERO

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def integral01(self) -> Fraction:
        return sum((c / (i + 1) for i, c in enumerate(self.coeffs)), ZERO)

    def at_zero(self) -> Fraction:
        return self.coeff(0)

    def at_one(self) -> Fraction:
        return sum(self.coeffs, ZERO)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"


def character(f: Polynomial) -> Fraction:
    """chi(f) = f(1)."""
    return f.at_one()


def functional(f: Polynomial) -> Fraction:
    """I(f) = integral of f over [0, 1]."""
    return f.integral01()


def _check_degree(f: Polynomial, max_degree: int, name: str) -> None:
    if f.degree > max_degree:
        raise InputError(f"{name} exceeds the degree bound {max_degree}")


def _check_vanishing(f: Polynomial, name: str) -> None:
    if f.at_zero() != 0:
        raise InputError(
            f"{name} has a nonzero constant term; the strict convention "
            "works on polynomials vanishing at 0 (pass strict=False to use "
            "the boundary-adjusted identity)")


def two_slot_cocycle(kappa: InvariantForm, a: Polynomial, x,
                     b: Polynomial, y) -> Fraction:
    """(1/2) I(a D(b) - b D(a)) kappa(x, y) on pure tensors."""
    scalar = functional(a * b.derivative() - b * a.derivative()) / 2
    return scalar * kappa.value(x, y)


def v2_cocycle_identity(kappa: InvariantForm, a: Polynomial, a1: Polynomial,
                        a2: Polynomial, x, x1, x2, strict: bool = True,
                        max_degree: int = DEFAULT_MAX_DEGREE):
    """Both sides of the current-cocycle identity and their equality.

    The left side expands the cyclic differential of the two-slot cocycle
    on pure tensors; the right side is the closed form
    (1/2) kappa(x2, [x, x1]) chi(a a1 a2).  Under the strict convention all
    polynomial inputs must vanish at 0; otherwise the right side carries
    the boundary correction -(a a1 a2)(0).
    """
    for f, name in ((a, "a"), (a1, "a1"), (a2, "a2")):
        _check_degree(f, max_degree, name)
        if strict:
            _check_vanishing(f, name)
    L = kappa.algebra
    lhs = ZERO
    # cyclic sum of the two-slot cocycle against the bracket of the others
    for (pa, px), (pb, py), (pc, pz) in (((a, x), (a1, x1), (a2, x2)),
                                         ((a1, x1), (a2, x2), (a, x)),
                                         ((a2, x2), (a, x), (a1, x1))):
        lhs += two_slot_cocycle(kappa, pc, pz, pa * pb, L.bracket(px, py))
    product = a * a1 * a2
    rhs = kappa.value(x2, L.bracket(x, x1)) * character(product) / 2
    if not strict:
        rhs -= kappa.value(x2, L.bracket(x, x1)) * product.at_zero() / 2
    return lhs, rhs, lhs == rhs


def cyclic_cocycle_defect(a: Polynomial, b: Polynomial, c: Polynomial) -> Fraction:
    """I(a D(bc)) + I(b D(ac)) + I(c D(ab)) - I(D(abc)).

    The cyclic sum is 2 D(abc) as a polynomial, so the defect equals
    I(D(abc)) = (abc)(1) - (abc)(0) and vanishes exactly when the triple
    product dies at both endpoints, as it does on the ideal the current
    construction lives on.
    """
    total = functional(a * (b * c).derivative())
    total += functional(b * (a * c).derivative())
    total += functional(c * (a * b).derivative())
    return total - functional((a * b * c).derivative())


def characteristic_cocycle(kappa: InvariantForm) -> Cochain:
    """eta(x, y, z) = (1/2) kappa([x, y], z) as a scalar 3-cochain."""
    L = kappa.algebra
    table = {}
    for key in increasing_tuples(L.dim, 3):
        i, j, k = key
        val = kappa.value(L.bracket_basis(i, j), _unit(L.dim, k)) / 2
        if val != 0:
            table[key] = (val,)
    return Cochain(L, 3, 1, table)


def v2_characteristic_cocycle(kappa: InvariantForm):
    """The degree-3 cocycle of an invariant form and its class.

    Returns (eta, class); eta is verified closed for the trivial module.
    """
    L = kappa.algebra
    eta = characteristic_cocycle(kappa)
    rep = Representation.trivial(L, 1)
    if not cochain_differential(rep, eta).is_zero():
        raise DimensionMismatchError("the invariant-form cocycle failed to close")
    space = cohomology(rep, 3)
    return eta, space.class_of(eta)


def _unit(n, i):
    from .linalg import unit_vec
    return unit_vec(n, i)
