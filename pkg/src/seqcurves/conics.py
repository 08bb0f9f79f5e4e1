"""Rational parametrization of conics through a known rational point."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .curves import AffinePoint
from .exact import Poly, RatFunc, rat


class ConicError(ValueError):
    pass


@dataclass(frozen=True)
class ConicForm:
    """Q(x, y) = c20 x^2 + c11 xy + c02 y^2 + c10 x + c01 y + c00."""

    c20: Fraction
    c11: Fraction
    c02: Fraction
    c10: Fraction = Fraction(0)
    c01: Fraction = Fraction(0)
    c00: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("c20", "c11", "c02", "c10", "c01", "c00"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.c20 == self.c11 == self.c02 == 0:
            raise ConicError("degree-2 part of the conic vanishes")

    def __call__(self, x, y):
        return (self.c20 * x * x + self.c11 * x * y + self.c02 * y * y
                + self.c10 * x + self.c01 * y + self.c00)


def affine_parametrize(C: ConicForm, base: AffinePoint) -> tuple:
    """Parametrize C by the slope t of lines through ``base``.

    Returns ``(x(t), y(t))`` with x = x0 + u(t), y = y0 + t*u(t); the second
    root u(t) comes from Vieta, so no square roots are taken.  Only the
    vertical line through the base point is missed.
    """
    x0, y0 = rat(base.x), rat(base.y)
    if C(x0, y0) != 0:
        raise ConicError(f"base point ({x0}, {y0}) is not on the conic")
    quad = Poly([C.c20, C.c11, C.c02])
    lin = Poly([2 * C.c20 * x0 + C.c11 * y0 + C.c10,
                C.c11 * x0 + 2 * C.c02 * y0 + C.c01])
    if lin.is_zero():
        raise ConicError("base point is a singular point of the conic")
    u = RatFunc(-lin, quad)
    t = RatFunc(Poly.t())
    return u + x0, t * u + y0


def compose_conic(C: ConicForm, x: RatFunc, y: RatFunc) -> RatFunc:
    return (C.c20 * x * x + C.c11 * x * y + C.c02 * y * y
            + C.c10 * x + C.c01 * y + RatFunc(C.c00))


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^2 stored in canonical form.

    Coordinates are coprime integers with the first nonzero one positive.
    """

    coords: tuple

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, str)):
            coords = tuple(coords[0])
        cs = [rat(c) for c in coords]
        if len(cs) != 3:
            raise ValueError("projective plane points have three coordinates")
        if all(c == 0 for c in cs):
            raise ValueError("(0:0:0) is not a projective point")
        den = reduce(lcm, (c.denominator for c in cs), 1)
        ints = [int(c * den) for c in cs]
        g = reduce(gcd, ints, 0)
        ints = [v // g for v in ints]
        if next(v for v in ints if v) < 0:
            ints = [-v for v in ints]
        object.__setattr__(self, "coords", tuple(Fraction(v) for v in ints))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def affine(self, k: int = 2) -> tuple:
        """Dehomogenize by coordinate ``k``; None when it vanishes."""
        if self.coords[k] == 0:
            return None
        return tuple(c / self.coords[k] for i, c in enumerate(self.coords) if i != k)


@dataclass(frozen=True)
class ProjectiveConic:
    """X^T M X = 0 for a symmetric 3x3 rational matrix M."""

    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(rat(v) for v in row) for row in self.matrix)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise ConicError("conic matrix must be 3x3")
        if any(m[i][j] != m[j][i] for i in range(3) for j in range(3)):
            raise ConicError("conic matrix must be symmetric")
        if all(v == 0 for r in m for v in r):
            raise ConicError("zero conic")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_quadratic(cls, coeffs: dict) -> "ProjectiveConic":
        """Build from monomial coefficients keyed by index pairs.

        ``{(0, 0): a, (0, 1): b, ...}`` means a*X0^2 + b*X0*X1 + ...
        """
        m = [[Fraction(0)] * 3 for _ in range(3)]
        for (i, j), c in coeffs.items():
            c = rat(c)
            if i == j:
                m[i][i] += c
            else:
                m[i][j] += c / 2
                m[j][i] += c / 2
        return cls(tuple(tuple(r) for r in m))

    def bilinear(self, P, Q) -> Fraction:
        m = self.matrix
        return sum(P[i] * m[i][j] * Q[j] for i in range(3) for j in range(3))

    def __call__(self, P) -> Fraction:
        return self.bilinear(P, P)


def second_intersection(C: ProjectiveConic, P: ProjPoint, direction: ProjPoint) -> ProjPoint:
    """Other intersection of the line through P and ``direction`` with C.

    On the line m*P + n*D the conic restricts to 2mn B(P, D) + n^2 C(D), so the
    second point is C(D)*P - 2*B(P, D)*D.  Tangent lines return P.
    """
    if C(P) != 0:
        raise ConicError(f"{tuple(map(str, P))} is not on the conic")
    if ProjPoint(direction) == ProjPoint(P):
        raise ConicError("direction coincides with the base point")
    m = C(direction)
    n = -2 * C.bilinear(P, direction)
    coords = [m * p + n * d for p, d in zip(P, direction)]
    if all(c == 0 for c in coords):
        # line lies inside a degenerate conic
        raise ConicError("line is contained in the conic")
    return ProjPoint(coords)
