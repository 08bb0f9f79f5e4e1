"""Weierstrass group law, quartic-to-cubic transport and order certificates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from sympy import factorint

from .exact import Poly, is_squarefree, poly_eval, rat

MAZUR_BOUND = 12


class EllipticError(ValueError):
    pass


class ConstructionMismatch(EllipticError):
    """A closed-form point does not lie on the curve it was derived for."""


@dataclass(frozen=True)
class ECPoint:
    """Affine point, or the point at infinity when x and y are None."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise EllipticError("an affine point needs both coordinates")
        if self.x is not None:
            object.__setattr__(self, "x", rat(self.x))
            object.__setattr__(self, "y", rat(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "ECPoint":
        return self if self.is_infinity else ECPoint(self.x, -self.y)

    def __repr__(self) -> str:
        return "ECPoint(oo)" if self.is_infinity else f"ECPoint({self.x}, {self.y})"


INFINITY = ECPoint()


def point(x, y) -> ECPoint:
    return ECPoint(rat(x), rat(y))


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 = x^3 + a2 x^2 + a4 x + a6."""

    a2: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.discriminant() == 0:
            raise EllipticError(f"singular cubic {self}")

    @classmethod
    def short(cls, a4, a6) -> "WeierstrassCurve":
        return cls(0, a4, a6)

    def discriminant(self) -> Fraction:
        # discriminant of the cubic x^3 + a2 x^2 + a4 x + a6
        a, b, c = self.a2, self.a4, self.a6
        return a * a * b * b - 4 * b ** 3 - 4 * a ** 3 * c - 27 * c * c + 18 * a * b * c

    def rhs(self, x: Fraction) -> Fraction:
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def contains(self, P: ECPoint) -> bool:
        return P.is_infinity or P.y * P.y == self.rhs(P.x)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in (self.a2, self.a4, self.a6))

    def __str__(self) -> str:
        return f"y^2 = x^3 + ({self.a2})x^2 + ({self.a4})x + ({self.a6})"


def _check(E: WeierstrassCurve, P: ECPoint) -> None:
    if not E.contains(P):
        raise EllipticError(f"{P} is not on {E}")


def ec_add(E: WeierstrassCurve, P: ECPoint, Q: ECPoint) -> ECPoint:
    _check(E, P)
    _check(E, Q)
    return _add(E, P, Q)


def _add(E, P, Q):
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y != Q.y or P.y == 0:
            return INFINITY
        lam = (3 * P.x * P.x + 2 * E.a2 * P.x + E.a4) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - E.a2 - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return ECPoint(x3, y3)


def ec_neg(P: ECPoint) -> ECPoint:
    return -P


def ec_scalar_mul(E: WeierstrassCurve, n: int, P: ECPoint) -> ECPoint:
    _check(E, P)
    if n < 0:
        n, P = -n, -P
    result, base = INFINITY, P
    while n:
        if n & 1:
            result = _add(E, result, base)
        base = _add(E, base, base)
        n >>= 1
    return result


def multiples(E: WeierstrassCurve, P: ECPoint, count: int):
    """Yield (m, mP) for m = 1..count by repeated addition."""
    _check(E, P)
    Q = INFINITY
    for m in range(1, count + 1):
        Q = _add(E, Q, P)
        yield m, Q


# integral models and order certificates

def _scale_exponent(den: int, weight: int) -> dict:
    return {p: -(-e // weight) for p, e in factorint(den).items()}


def integral_model(E: WeierstrassCurve, P: ECPoint = INFINITY) -> tuple:
    """Smallest u > 0 making (u^2 a2, u^4 a4, u^6 a6) integral.

    Returns ``(E', P', u)`` with P' = (u^2 x, u^3 y).
    """
    need: dict = {}
    for coeff, w in ((E.a2, 2), (E.a4, 4), (E.a6, 6)):
        for p, e in _scale_exponent(coeff.denominator, w).items():
            need[p] = max(need.get(p, 0), e)
    u = 1
    for p, e in need.items():
        u *= p ** e
    E2 = WeierstrassCurve(E.a2 * u ** 2, E.a4 * u ** 4, E.a6 * u ** 6)
    P2 = P if P.is_infinity else ECPoint(P.x * u ** 2, P.y * u ** 3)
    return E2, P2, u


@dataclass(frozen=True)
class OrderCertificate:
    """Evidence that a point has infinite order, or its torsion order.

    ``verdict`` is "infinite" or "torsion".  For the Lutz-Nagell route,
    ``multiple`` is the n with nP non-integral on the integral model and
    ``coordinate`` names the offending coordinate and value.  For the Mazur
    route ``multiple`` is None and ``coordinate`` is None.  For torsion,
    ``order`` is the minimal n <= 12 with nP = oo.
    """

    verdict: str
    order: Optional[int] = None
    multiple: Optional[int] = None
    coordinate: Optional[tuple] = None
    scale: int = 1

    @property
    def infinite(self) -> bool:
        return self.verdict == "infinite"

    @property
    def evidence(self) -> str:
        if self.verdict == "torsion":
            return f"{self.order}P = oo"
        if self.multiple is not None:
            name, value = self.coordinate
            return f"lutz-nagell: {name}({self.multiple}P) = {value} on integral model (u={self.scale})"
        return f"mazur: nP != oo for all n <= {MAZUR_BOUND}"


def order_certificate(E: WeierstrassCurve, P: ECPoint) -> OrderCertificate:
    _check(E, P)
    if P.is_infinity:
        raise EllipticError("the point at infinity has order 1")
    E2, P2, u = integral_model(E, P)
    Q = INFINITY
    for n in range(1, MAZUR_BOUND + 1):
        Q = _add(E2, Q, P2)
        if Q.is_infinity:
            return OrderCertificate("torsion", order=n, scale=u)
        for name, c in (("x", Q.x), ("y", Q.y)):
            if c.denominator != 1:
                return OrderCertificate("infinite", multiple=n, coordinate=(name, c), scale=u)
    return OrderCertificate("infinite", scale=u)


def recheck_certificate(E: WeierstrassCurve, P: ECPoint, cert: OrderCertificate) -> bool:
    """Recompute the evidence recorded in ``cert``."""
    E2, P2, u = integral_model(E, P)
    if u != cert.scale:
        return False
    if cert.verdict == "torsion":
        n = cert.order
        return (ec_scalar_mul(E2, n, P2).is_infinity
                and all(not ec_scalar_mul(E2, k, P2).is_infinity for k in range(1, n)))
    if cert.multiple is not None:
        Q = ec_scalar_mul(E2, cert.multiple, P2)
        name, value = cert.coordinate
        return not Q.is_infinity and getattr(Q, name) == value and value.denominator != 1
    return all(not ec_scalar_mul(E2, n, P2).is_infinity for n in range(1, MAZUR_BOUND + 1))


# quartic models

def quartic_invariants(f: Poly) -> tuple:
    """Classical invariants I, J of a0 + a1 t + ... + a4 t^4."""
    e, d, c, b, a = (f.coeff(k) for k in range(5))
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c ** 3
    return I, J


@dataclass(frozen=True)
class QuarticModel:
    """z^2 = f(t) with a known rational point (t0, z0)."""

    f: Poly
    t0: Fraction
    z0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t0", rat(self.t0))
        object.__setattr__(self, "z0", rat(self.z0))
        if self.f.degree not in (3, 4):
            raise EllipticError(f"quartic model needs degree 3 or 4, got {self.f.degree}")
        if self.z0 * self.z0 != poly_eval(self.f, self.t0):
            raise EllipticError("base point is not on the quartic")
        if not is_squarefree(self.f):
            raise EllipticError("quartic has a repeated root")

    @property
    def base(self) -> tuple:
        return self.t0, self.z0

    def contains(self, t, z) -> bool:
        return rat(z) ** 2 == poly_eval(self.f, t)


@dataclass(frozen=True)
class TransportMaps:
    source: QuarticModel
    target: WeierstrassCurve
    forward: Callable
    backward: Callable


def quartic_to_weierstrass(Qm: QuarticModel) -> tuple:
    """Map z^2 = f(t) onto y^2 = x^3 - 27 I x - 27 J.

    The quartic is recentred so the base point sits at t = 0 with z0 != 0;
    the degree-2 map sending (0, z0) to infinity is then rescaled onto the
    I, J model.  ``backward`` returns None on the exceptional set (points
    over t = oo and 2-torsion images with y = 0).
    """
    t0, q = Qm.t0, Qm.z0
    if q == 0:
        raise EllipticError("base point with z0 = 0 is not supported; choose another base point")
    g = Qm.f.shift(t0)
    b, c, d = g.coeff(3), g.coeff(2), g.coeff(1)
    I, J = quartic_invariants(Qm.f)
    try:
        target = WeierstrassCurve(0, -27 * I, -27 * J)
    except EllipticError:
        raise EllipticError("degenerate quartic: 4 I^3 = J^2") from None

    a1 = d / q
    a3 = 2 * q * b
    b2 = a1 * a1 + 4 * (c - d * d / (4 * q * q))
    x_shift = 3 * b2 / 4
    half = Fraction(27, 2)

    def to_target(X, Y):
        return ECPoint(9 * X + x_shift, 27 * Y + half * (a1 * X + a3))

    def forward(t, z) -> ECPoint:
        s, v = rat(t) - t0, rat(z)
        if v * v != poly_eval(g, s):
            raise EllipticError(f"({t}, {z}) is not on the quartic")
        if s == 0:
            if v == q:
                return INFINITY
            X = -c + d * d / (4 * q * q)
            Y = -2 * b * q + c * d / q - d ** 3 / (4 * q ** 3)
            return to_target(X, Y)
        X = (2 * q * (v + q) + d * s) / (s * s)
        Y = (4 * q * q * (v + q) + 2 * q * (d * s + c * s * s) - d * d * s * s / (2 * q)) / s ** 3
        return to_target(X, Y)

    def backward(P: ECPoint):
        if not target.contains(P):
            raise EllipticError(f"{P} is not on {target}")
        if P.is_infinity:
            return (t0, q)
        X = (P.x - x_shift) / 9
        Y = (P.y - half * (a1 * X + a3)) / 27
        if Y == 0:
            return None
        s = (2 * q * (X + c) - d * d / (2 * q)) / Y
        v = -q + s * (s * X - d) / (2 * q)
        if v * v != poly_eval(g, s):
            return None
        return (s + t0, v)

    return target, TransportMaps(Qm, target, forward, backward)


# closed-form points on the I, J models of the Edwards-type quartics

def paper_point_twisted(a, u1, u2, curve: Optional[WeierstrassCurve] = None) -> ECPoint:
    """Closed-form point of the twisted Edwards auxiliary cubic.

    x = -12 (a u1^2 - 1)(a u2^2 - 1)(a u1^2 + a u2^2 - 3),
    y = -216 (a u1^2 - 1)^2 (a u2^2 - 1)^2.

    With ``curve`` given, raise ConstructionMismatch unless the point is on it.
    """
    a, u1, u2 = rat(a), rat(u1), rat(u2)
    al, be = a * u1 * u1 - 1, a * u2 * u2 - 1
    if al == 0 or be == 0:
        raise EllipticError("a*u^2 = 1 makes the closed-form point degenerate")
    P = ECPoint(-12 * al * be * (al + be - 1), -216 * al * al * be * be)
    if curve is not None and not curve.contains(P):
        raise ConstructionMismatch(f"closed-form point {P} is not on {curve}")
    return P


def paper_point_edwards(s2, s3, curve: Optional[WeierstrassCurve] = None) -> ECPoint:
    """P = (-12 (s2^2-1)(s3^2-1)(s2^2+s3^2-3), -216 (s2^2-1)^2 (s3^2-1)^2)."""
    return paper_point_twisted(1, s2, s3, curve)
