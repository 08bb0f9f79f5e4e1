"""Edwards, twisted Edwards, Huff and general Huff models over Q."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Union

from .exact import rat, rat_sqrt


class CurveError(ValueError):
    """Parameters violate a model's nondegeneracy conditions."""


class FiberError(ValueError):
    """A coordinate fiber cannot be described as a finite set of points."""


class WholeLineError(FiberError):
    """The fiber equation vanishes identically."""


@dataclass(frozen=True)
class AffinePoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", rat(self.x))
        object.__setattr__(self, "y", rat(self.y))

    def __iter__(self):
        yield self.x
        yield self.y


def solve_quadratic(c2, c1, c0) -> list:
    """Rational roots of c2*y**2 + c1*y + c0 = 0, sorted descending.

    A vanishing leading coefficient falls back to the linear equation.
    """
    c2, c1, c0 = rat(c2), rat(c1), rat(c0)
    if c2 == 0:
        if c1 == 0:
            if c0 == 0:
                raise WholeLineError("equation vanishes identically")
            return []
        return [-c0 / c1]
    disc = c1 * c1 - 4 * c2 * c0
    r = rat_sqrt(disc)
    if r is None:
        return []
    roots = {(-c1 + r) / (2 * c2), (-c1 - r) / (2 * c2)}
    return sorted(roots, reverse=True)


@dataclass(frozen=True)
class TwistedEdwardsCurve:
    """a*x^2 + y^2 = 1 + d*x^2*y^2."""

    a: Fraction
    d: Fraction

    family = "twisted_edwards"

    def __post_init__(self):
        a, d = rat(self.a), rat(self.d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "d", d)
        if a == 0 or d == 0 or a == d:
            raise CurveError(f"singular twisted Edwards curve a={a}, d={d}")

    def equation(self, x, y) -> Fraction:
        return self.a * x * x + y * y - 1 - self.d * x * x * y * y

    def contains(self, P) -> bool:
        x, y = P
        return self.equation(rat(x), rat(y)) == 0

    def fiber_x(self, x0) -> list:
        x0 = rat(x0)
        den = self.d * x0 * x0 - 1
        if den == 0:
            raise FiberError(f"fiber over x={x0} undefined: d*x^2 = 1")
        y = rat_sqrt((self.a * x0 * x0 - 1) / den)
        if y is None:
            return []
        return sorted({y, -y}, reverse=True)

    def fiber_y(self, y0) -> list:
        y0 = rat(y0)
        # x^2 * (a - d*y0^2) = 1 - y0^2
        return solve_quadratic(self.a - self.d * y0 * y0, 0, y0 * y0 - 1)

    def params(self) -> dict:
        return {"a": self.a, "d": self.d}


@dataclass(frozen=True)
class EdwardsCurve(TwistedEdwardsCurve):
    """x^2 + y^2 = 1 + d*x^2*y^2."""

    a: Fraction = Fraction(1)
    d: Fraction = Fraction(0)

    family = "edwards"

    def __init__(self, d):
        object.__setattr__(self, "a", Fraction(1))
        object.__setattr__(self, "d", rat(d))
        if self.d == 0 or self.d == 1:
            raise CurveError(f"singular Edwards curve d={self.d}")

    def params(self) -> dict:
        return {"d": self.d}


@dataclass(frozen=True)
class HuffCurve:
    """a*x*(y^2 - 1) = b*y*(x^2 - 1)."""

    a: Fraction
    b: Fraction

    family = "huff"

    def __post_init__(self):
        a, b = rat(self.a), rat(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if a * a == b * b:
            raise CurveError(f"singular Huff curve: a^2 = b^2 ({a}, {b})")

    def equation(self, x, y) -> Fraction:
        return self.a * x * (y * y - 1) - self.b * y * (x * x - 1)

    def contains(self, P) -> bool:
        x, y = P
        return self.equation(rat(x), rat(y)) == 0

    def fiber_x(self, x0) -> list:
        x0 = rat(x0)
        return solve_quadratic(self.a * x0, -self.b * (x0 * x0 - 1), -self.a * x0)

    def fiber_y(self, y0) -> list:
        y0 = rat(y0)
        return solve_quadratic(self.b * y0, -self.a * (y0 * y0 - 1), -self.b * y0)

    def params(self) -> dict:
        return {"a": self.a, "b": self.b}


@dataclass(frozen=True)
class GeneralHuffCurve:
    """x*(a*y^2 - 1) = y*(b*x^2 - 1)."""

    a: Fraction
    b: Fraction

    family = "general_huff"

    def __post_init__(self):
        a, b = rat(self.a), rat(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if a * b * (a - b) == 0:
            raise CurveError(f"singular general Huff curve a={a}, b={b}")

    def equation(self, x, y) -> Fraction:
        return x * (self.a * y * y - 1) - y * (self.b * x * x - 1)

    def contains(self, P) -> bool:
        x, y = P
        return self.equation(rat(x), rat(y)) == 0

    def fiber_x(self, x0) -> list:
        x0 = rat(x0)
        return solve_quadratic(self.a * x0, -(self.b * x0 * x0 - 1), -x0)

    def fiber_y(self, y0) -> list:
        y0 = rat(y0)
        return solve_quadratic(self.b * y0, -(self.a * y0 * y0 - 1), -y0)

    def params(self) -> dict:
        return {"a": self.a, "b": self.b}


Curve = Union[EdwardsCurve, TwistedEdwardsCurve, HuffCurve, GeneralHuffCurve]


def contains(curve: Curve, P) -> bool:
    return curve.contains(P)


def fiber_x(curve: Curve, x0) -> list:
    return curve.fiber_x(x0)


def fiber_y(curve: Curve, y0) -> list:
    return curve.fiber_y(y0)


def make_curve(family: str, params: dict) -> Curve:
    """Build a curve from a family tag and a parameter mapping."""
    fam = Family.parse(family)
    p = {k: rat(v) for k, v in params.items()}
    try:
        if fam is Family.EDWARDS:
            return EdwardsCurve(p["d"])
        if fam is Family.TWISTED_EDWARDS:
            return TwistedEdwardsCurve(p["a"], p["d"])
        if fam is Family.HUFF:
            return HuffCurve(p["a"], p["b"])
        return GeneralHuffCurve(p["a"], p["b"])
    except KeyError as exc:
        raise CurveError(f"missing parameter {exc.args[0]!r} for {fam.value}") from None


class Family(str, Enum):
    EDWARDS = "edwards"
    TWISTED_EDWARDS = "twisted_edwards"
    HUFF = "huff"
    GENERAL_HUFF = "general_huff"

    @classmethod
    def parse(cls, text) -> "Family":
        if isinstance(text, Family):
            return text
        aliases = {"twisted": cls.TWISTED_EDWARDS, "ghuff": cls.GENERAL_HUFF}
        key = str(text).strip().lower()
        if key in aliases:
            return aliases[key]
        return cls(key)


_ANCHORS = {
    Family.EDWARDS: ((-1, 0, 1), 6),
    Family.TWISTED_EDWARDS: ((0,), 4),
    Family.HUFF: ((-1, 0, 1), 5),
    Family.GENERAL_HUFF: ((0,), 4),
}


class SpecError(ValueError):
    """A sequence specification is malformed."""


@dataclass(frozen=True)
class SequenceSpec:
    """Target values S for one family, plus fixed extra parameters.

    ``extra`` holds ``a`` for twisted Edwards and ``b``, ``p`` for general Huff.
    ``coordinate`` is "y" only for the twisted Edwards y-sequence variant.
    """

    family: Family
    values: tuple
    extra: dict = field(default_factory=dict)
    coordinate: str = "x"

    def __post_init__(self):
        fam = Family.parse(self.family)
        object.__setattr__(self, "family", fam)
        vals = tuple(rat(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "extra", {k: rat(v) for k, v in dict(self.extra).items()})
        if len(set(vals)) != len(vals):
            raise SpecError(f"values are not pairwise distinct: {[str(v) for v in vals]}")
        if self.coordinate not in ("x", "y"):
            raise SpecError(f"coordinate must be 'x' or 'y', got {self.coordinate!r}")
        if self.coordinate == "y":
            if fam is not Family.TWISTED_EDWARDS:
                raise SpecError("y-coordinate sequences are only supported for twisted Edwards")
            anchors, size = (-1, 1), 5
        else:
            anchors, size = _ANCHORS[fam]
        if len(vals) != size:
            raise SpecError(f"{fam.value} needs exactly {size} values, got {len(vals)}")
        missing = [a for a in anchors if Fraction(a) not in vals]
        if missing:
            raise SpecError(f"{fam.value} values must contain {list(anchors)}; missing {missing}")

    def free_values(self) -> list:
        """Values other than the family anchors, in the given order."""
        anchors = (-1, 1) if self.coordinate == "y" else _ANCHORS[self.family][0]
        return [v for v in self.values if v not in {Fraction(a) for a in anchors}]
