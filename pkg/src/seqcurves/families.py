"""Generators for (twisted) Edwards and (general) Huff curves with S-sequences.

Every generator works the same way: the prescribed values impose one
"is a rational square" condition per value, the first two are absorbed by a
conic parametrization, and the last one leaves a genus one curve whose
rational points are produced as multiples of an infinite-order point.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .conics import ConicForm, ProjPoint, ProjectiveConic, affine_parametrize, second_intersection
from .curves import (
    AffinePoint,
    EdwardsCurve,
    Family,
    GeneralHuffCurve,
    HuffCurve,
    SequenceSpec,
    SpecError,
    TwistedEdwardsCurve,
)
from .elliptic import (
    ConstructionMismatch,
    ECPoint,
    EllipticError,
    OrderCertificate,
    QuarticModel,
    WeierstrassCurve,
    multiples,
    order_certificate,
    paper_point_twisted,
    quartic_invariants,
    quartic_to_weierstrass,
)
from .exact import Poly, RatFunc, poly_eval, poly_interpolate, rat, rat_sqrt, rationals_of_height


class InadmissibleError(ValueError):
    def __init__(self, report: "AdmissibilityReport"):
        super().__init__("inadmissible input: " + ", ".join(report.failures))
        self.report = report


class PartialResultWarning(UserWarning):
    pass


@dataclass
class AdmissibilityReport:
    ok: bool
    h_value: Optional[Fraction]
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)


@dataclass
class CurveCertificate:
    """One emitted curve with explicit points realizing the target values.

    ``provenance`` records how the curve was reached: the multiple index
    ``m`` (or slope), the parameter ``t`` and the auxiliary point used.
    """

    family: Family
    params: dict
    values: tuple
    witnesses: tuple
    provenance: dict = field(default_factory=dict)
    order: Optional[OrderCertificate] = None
    coordinate: str = "x"

    def curve(self):
        p = self.params
        if self.family is Family.EDWARDS:
            return EdwardsCurve(p["d"])
        if self.family is Family.TWISTED_EDWARDS:
            return TwistedEdwardsCurve(p["a"], p["d"])
        if self.family is Family.HUFF:
            return HuffCurve(p["a"], p["b"])
        return GeneralHuffCurve(p["a"], p["b"])

    def key(self) -> tuple:
        return tuple(sorted(self.params.items()))


@dataclass
class GenerationResult:
    """Certificates from one generate call plus the skipped-candidate log."""

    spec: SequenceSpec
    requested: int
    certificates: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    method: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return len(self.certificates) >= self.requested

    def __len__(self) -> int:
        return len(self.certificates)

    def __iter__(self):
        return iter(self.certificates)

    def __getitem__(self, k):
        return self.certificates[k]

    def _finish(self) -> "GenerationResult":
        if not self.complete:
            warnings.warn(
                f"{self.spec.family.value}: found {len(self.certificates)} of "
                f"{self.requested} requested curves ({len(self.skipped)} candidates skipped)",
                PartialResultWarning,
                stacklevel=3,
            )
        return self


def _check_witnesses(curve, witnesses) -> bool:
    return all(curve.contains(w) for w in witnesses)


# --------------------------------------------------------------------------
# (twisted) Edwards

def h_edwards(s2, s3) -> Fraction:
    s2, s3 = rat(s2), rat(s3)
    return -3 + 4 * s3 ** 2 + s2 ** 4 * s3 ** 4 + s2 ** 2 * (4 - 6 * s3 ** 2)


def h_twisted(a, u1, u2) -> Fraction:
    a, u1, u2 = rat(a), rat(u1), rat(u2)
    c0 = (-27 - 72 * u1 ** 2 + 36 * u1 ** 4 + 18 * u1 ** 2 * u2 ** 2 - 12 * u1 ** 4 * u2 ** 2
          - 18 * u2 ** 4 + 12 * u1 ** 2 * u2 ** 4 + u1 ** 4 * u2 ** 4 - 2 * u1 ** 2 * u2 ** 6 + u2 ** 8)
    c1 = (36 * u1 ** 2 - 12 * u1 ** 4 - 24 * u1 ** 2 * (-3 + u1 ** 2) + 36 * u2 ** 2
          + 72 * u1 ** 2 * u2 ** 2 - 24 * u1 ** 4 * u2 ** 2 - 12 * u1 ** 2 * u2 ** 4
          + 4 * u1 ** 4 * u2 ** 4 - 4 * (-3 + u1 ** 2) * u2 ** 6)
    c2 = (-144 * u1 ** 2 * u2 ** 2 + 36 * u1 ** 4 * u2 ** 2 + 18 * u2 ** 4 - 36 * u1 ** 2 * u2 ** 4
          + 4 * u1 ** 4 * u2 ** 4 + 2 * u1 ** 2 * u2 ** 6 - 2 * u2 ** 8)
    c3 = 36 * u1 ** 2 * u2 ** 4 + 4 * (-3 + u1 ** 2) * u2 ** 6
    c4 = u2 ** 8
    return (((c4 * a + c3) * a + c2) * a + c1) * a + c0


class EdwardsConstruction:
    """Shared machinery for a*x^2 + y^2 = 1 + d*x^2*y^2 with x-values 0, u1, u2, u3.

    With a = 1 this is the Edwards construction for (s2, s3, s4) = (u1, u2, u3)
    (the anchors -1, 0, 1 then come for free).
    """

    def __init__(self, a, u1, u2, u3=None):
        self.a, self.u1, self.u2 = rat(a), rat(u1), rat(u2)
        self.u3 = None if u3 is None else rat(u3)
        a, u1, u2 = self.a, self.u1, self.u2
        self.alpha = a * u1 * u1 - 1
        self.beta = a * u2 * u2 - 1
        # u2^2 (alpha i^2 + 1) = u1^2 (beta j^2 + 1), through (i, j) = (1, 1)
        self.conic = ConicForm(u2 * u2 * self.alpha, 0, -u1 * u1 * self.beta, 0, 0, u2 * u2 - u1 * u1)
        self.i_of_t, self.j_of_t = affine_parametrize(self.conic, AffinePoint(1, 1))
        self.denominator = Poly([u2 * u2 * self.alpha, 0, -u1 * u1 * self.beta])
        self.d_of_t = (self.alpha * self.i_of_t * self.i_of_t + 1) / (u1 * u1)

    # d(t) * B(t)^2 is a polynomial: B(t) clears the denominator of i(t)
    def d_times_b2(self) -> Poly:
        f = self.d_of_t * RatFunc(self.denominator ** 2)
        if f.den.degree != 0:
            raise ConstructionMismatch("d(t) B(t)^2 is not a polynomial")
        return f.num.scale(1 / f.den.lead())

    def quartic(self) -> Poly:
        """f(t) = (u3^2 d(t) - 1) B(t)^2 / (a u3^2 - 1); f(0) = B(0)^2."""
        u3 = self._need_u3()
        B2 = self.denominator ** 2
        return (self.d_times_b2().scale(u3 * u3) - B2).scale(1 / (self.a * u3 * u3 - 1))

    def quartic_by_interpolation(self, nodes: Sequence = (1, 2, 3, 4, 5, 6, 7, 8)) -> Poly:
        """Same quartic, rebuilt from point values of d(t) only."""
        u3 = self._need_u3()
        samples = []
        for t in nodes:
            d = self.d_of_t(t)
            if d is None:
                continue
            B = poly_eval(self.denominator, t)
            samples.append((t, (u3 * u3 * d - 1) * B * B / (self.a * u3 * u3 - 1)))
            if len(samples) == 5:
                break
        return poly_interpolate(samples)

    def _need_u3(self) -> Fraction:
        if self.u3 is None:
            raise ValueError("the last target value is required for the quartic")
        return self.u3

    @property
    def base_z(self) -> Fraction:
        return poly_eval(self.denominator, 0)

    def quartic_model(self) -> QuarticModel:
        return QuarticModel(self.quartic(), 0, self.base_z)

    def weierstrass(self) -> tuple:
        return quartic_to_weierstrass(self.quartic_model())

    def generator(self, transport) -> ECPoint:
        """Image of the second point (0, -z0) over the base fiber."""
        return transport.forward(0, -self.base_z)

    def limit_curve(self) -> WeierstrassCurve:
        """I, J model of z^2 = a d(t) B(t)^2, the curve carrying the closed-form point."""
        I, J = quartic_invariants(self.d_times_b2().scale(self.a))
        return WeierstrassCurve(0, -27 * I, -27 * J)


def edwards_d_of_t(s2, s3) -> RatFunc:
    return EdwardsConstruction(1, s2, s3).d_of_t


def twisted_d_of_t(a, u1, u2) -> RatFunc:
    return EdwardsConstruction(a, u1, u2).d_of_t


def _twisted_admissible(a, u1, u2, u3, anchors, h) -> AdmissibilityReport:
    a, u1, u2 = rat(a), rat(u1), rat(u2)
    failures = []
    notes = {}
    vals = [u1, u2] + ([rat(u3)] if u3 is not None else [])
    if len(set(vals)) != len(vals):
        failures.append("duplicate values")
    if any(v in anchors for v in vals):
        failures.append("anchor collision")
    if a == 0:
        failures.append("a = 0")
    if h == 0:
        failures.append("h = 0")
    if a * u1 * u1 == 1 or a * u2 * u2 == 1 or u2 == 0 or u1 == 0:
        failures.append("base point degenerate")
    if u3 is not None and a * rat(u3) ** 2 == 1:
        failures.append("base point degenerate")
    if failures:
        return AdmissibilityReport(False, h, failures, notes)
    con = EdwardsConstruction(a, u1, u2, u3)
    P = paper_point_twisted(a, u1, u2)
    limit = con.limit_curve()
    notes["closed_form_point"] = P
    notes["closed_form_on_limit_curve"] = limit.contains(P)
    if limit.contains(P):
        notes["closed_form_order"] = order_certificate(limit, P)
    if u3 is not None:
        try:
            E, T = con.weierstrass()
        except EllipticError as exc:
            failures.append("quartic degenerate")
            notes["error"] = str(exc)
            return AdmissibilityReport(False, h, failures, notes)
        notes["closed_form_on_auxiliary_curve"] = E.contains(P)
        G = con.generator(T)
        cert = order_certificate(E, G)
        notes["auxiliary_curve"] = E
        notes["generator"] = G
        notes["order"] = cert
        if not cert.infinite:
            failures.append("order certificate torsion")
    return AdmissibilityReport(not failures, h, failures, notes)


def edwards_admissible(s2, s3, s4=None) -> AdmissibilityReport:
    """Check the hypotheses for the Edwards construction with free values s2, s3 (, s4)."""
    return _twisted_admissible(1, s2, s3, s4, {-1, 0, 1}, h_edwards(s2, s3))


def twisted_admissible(a, u1, u2, u3=None) -> AdmissibilityReport:
    return _twisted_admissible(a, u1, u2, u3, {0}, h_twisted(a, u1, u2))


def _edwards_like(spec, a, u1, u2, u3, report, count, max_multiple, make_curve, family):
    con = EdwardsConstruction(a, u1, u2, u3)
    E, T = con.weierstrass()
    G = report.notes["generator"]
    result = GenerationResult(spec, count, method={
        "route": "quartic-multiples", "max_multiple": max_multiple,
        "auxiliary_curve": E, "generator": G,
    })
    seen = set()
    B = con.denominator
    for m, P in multiples(E, G, max_multiple):
        if len(result.certificates) >= count:
            break
        back = T.backward(P)
        if back is None:
            result.skipped.append((m, "exceptional point of the transport"))
            continue
        t, z = back
        i, j, d = con.i_of_t(t), con.j_of_t(t), con.d_of_t(t)
        Bt = poly_eval(B, t)
        if Bt == 0 or i is None or j is None or d is None:
            result.skipped.append((m, "pole of the parametrization"))
            continue
        if i == 0 or j == 0 or z == 0:
            result.skipped.append((m, "witness at infinity"))
            continue
        if d == 0 or d == con.a:
            result.skipped.append((m, "degenerate d"))
            continue
        if any(d * v * v == 1 for v in (con.u1, con.u2, con.u3)):
            result.skipped.append((m, "fiber denominator vanishes"))
            continue
        if d in seen:
            result.skipped.append((m, "duplicate d"))
            continue
        raw = [(con.u1, 1 / i), (con.u2, 1 / j), (con.u3, Bt / z)]
        curve, witnesses = make_curve(d, raw)
        if not _check_witnesses(curve, witnesses):
            raise ConstructionMismatch(f"multiple {m}: witnesses fail on {curve}")
        seen.add(d)
        result.certificates.append(CurveCertificate(
            family=family,
            params=curve.params(),
            values=spec.values,
            witnesses=tuple(witnesses),
            provenance={"m": m, "t": t, "z": z, "aux_point": (P.x, P.y)},
            order=report.notes["order"],
            coordinate=spec.coordinate,
        ))
    return result._finish()


def _require(spec: SequenceSpec, family: Family):
    if spec.family is not family:
        raise SpecError(f"expected a {family.value} spec, got {spec.family.value}")


def edwards_generate(spec: SequenceSpec, count: int = 3, max_multiple: int = 25) -> GenerationResult:
    _require(spec, Family.EDWARDS)
    s2, s3, s4 = spec.free_values()
    report = edwards_admissible(s2, s3, s4)
    if not report.ok:
        raise InadmissibleError(report)

    def make(d, raw):
        return EdwardsCurve(d), [AffinePoint(-1, 0), AffinePoint(0, 1), AffinePoint(1, 0)] + [
            AffinePoint(x, y) for x, y in raw]

    return _edwards_like(spec, 1, s2, s3, s4, report, count, max_multiple, make, Family.EDWARDS)


def twisted_generate(spec: SequenceSpec, count: int = 3, max_multiple: int = 25) -> GenerationResult:
    """Twisted Edwards curves with a fixed ``spec.extra['a']``.

    With ``spec.coordinate == 'y'`` the values {-1, 1, v2, v3, v4} are realized
    as y-coordinates.  This needs a = c^2: x -> c x turns the curve into the
    Edwards curve with parameter d / a, whose x/y symmetry reduces the problem
    to the Edwards x-construction.
    """
    _require(spec, Family.TWISTED_EDWARDS)
    if "a" not in spec.extra:
        raise SpecError("twisted Edwards generation needs a fixed parameter a")
    a = spec.extra["a"]
    if spec.coordinate == "y":
        return _twisted_y_generate(spec, a, count, max_multiple)
    u1, u2, u3 = spec.free_values()
    report = twisted_admissible(a, u1, u2, u3)
    if not report.ok:
        raise InadmissibleError(report)

    def make(d, raw):
        return TwistedEdwardsCurve(a, d), [AffinePoint(0, 1)] + [AffinePoint(x, y) for x, y in raw]

    return _edwards_like(spec, a, u1, u2, u3, report, count, max_multiple, make,
                         Family.TWISTED_EDWARDS)


def _twisted_y_generate(spec, a, count, max_multiple):
    c = rat_sqrt(a)
    if c is None or c == 0:
        report = AdmissibilityReport(False, None, ["y-sequences need a to be a nonzero square"])
        raise InadmissibleError(report)
    v2, v3, v4 = spec.free_values()
    report = edwards_admissible(v2, v3, v4)
    if not report.ok:
        raise InadmissibleError(report)

    def make(D, raw):
        curve = TwistedEdwardsCurve(a, a * D)
        # Edwards point (v, w) -> (w, v) by symmetry -> (w / c, v) on the twist
        pts = [AffinePoint(0, -1), AffinePoint(0, 1)] + [AffinePoint(w / c, v) for v, w in raw]
        return curve, pts

    return _edwards_like(spec, 1, v2, v3, v4, report, count, max_multiple, make,
                         Family.TWISTED_EDWARDS)


# --------------------------------------------------------------------------
# Huff

def huff_AB(s2, s3) -> tuple:
    s2, s3 = rat(s2), rat(s3)
    return s3 * (s2 * s2 - 1), s2 * (s3 * s3 - 1)


def huff_AB_alt(s2, s3) -> tuple:
    """The A = s3 s2^2 - s2 variant; kept because it fails huff_conic_consistent."""
    s2, s3 = rat(s2), rat(s3)
    return s3 * s2 * s2 - s2, s2 * s3 * s3 - s2


def huff_h(A, B) -> Fraction:
    A, B = rat(A), rat(B)
    return -4 + A * A - 3 * A * B + B * B


def huff_conic_consistent(A, B, s2, s3, p) -> bool:
    """Do A, B reproduce the q-equation implied by the two Huff relations at this p?

    With a : b fixed by a*s2*(p^2-1) = b*p*(s2^2-1), the relation at s3 reads
    a*s3*q^2 - b*(s3^2-1)*q - a*s3 = 0; the conic gives A*p*q^2 + B*(1-p^2)*q - A*p = 0.
    The two quadratics in q must be proportional.
    """
    A, B, s2, s3, p = map(rat, (A, B, s2, s3, p))
    a, b = p * (s2 * s2 - 1), s2 * (p * p - 1)
    u = (a * s3, -b * (s3 * s3 - 1), -a * s3)
    v = (A * p, B * (1 - p * p), -A * p)
    return all(u[k] * v[l] == u[l] * v[k] for k in range(3) for l in range(3))


def huff_cubic(A, B) -> WeierstrassCurve:
    A, B = rat(A), rat(B)
    return WeierstrassCurve((B - A) ** 2 - A * B, -2 * A * B * (B - A) ** 2, A * A * B * B * (B - A) ** 2)


def huff_point(A, B) -> ECPoint:
    A, B = rat(A), rat(B)
    return ECPoint(Fraction(0), A * B * (B - A))


def huff_search_generator(A, B, height: int = 60) -> Optional[ECPoint]:
    """Smallest-height t whose point on the cubic has infinite order, or None.

    R itself is never usable: doubling it lands on (AB, 0), so R has order 4
    for every A, B.
    """
    A, B = rat(A), rat(B)
    E = huff_cubic(A, B)
    k = A * (B - A)
    for t in rationals_of_height(height):
        z = rat_sqrt((A * t + B) * (t - 1) * (t * (B - A) - B))
        if not z:
            continue
        P = ECPoint(k * t, k * z)
        if order_certificate(E, P).infinite:
            return P
    return None


def huff_admissible(s2, s3, search_height: int = 60) -> AdmissibilityReport:
    s2, s3 = rat(s2), rat(s3)
    failures, notes = [], {}
    if s2 == s3:
        failures.append("duplicate values")
    if s2 in (-1, 0, 1) or s3 in (-1, 0, 1):
        failures.append("anchor collision")
    A, B = huff_AB(s2, s3)
    h = huff_h(A, B)
    notes["A"], notes["B"] = A, B
    if h == 0:
        failures.append("h = 0")
    if not failures and (A == 0 or B == 0 or A == B):
        failures.append("base point degenerate")
    if not failures:
        try:
            E = huff_cubic(A, B)
        except EllipticError:
            failures.append("base point degenerate")
        else:
            R = huff_point(A, B)
            if not E.contains(R):
                raise ConstructionMismatch(f"R = {R} is not on {E}")
            notes.update(auxiliary_curve=E, R=R, R_order=order_certificate(E, R))
            G = huff_search_generator(A, B, search_height)
            if G is None:
                failures.append("order certificate torsion")
                notes["search_height"] = search_height
            else:
                notes.update(generator=G, order=order_certificate(E, G))
    return AdmissibilityReport(not failures, h, failures, notes)


def normalize_ratio(a, b) -> tuple:
    """Scale (a, b) to coprime integers with the first nonzero entry positive."""
    a, b = rat(a), rat(b)
    den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    x, y = int(a * den), int(b * den)
    g = gcd(x, y)
    x, y = x // g, y // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return Fraction(x), Fraction(y)


def huff_generate(spec: SequenceSpec, count: int = 3, max_multiple: int = 25) -> GenerationResult:
    _require(spec, Family.HUFF)
    s2, s3 = spec.free_values()
    report = huff_admissible(s2, s3)
    if not report.ok:
        raise InadmissibleError(report)
    A, B = report.notes["A"], report.notes["B"]
    E, R = report.notes["auxiliary_curve"], report.notes["generator"]
    k = A * (B - A)
    result = GenerationResult(spec, count, method={
        "route": "cubic-multiples", "max_multiple": max_multiple,
        "auxiliary_curve": E, "generator": R, "A": A, "B": B,
    })
    seen = set()
    for m, P in multiples(E, R, max_multiple):
        if len(result.certificates) >= count:
            break
        if P.is_infinity:
            result.skipped.append((m, "point at infinity"))
            continue
        t, z = P.x / k, P.y / k
        if z == 0:
            result.skipped.append((m, "z = 0"))
            continue
        p, q = B * (t - 1) / z, (A * t + B) / z
        if p * p in (0, 1) or q * q in (0, 1):
            result.skipped.append((m, "degenerate ratio"))
            continue
        a, b = normalize_ratio(p * (s2 * s2 - 1), s2 * (p * p - 1))
        if a * a == b * b or a == 0 or b == 0:
            result.skipped.append((m, "degenerate ratio"))
            continue
        if a * s3 * (q * q - 1) != b * q * (s3 * s3 - 1):
            raise ConstructionMismatch(f"multiple {m}: second Huff relation fails")
        if (a, b) in seen:
            result.skipped.append((m, "duplicate a:b"))
            continue
        curve = HuffCurve(a, b)
        witnesses = [AffinePoint(-1, 1), AffinePoint(0, 0), AffinePoint(1, 1),
                     AffinePoint(s2, p), AffinePoint(s3, q)]
        if not _check_witnesses(curve, witnesses):
            raise ConstructionMismatch(f"multiple {m}: witnesses fail on {curve}")
        seen.add((a, b))
        result.certificates.append(CurveCertificate(
            family=Family.HUFF, params=curve.params(), values=spec.values,
            witnesses=tuple(witnesses),
            provenance={"m": m, "t": t, "z": z, "aux_point": (P.x, P.y)},
            order=report.notes["order"],
        ))
    return result._finish()


# --------------------------------------------------------------------------
# general Huff

def surface_conic(u1, u2, b) -> ProjectiveConic:
    """A i^2 + B j^2 + C i z + D j z = 0 in (i : j : z)."""
    u1, u2, b = rat(u1), rat(u2), rat(b)
    A, B = -u1 * u2, u1 * u2
    C, D = -u1 * u1 * u2 * b + u2, b * u1 * u2 * u2 - u1
    return ProjectiveConic.from_quadratic({(0, 0): A, (1, 1): B, (0, 2): C, (1, 2): D})


def surface_point(u1, u2, b, p, q) -> ProjPoint:
    """Second intersection of the line through (0:0:1) in direction (p:q:0)."""
    return second_intersection(surface_conic(u1, u2, b), ProjPoint(0, 0, 1), ProjPoint(p, q, 0))


def t_conic(u1, u2, u3, b, p) -> ProjectiveConic:
    """The conic in (q : T : Z), T = 1/ell, cut out by the u3 condition at fixed p."""
    u1, u2, u3, b, p = map(rat, (u1, u2, u3, b, p))
    zz = (b ** 2 * p ** 4 * u1 ** 5 * u2 ** 2 * u3 - 2 * b * p ** 4 * u1 ** 3 * u2 ** 2 * u3
          - b ** 2 * p ** 2 * u1 ** 4 * u2 * u3 + p ** 4 * u1 * u2 ** 2 * u3
          + 2 * b * p ** 2 * u1 ** 2 * u2 * u3 - p ** 2 * u2 * u3)
    qz = (-2 * b ** 2 * p ** 3 * u1 ** 4 * u2 ** 3 * u3 + 2 * b * p ** 3 * u1 ** 4 * u2 * u3
          + 2 * b * p ** 3 * u1 ** 2 * u2 ** 3 * u3 + b ** 2 * p * u1 ** 3 * u2 ** 2 * u3
          - 2 * p ** 3 * u1 ** 2 * u2 * u3 - b * p * u1 ** 3 * u3 - b * p * u1 * u2 ** 2 * u3
          + p * u1 * u3)
    qq = p ** 2 * u1 ** 3 * u3 * (b * u2 ** 2 - 1) ** 2
    return ProjectiveConic.from_quadratic({
        (2, 2): zz, (0, 2): qz, (0, 0): qq,
        (1, 2): -u1 * (b * u3 ** 2 - 1), (1, 1): -u1 * u3,
    })


def t_conic_base(u1, u2, b, p) -> ProjPoint:
    u1, u2, b, p = map(rat, (u1, u2, b, p))
    return ProjPoint(1, 0, u1 * (-1 + b * u2 ** 2) / (p * u2 * (-1 + b * u1 ** 2)))


def t_conic_de(u1, u2, u3, b, p, Q) -> tuple:
    """Closed-form (d, e) with d*P + e*Q the second point on the line through P and Q."""
    u1, u2, u3, b, p = map(rat, (u1, u2, u3, b, p))
    q1, q2, q3 = (rat(c) for c in Q)
    d = p * u2 * (b * u1 ** 2 - 1) * (
        q3 ** 2 * b ** 2 * p ** 4 * u1 ** 5 * u2 ** 2 * u3 - 2 * q3 ** 2 * b * p ** 4 * u1 ** 3 * u2 ** 2 * u3
        - q3 ** 2 * b ** 2 * p ** 2 * u1 ** 4 * u2 * u3 + q3 ** 2 * p ** 4 * u1 * u2 ** 2 * u3
        + 2 * q3 ** 2 * b * p ** 2 * u1 ** 2 * u2 * u3 - q3 ** 2 * p ** 2 * u2 * u3
        - u1 * q2 * q3 * b * u3 ** 2 + u1 * q2 * q3
        + p ** 2 * u1 ** 3 * u3 * q1 ** 2 * b ** 2 * u2 ** 4 - 2 * p ** 2 * u1 ** 3 * u3 * q1 ** 2 * b * u2 ** 2
        + p ** 2 * u1 ** 3 * u3 * q1 ** 2 - 2 * q1 * q3 * b ** 2 * p ** 3 * u1 ** 4 * u2 ** 3 * u3
        + 2 * q1 * q3 * b * p ** 3 * u1 ** 4 * u2 * u3 + 2 * q1 * q3 * b * p ** 3 * u1 ** 2 * u2 ** 3 * u3
        + q1 * q3 * b ** 2 * p * u1 ** 3 * u2 ** 2 * u3
        - 2 * q1 * q3 * p ** 3 * u1 ** 2 * u2 * u3
        - q1 * q3 * b * p * u1 ** 3 * u3 - q1 * q3 * b * p * u1 * u2 ** 2 * u3 + q1 * q3 * p * u1 * u3
        - u1 * u3 * q2 ** 2)
    e = u1 * (b * u2 ** 2 - 1) * (
        -p * u1 ** 3 * u3 * q1 * b ** 2 * u2 ** 2 + p ** 2 * u3 * q3 * u2 * b ** 2 * u1 ** 4
        + p * u1 * u3 * q1 * b * u2 ** 2
        - 2 * p ** 2 * u3 * q3 * u2 * b * u1 ** 2 + p * u1 ** 3 * u3 * q1 * b + u1 * q2 * b * u3 ** 2
        + p ** 2 * u3 * q3 * u2 - u1 * q2
        - p * u1 * u3 * q1)
    return d, e


def t_conic_de_point(u1, u2, u3, b, p, Q) -> ProjPoint:
    """Second point of the conic on the line through the base point and Q, via (d, e).

    The base point must be used in the exact normalization (1 : 0 : z0) for
    the closed forms to apply.
    """
    u1, u2, b, p = map(rat, (u1, u2, b, p))
    base = (Fraction(1), Fraction(0), u1 * (-1 + b * u2 ** 2) / (p * u2 * (-1 + b * u1 ** 2)))
    d, e = t_conic_de(u1, u2, u3, b, p, Q)
    return ProjPoint(*(d * base[k] + e * rat(Q[k]) for k in range(3)))


def general_huff_slope_candidate(u1, u2, u3, b, p, slope) -> dict:
    """Run the fixed-p recipe along one slope and report what it produces.

    The slope is dT/dq in the chart Z = 1 through the base point of the
    (q : T : Z) conic.  The returned dict carries the surface point, the
    value of a obtained from it, and whether each witness is on the curve.
    """
    u1, u2, u3, b, p = map(rat, (u1, u2, u3, b, p))
    C2 = t_conic(u1, u2, u3, b, p)
    base = t_conic_base(u1, u2, b, p)
    out = {"slope": rat(slope)}
    Q = second_intersection(C2, base, ProjPoint(1, slope, 0))
    out["qTZ"] = Q
    aff = Q.affine(2)
    if aff is None or aff[1] == 0:
        out["status"] = "T at infinity"
        return out
    q, T = aff
    S = surface_point(u1, u2, b, p, q)
    out["surface"] = S
    ij = S.affine(2)
    if ij is None or 0 in ij:
        out["status"] = "surface point at infinity"
        return out
    i, j = ij
    a = ((b * u1 ** 2 - 1) * i + u1 * i * i) / u1
    a_u2 = ((b * u2 ** 2 - 1) * j + u2 * j * j) / u2
    out.update(q=q, T=T, i=i, j=j, a=a, a_u2=a_u2)
    if a * b * (a - b) == 0:
        out["status"] = "degenerate a"
        return out
    G = GeneralHuffCurve(a, b)
    witnesses = [AffinePoint(0, 0), AffinePoint(u1, 1 / i), AffinePoint(u2, 1 / j), AffinePoint(u3, 1 / T)]
    out["witnesses"] = witnesses
    out["on_curve"] = [G.contains(w) for w in witnesses]
    out["status"] = "ok" if all(out["on_curve"]) else "witness off curve"
    return out


def _ghuff_check(spec: SequenceSpec) -> tuple:
    _require(spec, Family.GENERAL_HUFF)
    if "b" not in spec.extra:
        raise SpecError("general Huff generation needs a fixed parameter b")
    u1, u2, u3 = spec.free_values()
    b = spec.extra["b"]
    failures = []
    if any(b * u * u == 1 for u in (u1, u2, u3)):
        failures.append("base point degenerate")
    if b == 0:
        failures.append("b = 0")
    return u1, u2, u3, b, failures


def general_huff_generate_slopes(spec: SequenceSpec, count: int, slopes: Iterable) -> GenerationResult:
    """Fixed-(b, p) slope recipe; every candidate is verified before emission.

    Candidates whose witnesses do not all lie on the resulting curve are
    logged as skipped.
    """
    u1, u2, u3, b, failures = _ghuff_check(spec)
    if "p" not in spec.extra:
        failures.append("missing p")
    p = spec.extra.get("p")
    if p == 0:
        failures.append("p = 0")
    if failures:
        raise InadmissibleError(AdmissibilityReport(False, None, failures))
    slopes = [rat(s) for s in slopes]
    result = GenerationResult(spec, count, method={"route": "slopes", "slopes": slopes, "p": p})
    seen = set()
    for s in slopes:
        if len(result.certificates) >= count:
            break
        try:
            cand = general_huff_slope_candidate(u1, u2, u3, b, p, s)
        except (ValueError, ZeroDivisionError) as exc:
            result.skipped.append((s, f"degenerate slope: {exc}"))
            continue
        if cand["status"] != "ok":
            result.skipped.append((s, cand["status"]))
            continue
        a = cand["a"]
        if a in seen:
            result.skipped.append((s, "duplicate a"))
            continue
        seen.add(a)
        curve = GeneralHuffCurve(a, b)
        result.certificates.append(CurveCertificate(
            family=Family.GENERAL_HUFF, params=curve.params(), values=spec.values,
            witnesses=tuple(cand["witnesses"]), provenance={"slope": s, "q": cand["q"]},
        ))
    return result._finish()


class GeneralHuffConstruction:
    """x (a y^2 - 1) = y (b x^2 - 1) with x-values 0, u1, u2, u3 and b fixed.

    A point with x = u exists iff a + k_u^2/4 is a square, k_u = (b u^2 - 1)/u,
    so the admissible a form the genus one curve X^2 - Y^2 = c1, X^2 - W^2 = c2.
    Writing X - Y = s gives z^2 = s^4 + (2 c1 - 4 c2) s^2 + c1^2 with z = 2 s W.
    """

    def __init__(self, u1, u2, u3, b):
        self.u1, self.u2, self.u3, self.b = map(rat, (u1, u2, u3, b))
        self.k = [(self.b * u * u - 1) / u for u in (self.u1, self.u2, self.u3)]
        k1, k2, k3 = self.k
        self.c1 = (k1 * k1 - k2 * k2) / 4
        self.c2 = (k1 * k1 - k3 * k3) / 4

    def quartic_model(self) -> QuarticModel:
        c1, c2 = self.c1, self.c2
        return QuarticModel(Poly([c1 * c1, 0, 2 * c1 - 4 * c2, 0, 1]), 0, c1)

    def point_of_a(self, a, signs=(1, 1, 1)):
        """(s, z) on the quartic for a known a with all three squares rational."""
        roots = [rat_sqrt(a + k * k / 4) for k in self.k]
        if any(r is None for r in roots):
            return None
        X, Y, W = (sg * r for sg, r in zip(signs, roots))
        s = X - Y
        if s == 0:
            return None
        return s, 2 * s * W

    def solve(self, s, z) -> Optional[dict]:
        if s == 0:
            return None
        X = (s + self.c1 / s) / 2
        Y = (self.c1 / s - s) / 2
        W = z / (2 * s)
        k1, k2, k3 = self.k
        a = X * X - k1 * k1 / 4
        return {"a": a, "i": X - k1 / 2, "j": Y - k2 / 2, "T": W - k3 / 2}


def general_huff_admissible(u1, u2, u3, b) -> AdmissibilityReport:
    """Hypotheses for the fixed-b general Huff construction with values 0, u1, u2, u3."""
    u1, u2, u3, b = map(rat, (u1, u2, u3, b))
    failures, notes = [], {}
    vals = [u1, u2, u3]
    if len(set(vals)) != 3:
        failures.append("duplicate values")
    if 0 in vals:
        failures.append("anchor collision")
    if b == 0 or any(b * u * u == 1 for u in vals if u != 0):
        failures.append("base point degenerate")
    if failures:
        return AdmissibilityReport(False, None, failures, notes)
    con = GeneralHuffConstruction(u1, u2, u3, b)
    try:
        E, T = quartic_to_weierstrass(con.quartic_model())
    except EllipticError:
        return AdmissibilityReport(False, None, ["base point degenerate"], notes)
    G = T.forward(*con.point_of_a(Fraction(0)))
    cert = order_certificate(E, G)
    notes.update(construction=con, auxiliary_curve=E, transport=T, generator=G, order=cert)
    if not cert.infinite:
        failures.append("order certificate torsion")
    return AdmissibilityReport(not failures, None, failures, notes)


def general_huff_generate(spec: SequenceSpec, count: int = 3, max_multiple: int = 25) -> GenerationResult:
    """General Huff curves for fixed b via multiples on the genus one curve of a."""
    _require(spec, Family.GENERAL_HUFF)
    if "b" not in spec.extra:
        raise SpecError("general Huff generation needs a fixed parameter b")
    u1, u2, u3 = spec.free_values()
    b = spec.extra["b"]
    report = general_huff_admissible(u1, u2, u3, b)
    if not report.ok:
        raise InadmissibleError(report)
    con, E, T = report.notes["construction"], report.notes["auxiliary_curve"], report.notes["transport"]
    G, cert = report.notes["generator"], report.notes["order"]
    result = GenerationResult(spec, count, method={
        "route": "quartic-multiples", "max_multiple": max_multiple,
        "auxiliary_curve": E, "generator": G,
    })
    seen = set()
    for m, P in multiples(E, G, max_multiple):
        if len(result.certificates) >= count:
            break
        back = T.backward(P)
        if back is None:
            result.skipped.append((m, "exceptional point of the transport"))
            continue
        sol = con.solve(*back)
        if sol is None:
            result.skipped.append((m, "s = 0"))
            continue
        a, i, j, Tv = sol["a"], sol["i"], sol["j"], sol["T"]
        if a * b * (a - b) == 0:
            result.skipped.append((m, "degenerate a"))
            continue
        if 0 in (i, j, Tv):
            result.skipped.append((m, "witness at infinity"))
            continue
        if a in seen:
            result.skipped.append((m, "duplicate a"))
            continue
        a_u2 = ((b * u2 ** 2 - 1) * j + u2 * j * j) / u2
        if a_u2 != a:
            raise ConstructionMismatch(f"multiple {m}: the two forms of a disagree")
        curve = GeneralHuffCurve(a, b)
        witnesses = [AffinePoint(0, 0), AffinePoint(u1, 1 / i), AffinePoint(u2, 1 / j), AffinePoint(u3, 1 / Tv)]
        if not _check_witnesses(curve, witnesses):
            raise ConstructionMismatch(f"multiple {m}: witnesses fail on {curve}")
        seen.add(a)
        result.certificates.append(CurveCertificate(
            family=Family.GENERAL_HUFF, params=curve.params(), values=spec.values,
            witnesses=tuple(witnesses),
            provenance={"m": m, "t": back[0], "z": back[1], "aux_point": (P.x, P.y)},
            order=cert,
        ))
    return result._finish()


def generate(spec: SequenceSpec, count: int = 3, max_multiple: int = 25, slopes=None) -> GenerationResult:
    if spec.family is Family.EDWARDS:
        return edwards_generate(spec, count, max_multiple)
    if spec.family is Family.TWISTED_EDWARDS:
        return twisted_generate(spec, count, max_multiple)
    if spec.family is Family.HUFF:
        return huff_generate(spec, count, max_multiple)
    if slopes is not None:
        return general_huff_generate_slopes(spec, count, slopes)
    return general_huff_generate(spec, count, max_multiple)
