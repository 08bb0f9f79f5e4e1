import random
from fractions import Fraction as F

import pytest

from seqcurves.elliptic import (
    INFINITY,
    ConstructionMismatch,
    ECPoint,
    EllipticError,
    QuarticModel,
    WeierstrassCurve,
    ec_add,
    ec_neg,
    ec_scalar_mul,
    integral_model,
    multiples,
    order_certificate,
    paper_point_edwards,
    paper_point_twisted,
    quartic_invariants,
    quartic_to_weierstrass,
    recheck_certificate,
)
from seqcurves.exact import Poly
from seqcurves.families import EdwardsConstruction, huff_cubic, huff_point
from seqcurves.oracle import quartic_search

E1 = WeierstrassCurve(0, -1, 0)  # y^2 = x^3 - x


def test_identity_and_two_torsion():
    P = ECPoint(0, 0)
    assert ec_add(E1, P, INFINITY) == P
    assert ec_add(E1, INFINITY, P) == P
    assert ec_add(E1, P, P).is_infinity
    Q = ECPoint(-4, 6)
    E = WeierstrassCurve(0, -25, 0)
    assert E.contains(Q)
    assert ec_add(E, Q, ec_neg(Q)).is_infinity


def test_off_curve_rejected():
    with pytest.raises(EllipticError):
        ec_add(E1, ECPoint(1, 1), INFINITY)
    with pytest.raises(EllipticError):
        ec_scalar_mul(E1, 2, ECPoint(2, 2))
    with pytest.raises(EllipticError):
        WeierstrassCurve(0, 0, 0)


def test_huff_cubic_closure():
    E = huff_cubic(9, 16)
    R = huff_point(9, 16)
    assert R == ECPoint(0, 1008)
    assert E.contains(ec_add(E, R, R))


def test_scalar_mul_small_cases():
    E = WeierstrassCurve(0, -25, 0)
    P = ECPoint(-4, 6)
    assert ec_scalar_mul(E, 0, P).is_infinity
    assert ec_scalar_mul(E, 1, P) == P
    assert ec_scalar_mul(E, -2, P) == ec_neg(ec_scalar_mul(E, 2, P))
    acc = INFINITY
    for n, Q in multiples(E, P, 12):
        acc = ec_add(E, acc, P)
        assert Q == acc == ec_scalar_mul(E, n, P)


def test_paper_point_three_p():
    P = paper_point_edwards(2, 3)
    assert P == ECPoint(-2880, -124416)
    E = EdwardsConstruction(1, 2, 3).limit_curve()
    T = ec_scalar_mul(E, 3, P)
    assert E.contains(T)
    assert T.x.denominator == 1129 ** 2


def test_paper_point_not_on_quartic_curve():
    # the closed form does not depend on s4, so it cannot track the s4 quartic
    E, _ = EdwardsConstruction(1, 2, 3, 4).weierstrass()
    assert not E.contains(paper_point_edwards(2, 3))
    with pytest.raises(ConstructionMismatch):
        paper_point_edwards(2, 3, curve=E)


def test_paper_point_twisted():
    assert paper_point_twisted(1, 2, 3) == paper_point_edwards(2, 3)
    # alpha = 7, beta = 17, alpha + beta - 1 = 23
    assert paper_point_twisted(2, 2, 3) == ECPoint(-12 * 7 * 17 * 23, -216 * 17 ** 2 * 7 ** 2)
    for a, u1, u2 in [(2, 2, 3), (3, 5, 7), (F(1, 2), 3, 5)]:
        con = EdwardsConstruction(a, u1, u2)
        assert con.limit_curve().contains(paper_point_twisted(a, u1, u2))
    with pytest.raises(EllipticError):
        paper_point_twisted(F(1, 9), 2, 3)
    with pytest.raises(EllipticError):
        paper_point_edwards(1, 3)


def test_integral_model():
    E, P, u = integral_model(E1, ECPoint(0, 0))
    assert u == 1 and E == E1
    E = WeierstrassCurve(0, F(1, 4), 0)
    E2, P2, u = integral_model(E, ECPoint(0, 0))
    assert u == 2 and E2 == WeierstrassCurve(0, 4, 0)
    E = WeierstrassCurve(F(1, 3), F(-2, 9), F(5, 8))
    E2, _, u = integral_model(E)
    assert E2.is_integral()
    assert u == 6


def test_order_certificates():
    c = order_certificate(E1, ECPoint(0, 0))
    assert c.verdict == "torsion" and c.order == 2
    E = EdwardsConstruction(1, 2, 3).limit_curve()
    c = order_certificate(E, paper_point_edwards(2, 3))
    assert c.infinite and c.multiple <= 3
    assert recheck_certificate(E, paper_point_edwards(2, 3), c)
    c = order_certificate(WeierstrassCurve(0, -25, 0), ECPoint(-4, 6))
    assert c.infinite
    with pytest.raises(EllipticError):
        order_certificate(E1, INFINITY)


def test_huff_R_is_four_torsion():
    # doubling R lands on (AB, 0) for every A, B
    for A, B in [(9, 16), (F(3, 2), 7), (-5, 11)]:
        E = huff_cubic(A, B)
        R = huff_point(A, B)
        assert ec_scalar_mul(E, 2, R) == ECPoint(F(A) * B, 0)
        assert order_certificate(E, R).order == 4


def test_infinite_means_distinct_multiples():
    E = WeierstrassCurve(0, -25, 0)
    P = ECPoint(-4, 6)
    assert order_certificate(E, P).infinite
    pts = [Q for _, Q in multiples(E, P, 12)]
    assert len(set(pts)) == 12


def test_quartic_invariants_closed_form():
    f = Poly([1, 2, 3, 4, 5])
    A0, A1, A2, A3, A4 = 1, 2, 3, 4, 5
    I = 12 * A0 * A4 - 3 * A1 * A3 + A2 ** 2
    J = 72 * A0 * A2 * A4 + 9 * A1 * A2 * A3 - 27 * A1 ** 2 * A4 - 27 * A0 * A3 ** 2 - 2 * A2 ** 3
    assert quartic_invariants(f) == (I, J)


def test_transport_edwards_instance():
    con = EdwardsConstruction(1, 2, 3, 4)
    Qm = con.quartic_model()
    assert Qm.base == (0, 27)
    E, T = quartic_to_weierstrass(Qm)
    assert E.contains(T.forward(0, 27))
    assert E.contains(T.forward(0, -27))
    assert T.backward(T.forward(0, 27)) == (0, 27)
    assert T.backward(T.forward(0, -27)) == (0, -27)
    E2, _ = quartic_to_weierstrass(QuarticModel(con.quartic_by_interpolation(), 0, 27))
    assert E2 == E


@pytest.mark.parametrize("f,base", [
    (Poly([1, 0, 0, 0, 2]), (0, 1)),
    (Poly([4, -3, 1, 2, -1]), (0, 2)),
    (Poly([9, 1, 0, 1]), (0, 3)),
    (Poly([1, 0, -1, 0, 1]), (1, 1)),
])
def test_transport_round_trip(f, base):
    Qm = QuarticModel(f, *base)
    E, T = quartic_to_weierstrass(Qm)
    for t, z in quartic_search(Qm, 25):
        P = T.forward(t, z)
        assert E.contains(P)
        back = T.backward(P)
        assert back is None or back == (t, z)
        if back is None:
            assert P.y == 0 or P.is_infinity


def test_quartic_model_checks():
    with pytest.raises(EllipticError):
        QuarticModel(Poly([1, 0, 1]), 0, 1)
    with pytest.raises(EllipticError):
        QuarticModel(Poly([1, 0, 0, 0, 1]), 0, 2)
    with pytest.raises(EllipticError):
        QuarticModel(Poly([1, 0, -2, 0, 1]), 0, 1)  # (t^2 - 1)^2
    with pytest.raises(EllipticError):
        quartic_to_weierstrass(QuarticModel(Poly([0, 1, 0, 0, 1]), 0, 0))


def random_points(E, gens, rng, n):
    pts = []
    for _ in range(n):
        Q = INFINITY
        for G in gens:
            Q = ec_add(E, Q, ec_scalar_mul(E, rng.randint(-3, 3), G))
        pts.append(Q)
    return pts


GROUP_CURVES = [
    (WeierstrassCurve(0, -25, 0), [ECPoint(-4, 6), ECPoint(0, 0)]),
    (WeierstrassCurve(0, -36, 0), [ECPoint(-3, 9), ECPoint(6, 0)]),
    (WeierstrassCurve(0, 0, -2), [ECPoint(3, 5)]),
    (WeierstrassCurve(0, 0, 17), [ECPoint(-2, 3), ECPoint(-1, 4)]),
    (huff_cubic(3, 8), [ECPoint(0, 120)]),
]


@pytest.mark.parametrize("E,gens", GROUP_CURVES, ids=str)
def test_group_laws(E, gens):
    rng = random.Random(7)
    pts = random_points(E, gens, rng, 30)
    for _ in range(50):
        P, Q, R = rng.sample(pts, 3)
        assert ec_add(E, P, Q) == ec_add(E, Q, P)
        assert ec_add(E, ec_add(E, P, Q), R) == ec_add(E, P, ec_add(E, Q, R))
        assert ec_add(E, P, ec_neg(P)).is_infinity
