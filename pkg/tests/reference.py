"""Closed forms transcribed by hand, used as oracles against the constructions."""
from fractions import Fraction as F

from seqcurves.exact import Poly, RatFunc


def p_of_t(s2, s3) -> RatFunc:
    s2, s3 = F(s2) ** 2, F(s3) ** 2  # only squares appear
    num = Poly([-s3 + s2 * s3, 2 * s2 - 2 * s2 * s3, -s2 + s2 * s3])
    den = Poly([s3 - s2 * s3, 0, -s2 + s2 * s3])
    return RatFunc(num, den)


def q_of_t(s2, s3) -> RatFunc:
    s2, s3 = F(s2) ** 2, F(s3) ** 2
    num = Poly([(-1 + s2) * s3, -2 * (-1 + s2) * s3, s2 * (-1 + s3)])
    den = Poly([-(-1 + s2) * s3, 0, s2 * (-1 + s3)])
    return -RatFunc(num, den)


def B_of_t(s2, s3) -> Poly:
    s2, s3 = F(s2), F(s3)
    return Poly([s3 ** 2 - s2 ** 2 * s3 ** 2, 0, -s2 ** 2 + s2 ** 2 * s3 ** 2])


def d_times_B2(s2, s3) -> Poly:
    s2, s3 = F(s2), F(s3)
    return Poly([
        s3 ** 4 - 2 * s2 ** 2 * s3 ** 4 + s2 ** 4 * s3 ** 4,
        4 * s3 ** 2 - 8 * s2 ** 2 * s3 ** 2 + 4 * s2 ** 4 * s3 ** 2 - 4 * s3 ** 4 + 8 * s2 ** 2 * s3 ** 4
        - 4 * s2 ** 4 * s3 ** 4,
        -4 * s2 ** 2 + 4 * s2 ** 4 - 4 * s3 ** 2 + 14 * s2 ** 2 * s3 ** 2 - 10 * s2 ** 4 * s3 ** 2
        + 4 * s3 ** 4 - 10 * s2 ** 2 * s3 ** 4 + 6 * s2 ** 4 * s3 ** 4,
        4 * s2 ** 2 - 4 * s2 ** 4 - 8 * s2 ** 2 * s3 ** 2 + 8 * s2 ** 4 * s3 ** 2 + 4 * s2 ** 2 * s3 ** 4
        - 4 * s2 ** 4 * s3 ** 4,
        s2 ** 4 - 2 * s2 ** 4 * s3 ** 2 + s2 ** 4 * s3 ** 4,
    ])


def d_times_B2_twisted(a, u1, u2) -> Poly:
    a, u1, u2 = F(a), F(u1), F(u2)
    return Poly([
        u1 ** 4 * a ** 3 * u2 ** 4 - 2 * u1 ** 2 * a ** 2 * u2 ** 4 + a * u2 ** 4,
        4 * u2 ** 2 + 8 * u1 ** 2 * a ** 2 * u2 ** 4 - 8 * a * u1 ** 2 * u2 ** 2 + 4 * u1 ** 4 * a ** 2 * u2 ** 2
        - 4 * a * u2 ** 4 - 4 * u1 ** 4 * a ** 3 * u2 ** 4,
        -4 * u1 ** 2 - 10 * u1 ** 2 * a ** 2 * u2 ** 4 + 14 * a * u1 ** 2 * u2 ** 2 + 6 * u1 ** 4 * a ** 3 * u2 ** 4
        - 4 * u2 ** 2 - 10 * u1 ** 4 * a ** 2 * u2 ** 2 + 4 * u1 ** 4 * a + 4 * a * u2 ** 4,
        -8 * a * u1 ** 2 * u2 ** 2 + 4 * u1 ** 2 + 4 * u1 ** 2 * a ** 2 * u2 ** 4 - 4 * u1 ** 4 * a
        - 4 * u1 ** 4 * a ** 3 * u2 ** 4 + 8 * u1 ** 4 * a ** 2 * u2 ** 2,
        u1 ** 4 * a ** 3 * u2 ** 4 - 2 * u1 ** 4 * a ** 2 * u2 ** 2 + u1 ** 4 * a,
    ])


def d_from_p(s2, s3) -> RatFunc:
    s2 = F(s2)
    p = p_of_t(s2, s3)
    return ((s2 * s2 - 1) * p * p + 1) / (s2 * s2)


def huff_x_of_t(A, B) -> RatFunc:
    return RatFunc(Poly([-B, B]), Poly([B, A]))


def huff_y_of_t(A, B) -> RatFunc:
    # (A t (1 - t) + B (1 - t)^2) / (A t + B)
    return RatFunc(Poly([B, A - 2 * B, B - A]), Poly([B, A]))


def huff_p2(A, B, t):
    return B * B * (t - 1) / ((B * (t - 1) - A * t) * (B + A * t))


def huff_q2(A, B, t):
    return (B + A * t) / ((t - 1) * (B * (t - 1) - A * t))
